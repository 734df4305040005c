// Copyright 2026 The oscbus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oscbus/propagator.hpp"

namespace oscbus {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Random frame, random operators in that frame (coefficients in [-1, 1]),
/// v, w, r, g in [-2, 2] and durations in [0.1, 1]. v and w are scaled down
/// when needed so the largest displacement stays within 2.5, which keeps the
/// low Fock columns clear of the truncation edge. The same generator state
/// gives the same sequence.
PulseSequence random_sequence(std::mt19937_64& rng, int n_qubits, int n_segments);

/// Largest |closed form - integrator| over all rows and the columns whose
/// Fock level is below `low_levels`, where truncation cannot be felt.
double dual_path_deviation(const PulseSequence& seq, int cutoff = 40, int low_levels = 4,
                           const PropagatorOptions& opts = {});

/// Largest |dU/dt + i H(t) U(t)| at time t, with dU/dt a fourth-order difference of
/// the factored closed form. Same column restriction as dual_path_deviation.
double derivative_residual(const PulseSequence& seq, double t, int cutoff = 40,
                           int low_levels = 4, const PropagatorOptions& opts = {});

/// Worst |S_final - enclosed area| over every eigen-tuple of every compiled
/// gate family (rectangle, parallelogram, chain, Toffoli, product phase,
/// Grover oracle and inversion).
double area_law_deviation(const PropagatorOptions& opts = {});

/// The full suite run by `oscbus verify`: randomized dual-path and derivative
/// checks, the rectangle regression, the Fourier and M-matrix identities, and
/// the area law.
std::vector<CheckResult> run_verification(std::uint64_t seed, int cases,
                                          const PropagatorOptions& opts = {});

}  // namespace oscbus
