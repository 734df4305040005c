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
#include <optional>
#include <string>
#include <vector>

#include "oscbus/analysis.hpp"
#include "oscbus/model.hpp"

namespace oscbus {

/// Marked item x0 on n qubits; bit l of the binary form b_0 ... b_{n-1} is
/// qubit l, qubit 0 being the most significant.
struct OracleSpec {
  int n = 1;
  std::uint64_t x0 = 0;

  void validate() const;
  std::vector<int> bits() const;
};

/// X flips on the zero bits of x0, the projector-phase chain
/// exp(i pi prod_l (sz_l + 1)/2) with A = B = 1, then the flips undone.
Program compile_oracle(const OracleSpec& spec);

enum class InversionMode {
  /// Chain built directly from sigma_x operators (all-X frame).
  XFrame,
  /// Z-frame chain conjugated by ideal Y rotations on every qubit.
  ExplicitRotations,
};

/// exp(i pi prod_l (sx_l + 1)/2) = I - (2/N) M, the inversion about the mean
/// up to a global sign.
Program compile_inversion(int n, InversionMode mode = InversionMode::XFrame);

/// Sign flip on |x0>.
Matrix ideal_oracle(const OracleSpec& spec);
/// (2/N) M - I with M the all-ones matrix.
Matrix ideal_inversion(int n);
/// The all-ones matrix M.
Matrix ones_matrix(int n);

struct IdentityCheck {
  std::string name;
  double error = 0.0;
  bool passed = false;
};

/// (sM)^k = s^k N^{k-1} M for k = 1..4, exp(sM) = I + (e^{sN} - 1) M / N,
/// exp(sM) = I - (2/N) M at sN = i pi, M = prod_l (sx_l + 1), and the
/// inversion gate identity. Requires n <= 5.
std::vector<IdentityCheck> m_matrix_identities(int n, double tolerance = 1e-10);

/// floor(pi sqrt(2^n) / 4).
int default_iterations(int n);

enum class GroverMode { Bus, Ideal };

struct GroverOptions {
  std::optional<int> iterations;
  OscInput osc_input = OscInput::fock_state(0);
  std::optional<int> cutoff;
  GroverMode mode = GroverMode::Bus;
  InversionMode inversion = InversionMode::XFrame;
};

struct GroverResult {
  int n = 0;
  std::uint64_t x0 = 0;
  int iterations = 0;
  std::string mode;
  std::string osc_input;
  int cutoff = 0;
  /// probability of |x0> after 0, 1, ..., iterations rounds.
  std::vector<double> per_iteration;
  double success_probability = 0.0;
  /// Final computational-basis distribution (oscillator traced out).
  std::vector<double> distribution;
  std::optional<GateReport> oracle_report;
  std::optional<GateReport> inversion_report;
};

/// Prepares the uniform superposition with ideal Y rotations, then alternates
/// the compiled oracle and inversion programs through the integrator (bus
/// mode, n <= 4) or applies the ideal gates to a qubit state vector.
GroverResult run_grover(int n, std::uint64_t x0, const GroverOptions& opts = {});

struct AllOnesReport {
  GroverResult run;
  /// P(number of qubits in |1>) for 0..n.
  std::vector<double> excited_count;
  /// No bus pulse or local rotation singles out an individual qubit.
  bool uniform_addressing = false;
};

AllOnesReport demo_all_ones(int n, const GroverOptions& opts = {});

/// True when every pulse operator treats all qubits identically and every
/// ideal local step is part of a rotation applied equally to all qubits.
bool addresses_uniformly(const Program& prog);

}  // namespace oscbus
