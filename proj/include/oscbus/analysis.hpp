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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscbus/hilbert.hpp"
#include "oscbus/model.hpp"

namespace oscbus {

struct EffectiveUnitary {
  Matrix gate;
  /// max |G^dag G - I|: nonzero when qubits stay entangled with the oscillator.
  double residual = 0.0;
};

/// G[j, k] = <j, phi| U |k, phi> for a normalized oscillator state phi.
EffectiveUnitary effective_qubit_unitary(const DenseOperator& U_full, const Vector& osc_state);

/// |Tr(G_ideal^dag G)| / d; equals 1 iff G = exp(i phi) G_ideal.
double process_fidelity(const Matrix& G, const Matrix& G_ideal);

/// Oscillator input: a Fock state or a thermal mixture.
struct OscInput {
  enum class Kind { Fock, Thermal };
  Kind kind = Kind::Fock;
  int fock = 0;
  double nbar = 0.0;

  static OscInput fock_state(int k) { return {Kind::Fock, k, 0.0}; }
  static OscInput thermal(double nbar) { return {Kind::Thermal, 0, nbar}; }
  /// Parses "fock:k" or "thermal:nbar".
  static OscInput parse(const std::string& text);

  std::string label() const;
  /// Fock levels and weights making up the input.
  std::vector<std::pair<int, double>> components() const;
  int highest_level() const;
};

struct GateReportOptions {
  /// Fixed cutoff; empty selects it automatically by doubling.
  std::optional<int> cutoff;
  double fidelity_tolerance = 1e-6;
  double spread_tolerance = 1e-8;
  double residual_tolerance = 1e-6;
  double closure_tolerance = 1e-9;
  double leakage_threshold = 1e-8;
  /// Fraction of the top Fock levels counted as leakage.
  double leakage_margin = 0.25;
  int auto_start = 16;
  double auto_convergence = 1e-8;
};

struct InputResult {
  std::string label;
  double fidelity = 0.0;
  double residual = 0.0;
  double leakage = 0.0;
};

struct GateReport {
  static constexpr int kSchemaVersion = 1;

  std::string gate;
  int n_qubits = 0;
  int cutoff = 0;
  std::vector<int> cutoff_history;
  bool cutoff_converged = true;
  std::vector<InputResult> inputs;
  double fidelity_spread = 0.0;
  double worst_leakage = 0.0;
  double worst_residual = 0.0;
  double closure_V = 0.0;
  double closure_W = 0.0;
  double closure_R = 0.0;
  bool fidelity_ok = false;
  bool spread_ok = false;
  bool residual_ok = false;
  bool closure_ok = false;
  bool leakage_ok = false;
  bool passed = false;
  std::vector<std::string> warnings;

  double min_fidelity() const;
};

/// Simulates `prog` with the brute-force integrator for every oscillator
/// input and compares the effective qubit gate to `ideal`. Thermal inputs
/// average the per-Fock fidelities with their Boltzmann weights.
GateReport gate_report(const Program& prog, const Matrix& ideal, std::span<const OscInput> inputs,
                       const GateReportOptions& opts = {}, std::string gate_name = "gate");

/// Initial cutoff guess from the largest phase-space excursion and the
/// highest input level, leaving the leakage margin clear.
int suggest_cutoff(const Program& prog, int highest_level, double leakage_margin = 0.25,
                   int minimum = 16);

/// Ideal gates used as comparison targets.
namespace ideal {

/// exp(-i G t) of a Hermitian qubit-space generator.
Matrix exp_generator(const Matrix& generator, double t = 1.0);

/// exp(-i lambda A B) for internal operators on an n-qubit register.
Matrix rectangle(double lambda1, double lambda2, const InternalOperator& A,
                 const InternalOperator& B, int n_qubits);

/// exp(-i pi/2 P sx_target) with P the all-|1> projector on qubits 0..n_c-1.
Matrix cnnot(int n_controls);

/// exp(-i mu prod_l sz_l).
Matrix product_phase(double mu, std::span<const int> qubits, int n_qubits);

/// exp(-i mu A cos(theta C)) evaluated on the joint eigenbasis of A and C.
Matrix cos_gate(double mu, double theta, const InternalOperator& A, const InternalOperator& C,
                int n_qubits);

}  // namespace ideal

}  // namespace oscbus
