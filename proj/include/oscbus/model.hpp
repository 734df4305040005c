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

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "oscbus/hilbert.hpp"

namespace oscbus {

/// Per-qubit axis assignment shared by every operator of one pulse sequence.
using AxisFrame = std::vector<Axis>;

AxisFrame uniform_frame(int n_qubits, Axis axis);

/// Eigen-tuple of a frame basis index: s_l = +1 when bit l is set, -1
/// otherwise, qubit 0 being the most significant bit.
std::vector<int> eigen_tuple(Index basis_index, int n_qubits);

struct PauliTerm {
  Axis axis = Axis::Z;
  double coeff = 0.0;
  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// c0 + sum_l c_l sigma_{axis_l, l}: an affine combination of single-axis
/// Paulis. Operators whose axes agree qubit-by-qubit commute.
class InternalOperator {
 public:
  InternalOperator() = default;

  static InternalOperator constant(double c0);
  static InternalOperator pauli(Axis axis, int qubit, double coeff = 1.0);
  /// sum_{l in qubits} (sigma_l - 1)/2; zero exactly when every listed qubit
  /// is in the +1 eigenstate of `axis`.
  static InternalOperator offset_sum(Axis axis, std::span<const int> qubits);
  /// (sigma_l + 1)/2 projector onto the +1 eigenstate.
  static InternalOperator projector(Axis axis, int qubit);

  double c0() const { return c0_; }
  const std::map<int, PauliTerm>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }
  int max_qubit() const;

  /// Adds coeff * sigma_{axis, qubit}; throws on an axis clash for that qubit.
  InternalOperator& add(Axis axis, int qubit, double coeff);

  InternalOperator& operator+=(const InternalOperator& rhs);
  InternalOperator& operator*=(double s);

  friend InternalOperator operator+(InternalOperator lhs, const InternalOperator& rhs) {
    return lhs += rhs;
  }
  friend InternalOperator operator-(InternalOperator lhs, const InternalOperator& rhs) {
    InternalOperator neg = rhs;
    neg *= -1.0;
    return lhs += neg;
  }
  friend InternalOperator operator*(double s, InternalOperator op) { return op *= s; }
  friend InternalOperator operator*(InternalOperator op, double s) { return op *= s; }

  friend bool operator==(const InternalOperator&, const InternalOperator&) = default;

 private:
  double c0_ = 0.0;
  std::map<int, PauliTerm> terms_;
};

/// c0 + sum_l c_l s_l for an eigen-tuple s in {-1,+1}^n.
double eval_eigenvalue(const InternalOperator& op, std::span<const int> s);

/// Hermitian 2^n x 2^n matrix in the computational basis. Throws when the
/// operator references a qubit outside the frame or disagrees with its axes.
DenseOperator to_matrix(const InternalOperator& op, const AxisFrame& frame, int n_qubits);

/// Checks `op` against `frame`; returns a description of the first conflict.
std::vector<std::string> frame_conflicts(const InternalOperator& op, const AxisFrame& frame);

/// Smallest frame covering all operators (unreferenced qubits default to Z).
/// Throws InvalidArgument("frame conflict ...") on disagreement.
AxisFrame frame_for(std::span<const InternalOperator* const> ops, int n_qubits);

/// H = v A x + w B p + r C n + g D over `duration`, coefficients constant.
struct PulseSegment {
  double duration = 1.0;
  double v = 0.0;
  double w = 0.0;
  double r = 0.0;
  double g = 0.0;
  InternalOperator A;
  InternalOperator B;
  InternalOperator C;
  InternalOperator D;

  friend bool operator==(const PulseSegment&, const PulseSegment&) = default;
};

struct PulseSequence {
  AxisFrame frame;
  std::vector<PulseSegment> segments;

  int n_qubits() const { return static_cast<int>(frame.size()); }
  double total_duration() const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;
};

/// Empty list means valid.
std::vector<std::string> validate_sequence(const PulseSequence& seq);

/// Coefficient samples on a uniform grid (endpoints included), linearly
/// interpolated in time. All sample vectors share one length >= 2, or are
/// empty for a coefficient that is identically zero.
struct SampledWaveform {
  double duration = 1.0;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<double> r;
  std::vector<double> g;
  InternalOperator A;
  InternalOperator B;
  InternalOperator C;
  InternalOperator D;

  std::size_t intervals() const;
  /// Midpoint piecewise-constant approximation with `substeps` pieces per
  /// sample interval.
  std::vector<PulseSegment> subdivide(int substeps) const;
};

/// Instantaneous exp(-i angle sigma_axis / 2) on one qubit.
struct IdealLocal {
  Axis axis = Axis::X;
  double angle = 0.0;
  int qubit = 0;

  Matrix matrix() const;
  friend bool operator==(const IdealLocal&, const IdealLocal&) = default;
};

using ProgramStep = std::variant<PulseSequence, IdealLocal>;

struct Program {
  int n_qubits = 0;
  std::vector<ProgramStep> steps;

  Program& then(ProgramStep step) {
    steps.push_back(std::move(step));
    return *this;
  }
  Program& then(const Program& other);
  std::vector<const PulseSequence*> sequences() const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Throws InvalidArgument listing every violation.
void validate_program(const Program& prog);

/// Unitary of a single ideal local on the n-qubit register.
Matrix ideal_local_unitary(const IdealLocal& step, int n_qubits);

}  // namespace oscbus
