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

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace oscbus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

enum class Axis { X, Y, Z };

char axis_name(Axis axis);
Axis parse_axis(const std::string& name);

/// Truncated oscillator: Fock levels 0..cutoff-1.
struct OscillatorSpec {
  int cutoff = 16;

  void validate() const;
  friend bool operator==(const OscillatorSpec&, const OscillatorSpec&) = default;
};

/// Tensor-product space of n qubits and (optionally) one truncated oscillator.
///
/// Basis ordering: qubit 0 is the most significant bit of the computational
/// index and the oscillator is the innermost factor, so the composite index of
/// |q_0 ... q_{n-1}> (x) |k> is (sum_l q_l 2^{n-1-l}) * cutoff + k.
/// A cutoff of 0 denotes the qubit-only space.
struct Space {
  int n_qubits = 0;
  int cutoff = 0;

  static Space qubits(int n) { return {n, 0}; }
  static Space composite(int n, const OscillatorSpec& osc) { return {n, osc.cutoff}; }
  static Space oscillator(const OscillatorSpec& osc) { return {0, osc.cutoff}; }

  Index qubit_dim() const { return Index{1} << n_qubits; }
  Index osc_dim() const { return cutoff == 0 ? 1 : cutoff; }
  Index dim() const { return qubit_dim() * osc_dim(); }
  bool has_oscillator() const { return cutoff != 0; }

  friend bool operator==(const Space&, const Space&) = default;
};

std::string describe(const Space& space);

/// Square complex matrix tagged with the space it acts on.
struct DenseOperator {
  Space space;
  Matrix mat;

  DenseOperator() = default;
  DenseOperator(Space s, Matrix m);

  static DenseOperator identity(const Space& space);
  Index dim() const { return mat.rows(); }
};

DenseOperator operator*(const DenseOperator& lhs, const DenseOperator& rhs);

struct OscillatorOps {
  DenseOperator a;
  DenseOperator a_dag;
  DenseOperator x;
  DenseOperator p;
  DenseOperator n;
};

/// Ladder, quadrature and number operators in the Fock basis with
/// x = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2), so [x, p] = i away from
/// the truncation edge.
OscillatorOps build_oscillator_ops(const OscillatorSpec& spec);

/// 2x2 Pauli matrix in the (|0>, |1>) index order with sigma_z|1> = +|1>,
/// sigma_z|0> = -|0>. The algebra sigma_x sigma_y = i sigma_z is preserved.
Matrix single_pauli(Axis axis);

/// Pauli on one qubit of an n-qubit register, identity elsewhere.
DenseOperator pauli_matrix(Axis axis, int qubit, int n_qubits);

/// exp(-i H t) for Hermitian H. Throws InvalidArgument (with the largest
/// asymmetry in the message) when H deviates from Hermitian by more than 1e-10.
DenseOperator matrix_exponential(const DenseOperator& H, double t);
Matrix hermitian_exponential(const Matrix& H, double t);

double max_asymmetry(const Matrix& H);
double unitarity_defect(const Matrix& U);

Matrix kron(const Matrix& lhs, const Matrix& rhs);

/// Lift a qubit-only or oscillator-only operator into `target` by tensoring
/// with the identity on the complementary factor.
DenseOperator embed(const DenseOperator& op, const Space& target);

/// (Q (x) I) diag(blocks) (Q (x) I)^dag for a qubit-space basis Q whose column
/// s carries the oscillator block `blocks[s]`.
Matrix assemble_block_diagonal(const Matrix& basis, std::span<const Matrix> blocks);

/// Pure or mixed state on a composite space.
class CompositeState {
 public:
  enum class Kind { Pure, Mixed };

  static CompositeState pure(const Space& space, Vector amplitudes);
  static CompositeState mixed(const Space& space, Matrix density);

  /// |bits> (x) |fock>; `basis_index` is the computational qubit index.
  static CompositeState product_fock(int n_qubits, const OscillatorSpec& osc,
                                     Index basis_index, int fock);
  /// Qubit pure state tensored with an oscillator pure state.
  static CompositeState product(const Vector& qubits, const Vector& oscillator);
  /// Qubit pure state tensored with an oscillator density matrix.
  static CompositeState product(const Vector& qubits, const Matrix& osc_density);

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::Pure; }
  const Space& space() const { return space_; }
  const Vector& amplitudes() const;
  const Matrix& density() const;

  /// rho for both kinds.
  Matrix density_matrix() const;
  /// Probability of each computational qubit basis state (oscillator traced).
  RealVector qubit_populations() const;
  /// Probability of each Fock level (qubits traced).
  RealVector fock_populations() const;

  CompositeState evolved(const Matrix& U) const;

  /// Norm (pure) or trace (mixed) deviation from 1, plus hermiticity for mixed.
  double normalization_defect() const;

 private:
  CompositeState(Kind k, Space s, Vector psi, Matrix rho)
      : kind_(k), space_(s), psi_(std::move(psi)), rho_(std::move(rho)) {}

  Kind kind_;
  Space space_;
  Vector psi_;
  Matrix rho_;
};

/// Truncated Boltzmann weights with mean occupation `nbar`, cut where the
/// remaining tail weight drops below `tail_tolerance`, renormalized to 1.
RealVector thermal_weights(double nbar, double tail_tolerance = 1e-10);

Vector fock_vector(int cutoff, int level);

}  // namespace oscbus
