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

#include "oscbus/hilbert.hpp"

#include <cmath>
#include <sstream>

#include "oscbus/error.hpp"

namespace oscbus {

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  return '?';
}

Axis parse_axis(const std::string& name) {
  if (name == "X" || name == "x") return Axis::X;
  if (name == "Y" || name == "y") return Axis::Y;
  if (name == "Z" || name == "z") return Axis::Z;
  throw InvalidArgument("unknown axis '" + name + "'");
}

void OscillatorSpec::validate() const {
  if (cutoff < 2) {
    throw InvalidArgument("oscillator cutoff must be >= 2, got " + std::to_string(cutoff));
  }
}

std::string describe(const Space& space) {
  std::ostringstream os;
  os << space.n_qubits << " qubit(s)";
  if (space.has_oscillator()) os << " x " << space.cutoff << " Fock levels";
  os << " (dim " << space.dim() << ")";
  return os.str();
}

DenseOperator::DenseOperator(Space s, Matrix m) : space(s), mat(std::move(m)) {
  if (mat.rows() != space.dim() || mat.cols() != space.dim()) {
    std::ostringstream os;
    os << "operator of shape " << mat.rows() << "x" << mat.cols()
       << " does not match " << describe(space);
    throw InvalidArgument(os.str());
  }
}

DenseOperator DenseOperator::identity(const Space& space) {
  return {space, Matrix::Identity(space.dim(), space.dim())};
}

DenseOperator operator*(const DenseOperator& lhs, const DenseOperator& rhs) {
  if (!(lhs.space == rhs.space)) {
    throw InvalidArgument("cannot multiply operators on " + describe(lhs.space) + " and " +
                          describe(rhs.space));
  }
  return {lhs.space, lhs.mat * rhs.mat};
}

OscillatorOps build_oscillator_ops(const OscillatorSpec& spec) {
  spec.validate();
  const Index n = spec.cutoff;
  const Space space = Space::oscillator(spec);
  Matrix a = Matrix::Zero(n, n);
  Matrix num = Matrix::Zero(n, n);
  for (Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  for (Index k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
  Matrix a_dag = a.adjoint();
  const double s = 1.0 / std::sqrt(2.0);
  Matrix x = s * (a + a_dag);
  Matrix p = kI * s * (a_dag - a);
  return {{space, a}, {space, a_dag}, {space, x}, {space, p}, {space, num}};
}

Matrix single_pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, kI, -kI, 0; break;
    case Axis::Z: m << -1, 0, 0, 1; break;
  }
  return m;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Index i = 0; i < lhs.rows(); ++i) {
    for (Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    }
  }
  return out;
}

DenseOperator pauli_matrix(Axis axis, int qubit, int n_qubits) {
  if (n_qubits < 1 || qubit < 0 || qubit >= n_qubits) {
    throw InvalidArgument("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(n_qubits) + " qubit(s)");
  }
  const Index left = Index{1} << qubit;
  const Index right = Index{1} << (n_qubits - qubit - 1);
  Matrix m = kron(kron(Matrix::Identity(left, left), single_pauli(axis)),
                  Matrix::Identity(right, right));
  return {Space::qubits(n_qubits), std::move(m)};
}

double max_asymmetry(const Matrix& H) { return (H - H.adjoint()).cwiseAbs().maxCoeff(); }

double unitarity_defect(const Matrix& U) {
  return (U.adjoint() * U - Matrix::Identity(U.cols(), U.cols())).cwiseAbs().maxCoeff();
}

Matrix hermitian_exponential(const Matrix& H, double t) {
  if (H.rows() != H.cols()) throw InvalidArgument("matrix exponential needs a square matrix");
  const double asym = H.size() == 0 ? 0.0 : max_asymmetry(H);
  if (asym > 1e-10) {
    std::ostringstream os;
    os << "matrix exponential needs a Hermitian generator; max asymmetry |H - H^dag| = " << asym;
    throw InvalidArgument(os.str());
  }
  Matrix sym = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  const Vector phases =
      solver.eigenvalues().unaryExpr([t](double e) { return std::exp(Complex(0.0, -e * t)); })
          .cast<Complex>();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

DenseOperator matrix_exponential(const DenseOperator& H, double t) {
  return {H.space, hermitian_exponential(H.mat, t)};
}

DenseOperator embed(const DenseOperator& op, const Space& target) {
  const Space& src = op.space;
  if (src == target) return op;
  if (src.n_qubits == target.n_qubits && !src.has_oscillator() && target.has_oscillator()) {
    return {target, kron(op.mat, Matrix::Identity(target.cutoff, target.cutoff))};
  }
  if (src.n_qubits == 0 && src.cutoff == target.cutoff && src.has_oscillator()) {
    const Index q = target.qubit_dim();
    return {target, kron(Matrix::Identity(q, q), op.mat)};
  }
  throw InvalidArgument("cannot embed operator on " + describe(src) + " into " +
                        describe(target));
}

// ---------------------------------------------------------------------------

CompositeState CompositeState::pure(const Space& space, Vector amplitudes) {
  if (amplitudes.size() != space.dim()) {
    throw InvalidArgument("state vector length does not match " + describe(space));
  }
  return {Kind::Pure, space, std::move(amplitudes), Matrix()};
}

CompositeState CompositeState::mixed(const Space& space, Matrix density) {
  if (density.rows() != space.dim() || density.cols() != space.dim()) {
    throw InvalidArgument("density matrix shape does not match " + describe(space));
  }
  return {Kind::Mixed, space, Vector(), std::move(density)};
}

Vector fock_vector(int cutoff, int level) {
  if (level < 0 || level >= cutoff) {
    throw InvalidArgument("Fock level " + std::to_string(level) + " outside cutoff " +
                          std::to_string(cutoff));
  }
  Vector v = Vector::Zero(cutoff);
  v(level) = 1.0;
  return v;
}

CompositeState CompositeState::product_fock(int n_qubits, const OscillatorSpec& osc,
                                            Index basis_index, int fock) {
  osc.validate();
  const Space space = Space::composite(n_qubits, osc);
  if (basis_index < 0 || basis_index >= space.qubit_dim()) {
    throw InvalidArgument("qubit basis index out of range");
  }
  Vector q = Vector::Zero(space.qubit_dim());
  q(basis_index) = 1.0;
  return product(q, fock_vector(osc.cutoff, fock));
}

namespace {

int qubits_for_dim(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  if ((Index{1} << n) != dim) throw InvalidArgument("qubit vector length is not a power of two");
  return n;
}

}  // namespace

CompositeState CompositeState::product(const Vector& qubits, const Vector& oscillator) {
  const Space space{qubits_for_dim(qubits.size()), static_cast<int>(oscillator.size())};
  Vector psi(space.dim());
  for (Index j = 0; j < qubits.size(); ++j) psi.segment(j * oscillator.size(), oscillator.size()) = qubits(j) * oscillator;
  return pure(space, std::move(psi));
}

CompositeState CompositeState::product(const Vector& qubits, const Matrix& osc_density) {
  const Space space{qubits_for_dim(qubits.size()), static_cast<int>(osc_density.rows())};
  Matrix rq = qubits * qubits.adjoint();
  return mixed(space, kron(rq, osc_density));
}

const Vector& CompositeState::amplitudes() const {
  if (kind_ != Kind::Pure) throw InvalidArgument("state is mixed; no amplitude vector");
  return psi_;
}

const Matrix& CompositeState::density() const {
  if (kind_ != Kind::Mixed) throw InvalidArgument("state is pure; use density_matrix()");
  return rho_;
}

Matrix CompositeState::density_matrix() const {
  return is_pure() ? Matrix(psi_ * psi_.adjoint()) : rho_;
}

RealVector CompositeState::qubit_populations() const {
  const Index nq = space_.qubit_dim();
  const Index no = space_.osc_dim();
  RealVector pops = RealVector::Zero(nq);
  for (Index j = 0; j < nq; ++j) {
    for (Index k = 0; k < no; ++k) {
      const Index idx = j * no + k;
      pops(j) += is_pure() ? std::norm(psi_(idx)) : rho_(idx, idx).real();
    }
  }
  return pops;
}

RealVector CompositeState::fock_populations() const {
  const Index nq = space_.qubit_dim();
  const Index no = space_.osc_dim();
  RealVector pops = RealVector::Zero(no);
  for (Index j = 0; j < nq; ++j) {
    for (Index k = 0; k < no; ++k) {
      const Index idx = j * no + k;
      pops(k) += is_pure() ? std::norm(psi_(idx)) : rho_(idx, idx).real();
    }
  }
  return pops;
}

CompositeState CompositeState::evolved(const Matrix& U) const {
  if (U.rows() != space_.dim() || U.cols() != space_.dim()) {
    throw InvalidArgument("propagator dimension does not match " + describe(space_));
  }
  if (is_pure()) return {Kind::Pure, space_, U * psi_, Matrix()};
  return {Kind::Mixed, space_, Vector(), U * rho_ * U.adjoint()};
}

double CompositeState::normalization_defect() const {
  if (is_pure()) return std::abs(psi_.norm() - 1.0);
  const double trace_err = std::abs(rho_.trace() - Complex(1.0));
  return std::max(trace_err, max_asymmetry(rho_));
}

RealVector thermal_weights(double nbar, double tail_tolerance) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw InvalidArgument("thermal occupation must be a finite non-negative number");
  }
  if (nbar == 0.0) return RealVector::Ones(1);
  // p_k = (1 - q) q^k with q = nbar / (1 + nbar); tail beyond k is q^{k+1}.
  const double q = nbar / (1.0 + nbar);
  int levels = 1;
  while (std::pow(q, levels) >= tail_tolerance) ++levels;
  RealVector w(levels);
  for (int k = 0; k < levels; ++k) w(k) = (1.0 - q) * std::pow(q, k);
  return w / w.sum();
}

}  // namespace oscbus

namespace oscbus {

Matrix assemble_block_diagonal(const Matrix& basis, std::span<const Matrix> blocks) {
  const Index nq = basis.rows();
  if (basis.cols() != nq || static_cast<Index>(blocks.size()) != nq) {
    throw InvalidArgument("block count does not match basis dimension");
  }
  const Index no = blocks.empty() ? 0 : blocks.front().rows();
  Matrix out = Matrix::Zero(nq * no, nq * no);
  for (Index s = 0; s < nq; ++s) {
    if (blocks[s].rows() != no || blocks[s].cols() != no) {
      throw InvalidArgument("oscillator blocks differ in size");
    }
    for (Index j = 0; j < nq; ++j) {
      if (basis(j, s) == Complex(0.0)) continue;
      for (Index k = 0; k < nq; ++k) {
        const Complex coeff = basis(j, s) * std::conj(basis(k, s));
        if (coeff == Complex(0.0)) continue;
        out.block(j * no, k * no, no, no) += coeff * blocks[s];
      }
    }
  }
  return out;
}

}  // namespace oscbus
