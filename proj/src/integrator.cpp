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

#include "oscbus/integrator.hpp"

#include <complex>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "oscbus/error.hpp"

namespace oscbus {

Index max_composite_dim() {
  if (const char* env = std::getenv("OSCBUS_MAX_DIM")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<Index>(v);
  }
  return 8192;
}

void check_dimension(int n_qubits, const OscillatorSpec& osc) {
  osc.validate();
  const Space space = Space::composite(n_qubits, osc);
  if (space.dim() > max_composite_dim()) {
    std::ostringstream os;
    os << "composite dimension " << space.dim() << " (" << describe(space)
       << ") exceeds the limit " << max_composite_dim()
       << "; lower the cutoff or qubit count, or raise OSCBUS_MAX_DIM";
    throw ResourceLimit(os.str());
  }
}

DenseOperator segment_hamiltonian(const PulseSegment& seg, const AxisFrame& frame, int n_qubits,
                                  const OscillatorSpec& osc) {
  check_dimension(n_qubits, osc);
  const auto ops = build_oscillator_ops(osc);
  const Space space = Space::composite(n_qubits, osc);
  const Index no = osc.cutoff;
  Matrix H = Matrix::Zero(space.dim(), space.dim());
  H += kron(to_matrix(seg.A, frame, n_qubits).mat, seg.v * ops.x.mat);
  H += kron(to_matrix(seg.B, frame, n_qubits).mat, seg.w * ops.p.mat);
  H += kron(to_matrix(seg.C, frame, n_qubits).mat, seg.r * ops.n.mat);
  H += kron(to_matrix(seg.D, frame, n_qubits).mat, seg.g * Matrix::Identity(no, no));
  return {space, std::move(H)};
}

DenseOperator segment_unitary(const PulseSegment& seg, const AxisFrame& frame, int n_qubits,
                              const OscillatorSpec& osc) {
  return matrix_exponential(segment_hamiltonian(seg, frame, n_qubits, osc), seg.duration);
}

namespace {

// Eigenvectors of sigma_axis ordered by ascending eigenvalue (-1, +1).
Matrix numeric_axis_basis(Axis axis) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(single_pauli(axis));
  return solver.eigenvectors();
}

// Diagonal of Q^dag M Q, after checking that the off-diagonal part vanishes.
RealVector joint_eigenvalues(const Matrix& basis, const Matrix& m) {
  const Matrix d = basis.adjoint() * m * basis;
  const double off = (d - Matrix(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (off > 1e-10) {
    std::ostringstream os;
    os << "internal operators do not share the frame eigenbasis (off-diagonal " << off << ")";
    throw InvalidArgument(os.str());
  }
  return d.diagonal().real();
}

}  // namespace

BlockPropagator sequence_blocks(const PulseSequence& seq, const OscillatorSpec& osc,
                                const BlockObserver& observer) {
  const auto problems = validate_sequence(seq);
  if (!problems.empty()) throw InvalidArgument("invalid pulse sequence: " + problems.front());
  const int n = seq.n_qubits();
  check_dimension(n, osc);

  BlockPropagator out;
  out.basis = Matrix::Ones(1, 1);
  for (Axis axis : seq.frame) out.basis = kron(out.basis, numeric_axis_basis(axis));
  const Index nq = out.basis.cols();
  out.blocks.assign(static_cast<std::size_t>(nq), Matrix::Identity(osc.cutoff, osc.cutoff));

  const auto ops = build_oscillator_ops(osc);
  const Matrix id = Matrix::Identity(osc.cutoff, osc.cutoff);
  // Blocks whose coefficient histories coincide share one propagator; `history`
  // labels those classes.
  std::vector<int> history(static_cast<std::size_t>(nq), 0);
  for (const auto& seg : seq.segments) {
    const RealVector a = joint_eigenvalues(out.basis, to_matrix(seg.A, seq.frame, n).mat);
    const RealVector b = joint_eigenvalues(out.basis, to_matrix(seg.B, seq.frame, n).mat);
    const RealVector c = joint_eigenvalues(out.basis, to_matrix(seg.C, seq.frame, n).mat);
    const RealVector d = joint_eigenvalues(out.basis, to_matrix(seg.D, seq.frame, n).mat);
    using Key = std::tuple<int, double, double, double, double>;
    std::map<Key, Index> first_of;
    std::map<std::tuple<double, double, double, double>, Matrix> exponentials;
    std::vector<int> next_history(history.size());
    for (Index s = 0; s < nq; ++s) {
      const Key key{history[s], seg.v * a(s), seg.w * b(s), seg.r * c(s), seg.g * d(s)};
      const bool fresh = first_of.emplace(key, s).second;
      if (!fresh) continue;
      const auto [hist, vx, wp, rn, gd] = key;
      if (vx == 0.0 && wp == 0.0) {
        // Pure rotation: diagonal in the Fock basis.
        for (int k = 0; k < osc.cutoff; ++k) {
          out.blocks[s].row(k) *= std::exp(-kI * seg.duration * (rn * k + gd));
        }
        continue;
      }
      const std::tuple<double, double, double, double> coeffs{vx, wp, rn, gd};
      auto cached = exponentials.find(coeffs);
      if (cached == exponentials.end()) {
        const Matrix H = vx * ops.x.mat + wp * ops.p.mat + rn * ops.n.mat + gd * id;
        cached = exponentials.emplace(coeffs, hermitian_exponential(H, seg.duration)).first;
      }
      out.blocks[s] = cached->second * out.blocks[s];
    }
    for (Index s = 0; s < nq; ++s) {
      const Key key{history[s], seg.v * a(s), seg.w * b(s), seg.r * c(s), seg.g * d(s)};
      const Index src = first_of.at(key);
      if (src != s) out.blocks[s] = out.blocks[src];
    }
    std::map<Key, int> label;
    for (const auto& [key, src] : first_of) label.emplace(key, static_cast<int>(label.size()));
    for (Index s = 0; s < nq; ++s) {
      next_history[s] =
          label.at(Key{history[s], seg.v * a(s), seg.w * b(s), seg.r * c(s), seg.g * d(s)});
    }
    history = std::move(next_history);
    if (observer) observer(out);
  }
  return out;
}

DenseOperator sequence_unitary(const PulseSequence& seq, const OscillatorSpec& osc) {
  const auto prop = sequence_blocks(seq, osc);
  return {Space::composite(seq.n_qubits(), osc), assemble_block_diagonal(prop.basis, prop.blocks)};
}

namespace {

// Left-multiplies `m` (composite rows) by the ideal local on its qubit.
void apply_local_rows(Matrix& m, const IdealLocal& step, int n_qubits, int cutoff) {
  const Matrix u = step.matrix();
  const Index stride = (Index{1} << (n_qubits - 1 - step.qubit)) * cutoff;
  const Index nq = Index{1} << n_qubits;
  for (Index j = 0; j < nq; ++j) {
    if ((j >> (n_qubits - 1 - step.qubit)) & 1) continue;
    const Index r0 = j * cutoff;
    const Index r1 = r0 + stride;
    for (Index k = 0; k < cutoff; ++k) {
      const auto row0 = m.row(r0 + k).eval();
      const auto row1 = m.row(r1 + k).eval();
      m.row(r0 + k) = u(0, 0) * row0 + u(0, 1) * row1;
      m.row(r1 + k) = u(1, 0) * row0 + u(1, 1) * row1;
    }
  }
}

}  // namespace

PreparedProgram prepare_program(
    const Program& prog, const OscillatorSpec& osc,
    const std::function<void(std::size_t, const BlockPropagator&)>& segment_observer) {
  validate_program(prog);
  check_dimension(prog.n_qubits, osc);
  PreparedProgram out{prog.n_qubits, osc, {}};
  for (std::size_t i = 0; i < prog.steps.size(); ++i) {
    if (const auto* seq = std::get_if<PulseSequence>(&prog.steps[i])) {
      BlockObserver obs;
      if (segment_observer) obs = [&](const BlockPropagator& p) { segment_observer(i, p); };
      out.steps.emplace_back(sequence_blocks(*seq, osc, obs));
    } else {
      out.steps.emplace_back(std::get<IdealLocal>(prog.steps[i]));
    }
  }
  return out;
}

Matrix apply_blocks(const BlockPropagator& prop, const Matrix& states, int cutoff) {
  const Index nq = prop.basis.rows();
  const Index m = states.cols();
  if (states.rows() != nq * cutoff) throw InvalidArgument("state columns do not match the space");
  std::vector<Matrix> frame(static_cast<std::size_t>(nq), Matrix::Zero(cutoff, m));
  for (Index s = 0; s < nq; ++s) {
    for (Index j = 0; j < nq; ++j) {
      const Complex c = std::conj(prop.basis(j, s));
      if (c != Complex(0.0)) frame[s] += c * states.middleRows(j * cutoff, cutoff);
    }
    frame[s] = prop.blocks[s] * frame[s];
  }
  Matrix out = Matrix::Zero(states.rows(), m);
  for (Index j = 0; j < nq; ++j) {
    for (Index s = 0; s < nq; ++s) {
      const Complex c = prop.basis(j, s);
      if (c != Complex(0.0)) out.middleRows(j * cutoff, cutoff) += c * frame[s];
    }
  }
  return out;
}

Matrix apply_program(const PreparedProgram& prog, Matrix states,
                     const std::function<void(std::size_t, const Matrix&)>& observer) {
  if (states.rows() != prog.space().dim()) {
    throw InvalidArgument("state columns do not match " + describe(prog.space()));
  }
  for (std::size_t i = 0; i < prog.steps.size(); ++i) {
    if (const auto* prop = std::get_if<BlockPropagator>(&prog.steps[i])) {
      states = apply_blocks(*prop, states, prog.osc.cutoff);
    } else {
      apply_local_rows(states, std::get<IdealLocal>(prog.steps[i]), prog.n_qubits, prog.osc.cutoff);
    }
    if (observer) observer(i, states);
  }
  return states;
}

DenseOperator program_unitary(const Program& prog, const OscillatorSpec& osc,
                              const StepObserver& observer) {
  const PreparedProgram prepared = prepare_program(prog, osc);
  const Space space = prepared.space();
  std::function<void(std::size_t, const Matrix&)> obs;
  if (observer) obs = [&](std::size_t i, const Matrix& m) { observer(i, DenseOperator(space, m)); };
  return {space, apply_program(prepared, Matrix::Identity(space.dim(), space.dim()), obs)};
}

CompositeState evolve_program(const Program& prog, const CompositeState& initial) {
  const Space& space = initial.space();
  if (space.n_qubits != prog.n_qubits || !space.has_oscillator()) {
    throw InvalidArgument("state space " + describe(space) + " does not match a " +
                          std::to_string(prog.n_qubits) + "-qubit program");
  }
  const PreparedProgram prepared = prepare_program(prog, OscillatorSpec{space.cutoff});
  if (initial.is_pure()) {
    Vector psi = apply_program(prepared, initial.amplitudes());
    return CompositeState::pure(space, std::move(psi));
  }
  // U rho U^dag = U (U rho^dag)^dag for Hermitian rho.
  Matrix half = apply_program(prepared, initial.density());
  Matrix rho = apply_program(prepared, Matrix(half.adjoint()));
  return CompositeState::mixed(space, std::move(rho));
}

WaveformResult waveform_unitary(const SampledWaveform& wave, const AxisFrame& frame,
                                const OscillatorSpec& osc, double tolerance, int max_substeps) {
  auto at = [&](int substeps) {
    return sequence_unitary(PulseSequence{frame, wave.subdivide(substeps)}, osc);
  };
  int substeps = 1;
  DenseOperator prev = at(substeps);
  while (substeps * 2 <= max_substeps) {
    substeps *= 2;
    DenseOperator next = at(substeps);
    const double change = (next.mat - prev.mat).cwiseAbs().maxCoeff();
    if (change < tolerance) return {std::move(next), substeps, change};
    prev = std::move(next);
  }
  throw std::runtime_error("sampled waveform did not converge within " +
                           std::to_string(max_substeps) + " sub-steps");
}

}  // namespace oscbus
