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

#include "oscbus/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscbus/error.hpp"
#include "oscbus/integrator.hpp"
#include "oscbus/propagator.hpp"

namespace oscbus {

EffectiveUnitary effective_qubit_unitary(const DenseOperator& U_full, const Vector& osc_state) {
  const Space& space = U_full.space;
  if (!space.has_oscillator() || osc_state.size() != space.cutoff) {
    throw InvalidArgument("oscillator state does not match " + describe(space));
  }
  if (std::abs(osc_state.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("oscillator state is not normalized");
  }
  const Index nq = space.qubit_dim();
  const Index no = space.cutoff;
  Matrix G(nq, nq);
  for (Index j = 0; j < nq; ++j) {
    for (Index k = 0; k < nq; ++k) {
      G(j, k) = osc_state.dot(U_full.mat.block(j * no, k * no, no, no) * osc_state);
    }
  }
  return {G, unitarity_defect(G)};
}

double process_fidelity(const Matrix& G, const Matrix& G_ideal) {
  if (G.rows() != G_ideal.rows() || G.cols() != G_ideal.cols() || G.rows() != G.cols()) {
    throw InvalidArgument("process fidelity needs square matrices of equal dimension");
  }
  return std::abs((G_ideal.adjoint() * G).trace()) / static_cast<double>(G.rows());
}

OscInput OscInput::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument("oscillator input must look like fock:k or thermal:nbar, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    if (kind == "fock") {
      const int k = std::stoi(value, &used);
      if (used != value.size() || k < 0) throw InvalidArgument("bad Fock level");
      return fock_state(k);
    }
    if (kind == "thermal") {
      const double nbar = std::stod(value, &used);
      if (used != value.size() || !(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw InvalidArgument("bad thermal occupation");
      }
      return thermal(nbar);
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse oscillator input '" + text + "'");
  }
  throw InvalidArgument("unknown oscillator input kind '" + kind + "'");
}

std::string OscInput::label() const {
  std::ostringstream os;
  if (kind == Kind::Fock) {
    os << "fock:" << fock;
  } else {
    os << "thermal:" << nbar;
  }
  return os.str();
}

std::vector<std::pair<int, double>> OscInput::components() const {
  if (kind == Kind::Fock) return {{fock, 1.0}};
  const RealVector w = thermal_weights(nbar);
  std::vector<std::pair<int, double>> out;
  for (Index k = 0; k < w.size(); ++k) out.emplace_back(static_cast<int>(k), w(k));
  return out;
}

int OscInput::highest_level() const { return components().back().first; }

double GateReport::min_fidelity() const {
  double f = 1.0;
  for (const auto& in : inputs) f = std::min(f, in.fidelity);
  return f;
}

int suggest_cutoff(const Program& prog, int highest_level, double leakage_margin, int minimum) {
  double alpha = 0.0;
  for (const auto* seq : prog.sequences()) alpha = std::max(alpha, max_displacement(*seq));
  const double reach = std::sqrt(static_cast<double>(highest_level)) + alpha + 2.0;
  const double needed = (reach * reach + 4.0) / (1.0 - leakage_margin);
  int cutoff = std::max(minimum, 2);
  while (cutoff < needed) cutoff *= 2;
  return cutoff;
}

namespace {

struct CutoffResult {
  std::vector<InputResult> inputs;
};

int top_start(int cutoff, double margin) {
  return std::max(1, static_cast<int>(std::floor((1.0 - margin) * cutoff)));
}

CutoffResult evaluate_at(const Program& prog, const Matrix& ideal, std::span<const OscInput> inputs,
                         int cutoff, double margin) {
  const OscillatorSpec osc{cutoff};
  const int nq_bits = prog.n_qubits;
  const Index nq = Index{1} << nq_bits;
  const int top = top_start(cutoff, margin);

  std::vector<int> levels;
  for (const auto& in : inputs) {
    for (const auto& [k, w] : in.components()) levels.push_back(k);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.back() >= cutoff) {
    throw InvalidArgument("cutoff " + std::to_string(cutoff) + " cannot hold Fock level " +
                          std::to_string(levels.back()));
  }

  // Peak top-level population per Fock input inside every pulse sequence,
  // bounded per joint-eigenvector block.
  std::vector<double> peak(static_cast<std::size_t>(cutoff), 0.0);
  auto watch_blocks = [&](std::size_t, const BlockPropagator& prop) {
    for (const auto& block : prop.blocks) {
      const RealVector col_top = block.bottomRows(cutoff - top).colwise().squaredNorm().transpose();
      for (int k : levels) peak[k] = std::max(peak[k], col_top(k));
    }
  };
  const PreparedProgram prepared = prepare_program(prog, osc, watch_blocks);

  std::vector<double> fid(static_cast<std::size_t>(cutoff), 0.0);
  std::vector<double> res(static_cast<std::size_t>(cutoff), 0.0);
  for (int k : levels) {
    Matrix cols = Matrix::Zero(nq * cutoff, nq);
    for (Index j = 0; j < nq; ++j) cols(j * cutoff + k, j) = 1.0;
    double step_peak = 0.0;
    auto watch_steps = [&](std::size_t, const Matrix& states) {
      for (Index c = 0; c < states.cols(); ++c) {
        double top_pop = 0.0;
        for (Index j = 0; j < nq; ++j) {
          top_pop += states.col(c).segment(j * cutoff + top, cutoff - top).squaredNorm();
        }
        step_peak = std::max(step_peak, top_pop);
      }
    };
    const Matrix out = apply_program(prepared, std::move(cols), watch_steps);
    Matrix G(nq, nq);
    for (Index j = 0; j < nq; ++j) G.row(j) = out.row(j * cutoff + k);
    fid[k] = process_fidelity(G, ideal);
    res[k] = unitarity_defect(G);
    peak[k] = std::max(peak[k], step_peak);
  }

  CutoffResult result;
  for (const auto& in : inputs) {
    InputResult r{in.label(), 0.0, 0.0, 0.0};
    for (const auto& [k, w] : in.components()) {
      r.fidelity += w * fid[k];
      r.residual += w * res[k];
      r.leakage += w * peak[k];
    }
    r.fidelity = std::clamp(r.fidelity, 0.0, 1.0);
    result.inputs.push_back(r);
  }
  return result;
}

}  // namespace

GateReport gate_report(const Program& prog, const Matrix& ideal_gate,
                       std::span<const OscInput> inputs, const GateReportOptions& opts,
                       std::string gate_name) {
  validate_program(prog);
  if (inputs.empty()) throw InvalidArgument("gate report needs at least one oscillator input");
  const Index nq = Index{1} << prog.n_qubits;
  if (ideal_gate.rows() != nq || ideal_gate.cols() != nq) {
    throw InvalidArgument("ideal gate dimension does not match the program register");
  }
  if (unitarity_defect(ideal_gate) > 1e-9) throw InvalidArgument("ideal gate is not unitary");

  GateReport rep;
  rep.gate = std::move(gate_name);
  rep.n_qubits = prog.n_qubits;

  for (const auto* seq : prog.sequences()) {
    const auto closure = closure_report(*seq, opts.closure_tolerance);
    rep.closure_V = std::max(rep.closure_V, closure.worst_V);
    rep.closure_W = std::max(rep.closure_W, closure.worst_W);
    rep.closure_R = std::max(rep.closure_R, closure.worst_R);
  }
  rep.closure_ok = std::max({rep.closure_V, rep.closure_W, rep.closure_R}) <= opts.closure_tolerance;

  int highest = 0;
  for (const auto& in : inputs) highest = std::max(highest, in.highest_level());

  auto worst_leak = [](const CutoffResult& r) {
    double l = 0.0;
    for (const auto& in : r.inputs) l = std::max(l, in.leakage);
    return l;
  };

  CutoffResult current;
  if (opts.cutoff) {
    check_dimension(prog.n_qubits, OscillatorSpec{*opts.cutoff});
    current = evaluate_at(prog, ideal_gate, inputs, *opts.cutoff, opts.leakage_margin);
    rep.cutoff = *opts.cutoff;
    rep.cutoff_history.push_back(rep.cutoff);
  } else {
    int cutoff = suggest_cutoff(prog, highest, opts.leakage_margin, opts.auto_start);
    check_dimension(prog.n_qubits, OscillatorSpec{cutoff});
    current = evaluate_at(prog, ideal_gate, inputs, cutoff, opts.leakage_margin);
    rep.cutoff_history.push_back(cutoff);
    rep.cutoff_converged = false;
    while (true) {
      const int next = cutoff * 2;
      if (Space::composite(prog.n_qubits, OscillatorSpec{next}).dim() > max_composite_dim()) {
        rep.warnings.push_back("cutoff doubling stopped at " + std::to_string(cutoff) +
                               " by the dimension limit");
        break;
      }
      CutoffResult refined = evaluate_at(prog, ideal_gate, inputs, next, opts.leakage_margin);
      rep.cutoff_history.push_back(next);
      double change = 0.0;
      for (std::size_t i = 0; i < refined.inputs.size(); ++i) {
        change = std::max(change, std::abs(refined.inputs[i].fidelity - current.inputs[i].fidelity));
      }
      // The smaller cutoff is kept once its doubling confirms it.
      if (change < opts.auto_convergence && worst_leak(current) <= opts.leakage_threshold) {
        rep.cutoff_converged = true;
        break;
      }
      current = std::move(refined);
      cutoff = next;
    }
    rep.cutoff = cutoff;
  }

  rep.inputs = current.inputs;
  double fmin = 1.0;
  double fmax = 0.0;
  for (const auto& in : rep.inputs) {
    fmin = std::min(fmin, in.fidelity);
    fmax = std::max(fmax, in.fidelity);
    rep.worst_leakage = std::max(rep.worst_leakage, in.leakage);
    rep.worst_residual = std::max(rep.worst_residual, in.residual);
  }
  rep.fidelity_spread = fmax - fmin;
  rep.fidelity_ok = fmin >= 1.0 - opts.fidelity_tolerance;
  rep.spread_ok = rep.fidelity_spread <= opts.spread_tolerance;
  rep.residual_ok = rep.worst_residual <= opts.residual_tolerance;
  rep.leakage_ok = rep.worst_leakage <= opts.leakage_threshold;
  if (!rep.closure_ok) rep.warnings.push_back("pulse sequence does not close");
  if (!rep.leakage_ok) rep.warnings.push_back("population reaches the top Fock levels");
  rep.passed = rep.fidelity_ok && rep.spread_ok && rep.residual_ok && rep.closure_ok &&
               rep.leakage_ok && rep.cutoff_converged;
  return rep;
}

namespace ideal {

Matrix exp_generator(const Matrix& generator, double t) { return hermitian_exponential(generator, t); }

Matrix rectangle(double lambda1, double lambda2, const InternalOperator& A,
                 const InternalOperator& B, int n_qubits) {
  const std::vector<const InternalOperator*> ops{&A, &B};
  const AxisFrame frame = frame_for(ops, n_qubits);
  const Matrix gen = to_matrix(A, frame, n_qubits).mat * to_matrix(B, frame, n_qubits).mat;
  return exp_generator(gen, lambda1 * lambda2);
}

Matrix cnnot(int n_controls) {
  if (n_controls < 1) throw InvalidArgument("need at least one control qubit");
  const int n = n_controls + 1;
  const Index d = Index{1} << n;
  Matrix P = Matrix::Identity(d, d);
  for (int l = 0; l < n_controls; ++l) {
    P = P * (0.5 * (pauli_matrix(Axis::Z, l, n).mat + Matrix::Identity(d, d)));
  }
  const Matrix gen = P * pauli_matrix(Axis::X, n_controls, n).mat;
  return exp_generator(gen, 0.5 * std::numbers::pi);
}

Matrix product_phase(double mu, std::span<const int> qubits, int n_qubits) {
  const Index d = Index{1} << n_qubits;
  Matrix gen = Matrix::Identity(d, d);
  for (int q : qubits) gen = gen * pauli_matrix(Axis::Z, q, n_qubits).mat;
  return exp_generator(gen, mu);
}

Matrix cos_gate(double mu, double theta, const InternalOperator& A, const InternalOperator& C,
                int n_qubits) {
  const std::vector<const InternalOperator*> ops{&A, &C};
  const AxisFrame frame = frame_for(ops, n_qubits);
  const Matrix c = to_matrix(C, frame, n_qubits).mat;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(c);
  const Vector cosines =
      solver.eigenvalues().unaryExpr([theta](double e) { return std::cos(theta * e); }).cast<Complex>();
  const Matrix cos_c = solver.eigenvectors() * cosines.asDiagonal() * solver.eigenvectors().adjoint();
  const Matrix gen = to_matrix(A, frame, n_qubits).mat * cos_c;
  return exp_generator(0.5 * (gen + gen.adjoint()), mu);
}

}  // namespace ideal

}  // namespace oscbus
