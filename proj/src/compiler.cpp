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

#include "oscbus/compiler.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "oscbus/error.hpp"

namespace oscbus {
namespace {

constexpr double kPi = std::numbers::pi;

// A straight displacement: impulse on A x (kind A) or B p (kind B), taken in
// the phase-space frame rotated by rho * C.
struct Edge {
  enum class Kind { A, B } kind;
  double impulse;
  double rho;

  Edge reversed() const { return {kind, -impulse, rho}; }
};

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw InvalidArgument(std::string(name) + " must be finite");
}

AxisFrame shared_frame(std::initializer_list<const InternalOperator*> ops, int n_qubits) {
  if (n_qubits < 1) throw InvalidArgument("register needs at least one qubit");
  std::vector<const InternalOperator*> list(ops);
  return frame_for(list, n_qubits);
}

PulseSequence emit(const std::vector<Edge>& edges, const InternalOperator& A,
                   const InternalOperator& B, const InternalOperator& C, const AxisFrame& frame) {
  PulseSequence seq{frame, {}};
  double rho = 0.0;
  auto rotate_to = [&](double target) {
    if (target == rho) return;
    PulseSegment rot;
    rot.r = target - rho;
    rot.C = C;
    seq.segments.push_back(rot);
    rho = target;
  };
  for (const auto& e : edges) {
    rotate_to(e.rho);
    PulseSegment seg;
    if (e.kind == Edge::Kind::A) {
      seg.v = e.impulse;
      seg.A = A;
    } else {
      seg.w = e.impulse;
      seg.B = B;
    }
    seq.segments.push_back(seg);
  }
  rotate_to(0.0);
  if (seq.segments.empty()) seq.segments.push_back(PulseSegment{});
  return seq;
}

// Parallelogram with sides B (impulse beta, frame 0) and A (impulse alpha,
// frame theta); encloses alpha * beta * a * b * cos(theta c).
std::vector<Edge> parallelogram_edges(double mu, double theta) {
  if (mu == 0.0) return {};
  const double alpha = std::sqrt(std::abs(mu));
  const double beta = mu / alpha;
  const Edge b{Edge::Kind::B, beta, 0.0};
  const Edge a{Edge::Kind::A, alpha, theta};
  return {b, a, b.reversed(), a.reversed()};
}

Program single_sequence_program(int n_qubits, PulseSequence seq) {
  Program prog{n_qubits, {}};
  prog.then(std::move(seq));
  return prog;
}

}  // namespace

Program compile_rectangle(double lambda1, double lambda2, const InternalOperator& A,
                          const InternalOperator& B, int n_qubits) {
  require_finite(lambda1, "lambda1");
  require_finite(lambda2, "lambda2");
  const AxisFrame frame = shared_frame({&A, &B}, n_qubits);
  PulseSequence seq{frame, {}};
  PulseSegment p_side;
  p_side.w = lambda2;
  p_side.B = B;
  PulseSegment x_side;
  x_side.v = lambda1;
  x_side.A = A;
  seq.segments.push_back(p_side);
  seq.segments.push_back(x_side);
  p_side.w = -lambda2;
  x_side.v = -lambda1;
  seq.segments.push_back(p_side);
  seq.segments.push_back(x_side);
  return single_sequence_program(n_qubits, std::move(seq));
}

Program compile_parallelogram(double mu, double theta, const InternalOperator& A,
                              const InternalOperator& C, int n_qubits, const InternalOperator& B) {
  require_finite(mu, "mu");
  require_finite(theta, "theta");
  const AxisFrame frame = shared_frame({&A, &B, &C}, n_qubits);
  return single_sequence_program(n_qubits, emit(parallelogram_edges(mu, theta), A, B, C, frame));
}

Program compile_chain(std::span<const ChainTerm> terms, const InternalOperator& A,
                      const InternalOperator& C, int n_qubits) {
  if (terms.empty()) throw InvalidArgument("chain needs at least one term");
  for (const auto& t : terms) {
    require_finite(t.mu, "mu");
    require_finite(t.theta, "theta");
  }
  const InternalOperator B = InternalOperator::constant(1.0);
  const AxisFrame frame = shared_frame({&A, &C}, n_qubits);

  std::vector<Edge> edges;
  Edge pivot{Edge::Kind::A, 0.0, 0.0};
  for (const auto& t : terms) {
    if (t.mu == 0.0) continue;
    if (edges.empty()) {
      edges = parallelogram_edges(t.mu, t.theta);
      pivot = edges[1];
      continue;
    }
    // The previous loop ends with -pivot; this one starts with +pivot, so both
    // are dropped and the new loop is (pivot), side, -pivot, -side.
    Edge side = pivot.kind == Edge::Kind::A
                    ? Edge{Edge::Kind::B, -t.mu / pivot.impulse, pivot.rho - t.theta}
                    : Edge{Edge::Kind::A, t.mu / pivot.impulse, pivot.rho + t.theta};
    edges.pop_back();
    edges.push_back(side);
    edges.push_back(pivot.reversed());
    edges.push_back(side.reversed());
    pivot = side;
  }
  return single_sequence_program(n_qubits, emit(edges, A, B, C, frame));
}

Program compile_chain_unmerged(std::span<const ChainTerm> terms, const InternalOperator& A,
                               const InternalOperator& C, int n_qubits) {
  if (terms.empty()) throw InvalidArgument("chain needs at least one term");
  Program prog{n_qubits, {}};
  for (const auto& t : terms) prog.then(compile_parallelogram(t.mu, t.theta, A, C, n_qubits));
  return prog;
}

Program compile_toffoli(int K, double omega) {
  if (K < 1) throw InvalidArgument("Toffoli loop count K must be a positive integer");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidArgument("Toffoli drive strength must be positive");
  }
  const double kk = static_cast<double>(K);
  PulseSegment seg;
  seg.duration = 2.0 * kPi * kk / omega;
  seg.v = omega;
  seg.A = (InternalOperator::pauli(Axis::Z, 0) + InternalOperator::pauli(Axis::Z, 1) +
           InternalOperator::constant(1.0)) *
          (1.0 / (4.0 * std::sqrt(kk)));
  seg.r = -omega;
  seg.C = InternalOperator::pauli(Axis::X, 2);
  seg.g = -omega / (32.0 * kk);
  seg.D = InternalOperator::pauli(Axis::X, 2);
  return single_sequence_program(3, PulseSequence{{Axis::Z, Axis::Z, Axis::X}, {seg}});
}

std::vector<FourierTerm> projector_fourier_terms(int n_controls) {
  if (n_controls < 1) throw InvalidArgument("need at least one control qubit");
  const int m = n_controls + 1;
  std::vector<FourierTerm> out;
  out.reserve(m);
  for (int k = 1; k <= m; ++k) out.push_back({1.0 / m, 2.0 * kPi * k / m});
  return out;
}

Program compile_cnnot(int n_controls) {
  const auto fourier = projector_fourier_terms(n_controls);
  std::vector<int> controls(n_controls);
  std::iota(controls.begin(), controls.end(), 0);
  std::vector<ChainTerm> terms;
  for (const auto& f : fourier) terms.push_back({0.5 * kPi * f.weight, f.angle});
  return compile_chain(terms, InternalOperator::pauli(Axis::X, n_controls),
                       InternalOperator::offset_sum(Axis::Z, controls), n_controls + 1);
}

Program compile_product_phase(double mu, std::span<const int> qubits, int n_qubits) {
  if (qubits.empty()) throw InvalidArgument("product phase needs at least one qubit");
  int n = n_qubits;
  for (int q : qubits) {
    if (q < 0) throw InvalidArgument("negative qubit index");
    n = std::max(n, q + 1);
  }
  return compile_parallelogram(mu, kPi, InternalOperator::constant(1.0),
                               InternalOperator::offset_sum(Axis::Z, qubits), n);
}

Program compile_projector_phase(int n_qubits, Axis axis) {
  if (n_qubits < 1) throw InvalidArgument("register needs at least one qubit");
  std::vector<int> all(n_qubits);
  std::iota(all.begin(), all.end(), 0);
  std::vector<ChainTerm> terms;
  for (const auto& f : projector_fourier_terms(n_qubits)) terms.push_back({-kPi * f.weight, f.angle});
  return compile_chain(terms, InternalOperator::constant(1.0),
                       InternalOperator::offset_sum(axis, all), n_qubits);
}

}  // namespace oscbus
