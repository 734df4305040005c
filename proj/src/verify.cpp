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

#include "oscbus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oscbus/analysis.hpp"
#include "oscbus/compiler.hpp"
#include "oscbus/error.hpp"
#include "oscbus/grover.hpp"
#include "oscbus/integrator.hpp"

namespace oscbus {
namespace {

constexpr double kPi = std::numbers::pi;

// Largest displacement the random sequences are scaled down to.
constexpr double kRandomReach = 2.5;

InternalOperator random_operator(std::mt19937_64& rng, const AxisFrame& frame) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::bernoulli_distribution present(0.7);
  InternalOperator op = InternalOperator::constant(coeff(rng));
  for (int l = 0; l < static_cast<int>(frame.size()); ++l) {
    if (present(rng)) op.add(frame[l], l, coeff(rng));
  }
  return op;
}

// Worst difference over every row and the columns of low Fock level.
double low_column_deviation(const Matrix& lhs, const Matrix& rhs, int cutoff, int low_levels) {
  double worst = 0.0;
  for (Index c = 0; c < lhs.cols(); ++c) {
    if (c % cutoff >= low_levels) continue;
    worst = std::max(worst, (lhs.col(c) - rhs.col(c)).cwiseAbs().maxCoeff());
  }
  return worst;
}

double fourier_identity_error(int n_controls) {
  const auto terms = projector_fourier_terms(n_controls);
  double worst = 0.0;
  for (Index j = 0; j < (Index{1} << n_controls); ++j) {
    const auto s = eigen_tuple(j, n_controls);
    double projector = 1.0;
    double offset = 0.0;
    for (int sl : s) {
      projector *= 0.5 * (sl + 1);
      offset += 0.5 * (sl - 1);
    }
    double series = 0.0;
    for (const auto& t : terms) series += t.weight * std::cos(t.angle * offset);
    worst = std::max(worst, std::abs(series - projector));
  }
  return worst;
}

CheckResult check(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance};
}

}  // namespace

PulseSequence random_sequence(std::mt19937_64& rng, int n_qubits, int n_segments) {
  if (n_qubits < 1 || n_segments < 1) throw InvalidArgument("random sequence needs qubits and segments");
  std::uniform_int_distribution<int> axis(0, 2);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> duration(0.1, 1.0);
  PulseSequence seq;
  for (int l = 0; l < n_qubits; ++l) seq.frame.push_back(static_cast<Axis>(axis(rng)));
  for (int i = 0; i < n_segments; ++i) {
    PulseSegment seg;
    seg.duration = duration(rng);
    seg.v = coeff(rng);
    seg.w = coeff(rng);
    seg.r = coeff(rng);
    seg.g = coeff(rng);
    seg.A = random_operator(rng, seq.frame);
    seg.B = random_operator(rng, seq.frame);
    seg.C = random_operator(rng, seq.frame);
    seg.D = random_operator(rng, seq.frame);
    seq.segments.push_back(std::move(seg));
  }
  const double reach = max_displacement(seq);
  if (reach > kRandomReach) {
    const double scale = kRandomReach / reach;
    for (auto& seg : seq.segments) {
      seg.v *= scale;
      seg.w *= scale;
    }
  }
  return seq;
}

double dual_path_deviation(const PulseSequence& seq, int cutoff, int low_levels,
                           const PropagatorOptions& opts) {
  const OscillatorSpec osc{cutoff};
  const Matrix closed = closed_form_unitary(seq, osc, opts).unitary.mat;
  const Matrix brute = sequence_unitary(seq, osc).mat;
  return low_column_deviation(closed, brute, cutoff, low_levels);
}

double derivative_residual(const PulseSequence& seq, double t, int cutoff, int low_levels,
                           const PropagatorOptions& opts) {
  const OscillatorSpec osc{cutoff};
  const double h = 1e-4;
  double start = 0.0;
  const PulseSegment* active = nullptr;
  for (const auto& seg : seq.segments) {
    if (t >= start && t < start + seg.duration) {
      active = &seg;
      break;
    }
    start += seg.duration;
  }
  if (!active || t - 2 * h <= start || t + 2 * h >= start + active->duration) {
    throw InvalidArgument("derivative check needs t at least 2h inside one segment");
  }
  auto at = [&](double time) {
    return closed_form_unitary(truncate_sequence(seq, time), osc, opts).unitary.mat;
  };
  // Fourth-order central difference.
  const Matrix lhs = (8.0 * (at(t + h) - at(t - h)) - (at(t + 2 * h) - at(t - 2 * h))) / (12.0 * h);
  const Matrix H = segment_hamiltonian(*active, seq.frame, seq.n_qubits(), osc).mat;
  const Matrix rhs = -kI * H * at(t);
  return low_column_deviation(lhs, rhs, cutoff, low_levels);
}

double area_law_deviation(const PropagatorOptions& opts) {
  const double side = std::sqrt(0.5 * kPi);
  const std::vector<int> four{0, 1, 2, 3};
  std::vector<Program> programs{
      compile_rectangle(side, side, InternalOperator::projector(Axis::Z, 0),
                        InternalOperator::pauli(Axis::X, 1), 2),
      compile_parallelogram(0.7, 0.9, InternalOperator::pauli(Axis::X, 1),
                            InternalOperator::offset_sum(Axis::Z, std::vector<int>{0}), 2),
      compile_cnnot(1),
      compile_cnnot(2),
      compile_cnnot(3),
      compile_toffoli(1),
      compile_toffoli(2),
      compile_product_phase(0.3, four),
      compile_oracle({3, 5}),
      compile_inversion(3),
  };
  double worst = 0.0;
  for (const auto& prog : programs) {
    for (const auto* seq : prog.sequences()) {
      const auto closure = closure_report(*seq);
      if (!closure.is_closed) return std::numeric_limits<double>::infinity();
      for (const auto& rec : accumulate_all(*seq, opts)) {
        worst = std::max(worst, std::abs(rec.S - enclosed_area(rec)));
      }
    }
  }
  return worst;
}

std::vector<CheckResult> run_verification(std::uint64_t seed, int cases,
                                          const PropagatorOptions& opts) {
  if (cases < 1) throw InvalidArgument("need at least one verification case");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> qubits(2, 3);
  std::uniform_int_distribution<int> segments(1, 6);
  std::uniform_real_distribution<double> inside(0.2, 0.8);

  double dual = 0.0;
  double derivative = 0.0;
  for (int c = 0; c < cases; ++c) {
    const int nq = qubits(rng);
    const int ns = segments(rng);
    const PulseSequence seq = random_sequence(rng, nq, ns);
    dual = std::max(dual, dual_path_deviation(seq, 40, 4, opts));
    std::uniform_int_distribution<int> pick(0, ns - 1);
    const int which = pick(rng);
    double t = 0.0;
    for (int i = 0; i < which; ++i) t += seq.segments[i].duration;
    t += inside(rng) * seq.segments[which].duration;
    derivative = std::max(derivative, derivative_residual(seq, t, 40, 4, opts));
  }

  std::vector<CheckResult> out;
  out.push_back(check("dual-path closed form vs integrator (" + std::to_string(cases) + " cases)",
                      dual, 1e-6));
  out.push_back(check("derivative of the factored propagator", derivative, 1e-6));

  const double side = std::sqrt(0.5 * kPi);
  const auto A = InternalOperator::projector(Axis::Z, 0);
  const auto B = InternalOperator::pauli(Axis::X, 1);
  const Program rect = compile_rectangle(side, side, A, B, 2);
  const Matrix target = ideal::rectangle(side, side, A, B, 2);
  const std::vector<OscInput> vacuum{OscInput::fock_state(0)};
  const GateReport rep = gate_report(rect, target, vacuum, {}, "rectangle");
  out.push_back(check("rectangle regression, integrator infidelity", 1.0 - rep.min_fidelity(), 1e-6));
  const auto& seq = *rect.sequences().front();
  const DenseOperator closed = closed_form_unitary(seq, OscillatorSpec{rep.cutoff}, opts).unitary;
  const EffectiveUnitary eff = effective_qubit_unitary(closed, fock_vector(rep.cutoff, 0));
  out.push_back(check("rectangle regression, closed-form infidelity",
                      1.0 - process_fidelity(eff.gate, target), 1e-6));

  double fourier = 0.0;
  for (int nc = 1; nc <= 5; ++nc) fourier = std::max(fourier, fourier_identity_error(nc));
  out.push_back(check("Fourier projector identity, n_c = 1..5", fourier, 1e-12));

  double m_identities = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& c : m_matrix_identities(n)) m_identities = std::max(m_identities, c.error);
  }
  out.push_back(check("M-matrix identities, n = 1..4", m_identities, 1e-10));
  out.push_back(check("area law over compiled gates", area_law_deviation(opts), 1e-9));
  return out;
}

}  // namespace oscbus
