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

#include "oscbus/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscbus/error.hpp"

namespace oscbus {

AxisFrame uniform_frame(int n_qubits, Axis axis) {
  return AxisFrame(static_cast<std::size_t>(n_qubits), axis);
}

std::vector<int> eigen_tuple(Index basis_index, int n_qubits) {
  std::vector<int> s(static_cast<std::size_t>(n_qubits));
  for (int l = 0; l < n_qubits; ++l) {
    s[l] = ((basis_index >> (n_qubits - 1 - l)) & 1) ? 1 : -1;
  }
  return s;
}

InternalOperator InternalOperator::constant(double c0) {
  InternalOperator op;
  op.c0_ = c0;
  return op;
}

InternalOperator InternalOperator::pauli(Axis axis, int qubit, double coeff) {
  InternalOperator op;
  op.add(axis, qubit, coeff);
  return op;
}

InternalOperator InternalOperator::offset_sum(Axis axis, std::span<const int> qubits) {
  InternalOperator op;
  for (int q : qubits) op += 0.5 * (pauli(axis, q) - constant(1.0));
  return op;
}

InternalOperator InternalOperator::projector(Axis axis, int qubit) {
  return 0.5 * (pauli(axis, qubit) + constant(1.0));
}

int InternalOperator::max_qubit() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

InternalOperator& InternalOperator::add(Axis axis, int qubit, double coeff) {
  if (qubit < 0) throw InvalidArgument("negative qubit index");
  auto [it, inserted] = terms_.try_emplace(qubit, PauliTerm{axis, coeff});
  if (!inserted) {
    if (it->second.axis != axis) {
      throw InvalidArgument("frame conflict: qubit " + std::to_string(qubit) + " used along " +
                            axis_name(it->second.axis) + " and " + axis_name(axis));
    }
    it->second.coeff += coeff;
  }
  return *this;
}

InternalOperator& InternalOperator::operator+=(const InternalOperator& rhs) {
  c0_ += rhs.c0_;
  for (const auto& [q, term] : rhs.terms_) add(term.axis, q, term.coeff);
  return *this;
}

InternalOperator& InternalOperator::operator*=(double s) {
  c0_ *= s;
  for (auto& [q, term] : terms_) term.coeff *= s;
  return *this;
}

double eval_eigenvalue(const InternalOperator& op, std::span<const int> s) {
  if (op.max_qubit() >= static_cast<int>(s.size())) {
    throw InvalidArgument("eigen-tuple of length " + std::to_string(s.size()) +
                          " too short for operator on qubit " + std::to_string(op.max_qubit()));
  }
  double value = op.c0();
  for (const auto& [q, term] : op.terms()) value += term.coeff * s[q];
  return value;
}

std::vector<std::string> frame_conflicts(const InternalOperator& op, const AxisFrame& frame) {
  std::vector<std::string> out;
  for (const auto& [q, term] : op.terms()) {
    if (q >= static_cast<int>(frame.size())) {
      out.push_back("qubit " + std::to_string(q) + " outside frame of " +
                    std::to_string(frame.size()) + " qubit(s)");
    } else if (frame[q] != term.axis) {
      out.push_back(std::string("frame conflict on qubit ") + std::to_string(q) + ": operator axis " +
                    axis_name(term.axis) + ", frame axis " + axis_name(frame[q]));
    }
  }
  return out;
}

AxisFrame frame_for(std::span<const InternalOperator* const> ops, int n_qubits) {
  AxisFrame frame(static_cast<std::size_t>(n_qubits), Axis::Z);
  std::vector<bool> fixed(frame.size(), false);
  for (const InternalOperator* op : ops) {
    for (const auto& [q, term] : op->terms()) {
      if (q >= n_qubits) {
        throw InvalidArgument("operator references qubit " + std::to_string(q) + " of a " +
                              std::to_string(n_qubits) + "-qubit register");
      }
      if (fixed[q] && frame[q] != term.axis) {
        throw InvalidArgument(std::string("frame conflict on qubit ") + std::to_string(q) + ": " +
                              axis_name(frame[q]) + " vs " + axis_name(term.axis));
      }
      frame[q] = term.axis;
      fixed[q] = true;
    }
  }
  return frame;
}

DenseOperator to_matrix(const InternalOperator& op, const AxisFrame& frame, int n_qubits) {
  if (static_cast<int>(frame.size()) != n_qubits) {
    throw InvalidArgument("frame size does not match qubit count");
  }
  const auto conflicts = frame_conflicts(op, frame);
  if (!conflicts.empty()) throw InvalidArgument(conflicts.front());
  const Space space = Space::qubits(n_qubits);
  Matrix m = op.c0() * Matrix::Identity(space.dim(), space.dim());
  for (const auto& [q, term] : op.terms()) m += term.coeff * pauli_matrix(term.axis, q, n_qubits).mat;
  return {space, std::move(m)};
}

double PulseSequence::total_duration() const {
  double t = 0.0;
  for (const auto& seg : segments) t += seg.duration;
  return t;
}

std::vector<std::string> validate_sequence(const PulseSequence& seq) {
  std::vector<std::string> out;
  if (seq.frame.empty()) out.emplace_back("empty frame");
  if (seq.segments.empty()) out.emplace_back("empty sequence");
  for (std::size_t i = 0; i < seq.segments.size(); ++i) {
    const auto& seg = seq.segments[i];
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      out.push_back(where + "non-positive duration");
    }
    for (double c : {seg.v, seg.w, seg.r, seg.g}) {
      if (!std::isfinite(c)) {
        out.push_back(where + "non-finite coefficient");
        break;
      }
    }
    for (const auto* op : {&seg.A, &seg.B, &seg.C, &seg.D}) {
      for (auto& msg : frame_conflicts(*op, seq.frame)) out.push_back(where + msg);
    }
  }
  return out;
}

std::size_t SampledWaveform::intervals() const {
  std::size_t n = 0;
  for (const auto* c : {&v, &w, &r, &g}) {
    if (c->empty()) continue;
    if (c->size() < 2) throw InvalidArgument("waveform needs at least two samples");
    if (n != 0 && c->size() - 1 != n) throw InvalidArgument("waveform sample counts differ");
    n = c->size() - 1;
  }
  if (n == 0) throw InvalidArgument("waveform has no samples");
  return n;
}

std::vector<PulseSegment> SampledWaveform::subdivide(int substeps) const {
  if (substeps < 1) throw InvalidArgument("substeps must be >= 1");
  if (!(duration > 0.0)) throw InvalidArgument("waveform duration must be positive");
  const std::size_t n = intervals();
  const double dt = duration / static_cast<double>(n);
  const double h = dt / substeps;
  auto sample = [](const std::vector<double>& c, std::size_t i, double frac) {
    if (c.empty()) return 0.0;
    return c[i] + (c[i + 1] - c[i]) * frac;
  };
  std::vector<PulseSegment> out;
  out.reserve(n * static_cast<std::size_t>(substeps));
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < substeps; ++k) {
      const double frac = (k + 0.5) / substeps;
      out.push_back({h, sample(v, i, frac), sample(w, i, frac), sample(r, i, frac),
                     sample(g, i, frac), A, B, C, D});
    }
  }
  return out;
}

Matrix IdealLocal::matrix() const {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return c * Matrix::Identity(2, 2) - kI * s * single_pauli(axis);
}

Matrix ideal_local_unitary(const IdealLocal& step, int n_qubits) {
  if (step.qubit < 0 || step.qubit >= n_qubits) {
    throw InvalidArgument("ideal local on qubit " + std::to_string(step.qubit) +
                          " outside register of " + std::to_string(n_qubits));
  }
  const Index left = Index{1} << step.qubit;
  const Index right = Index{1} << (n_qubits - step.qubit - 1);
  return kron(kron(Matrix::Identity(left, left), step.matrix()), Matrix::Identity(right, right));
}

Program& Program::then(const Program& other) {
  if (other.n_qubits != n_qubits) throw InvalidArgument("program register sizes differ");
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  return *this;
}

std::vector<const PulseSequence*> Program::sequences() const {
  std::vector<const PulseSequence*> out;
  for (const auto& step : steps) {
    if (const auto* seq = std::get_if<PulseSequence>(&step)) out.push_back(seq);
  }
  return out;
}

void validate_program(const Program& prog) {
  std::vector<std::string> problems;
  if (prog.n_qubits < 1) problems.emplace_back("program needs at least one qubit");
  for (std::size_t i = 0; i < prog.steps.size(); ++i) {
    const std::string where = "step " + std::to_string(i) + ": ";
    if (const auto* seq = std::get_if<PulseSequence>(&prog.steps[i])) {
      if (seq->n_qubits() != prog.n_qubits) problems.push_back(where + "frame size mismatch");
      for (auto& msg : validate_sequence(*seq)) problems.push_back(where + msg);
    } else {
      const auto& local = std::get<IdealLocal>(prog.steps[i]);
      if (local.qubit < 0 || local.qubit >= prog.n_qubits) {
        problems.push_back(where + "ideal local qubit out of range");
      }
      if (!std::isfinite(local.angle)) problems.push_back(where + "non-finite rotation angle");
    }
  }
  if (!problems.empty()) {
    std::ostringstream os;
    os << "invalid program:";
    for (const auto& p : problems) os << "\n  " << p;
    throw InvalidArgument(os.str());
  }
}

}  // namespace oscbus
