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

#include "oscbus/grover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "oscbus/compiler.hpp"
#include "oscbus/error.hpp"
#include "oscbus/integrator.hpp"

namespace oscbus {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void OracleSpec::validate() const {
  if (n < 1 || n > 62) throw InvalidArgument("oracle needs 1..62 qubits");
  if (x0 >= (std::uint64_t{1} << n)) {
    throw InvalidArgument("marked item " + std::to_string(x0) + " does not fit in " +
                          std::to_string(n) + " qubit(s)");
  }
}

std::vector<int> OracleSpec::bits() const {
  validate();
  std::vector<int> b(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) b[l] = static_cast<int>((x0 >> (n - 1 - l)) & 1u);
  return b;
}

Program compile_oracle(const OracleSpec& spec) {
  const auto b = spec.bits();
  Program prog{spec.n, {}};
  for (int l = 0; l < spec.n; ++l) {
    if (b[l] == 0) prog.then(IdealLocal{Axis::X, kPi, l});
  }
  prog.then(compile_projector_phase(spec.n, Axis::Z));
  for (int l = 0; l < spec.n; ++l) {
    if (b[l] == 0) prog.then(IdealLocal{Axis::X, -kPi, l});
  }
  return prog;
}

Program compile_inversion(int n, InversionMode mode) {
  if (n < 1) throw InvalidArgument("inversion needs at least one qubit");
  if (mode == InversionMode::XFrame) return compile_projector_phase(n, Axis::X);
  // R sz R^dag = sx for R = exp(-i (pi/2) sy / 2).
  Program prog{n, {}};
  for (int l = 0; l < n; ++l) prog.then(IdealLocal{Axis::Y, -0.5 * kPi, l});
  prog.then(compile_projector_phase(n, Axis::Z));
  for (int l = 0; l < n; ++l) prog.then(IdealLocal{Axis::Y, 0.5 * kPi, l});
  return prog;
}

Matrix ideal_oracle(const OracleSpec& spec) {
  spec.validate();
  const Index d = Index{1} << spec.n;
  Matrix m = Matrix::Identity(d, d);
  m(static_cast<Index>(spec.x0), static_cast<Index>(spec.x0)) = -1.0;
  return m;
}

Matrix ones_matrix(int n) {
  const Index d = Index{1} << n;
  return Matrix::Ones(d, d);
}

Matrix ideal_inversion(int n) {
  const Index d = Index{1} << n;
  return (2.0 / static_cast<double>(d)) * ones_matrix(n) - Matrix::Identity(d, d);
}

std::vector<IdentityCheck> m_matrix_identities(int n, double tolerance) {
  if (n < 1 || n > 5) throw InvalidArgument("M-matrix identities are checked for 1 <= n <= 5");
  const Index d = Index{1} << n;
  const double N = static_cast<double>(d);
  const Matrix M = ones_matrix(n);
  const Matrix I = Matrix::Identity(d, d);
  std::vector<IdentityCheck> out;
  auto record = [&](std::string name, const Matrix& lhs, const Matrix& rhs) {
    const double err = (lhs - rhs).cwiseAbs().maxCoeff();
    out.push_back({std::move(name), err, err <= tolerance});
  };

  const Complex s = kI * kPi / N;
  Matrix power = I;
  for (int k = 1; k <= 4; ++k) {
    power = power * (s * M);
    record("(sM)^" + std::to_string(k) + " = s^k N^(k-1) M", power,
           std::pow(s, k) * std::pow(N, k - 1) * M);
  }
  // exp(sM) with sM = -i H, H = -(pi/N) M Hermitian.
  const Matrix exp_sM = hermitian_exponential(-(kPi / N) * M, 1.0);
  record("exp(sM) = I + (e^{sN} - 1) M / N", exp_sM, I + (std::exp(s * N) - 1.0) / N * M);
  record("exp(sM) = I - (2/N) M at sN = i pi", exp_sM, I - (2.0 / N) * M);

  Matrix product = I;
  for (int l = 0; l < n; ++l) product = product * (pauli_matrix(Axis::X, l, n).mat + I);
  record("M = prod_l (sx_l + 1)", M, product);

  Matrix projector = I;
  for (int l = 0; l < n; ++l) projector = projector * (0.5 * (pauli_matrix(Axis::X, l, n).mat + I));
  record("exp(i pi prod (sx_l + 1)/2) = -((2/N) M - I)", hermitian_exponential(-kPi * projector, 1.0),
         -ideal_inversion(n));
  return out;
}

int default_iterations(int n) {
  return static_cast<int>(std::floor(kPi * std::sqrt(std::ldexp(1.0, n)) / 4.0));
}

bool addresses_uniformly(const Program& prog) {
  auto uniform_op = [&](const InternalOperator& op) {
    if (op.is_constant()) return true;
    if (static_cast<int>(op.terms().size()) != prog.n_qubits) return false;
    const auto& first = op.terms().begin()->second;
    return std::all_of(op.terms().begin(), op.terms().end(),
                       [&](const auto& kv) { return kv.second == first; });
  };
  // Ideal locals must come in runs touching every qubit with the same rotation.
  std::size_t i = 0;
  while (i < prog.steps.size()) {
    if (const auto* seq = std::get_if<PulseSequence>(&prog.steps[i])) {
      for (const auto& seg : seq->segments) {
        if (!uniform_op(seg.A) || !uniform_op(seg.B) || !uniform_op(seg.C) || !uniform_op(seg.D)) {
          return false;
        }
      }
      ++i;
      continue;
    }
    const auto& first = std::get<IdealLocal>(prog.steps[i]);
    std::vector<bool> seen(static_cast<std::size_t>(prog.n_qubits), false);
    std::size_t j = i;
    while (j < prog.steps.size() && j - i < static_cast<std::size_t>(prog.n_qubits)) {
      const auto* local = std::get_if<IdealLocal>(&prog.steps[j]);
      if (!local || local->axis != first.axis || local->angle != first.angle || seen[local->qubit]) {
        return false;
      }
      seen[local->qubit] = true;
      ++j;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
    i = j;
  }
  return true;
}

namespace {

Program preparation(int n) {
  Program prog{n, {}};
  for (int l = 0; l < n; ++l) prog.then(IdealLocal{Axis::Y, -0.5 * kPi, l});
  return prog;
}

GroverResult run_ideal(int n, std::uint64_t x0, int iterations, GroverResult result) {
  const Index d = Index{1} << n;
  Vector psi = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const Index marked = static_cast<Index>(x0);
  result.per_iteration.push_back(std::norm(psi(marked)));
  for (int it = 0; it < iterations; ++it) {
    psi(marked) = -psi(marked);
    const Complex mean = psi.mean();
    psi = (2.0 * mean) * Vector::Ones(d) - psi;
    result.per_iteration.push_back(std::norm(psi(marked)));
  }
  result.distribution.resize(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) result.distribution[j] = std::norm(psi(j));
  result.success_probability = result.per_iteration.back();
  return result;
}

double marked_probability(const Matrix& columns, bool mixed, Index marked, int cutoff) {
  double p = 0.0;
  for (int k = 0; k < cutoff; ++k) {
    const Index idx = marked * cutoff + k;
    p += mixed ? columns(idx, idx).real() : std::norm(columns(idx, 0));
  }
  return p;
}

}  // namespace

GroverResult run_grover(int n, std::uint64_t x0, const GroverOptions& opts) {
  const OracleSpec spec{n, x0};
  spec.validate();
  const int iterations = opts.iterations.value_or(default_iterations(n));
  if (iterations < 0) throw InvalidArgument("iteration count must be non-negative");

  GroverResult result;
  result.n = n;
  result.x0 = x0;
  result.iterations = iterations;
  result.osc_input = opts.osc_input.label();
  if (opts.mode == GroverMode::Ideal) {
    result.mode = "ideal";
    return run_ideal(n, x0, iterations, std::move(result));
  }
  result.mode = "bus";
  if (n > 4) {
    throw ResourceLimit("bus simulation of Grover search is limited to 4 qubits; use ideal mode");
  }

  const Program oracle = compile_oracle(spec);
  const Program inversion = compile_inversion(n, opts.inversion);
  const std::vector<OscInput> inputs{opts.osc_input};
  GateReportOptions rep_opts;
  rep_opts.cutoff = opts.cutoff;
  result.oracle_report = gate_report(oracle, ideal_oracle(spec), inputs, rep_opts, "grover-oracle");
  result.inversion_report =
      gate_report(inversion, ideal_inversion(n), inputs, rep_opts, "grover-inversion");
  const int cutoff = std::max(result.oracle_report->cutoff, result.inversion_report->cutoff);
  result.cutoff = cutoff;
  const OscillatorSpec osc{cutoff};
  check_dimension(n, osc);

  Program step = oracle;
  step.then(inversion);
  const PreparedProgram prep = prepare_program(preparation(n), osc);
  const PreparedProgram iterate = prepare_program(step, osc);

  const Space space = Space::composite(n, osc);
  const Index d = space.dim();
  const bool mixed = opts.osc_input.kind == OscInput::Kind::Thermal;
  Matrix state;
  if (mixed) {
    state = Matrix::Zero(d, d);
    for (const auto& [k, w] : opts.osc_input.components()) {
      if (k >= cutoff) throw InvalidArgument("thermal input exceeds the cutoff");
      state(k, k) = w;
    }
  } else {
    state = Matrix::Zero(d, 1);
    state(opts.osc_input.fock, 0) = 1.0;
  }
  auto advance = [&](const PreparedProgram& p) {
    if (!mixed) {
      state = apply_program(p, std::move(state));
    } else {
      Matrix half = apply_program(p, std::move(state));
      state = apply_program(p, Matrix(half.adjoint()));
    }
  };

  const Index marked = static_cast<Index>(x0);
  advance(prep);
  result.per_iteration.push_back(marked_probability(state, mixed, marked, cutoff));
  for (int it = 0; it < iterations; ++it) {
    advance(iterate);
    result.per_iteration.push_back(marked_probability(state, mixed, marked, cutoff));
  }
  const CompositeState final_state =
      mixed ? CompositeState::mixed(space, state) : CompositeState::pure(space, state.col(0));
  const RealVector pops = final_state.qubit_populations();
  result.distribution.assign(pops.data(), pops.data() + pops.size());
  result.success_probability = result.per_iteration.back();
  return result;
}

AllOnesReport demo_all_ones(int n, const GroverOptions& opts) {
  if (n < 1 || n > 4) throw InvalidArgument("all-ones demonstration supports 1..4 qubits");
  const std::uint64_t x0 = (std::uint64_t{1} << n) - 1;
  AllOnesReport rep;
  Program full = preparation(n);
  full.then(compile_oracle({n, x0}));
  full.then(compile_inversion(n, opts.inversion));
  rep.uniform_addressing = addresses_uniformly(full);
  rep.run = run_grover(n, x0, opts);
  rep.excited_count.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (std::size_t j = 0; j < rep.run.distribution.size(); ++j) {
    rep.excited_count[std::popcount(j)] += rep.run.distribution[j];
  }
  return rep;
}

}  // namespace oscbus
