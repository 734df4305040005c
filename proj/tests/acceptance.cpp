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

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "oscbus/analysis.hpp"
#include "oscbus/compiler.hpp"
#include "oscbus/grover.hpp"
#include "oscbus/integrator.hpp"
#include "oscbus/verify.hpp"

using namespace oscbus;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

// Returns pass/fail; prints the line with the elapsed wall time.
bool run(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = o.passed;
  std::string timing = "time " + std::to_string(secs).substr(0, 6) + " s";
  if (time_limit_s > 0) {
    timing += " (limit " + std::to_string(static_cast<int>(time_limit_s)) + " s)";
    ok = ok && secs < time_limit_s;
  }
  std::printf("%s criterion %d: %s -- %s; %s\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              timing.c_str());
  std::fflush(stdout);
  return ok;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Matrix on(char p, int l, int n) { return oracle::on_qubit(oracle::sigma(p), l, n); }

// exp(-i (pi/2) prod_{controls} (sz + 1)/2 sx_target), target last.
Matrix cnnot_oracle(int n_controls) {
  const int n = n_controls + 1;
  const Index d = Index{1} << n;
  Matrix P = Matrix::Identity(d, d);
  for (int l = 0; l < n_controls; ++l) P = P * (0.5 * (on('Z', l, n) + Matrix::Identity(d, d)));
  return oracle::expm_taylor(P * on('X', n_controls, n), kPi / 2);
}

// Effective qubit gate for Fock input `level` at the given cutoff.
Matrix simulated_gate(const Program& prog, int cutoff, int level = 0) {
  const PreparedProgram prepared = prepare_program(prog, {cutoff});
  const Index nq = Index{1} << prog.n_qubits;
  Matrix cols = Matrix::Zero(nq * cutoff, nq);
  for (Index j = 0; j < nq; ++j) cols(j * cutoff + level, j) = 1.0;
  const Matrix out = apply_program(prepared, cols);
  Matrix G(nq, nq);
  for (Index j = 0; j < nq; ++j) G.row(j) = out.row(j * cutoff + level);
  return G;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

int main() {
  int failures = 0;
  const std::vector<OscInput> vacuum{OscInput::fock_state(0)};

  failures += !run(1, "rectangle C-NOT family, fidelity >= 1-1e-6", 5.0, [&] {
    const double side = std::sqrt(kPi / 2);
    const auto prog = compile_rectangle(side, side, InternalOperator::projector(Axis::Z, 0),
                                        InternalOperator::pauli(Axis::X, 1), 2);
    const Matrix target = oracle::expm_taylor(
        0.5 * (on('Z', 0, 2) + Matrix::Identity(4, 4)) * on('X', 1, 2), kPi / 2);
    const auto rep = gate_report(prog, target, vacuum);
    const double f = rep.min_fidelity();
    return Outcome{f >= 1 - 1e-6 && rep.cutoff_converged,
                   "fidelity " + std::to_string(f) + ", 1-F " + sci(1 - f) + ", cutoff " +
                       std::to_string(rep.cutoff)};
  });

  failures += !run(2, "dual-path closed form vs integrator, 200 sequences, <= 1e-6", 120.0, [&] {
    std::mt19937_64 rng(20260401);
    std::uniform_int_distribution<int> qubits(2, 3), segments(1, 6);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
      const int nq = qubits(rng);
      const int ns = segments(rng);
      worst = std::max(worst, dual_path_deviation(random_sequence(rng, nq, ns)));
    }
    return Outcome{worst <= 1e-6, "max deviation " + sci(worst)};
  });

  failures += !run(3, "Toffoli K=1,2,3 identical, fidelity >= 1-1e-6, identity off |11>", 0, [&] {
    const Matrix target = cnnot_oracle(2);
    std::vector<Matrix> gates;
    double worst_fid = 1.0;
    int cutoff = 0;
    for (int K = 1; K <= 3; ++K) {
      const auto rep = gate_report(compile_toffoli(K), target, vacuum);
      worst_fid = std::min(worst_fid, rep.min_fidelity());
      cutoff = std::max(cutoff, rep.cutoff);
    }
    for (int K = 1; K <= 3; ++K) gates.push_back(simulated_gate(compile_toffoli(K), cutoff));
    double pair = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) pair = std::max(pair, max_abs(gates[a] - gates[b]));
    // Columns 0..5 have a control in |0>: each basis state must map to itself.
    double off = 0.0;
    for (Index k = 0; k < 8; ++k) {
      for (Index j = 0; j < 8; ++j) {
        const Complex expect = k < 6 ? Complex(j == k ? 1.0 : 0.0) : target(j, k);
        off = std::max(off, std::abs(gates[0](j, k) - expect));
      }
    }
    return Outcome{pair <= 1e-9 && worst_fid >= 1 - 1e-6 && off <= 1e-6,
                   "pairwise " + sci(pair) + ", 1-F " + sci(1 - worst_fid) +
                       ", worst basis-state deviation " + sci(off)};
  });

  failures += !run(4, "Fourier projector identity n_c=1..5, <= 1e-12", 1.0, [&] {
    double worst = 0.0;
    for (int nc = 1; nc <= 5; ++nc) {
      const auto terms = projector_fourier_terms(nc);
      // Enumerate every control bit string directly.
      for (int bits = 0; bits < (1 << nc); ++bits) {
        const int zeros = nc - std::popcount(static_cast<unsigned>(bits));
        double sum = 0.0;
        for (const auto& t : terms) sum += t.weight * std::cos(-t.angle * zeros);
        worst = std::max(worst, std::abs(sum - (zeros == 0 ? 1.0 : 0.0)));
      }
    }
    return Outcome{worst <= 1e-12, "max elementwise error " + sci(worst)};
  });

  failures += !run(5, "C^n-NOT n_c=2,3 fidelity >= 1-1e-6; n_c=2 equals Toffoli <= 1e-8", 0, [&] {
    double worst = 1.0;
    int cutoff2 = 0;
    for (int nc = 2; nc <= 3; ++nc) {
      const auto rep = gate_report(compile_cnnot(nc), cnnot_oracle(nc), vacuum);
      worst = std::min(worst, rep.min_fidelity());
      if (nc == 2) cutoff2 = rep.cutoff;
    }
    const int cutoff = std::max(cutoff2, 64);
    const double diff =
        max_abs(simulated_gate(compile_cnnot(2), cutoff) - simulated_gate(compile_toffoli(1), cutoff));
    return Outcome{worst >= 1 - 1e-6 && diff <= 1e-8,
                   "1-F " + sci(1 - worst) + ", |C2NOT - Toffoli| " + sci(diff)};
  });

  failures += !run(6, "Grover n=2 -> 1, n=3 -> 0.945, bus vs ideal <= 1e-4", 120.0, [&] {
    GroverOptions ideal_opts;
    ideal_opts.mode = GroverMode::Ideal;
    const auto bus2 = run_grover(2, 2);
    const auto bus3 = run_grover(3, 5);
    const auto ideal3 = run_grover(3, 5, ideal_opts);
    const double reference3 = oracle::grover_statevector(3, 5, 2)[5];
    double agree = 0.0;
    for (std::size_t j = 0; j < bus3.distribution.size(); ++j)
      agree = std::max(agree, std::abs(bus3.distribution[j] - ideal3.distribution[j]));
    const bool ok = std::abs(bus2.success_probability - 1.0) <= 1e-4 &&
                    std::abs(bus3.success_probability - reference3) <= 1e-3 &&
                    std::abs(reference3 - 0.945) <= 1e-3 && agree <= 1e-4 &&
                    bus2.iterations == 1 && bus3.iterations == 2;
    return Outcome{ok, "P2 " + std::to_string(bus2.success_probability) + ", P3 " +
                           std::to_string(bus3.success_probability) + " (reference " +
                           std::to_string(reference3) + "), bus-ideal " + sci(agree) +
                           ", cutoff " + std::to_string(bus3.cutoff)};
  });

  failures += !run(7, "fidelity spread over Fock 0,1,3 and thermal 1.0 <= 1e-8", 0, [&] {
    const std::vector<OscInput> inputs{OscInput::fock_state(0), OscInput::fock_state(1),
                                       OscInput::fock_state(3), OscInput::thermal(1.0)};
    double spread = 0.0;
    double worst = 1.0;
    const std::vector<std::pair<Program, Matrix>> cases{
        {compile_toffoli(1), cnnot_oracle(2)},
        {compile_cnnot(1), cnnot_oracle(1)},
        {compile_cnnot(2), cnnot_oracle(2)},
        {compile_cnnot(3), cnnot_oracle(3)},
    };
    bool converged = true;
    for (const auto& [prog, target] : cases) {
      const auto rep = gate_report(prog, target, inputs);
      spread = std::max(spread, rep.fidelity_spread);
      worst = std::min(worst, rep.min_fidelity());
      converged = converged && rep.cutoff_converged && rep.leakage_ok;
    }
    return Outcome{spread <= 1e-8 && converged,
                   "worst spread " + sci(spread) + ", worst 1-F " + sci(1 - worst)};
  });

  failures += !run(8, "product phase mu=0.3 on 4 qubits <= 1e-8", 0, [&] {
    const std::vector<int> four{0, 1, 2, 3};
    const Matrix zzzz = on('Z', 0, 4) * on('Z', 1, 4) * on('Z', 2, 4) * on('Z', 3, 4);
    const double err =
        max_abs(simulated_gate(compile_product_phase(0.3, four), 48) - oracle::expm_taylor(zzzz, 0.3));
    return Outcome{err <= 1e-8, "max deviation " + sci(err)};
  });

  failures += !run(9, "all-ones matrix identities n=1..4 <= 1e-10", 0, [&] {
    double worst = 0.0;
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      for (const auto& c : m_matrix_identities(n, 1e-10)) {
        worst = std::max(worst, c.error);
        ok = ok && c.passed;
      }
    }
    return Outcome{ok && worst <= 1e-10, "worst error " + sci(worst)};
  });

  failures += !run(10, "geometric phase equals enclosed area <= 1e-9", 0, [&] {
    const double dev = area_law_deviation();
    return Outcome{dev <= 1e-9, "worst |S - area| " + sci(dev)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
