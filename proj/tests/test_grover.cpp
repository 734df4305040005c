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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "oscbus/error.hpp"
#include "oscbus/grover.hpp"
#include "oscbus/integrator.hpp"

using namespace oscbus;

namespace {

// Effective gate at the oscillator vacuum.
Matrix vacuum_gate(const Program& prog, int cutoff = 40) {
  const PreparedProgram prepared = prepare_program(prog, {cutoff});
  const Index nq = Index{1} << prog.n_qubits;
  Matrix cols = Matrix::Zero(nq * cutoff, nq);
  for (Index j = 0; j < nq; ++j) cols(j * cutoff, j) = 1.0;
  const Matrix out = apply_program(prepared, cols);
  Matrix G(nq, nq);
  for (Index j = 0; j < nq; ++j) G.row(j) = out.row(j * cutoff);
  return G;
}

GroverOptions ideal_mode() {
  GroverOptions o;
  o.mode = GroverMode::Ideal;
  return o;
}

}  // namespace

TEST_SUITE("grover") {

TEST_CASE("oracle flips the sign of the marked item only") {
  const OracleSpec spec{3, 5};
  CHECK(spec.bits() == std::vector<int>{1, 0, 1});
  const Matrix G = vacuum_gate(compile_oracle(spec));
  CHECK(oracle::phase_aligned_distance(G, ideal_oracle(spec)) < 1e-8);
  for (Index j = 0; j < 8; ++j) {
    CHECK(std::abs(ideal_oracle(spec)(j, j) - Complex(j == 5 ? -1.0 : 1.0)) < 1e-15);
  }
  CHECK_THROWS_AS((OracleSpec{2, 4}.validate()), InvalidArgument);
  CHECK_THROWS_AS((OracleSpec{0, 0}.validate()), InvalidArgument);
}

TEST_CASE("inversion about the mean, both constructions") {
  for (int n = 1; n <= 3; ++n) {
    const Matrix ideal = ideal_inversion(n);
    const Index N = Index{1} << n;
    Matrix expect = Matrix::Constant(N, N, 2.0 / static_cast<double>(N));
    expect -= Matrix::Identity(N, N);
    CHECK((ideal - expect).cwiseAbs().maxCoeff() < 1e-15);
    const Matrix xf = vacuum_gate(compile_inversion(n, InversionMode::XFrame));
    const Matrix ex = vacuum_gate(compile_inversion(n, InversionMode::ExplicitRotations));
    CHECK(oracle::phase_aligned_distance(xf, ideal) < 1e-8);
    CHECK(oracle::phase_aligned_distance(ex, ideal) < 1e-8);
    CHECK((xf - ex).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("M-matrix identities") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& c : m_matrix_identities(n)) {
      INFO(c.name);
      CHECK(c.passed);
      CHECK(c.error < 1e-10);
    }
  }
  CHECK_THROWS_AS(m_matrix_identities(6), InvalidArgument);
}

TEST_CASE("default iteration count") {
  CHECK(default_iterations(1) == 1);
  CHECK(default_iterations(2) == 1);
  CHECK(default_iterations(3) == 2);
  CHECK(default_iterations(4) == 3);
  CHECK(default_iterations(10) == 25);
}

TEST_CASE("ideal mode matches the textbook success law") {
  // n = 1: one iteration only reaches 1/2 (the marked and unmarked
  // amplitudes are swapped onto each other symmetrically).
  CHECK(run_grover(1, 1, ideal_mode()).success_probability == doctest::Approx(0.5));
  for (int n = 1; n <= 8; ++n) {
    const std::uint64_t x0 = (std::uint64_t{1} << n) - 1;
    const auto r = run_grover(n, x0, ideal_mode());
    REQUIRE(r.per_iteration.size() == static_cast<std::size_t>(r.iterations + 1));
    for (int k = 0; k <= r.iterations; ++k) {
      CHECK(r.per_iteration[k] == doctest::Approx(oracle::grover_success(n, k)).epsilon(1e-12));
    }
  }
  CHECK(run_grover(2, 2, ideal_mode()).success_probability == doctest::Approx(1.0));
  auto none = ideal_mode();
  none.iterations = 0;
  CHECK(run_grover(3, 5, none).success_probability == doctest::Approx(0.125));
}

TEST_CASE("bus mode agrees with the ideal gates and ignores the oscillator") {
  const auto ideal = run_grover(3, 5, ideal_mode());
  CHECK(ideal.success_probability == doctest::Approx(oracle::grover_statevector(3, 5, 2)[5]));
  CHECK(ideal.success_probability == doctest::Approx(0.9453125));

  GroverOptions bus;
  bus.cutoff = 32;
  const auto vac = run_grover(3, 5, bus);
  CHECK(std::abs(vac.success_probability - ideal.success_probability) < 1e-4);
  REQUIRE(vac.distribution.size() == 8);
  for (int j = 0; j < 8; ++j) CHECK(std::abs(vac.distribution[j] - ideal.distribution[j]) < 1e-4);

  bus.osc_input = OscInput::fock_state(3);
  const auto hot = run_grover(3, 5, bus);
  CHECK(std::abs(hot.success_probability - vac.success_probability) < 1e-6);

  GroverOptions two;
  two.osc_input = OscInput::thermal(0.5);
  two.cutoff = 32;
  const auto th = run_grover(2, 1, two);
  CHECK(std::abs(th.success_probability - 1.0) < 1e-6);
}

TEST_CASE("bus mode register limit") {
  CHECK_THROWS_AS(run_grover(5, 0), ResourceLimit);
  CHECK_NOTHROW(run_grover(12, 7, ideal_mode()));
}

TEST_CASE("all-ones demo and uniform addressing") {
  GroverOptions o;
  o.cutoff = 32;
  const auto demo = demo_all_ones(2, o);
  CHECK(demo.uniform_addressing);
  REQUIRE(demo.excited_count.size() == 3);
  CHECK(demo.excited_count[2] == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(addresses_uniformly(compile_inversion(3)));
  CHECK(addresses_uniformly(compile_inversion(3, InversionMode::ExplicitRotations)));
  CHECK(addresses_uniformly(compile_oracle({3, 7})));
  CHECK_FALSE(addresses_uniformly(compile_oracle({3, 5})));
}

}  // TEST_SUITE
