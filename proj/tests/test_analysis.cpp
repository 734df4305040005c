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
#include "oscbus/analysis.hpp"
#include "oscbus/compiler.hpp"
#include "oscbus/error.hpp"
#include "oscbus/integrator.hpp"

using namespace oscbus;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("analysis") {

TEST_CASE("effective unitary of a product operator") {
  const int N = 6;
  const Matrix G = oracle::expm_taylor(oracle::sigma('Y'), 0.4);
  const Matrix full = oracle::kron(G, Matrix::Identity(N, N));
  const auto eff = effective_qubit_unitary(DenseOperator(Space{1, N}, full), fock_vector(N, 2));
  CHECK((eff.gate - G).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(eff.residual < 1e-14);

  Vector unnormalized = fock_vector(N, 0) * 2.0;
  CHECK_THROWS_AS(effective_qubit_unitary(DenseOperator(Space{1, N}, full), unnormalized),
                  InvalidArgument);
}

TEST_CASE("an open sequence leaves the qubits entangled") {
  // Single x-drive on sz: displacement depends on the qubit, never undone.
  PulseSequence seq{{Axis::Z}, {}};
  PulseSegment seg;
  seg.v = 1.5;
  seg.A = InternalOperator::pauli(Axis::Z, 0);
  seq.segments.push_back(seg);
  const OscillatorSpec osc{40};
  const auto eff = effective_qubit_unitary(sequence_unitary(seq, osc), fock_vector(40, 0));
  CHECK(eff.residual > 0.1);
}

TEST_CASE("process fidelity") {
  const Matrix X = oracle::sigma('X');
  const Matrix Z = oracle::sigma('Z');
  CHECK(process_fidelity(X, X) == doctest::Approx(1.0));
  CHECK(process_fidelity(std::polar(1.0, 0.77) * X, X) == doctest::Approx(1.0));
  CHECK(process_fidelity(X, Z) == doctest::Approx(0.0));
  CHECK_THROWS_AS(process_fidelity(X, Matrix::Identity(4, 4)), InvalidArgument);
}

TEST_CASE("oscillator input parsing") {
  const auto f = OscInput::parse("fock:3");
  CHECK(f.kind == OscInput::Kind::Fock);
  CHECK(f.fock == 3);
  CHECK(f.label() == "fock:3");
  const auto t = OscInput::parse("thermal:0.5");
  CHECK(t.kind == OscInput::Kind::Thermal);
  CHECK(t.nbar == doctest::Approx(0.5));
  double total = 0.0;
  for (const auto& [k, w] : t.components()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(t.components().front().second == doctest::Approx(1.0 / 1.5).epsilon(1e-9));
  for (const char* bad : {"fock", "fock:-1", "fock:x", "thermal:-2", "coherent:1"}) {
    CHECK_THROWS_AS(OscInput::parse(bad), InvalidArgument);
  }
}

TEST_CASE("gate report on closed and open programs") {
  const double side = std::sqrt(kPi / 2);
  const auto P = InternalOperator::projector(Axis::Z, 0);
  const auto X1 = InternalOperator::pauli(Axis::X, 1);
  const Matrix ideal_cnot = ideal::rectangle(side, side, P, X1, 2);
  const std::vector<OscInput> inputs{OscInput::fock_state(0), OscInput::fock_state(3),
                                     OscInput::thermal(0.5)};

  const auto good = gate_report(compile_rectangle(side, side, P, X1, 2), ideal_cnot, inputs);
  CHECK(good.passed);
  CHECK(good.min_fidelity() > 1 - 1e-6);
  CHECK(good.fidelity_spread < 1e-8);
  CHECK(good.worst_leakage < 1e-8);
  CHECK(good.closure_ok);

  // Shortened second p-side: the loop does not close.
  Program open = compile_rectangle(side, side, P, X1, 2);
  auto* seq = std::get_if<PulseSequence>(&open.steps.front());
  REQUIRE(seq != nullptr);
  seq->segments[2].w *= 0.9;
  GateReportOptions fixed;
  fixed.cutoff = 48;
  const auto bad = gate_report(open, ideal_cnot, inputs, fixed);
  CHECK_FALSE(bad.closure_ok);
  CHECK_FALSE(bad.passed);
  CHECK(bad.closure_W == doctest::Approx(0.1 * side));

  // The identity program: nothing leaves the vacuum.
  const auto id = gate_report(compile_rectangle(0.0, 0.0, P, X1, 2), Matrix::Identity(4, 4),
                              inputs, fixed);
  CHECK(id.worst_leakage < 1e-14);
  CHECK(id.passed);

  CHECK_THROWS_AS(gate_report(compile_rectangle(side, side, P, X1, 2), Matrix::Identity(2, 2),
                              inputs),
                  InvalidArgument);
}

TEST_CASE("ideal reference gates") {
  const Matrix target = ideal::cnnot(1);
  CHECK((target.topLeftCorner(2, 2) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((target.bottomRightCorner(2, 2) - Complex(0, -1) * oracle::sigma('X')).cwiseAbs().maxCoeff() <
        1e-14);
  const std::vector<int> q{0, 1};
  const Matrix zz = oracle::kron(oracle::sigma('Z'), oracle::sigma('Z'));
  CHECK((ideal::product_phase(0.3, q, 2) - oracle::expm_taylor(zz, 0.3)).cwiseAbs().maxCoeff() <
        1e-13);
}

}  // TEST_SUITE
