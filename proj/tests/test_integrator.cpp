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
#include <cstdlib>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "oscbus/compiler.hpp"
#include "oscbus/error.hpp"
#include "oscbus/integrator.hpp"
#include "oscbus/propagator.hpp"
#include "oscbus/verify.hpp"

using namespace oscbus;

namespace {

constexpr double kPi = std::numbers::pi;

PulseSegment drive(double v, double w, double r, double g, double duration) {
  PulseSegment seg;
  seg.duration = duration;
  seg.v = v;
  seg.w = w;
  seg.r = r;
  seg.g = g;
  seg.A = InternalOperator::pauli(Axis::Z, 0, 0.7) + InternalOperator::constant(0.2);
  seg.B = InternalOperator::pauli(Axis::Z, 1, -0.5);
  seg.C = InternalOperator::pauli(Axis::Z, 0) + InternalOperator::pauli(Axis::Z, 1, 0.5);
  seg.D = InternalOperator::pauli(Axis::Z, 1);
  return seg;
}

struct ScopedEnv {
  explicit ScopedEnv(const char* value) { setenv("OSCBUS_MAX_DIM", value, 1); }
  ~ScopedEnv() { unsetenv("OSCBUS_MAX_DIM"); }
};

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("trivial segments") {
  const OscillatorSpec osc{10};
  const auto id = segment_unitary(PulseSegment{}, uniform_frame(1, Axis::Z), 1, osc);
  CHECK((id.mat - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-14);

  PulseSegment turn;
  turn.r = 1.0;
  turn.C = InternalOperator::constant(1.0);
  turn.duration = 2 * kPi;
  const auto full = segment_unitary(turn, uniform_frame(1, Axis::Z), 1, osc);
  CHECK((full.mat - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("x drive displaces the vacuum with overlap exp(-lambda^2/4)") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    PulseSegment seg;
    seg.v = 1.0;
    seg.A = InternalOperator::constant(1.0);
    seg.duration = lambda;
    const auto U = segment_unitary(seg, uniform_frame(1, Axis::Z), 1, {50});
    CHECK(std::abs(U.mat(0, 0) - std::exp(-lambda * lambda / 4)) < 1e-12);
  }
}

TEST_CASE("segment exponential agrees with RK4 time stepping") {
  const OscillatorSpec osc{14};
  const auto seg = drive(0.8, -0.6, 0.9, 0.3, 0.7);
  const AxisFrame frame = uniform_frame(2, Axis::Z);
  const Matrix H = segment_hamiltonian(seg, frame, 2, osc).mat;
  const Matrix U = segment_unitary(seg, frame, 2, osc).mat;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(H.rows());
  psi(1 * 14 + 2) = 1.0;
  const auto ref = oracle::rk4(H, psi, seg.duration, 4000);
  CHECK((U * psi - ref).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(unitarity_defect(U) < 1e-10);
}

TEST_CASE("block integrator equals the dense product of segment exponentials") {
  std::mt19937_64 rng(17);
  const OscillatorSpec osc{12};
  for (int trial = 0; trial < 6; ++trial) {
    const auto seq = random_sequence(rng, 2 + trial % 2, 1 + trial);
    Matrix dense = Matrix::Identity(osc.cutoff << seq.n_qubits(), osc.cutoff << seq.n_qubits());
    for (const auto& seg : seq.segments) {
      dense = segment_unitary(seg, seq.frame, seq.n_qubits(), osc).mat * dense;
    }
    const Matrix blocks = sequence_unitary(seq, osc).mat;
    CHECK((blocks - dense).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(unitarity_defect(blocks) < 1e-9);
  }
}

TEST_CASE("dual path: closed form matches the integrator on the low Fock columns") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int c = 0; c < 20; ++c) {
    const auto seq = random_sequence(rng, 2 + c % 2, 1 + c % 6);
    worst = std::max(worst, dual_path_deviation(seq));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("program unitaries") {
  const OscillatorSpec osc{8};
  Program empty{2, {}};
  CHECK((program_unitary(empty, osc).mat - Matrix::Identity(32, 32)).cwiseAbs().maxCoeff() == 0.0);

  const auto seg = drive(0.4, 0.2, -0.3, 0.1, 0.9);
  Program single{2, {}};
  single.then(PulseSequence{uniform_frame(2, Axis::Z), {seg}});
  const Matrix ref = segment_unitary(seg, uniform_frame(2, Axis::Z), 2, osc).mat;
  CHECK((program_unitary(single, osc).mat - ref).cwiseAbs().maxCoeff() < 1e-12);

  const Program toffoli = compile_toffoli(1);
  const int N = 40;
  const Matrix brute = program_unitary(toffoli, {N}).mat;
  const Matrix closed = closed_form_unitary(*toffoli.sequences().front(), {N}).unitary.mat;
  double worst = 0.0;
  for (Index c = 0; c < brute.cols(); ++c) {
    if (c % N < 8) worst = std::max(worst, (brute.col(c) - closed.col(c)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("ideal locals inside programs act on their qubit only") {
  Program p{3, {}};
  p.then(IdealLocal{Axis::Y, 0.7, 1});
  const Matrix U = program_unitary(p, {3}).mat;
  const Matrix ref =
      oracle::kron(oracle::expm_taylor(oracle::on_qubit(oracle::sigma('Y'), 1, 3), 0.35),
                   Matrix::Identity(3, 3));
  CHECK((U - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evolve_program on pure and mixed states") {
  const OscillatorSpec osc{6};
  const auto start = CompositeState::product_fock(2, osc, 0, 0);
  const auto same = evolve_program(Program{2, {}}, start);
  CHECK((same.amplitudes() - start.amplitudes()).norm() == 0.0);

  Program flip{2, {}};
  flip.then(IdealLocal{Axis::X, kPi, 0});
  const auto flipped = evolve_program(flip, start);
  CHECK(flipped.qubit_populations()(2) == doctest::Approx(1.0));
  CHECK(flipped.fock_populations()(0) == doctest::Approx(1.0));

  const double side = std::sqrt(kPi / 2);
  const Program cnot = compile_rectangle(side, side, InternalOperator::projector(Axis::Z, 0),
                                         InternalOperator::pauli(Axis::X, 1), 2);
  const OscillatorSpec big{40};
  const auto out = evolve_program(cnot, CompositeState::product_fock(2, big, 3, 0));
  CHECK(std::norm(out.amplitudes()(2 * 40 + 0)) > 1 - 1e-8);

  // Mixed: thermal oscillator with a superposed control.
  Eigen::VectorXcd q = Eigen::VectorXcd::Zero(4);
  q(1) = q(3) = 1.0 / std::sqrt(2.0);
  const RealVector w = thermal_weights(0.5);
  Matrix rho_osc = Matrix::Zero(40, 40);
  for (Index k = 0; k < w.size(); ++k) rho_osc(k, k) = w(k);
  const auto mixed = CompositeState::product(q, rho_osc);
  const auto evolved = evolve_program(cnot, mixed);
  const Matrix U = program_unitary(cnot, big).mat;
  const Matrix expected = U * mixed.density() * U.adjoint();
  CHECK((evolved.density() - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(evolved.normalization_defect() < 1e-12);
  CHECK(evolved.qubit_populations()(1) == doctest::Approx(0.5));
  CHECK(evolved.qubit_populations()(2) == doctest::Approx(0.5));
}

TEST_CASE("dimension guard refuses oversized spaces") {
  ScopedEnv env("64");
  CHECK(max_composite_dim() == 64);
  CHECK_NOTHROW(check_dimension(2, {16}));
  CHECK_THROWS_WITH_AS(check_dimension(3, {16}), doctest::Contains("OSCBUS_MAX_DIM"), ResourceLimit);
  CHECK_THROWS_AS(program_unitary(compile_toffoli(1), {16}), ResourceLimit);
}

TEST_CASE("sampled waveforms converge by sub-step doubling") {
  SampledWaveform wave;
  wave.duration = 1.5;
  wave.v = {0.0, 1.0, 0.5, 0.0};
  wave.r = {0.3, 0.3, -0.2, 0.1};
  wave.A = InternalOperator::pauli(Axis::Z, 0);
  wave.C = InternalOperator::constant(1.0);
  const OscillatorSpec osc{10};
  const AxisFrame frame = uniform_frame(1, Axis::Z);
  const auto res = waveform_unitary(wave, frame, osc, 1e-8);
  CHECK(res.last_change < 1e-8);
  CHECK(res.substeps >= 2);

  // Time-dependent RK4 with the same linear interpolation.
  const auto ops = build_oscillator_ops(osc);
  const Matrix sz = oracle::sigma('Z');
  auto H = [&](double t) {
    const double u = t / wave.duration * 3.0;
    const int i = std::min(2, static_cast<int>(u));
    const double f = u - i;
    const double v = wave.v[i] + (wave.v[i + 1] - wave.v[i]) * f;
    const double r = wave.r[i] + (wave.r[i + 1] - wave.r[i]) * f;
    return Matrix(oracle::kron(sz, v * ops.x.mat) + oracle::kron(Matrix::Identity(2, 2), r * ops.n.mat));
  };
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(20);
  psi(10 + 1) = 1.0;
  const int steps = 6000;
  const double h = wave.duration / steps;
  Eigen::VectorXcd y = psi;
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const Eigen::VectorXcd k1 = -kI * (H(t) * y);
    const Eigen::VectorXcd k2 = -kI * (H(t + h / 2) * (y + h / 2 * k1));
    const Eigen::VectorXcd k3 = -kI * (H(t + h / 2) * (y + h / 2 * k2));
    const Eigen::VectorXcd k4 = -kI * (H(t + h) * (y + h * k3));
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  CHECK((res.unitary.mat * psi - y).cwiseAbs().maxCoeff() < 1e-7);
}

}  // TEST_SUITE
