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

#pragma once

#include <span>
#include <vector>

#include "oscbus/model.hpp"

namespace oscbus {

/// One factor exp(-i mu A cos(theta C)) of a chained gate.
struct ChainTerm {
  double mu = 0.0;
  double theta = 0.0;
};

/// exp(-i lambda1 lambda2 A B): four unit-duration displacements (p by B,
/// x by A, then both reversed). Throws on a frame conflict between A and B.
Program compile_rectangle(double lambda1, double lambda2, const InternalOperator& A,
                          const InternalOperator& B, int n_qubits);

/// exp(-i mu A B cos(theta C)). The x-displacement is sandwiched between
/// +-theta C n rotations; R returns to zero.
Program compile_parallelogram(double mu, double theta, const InternalOperator& A,
                              const InternalOperator& C, int n_qubits,
                              const InternalOperator& B = InternalOperator::constant(1.0));

/// prod_k exp(-i mu_k A cos(theta_k C)) as one merged outline: consecutive
/// parallelograms share a side, so each interior shared side is traversed
/// zero times instead of twice.
Program compile_chain(std::span<const ChainTerm> terms, const InternalOperator& A,
                      const InternalOperator& C, int n_qubits);

/// Same gate as compile_chain, built as independent parallelograms.
Program compile_chain_unmerged(std::span<const ChainTerm> terms, const InternalOperator& A,
                               const InternalOperator& C, int n_qubits);

/// Single constant Hamiltonian on qubits (0, 1, 2) with frame (Z, Z, X):
/// Omega[(sz0 + sz1 + 1)/(4 sqrt K) x - sx2 (n + 1/(32K))] for 2 pi K/Omega.
Program compile_toffoli(int K, double omega = 1.0);

struct FourierTerm {
  double weight = 0.0;
  double angle = 0.0;
};

/// prod_l (sz_l + 1)/2 = sum_k weight_k cos(angle_k (Jz - J)) for n_c controls,
/// with weight 1/(n_c+1) and angle 2 pi k/(n_c+1), k = 1..n_c+1.
std::vector<FourierTerm> projector_fourier_terms(int n_controls);

/// exp(-i pi/2 P sx_target), P the projector onto all controls |1>. Controls
/// are qubits 0..n_c-1, the target is qubit n_c.
Program compile_cnnot(int n_controls);

/// exp(-i mu prod_{l in qubits} sz_l) as one parallelogram with A = B = 1,
/// theta = pi and C = sum_l (sz_l - 1)/2.
Program compile_product_phase(double mu, std::span<const int> qubits, int n_qubits = 0);

/// exp(i pi prod_{l} (sigma_axis,l + 1)/2) over all qubits of the register,
/// built as a projector-phase chain with A = B = 1. Used by the Grover steps.
Program compile_projector_phase(int n_qubits, Axis axis);

}  // namespace oscbus
