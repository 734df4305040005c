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

#include <functional>
#include <variant>

#include "oscbus/hilbert.hpp"
#include "oscbus/model.hpp"

namespace oscbus {

/// Composite dimension cap: OSCBUS_MAX_DIM if set, else 8192.
Index max_composite_dim();

/// Throws ResourceLimit when 2^n * cutoff exceeds max_composite_dim().
void check_dimension(int n_qubits, const OscillatorSpec& osc);

/// Dense H = v A(x)x + w B(x)p + r C(x)n + g D(x)I on the truncated composite space.
DenseOperator segment_hamiltonian(const PulseSegment& seg, const AxisFrame& frame, int n_qubits,
                                  const OscillatorSpec& osc);

/// exp(-i H T) by a single dense exponential of the full composite Hamiltonian.
DenseOperator segment_unitary(const PulseSegment& seg, const AxisFrame& frame, int n_qubits,
                              const OscillatorSpec& osc);

/// Oscillator blocks of a pulse sequence, indexed by a joint eigenbasis of
/// the sequence's internal operators. The basis is found numerically from the
/// per-qubit Pauli matrices; each block is the ordered product of dense
/// exponentials of the truncated oscillator Hamiltonian restricted to one
/// joint eigenvector.
struct BlockPropagator {
  Matrix basis;                ///< columns: joint eigenvectors (computational basis)
  std::vector<Matrix> blocks;  ///< cumulative oscillator propagator per column
};

/// Called after each segment with the blocks accumulated so far.
using BlockObserver = std::function<void(const BlockPropagator&)>;

BlockPropagator sequence_blocks(const PulseSequence& seq, const OscillatorSpec& osc,
                                const BlockObserver& observer = {});

/// Full-space unitary of a pulse sequence.
DenseOperator sequence_unitary(const PulseSequence& seq, const OscillatorSpec& osc);

/// Program with every pulse sequence reduced to its oscillator blocks.
struct PreparedProgram {
  int n_qubits = 0;
  OscillatorSpec osc;
  std::vector<std::variant<BlockPropagator, IdealLocal>> steps;

  Space space() const { return Space::composite(n_qubits, osc); }
};

/// `segment_observer` sees the cumulative blocks of each sequence after every
/// segment (step index, blocks).
PreparedProgram prepare_program(
    const Program& prog, const OscillatorSpec& osc,
    const std::function<void(std::size_t, const BlockPropagator&)>& segment_observer = {});

/// Applies the prepared program to the columns of `states` (composite rows).
/// `observer` is called with (step index, columns) after every step.
Matrix apply_program(const PreparedProgram& prog, Matrix states,
                     const std::function<void(std::size_t, const Matrix&)>& observer = {});

/// Applies one sequence's blocks to composite-space columns.
Matrix apply_blocks(const BlockPropagator& prop, const Matrix& states, int cutoff);

/// Called after each program step with the step index and cumulative unitary.
using StepObserver = std::function<void(std::size_t, const DenseOperator&)>;

DenseOperator program_unitary(const Program& prog, const OscillatorSpec& osc,
                              const StepObserver& observer = {});

/// Applies each step in order; mixed states evolve as U rho U^dag.
CompositeState evolve_program(const Program& prog, const CompositeState& initial);

/// Converged unitary of a sampled waveform: the number of midpoint sub-steps
/// per sample interval is doubled until the max-norm change falls below
/// `tolerance`. Throws std::runtime_error if `max_substeps` is reached first.
struct WaveformResult {
  DenseOperator unitary;
  int substeps = 0;
  double last_change = 0.0;
};

WaveformResult waveform_unitary(const SampledWaveform& wave, const AxisFrame& frame,
                                const OscillatorSpec& osc, double tolerance = 1e-8,
                                int max_substeps = 1 << 14);

}  // namespace oscbus
