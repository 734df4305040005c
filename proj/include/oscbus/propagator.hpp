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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oscbus/hilbert.hpp"
#include "oscbus/model.hpp"

namespace oscbus {

/// Oscillator phase-space point in the (x, p) plane. The propagator's
/// displacement factors shift (x, p) -> (x + W, p - V), so a trajectory
/// vertex is (W, -V).
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// One segment's path in phase space: straight when the rotation rate is
/// zero, otherwise a circular arc of signed sweep `sweep` (counter-clockwise
/// positive) about `center`.
struct TrajectoryEdge {
  PhasePoint from;
  PhasePoint to;
  bool is_arc = false;
  PhasePoint center;
  double radius = 0.0;
  double sweep = 0.0;
  /// (|k| T)^2 with |k| the speed along the edge; used for the arc area.
  double chord_scale = 0.0;
};

/// Scalar propagator data for one eigen-tuple of the sequence frame.
struct TrajectoryRecord {
  std::vector<int> tuple;
  std::vector<PhasePoint> vertices;  ///< origin, then the point after each segment
  std::vector<TrajectoryEdge> edges;
  double R = 0.0;
  double V = 0.0;
  double W = 0.0;
  double S = 0.0;
  double drift_phase = 0.0;

  /// S + drift: the phase carried by exp(-i S) and exp(-i int g D).
  double total_phase() const { return S + drift_phase; }
};

/// Test hook for mutation checks of the verification suite.
struct PropagatorOptions {
  bool negate_area_increment = false;
};

/// Integrates R, V, W, S segment by segment with exact antiderivatives for
/// constant coefficients. Throws InvalidArgument for an invalid sequence.
TrajectoryRecord accumulate(const PulseSequence& seq, std::span<const int> s,
                            const PropagatorOptions& opts = {});

std::vector<TrajectoryRecord> accumulate_all(const PulseSequence& seq,
                                             const PropagatorOptions& opts = {});

/// Signed area enclosed by the trajectory, computed geometrically from the
/// vertices and arc data (shoelace plus circular-segment corrections). The
/// orientation is clockwise-positive, so a closed loop yields S_final.
double enclosed_area(const TrajectoryRecord& record);

/// Plain shoelace area of a polygon, clockwise-positive.
double shoelace_area(std::span<const PhasePoint> polygon);

std::vector<PhasePoint> trajectory_export(const PulseSequence& seq, std::span<const int> s);

/// CSV with columns eigen_tuple,step,x,p. Arcs are sampled with
/// `arc_samples` interior points so plots show the curved path.
void write_trajectory_csv(std::ostream& out, const PulseSequence& seq, int arc_samples = 16);

struct ClosureResidual {
  std::vector<int> tuple;
  double V = 0.0;
  double W = 0.0;
  double R_mod_2pi = 0.0;
};

struct ClosureReport {
  std::vector<ClosureResidual> residuals;
  double worst_V = 0.0;
  double worst_W = 0.0;
  double worst_R = 0.0;
  double tolerance = 1e-9;
  bool is_closed = false;

  double worst() const;
};

ClosureReport closure_report(const PulseSequence& seq, double tolerance = 1e-9);

/// Distance from angle to the nearest multiple of 2 pi.
double distance_to_2pi_multiple(double angle);

/// <m|D(alpha)|n> for m, n < cutoff, exact (no truncation of the generator).
Matrix displacement_matrix(int cutoff, Complex alpha);

/// exp(-i phase) exp(-i n R) exp(-i x V) exp(-i p W) on the truncated Fock space.
Matrix factored_oscillator_block(int cutoff, double R, double V, double W, double phase);

/// Columns are the frame basis vectors in the computational basis; column j
/// is the product eigenvector with eigen_tuple(j).
Matrix frame_change(const AxisFrame& frame);

struct ClosedFormResult {
  DenseOperator unitary;
  /// Vacuum population beyond the cutoff at the largest displacement reached.
  double leakage_estimate = 0.0;
  std::vector<std::string> warnings;
};

/// U = sum_s |s><s| (x) exp(-i(S+drift)) exp(-i n R) exp(-i x V) exp(-i p W),
/// rotated from the sequence frame to the computational basis.
ClosedFormResult closed_form_unitary(const PulseSequence& seq, const OscillatorSpec& osc,
                                     const PropagatorOptions& opts = {});

/// Largest |alpha| = |W - iV|/sqrt(2) reached along the path, over all tuples.
double max_displacement(const PulseSequence& seq);

/// Prefix of the sequence covering [0, t]; the segment containing t is cut.
PulseSequence truncate_sequence(const PulseSequence& seq, double t);

}  // namespace oscbus
