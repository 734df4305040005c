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

#include "oscbus/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "oscbus/error.hpp"

namespace oscbus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Below this |phi| the antiderivatives are evaluated from their Taylor series.
constexpr double kSeriesThreshold = 0.5;

// Sum of sign * phi^power / denom terms generated by `term(k)` until the
// contribution underflows relative to the running sum.
template <typename Term>
double series(Term term) {
  double sum = 0.0;
  for (int k = 1; k < 40; ++k) {
    const double t = term(k);
    sum += t;
    if (std::abs(t) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sin(phi)/phi
double sinc(double phi) {
  if (std::abs(phi) >= kSeriesThreshold) return std::sin(phi) / phi;
  return 1.0 + series([phi](int k) {
           return (k % 2 ? -1.0 : 1.0) * std::pow(phi, 2 * k) / factorial(2 * k + 1);
         });
}

// (1 - cos phi)/phi
double versinc(double phi) {
  if (std::abs(phi) >= kSeriesThreshold) return (1.0 - std::cos(phi)) / phi;
  return series([phi](int k) {
    return (k % 2 ? 1.0 : -1.0) * std::pow(phi, 2 * k - 1) / factorial(2 * k);
  });
}

// (2 phi - sin 2phi)/(4 phi^2): T^-2 int_0^T sigma(t) sin(wt) dt
double sin_sq_kernel(double phi) {
  if (std::abs(phi) >= kSeriesThreshold) {
    return (2.0 * phi - std::sin(2.0 * phi)) / (4.0 * phi * phi);
  }
  return series([phi](int k) {
    return (k % 2 ? 1.0 : -1.0) * std::pow(2.0, 2 * k + 1) * std::pow(phi, 2 * k - 1) /
           (4.0 * factorial(2 * k + 1));
  });
}

// (4 sin phi - 2 phi - sin 2phi)/(4 phi^2): T^-2 int_0^T kappa(t) cos(wt) dt
double cos_kernel(double phi) {
  if (std::abs(phi) >= kSeriesThreshold) {
    return (4.0 * std::sin(phi) - 2.0 * phi - std::sin(2.0 * phi)) / (4.0 * phi * phi);
  }
  return series([phi](int k) {
    return (k % 2 ? -1.0 : 1.0) * (4.0 - std::pow(2.0, 2 * k + 1)) * std::pow(phi, 2 * k - 1) /
           (4.0 * factorial(2 * k + 1));
  });
}

// (phi - sin phi)/(2 phi^2): circular-segment area per (|k| T)^2
double segment_kernel(double phi) {
  if (std::abs(phi) >= kSeriesThreshold) return (phi - std::sin(phi)) / (2.0 * phi * phi);
  return series([phi](int k) {
    return (k % 2 ? 1.0 : -1.0) * std::pow(phi, 2 * k - 1) / (2.0 * factorial(2 * k + 1));
  });
}

PhasePoint to_point(Complex z) { return {z.real(), -z.imag()}; }

void require_valid(const PulseSequence& seq) {
  const auto problems = validate_sequence(seq);
  if (!problems.empty()) throw InvalidArgument("invalid pulse sequence: " + problems.front());
}

}  // namespace

TrajectoryRecord accumulate(const PulseSequence& seq, std::span<const int> s,
                            const PropagatorOptions& opts) {
  require_valid(seq);
  if (static_cast<int>(s.size()) != seq.n_qubits()) {
    throw InvalidArgument("eigen-tuple length does not match the sequence frame");
  }
  TrajectoryRecord rec;
  rec.tuple.assign(s.begin(), s.end());
  rec.vertices.push_back({0.0, 0.0});

  // Z = W + iV obeys Z' = (w b + i v a) exp(-iR).
  Complex z{0.0, 0.0};
  double R = 0.0;
  double S = 0.0;
  double drift = 0.0;
  const double area_sign = opts.negate_area_increment ? -1.0 : 1.0;

  for (const auto& seg : seq.segments) {
    const double a = eval_eigenvalue(seg.A, s);
    const double b = eval_eigenvalue(seg.B, s);
    const double c = eval_eigenvalue(seg.C, s);
    const double d = eval_eigenvalue(seg.D, s);
    const double T = seg.duration;
    const double omega = seg.r * c;
    const double phi = omega * T;
    const Complex k = Complex(seg.w * b, seg.v * a) * std::exp(Complex(0.0, -R));
    const double kr = k.real();
    const double ki = k.imag();

    const double sigma = T * sinc(phi);     // int_0^T cos(wt)
    const double kappa = T * versinc(phi);  // int_0^T sin(wt)
    const double V0 = z.imag();
    // int_0^T V(t) W'(t) dt with V = V0 + ki sigma(t) - kr kappa(t),
    // W' = kr cos(wt) + ki sin(wt).
    const double integral = V0 * (kr * sigma + ki * kappa) +
                            ki * (kr * 0.5 * sigma * sigma + ki * T * T * sin_sq_kernel(phi)) -
                            kr * (kr * T * T * cos_kernel(phi) + ki * 0.5 * kappa * kappa);
    S -= area_sign * integral;

    const Complex z0 = z;
    z += k * Complex(sigma, -kappa);
    R += phi;
    drift += seg.g * d * T;

    TrajectoryEdge edge;
    edge.from = to_point(z0);
    edge.to = to_point(z);
    edge.chord_scale = std::norm(k) * T * T;
    if (std::abs(phi) > 1e-12 && std::abs(k) > 0.0) {
      edge.is_arc = true;
      edge.sweep = phi;
      edge.radius = std::abs(k) / std::abs(omega);
      edge.center = to_point(z0 + k / Complex(0.0, omega));
    }
    rec.edges.push_back(edge);
    rec.vertices.push_back(edge.to);
  }
  rec.R = R;
  rec.V = z.imag();
  rec.W = z.real();
  rec.S = S;
  rec.drift_phase = drift;
  return rec;
}

std::vector<TrajectoryRecord> accumulate_all(const PulseSequence& seq,
                                             const PropagatorOptions& opts) {
  const int n = seq.n_qubits();
  std::vector<TrajectoryRecord> out;
  out.reserve(std::size_t{1} << n);
  for (Index j = 0; j < (Index{1} << n); ++j) out.push_back(accumulate(seq, eigen_tuple(j, n), opts));
  return out;
}

double enclosed_area(const TrajectoryRecord& record) {
  double ccw = 0.0;
  for (const auto& e : record.edges) {
    ccw += 0.5 * (e.from.x * e.to.p - e.to.x * e.from.p);
    if (e.is_arc) ccw += e.chord_scale * segment_kernel(e.sweep);
  }
  return -ccw;
}

double shoelace_area(std::span<const PhasePoint> polygon) {
  double ccw = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    ccw += 0.5 * (a.x * b.p - b.x * a.p);
  }
  return -ccw;
}

std::vector<PhasePoint> trajectory_export(const PulseSequence& seq, std::span<const int> s) {
  return accumulate(seq, s).vertices;
}

namespace {

std::string tuple_label(const std::vector<int>& tuple) {
  std::string out;
  for (int v : tuple) out += v > 0 ? '+' : '-';
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const PulseSequence& seq, int arc_samples) {
  out << "eigen_tuple,step,x,p\n";
  const auto old_precision = out.precision(17);
  // Adding +0.0 folds -0 into 0 so equal points print identically.
  auto row = [&](const std::string& label, std::size_t step, double x, double p) {
    out << label << ',' << step << ',' << x + 0.0 << ',' << p + 0.0 << '\n';
  };
  for (const auto& rec : accumulate_all(seq)) {
    const std::string label = tuple_label(rec.tuple);
    row(label, 0, rec.vertices.front().x, rec.vertices.front().p);
    for (std::size_t i = 0; i < rec.edges.size(); ++i) {
      const auto& e = rec.edges[i];
      if (e.is_arc && arc_samples > 0) {
        const double start = std::atan2(e.from.p - e.center.p, e.from.x - e.center.x);
        for (int j = 1; j <= arc_samples; ++j) {
          const double ang = start + e.sweep * j / (arc_samples + 1);
          row(label, i + 1, e.center.x + e.radius * std::cos(ang),
              e.center.p + e.radius * std::sin(ang));
        }
      }
      row(label, i + 1, e.to.x, e.to.p);
    }
  }
  out.precision(old_precision);
}

double distance_to_2pi_multiple(double angle) {
  const double r = std::remainder(angle, kTwoPi);
  return std::abs(r);
}

double ClosureReport::worst() const { return std::max({worst_V, worst_W, worst_R}); }

ClosureReport closure_report(const PulseSequence& seq, double tolerance) {
  ClosureReport rep;
  rep.tolerance = tolerance;
  for (const auto& rec : accumulate_all(seq)) {
    ClosureResidual res{rec.tuple, std::abs(rec.V), std::abs(rec.W),
                        distance_to_2pi_multiple(rec.R)};
    rep.worst_V = std::max(rep.worst_V, res.V);
    rep.worst_W = std::max(rep.worst_W, res.W);
    rep.worst_R = std::max(rep.worst_R, res.R_mod_2pi);
    rep.residuals.push_back(std::move(res));
  }
  rep.is_closed = rep.worst() <= tolerance;
  return rep;
}

Matrix displacement_matrix(int cutoff, Complex alpha) {
  if (cutoff < 1) throw InvalidArgument("displacement needs a positive cutoff");
  Matrix D(cutoff, cutoff);
  // Column 0 is the coherent state; D a^dag = (a^dag - conj(alpha)) D gives
  // the remaining columns without touching levels >= cutoff.
  D(0, 0) = std::exp(-0.5 * std::norm(alpha));
  for (int m = 1; m < cutoff; ++m) D(m, 0) = D(m - 1, 0) * alpha / std::sqrt(double(m));
  const Complex ac = std::conj(alpha);
  for (int n = 1; n < cutoff; ++n) {
    const double inv = 1.0 / std::sqrt(double(n));
    D(0, n) = -ac * D(0, n - 1) * inv;
    for (int m = 1; m < cutoff; ++m) {
      D(m, n) = (std::sqrt(double(m)) * D(m - 1, n - 1) - ac * D(m, n - 1)) * inv;
    }
  }
  return D;
}

Matrix factored_oscillator_block(int cutoff, double R, double V, double W, double phase) {
  // exp(-ixV) exp(-ipW) = D(alpha) exp(-iVW/2), alpha = (W - iV)/sqrt(2).
  const Complex alpha = Complex(W, -V) / std::sqrt(2.0);
  Matrix block = displacement_matrix(cutoff, alpha) * std::exp(Complex(0.0, -(phase + 0.5 * V * W)));
  for (int m = 0; m < cutoff; ++m) block.row(m) *= std::exp(Complex(0.0, -R * m));
  return block;
}

Matrix frame_change(const AxisFrame& frame) {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix F = Matrix::Ones(1, 1);
  for (Axis axis : frame) {
    Matrix f(2, 2);
    switch (axis) {
      case Axis::Z: f << 1, 0, 0, 1; break;
      case Axis::X: f << h, h, -h, h; break;
      case Axis::Y: f << -kI * h, kI * h, h, h; break;
    }
    F = kron(F, f);
  }
  return F;
}

double max_displacement(const PulseSequence& seq) {
  double best = 0.0;
  for (const auto& rec : accumulate_all(seq)) {
    for (const auto& e : rec.edges) {
      best = std::max(best, std::hypot(e.to.x, e.to.p));
      if (e.is_arc) best = std::max(best, std::hypot(e.center.x, e.center.p) + e.radius);
    }
  }
  return best / std::sqrt(2.0);
}

ClosedFormResult closed_form_unitary(const PulseSequence& seq, const OscillatorSpec& osc,
                                     const PropagatorOptions& opts) {
  osc.validate();
  const auto records = accumulate_all(seq, opts);
  std::vector<Matrix> blocks;
  blocks.reserve(records.size());
  for (const auto& rec : records) {
    blocks.push_back(factored_oscillator_block(osc.cutoff, rec.R, rec.V, rec.W, rec.total_phase()));
  }
  ClosedFormResult result{
      {Space::composite(seq.n_qubits(), osc), assemble_block_diagonal(frame_change(seq.frame), blocks)},
      0.0,
      {}};
  // Vacuum tail beyond the cutoff for the farthest excursion.
  const double alpha = max_displacement(seq);
  const double mean = alpha * alpha;
  double kept = 0.0;
  double term = std::exp(-mean);
  for (int m = 0; m < osc.cutoff; ++m) {
    kept += term;
    term *= mean / (m + 1);
  }
  result.leakage_estimate = std::max(0.0, 1.0 - kept);
  if (result.leakage_estimate > 1e-8) {
    std::ostringstream os;
    os << "cutoff " << osc.cutoff << " too small: displacement |alpha| = " << alpha
       << " leaves vacuum tail " << result.leakage_estimate;
    result.warnings.push_back(os.str());
  }
  return result;
}

PulseSequence truncate_sequence(const PulseSequence& seq, double t) {
  if (!(t > 0.0)) throw InvalidArgument("truncation time must be positive");
  PulseSequence out{seq.frame, {}};
  double elapsed = 0.0;
  for (const auto& seg : seq.segments) {
    if (elapsed + seg.duration >= t) {
      PulseSegment cut = seg;
      cut.duration = t - elapsed;
      if (cut.duration > 0.0) out.segments.push_back(cut);
      return out;
    }
    out.segments.push_back(seg);
    elapsed += seg.duration;
  }
  return out;
}

}  // namespace oscbus
