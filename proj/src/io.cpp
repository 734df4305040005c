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

#include "oscbus/io.hpp"

#include <ostream>

#include "oscbus/error.hpp"

namespace oscbus {

using nlohmann::json;

namespace {

std::string frame_string(const AxisFrame& frame) {
  std::string s;
  for (Axis a : frame) s.push_back(axis_name(a));
  return s;
}

AxisFrame parse_frame(const std::string& s) {
  AxisFrame frame;
  for (char c : s) frame.push_back(parse_axis(std::string(1, c)));
  return frame;
}

json segment_json(const PulseSegment& seg) {
  return {{"duration", seg.duration}, {"v", seg.v}, {"w", seg.w}, {"r", seg.r}, {"g", seg.g},
          {"A", to_json(seg.A)},      {"B", to_json(seg.B)}, {"C", to_json(seg.C)},
          {"D", to_json(seg.D)}};
}

PulseSegment segment_from_json(const json& j) {
  PulseSegment seg;
  seg.duration = j.at("duration").get<double>();
  seg.v = j.value("v", 0.0);
  seg.w = j.value("w", 0.0);
  seg.r = j.value("r", 0.0);
  seg.g = j.value("g", 0.0);
  if (j.contains("A")) seg.A = internal_operator_from_json(j.at("A"));
  if (j.contains("B")) seg.B = internal_operator_from_json(j.at("B"));
  if (j.contains("C")) seg.C = internal_operator_from_json(j.at("C"));
  if (j.contains("D")) seg.D = internal_operator_from_json(j.at("D"));
  return seg;
}

}  // namespace

json to_json(const InternalOperator& op) {
  json terms = json::array();
  for (const auto& [q, t] : op.terms()) {
    terms.push_back({{"qubit", q}, {"axis", std::string(1, axis_name(t.axis))}, {"coeff", t.coeff}});
  }
  return {{"c0", op.c0()}, {"terms", terms}};
}

InternalOperator internal_operator_from_json(const json& j) {
  InternalOperator op = InternalOperator::constant(j.value("c0", 0.0));
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      op.add(parse_axis(t.at("axis").get<std::string>()), t.at("qubit").get<int>(),
             t.at("coeff").get<double>());
    }
  }
  return op;
}

json to_json(const Program& prog) {
  json steps = json::array();
  for (const auto& step : prog.steps) {
    if (const auto* seq = std::get_if<PulseSequence>(&step)) {
      json segs = json::array();
      for (const auto& seg : seq->segments) segs.push_back(segment_json(seg));
      steps.push_back({{"kind", "sequence"}, {"frame", frame_string(seq->frame)}, {"segments", segs}});
    } else {
      const auto& local = std::get<IdealLocal>(step);
      steps.push_back({{"kind", "ideal_local"},
                       {"axis", std::string(1, axis_name(local.axis))},
                       {"angle", local.angle},
                       {"qubit", local.qubit}});
    }
  }
  return {{"schema_version", kProgramSchemaVersion}, {"n_qubits", prog.n_qubits}, {"steps", steps}};
}

Program program_from_json(const json& j) {
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kProgramSchemaVersion) {
      throw InvalidArgument("unsupported program schema_version " + std::to_string(version));
    }
    Program prog{j.at("n_qubits").get<int>(), {}};
    for (const auto& step : j.at("steps")) {
      const auto kind = step.at("kind").get<std::string>();
      if (kind == "sequence") {
        PulseSequence seq{parse_frame(step.at("frame").get<std::string>()), {}};
        for (const auto& seg : step.at("segments")) seq.segments.push_back(segment_from_json(seg));
        prog.then(std::move(seq));
      } else if (kind == "ideal_local") {
        prog.then(IdealLocal{parse_axis(step.at("axis").get<std::string>()),
                             step.at("angle").get<double>(), step.at("qubit").get<int>()});
      } else {
        throw InvalidArgument("unknown program step kind '" + kind + "'");
      }
    }
    validate_program(prog);
    return prog;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed program document: ") + e.what());
  }
}

json to_json(const GateReport& rep) {
  json inputs = json::array();
  for (const auto& in : rep.inputs) {
    inputs.push_back({{"label", in.label},
                      {"fidelity", in.fidelity},
                      {"residual", in.residual},
                      {"leakage", in.leakage}});
  }
  return {{"schema_version", GateReport::kSchemaVersion},
          {"gate", rep.gate},
          {"n_qubits", rep.n_qubits},
          {"cutoff", rep.cutoff},
          {"cutoff_history", rep.cutoff_history},
          {"cutoff_converged", rep.cutoff_converged},
          {"inputs", inputs},
          {"fidelity_spread", rep.fidelity_spread},
          {"worst_leakage", rep.worst_leakage},
          {"worst_residual", rep.worst_residual},
          {"closure", {{"V", rep.closure_V}, {"W", rep.closure_W}, {"R", rep.closure_R}}},
          {"checks",
           {{"fidelity", rep.fidelity_ok},
            {"spread", rep.spread_ok},
            {"residual", rep.residual_ok},
            {"closure", rep.closure_ok},
            {"leakage", rep.leakage_ok}}},
          {"passed", rep.passed},
          {"warnings", rep.warnings}};
}

json to_json(const GroverResult& result) {
  json j = {{"schema_version", kGroverSchemaVersion},
            {"n_qubits", result.n},
            {"target", result.x0},
            {"iterations", result.iterations},
            {"mode", result.mode},
            {"osc_input", result.osc_input},
            {"cutoff", result.cutoff},
            {"success_probability", result.success_probability},
            {"per_iteration", result.per_iteration},
            {"distribution", result.distribution}};
  j["oracle_report"] = result.oracle_report ? to_json(*result.oracle_report) : json(nullptr);
  j["inversion_report"] = result.inversion_report ? to_json(*result.inversion_report) : json(nullptr);
  return j;
}

void write_grover_csv(std::ostream& out, const GroverResult& result) {
  out << "iteration,probability\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < result.per_iteration.size(); ++i) {
    out << i << ',' << result.per_iteration[i] << '\n';
  }
  out.precision(old_precision);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace oscbus
