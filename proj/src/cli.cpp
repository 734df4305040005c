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

#include "oscbus/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "oscbus/analysis.hpp"
#include "oscbus/compiler.hpp"
#include "oscbus/error.hpp"
#include "oscbus/grover.hpp"
#include "oscbus/io.hpp"
#include "oscbus/propagator.hpp"
#include "oscbus/verify.hpp"

namespace oscbus {
namespace {

constexpr double kPi = std::numbers::pi;

std::optional<int> parse_cutoff(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 2) {
    throw InvalidArgument("--cutoff expects 'auto' or an integer >= 2, got '" + text + "'");
  }
  return value;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  return f;
}

void write_text(const std::string& path, const std::string& text) {
  auto f = open_output(path);
  f << text;
}

struct GateFlags {
  std::vector<std::string> osc{"fock:0"};
  std::string cutoff = "auto";
  std::string out;
  std::string traj;
  std::string program;
  double l1 = std::sqrt(0.5 * kPi);
  double l2 = std::sqrt(0.5 * kPi);
  double mu = 0.3;
  double theta = 0.5 * kPi;
  int controls = 2;
  int qubits = 2;
  int K = 1;
  double omega = 1.0;
};

void add_common_gate_flags(CLI::App* cmd, GateFlags& f) {
  cmd->add_option("--osc", f.osc, "oscillator input fock:k or thermal:nbar (repeatable)")
      ->capture_default_str();
  cmd->add_option("--cutoff", f.cutoff, "Fock cutoff: auto or an integer")->capture_default_str();
  cmd->add_option("--out", f.out, "write the gate report JSON here");
  cmd->add_option("--traj", f.traj, "write the phase-space trajectory CSV here");
  cmd->add_option("--program", f.program, "write the compiled program JSON here");
}

struct CompiledGate {
  std::string name;
  Program program;
  Matrix ideal;
};

CompiledGate compile_named(const std::string& kind, const GateFlags& f) {
  if (kind == "rectangle") {
    const auto A = InternalOperator::projector(Axis::Z, 0);
    const auto B = InternalOperator::pauli(Axis::X, 1);
    return {kind, compile_rectangle(f.l1, f.l2, A, B, 2), ideal::rectangle(f.l1, f.l2, A, B, 2)};
  }
  if (kind == "parallelogram") {
    const auto A = InternalOperator::pauli(Axis::X, 1);
    const auto C = InternalOperator::offset_sum(Axis::Z, std::vector<int>{0});
    return {kind, compile_parallelogram(f.mu, f.theta, A, C, 2),
            ideal::cos_gate(f.mu, f.theta, A, C, 2)};
  }
  if (kind == "toffoli") {
    if (f.K < 1) throw InvalidArgument("--K must be a positive integer");
    return {kind, compile_toffoli(f.K, f.omega), ideal::cnnot(2)};
  }
  if (kind == "cnnot") {
    if (f.controls < 1) throw InvalidArgument("--controls must be at least 1");
    if (f.controls > 5) throw InvalidArgument("--controls is limited to 5");
    return {kind, compile_cnnot(f.controls), ideal::cnnot(f.controls)};
  }
  if (kind == "product-phase") {
    if (f.qubits < 1 || f.qubits > 6) throw InvalidArgument("--qubits must be in 1..6");
    std::vector<int> q(static_cast<std::size_t>(f.qubits));
    for (int l = 0; l < f.qubits; ++l) q[l] = l;
    return {kind, compile_product_phase(f.mu, q, f.qubits), ideal::product_phase(f.mu, q, f.qubits)};
  }
  throw InvalidArgument("unknown gate '" + kind + "'");
}

void print_report(std::ostream& out, const GateReport& rep) {
  out << "gate " << rep.gate << ": " << rep.n_qubits << " qubit(s), cutoff " << rep.cutoff
      << (rep.cutoff_converged ? " (converged)" : " (not converged)") << "\n";
  out << std::scientific << std::setprecision(3);
  for (const auto& in : rep.inputs) {
    out << "  " << std::left << std::setw(14) << in.label << std::right
        << " infidelity " << 1.0 - in.fidelity << "  residual " << in.residual << "  leakage "
        << in.leakage << "\n";
  }
  out << "  spread " << rep.fidelity_spread << "  closure V " << rep.closure_V << " W "
      << rep.closure_W << " R " << rep.closure_R << "\n";
  out << std::defaultfloat;
  for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
  out << (rep.passed ? "PASS" : "FAIL") << "\n";
}

int cmd_gate(const std::string& kind, const GateFlags& f, std::ostream& out) {
  std::vector<OscInput> inputs;
  for (const auto& s : f.osc) inputs.push_back(OscInput::parse(s));
  GateReportOptions opts;
  opts.cutoff = parse_cutoff(f.cutoff);
  const CompiledGate gate = compile_named(kind, f);
  if (!f.program.empty()) write_text(f.program, dump(to_json(gate.program)));
  if (!f.traj.empty()) {
    auto csv = open_output(f.traj);
    for (const auto* seq : gate.program.sequences()) write_trajectory_csv(csv, *seq);
  }
  const GateReport rep = gate_report(gate.program, gate.ideal, inputs, opts, gate.name);
  if (!f.out.empty()) write_text(f.out, dump(to_json(rep)));
  print_report(out, rep);
  return rep.passed ? kExitPass : kExitFail;
}

struct GroverFlags {
  int qubits = 2;
  std::uint64_t target = 0;
  std::string iterations = "auto";
  std::string osc = "fock:0";
  std::string cutoff = "auto";
  std::string mode = "bus";
  std::string inversion = "xframe";
  std::string out;
  std::string csv;
  bool all_ones = false;
};

int cmd_grover(const GroverFlags& f, std::ostream& out) {
  if (f.qubits < 1 || f.qubits > 30) throw InvalidArgument("--qubits must be in 1..30");
  GroverOptions opts;
  if (f.iterations != "auto") {
    std::size_t used = 0;
    int k = -1;
    try {
      k = std::stoi(f.iterations, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f.iterations.size() || k < 0) {
      throw InvalidArgument("--iterations expects 'auto' or a non-negative integer");
    }
    opts.iterations = k;
  }
  opts.osc_input = OscInput::parse(f.osc);
  opts.cutoff = parse_cutoff(f.cutoff);
  opts.mode = f.mode == "ideal" ? GroverMode::Ideal : GroverMode::Bus;
  opts.inversion = f.inversion == "explicit" ? InversionMode::ExplicitRotations : InversionMode::XFrame;

  GroverResult result;
  std::optional<AllOnesReport> demo;
  if (f.all_ones) {
    demo = demo_all_ones(f.qubits, opts);
    result = demo->run;
  } else {
    result = run_grover(f.qubits, f.target, opts);
  }

  nlohmann::json summary = to_json(result);
  if (demo) {
    summary["excited_count"] = demo->excited_count;
    summary["uniform_addressing"] = demo->uniform_addressing;
  }
  if (!f.out.empty()) write_text(f.out, dump(summary));
  if (!f.csv.empty()) {
    auto csv = open_output(f.csv);
    write_grover_csv(csv, result);
  }

  out << "grover n=" << result.n << " target=" << result.x0 << " iterations=" << result.iterations
      << " mode=" << result.mode << " osc=" << result.osc_input;
  if (result.mode == "bus") out << " cutoff=" << result.cutoff;
  out << "\n" << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < result.per_iteration.size(); ++i) {
    out << "  after " << i << ": P(target) = " << result.per_iteration[i] << "\n";
  }
  if (demo) {
    for (std::size_t c = 0; c < demo->excited_count.size(); ++c) {
      out << "  P(" << c << " excited) = " << demo->excited_count[c] << "\n";
    }
    out << "  uniform addressing: " << (demo->uniform_addressing ? "yes" : "no") << "\n";
  }
  out << "success probability " << result.success_probability << "\n" << std::defaultfloat;

  bool passed = true;
  for (const auto* rep : {&result.oracle_report, &result.inversion_report}) {
    if (*rep && !(*rep)->passed) {
      out << "  " << (*rep)->gate << " report failed\n";
      passed = false;
    }
  }
  out << (passed ? "PASS" : "FAIL") << "\n";
  return passed ? kExitPass : kExitFail;
}

int cmd_verify(std::uint64_t seed, int cases, const std::string& fault, std::ostream& out) {
  if (cases < 1) throw InvalidArgument("--cases must be at least 1");
  PropagatorOptions opts;
  opts.negate_area_increment = fault == "s-sign";
  const auto results = run_verification(seed, cases, opts);
  bool all = true;
  out << std::scientific << std::setprecision(3);
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.value << " (tolerance "
        << r.tolerance << ")\n";
    all = all && r.passed;
  }
  out << std::defaultfloat;
  return all ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse compiler and simulator for multi-qubit gates through an oscillator bus",
               "oscbus"};
  app.set_config("--config", "", "read flags from a TOML/INI file (flags on the line win)");
  app.require_subcommand(1);

  auto* gate = app.add_subcommand("gate", "compile and simulate a gate, write a GateReport");
  gate->require_subcommand(1);
  GateFlags gf;
  std::string gate_kind;
  for (const char* kind : {"rectangle", "parallelogram", "toffoli", "cnnot", "product-phase"}) {
    auto* sub = gate->add_subcommand(kind);
    add_common_gate_flags(sub, gf);
    sub->callback([&gate_kind, kind] { gate_kind = kind; });
    const std::string k = kind;
    if (k == "rectangle") {
      sub->add_option("--l1", gf.l1, "side along x (A edge)")->capture_default_str();
      sub->add_option("--l2", gf.l2, "side along p (B edge)")->capture_default_str();
    } else if (k == "parallelogram") {
      sub->add_option("--mu", gf.mu)->capture_default_str();
      sub->add_option("--theta", gf.theta)->capture_default_str();
    } else if (k == "toffoli") {
      sub->add_option("--K", gf.K, "integer loop count of the single-Hamiltonian Toffoli")
          ->capture_default_str();
      sub->add_option("--omega", gf.omega)->capture_default_str();
    } else if (k == "cnnot") {
      sub->add_option("--controls", gf.controls)->capture_default_str();
    } else {
      sub->add_option("--mu", gf.mu)->capture_default_str();
      sub->add_option("--qubits", gf.qubits)->capture_default_str();
    }
  }

  auto* grover = app.add_subcommand("grover", "run Grover search through the bus");
  GroverFlags grf;
  grover->add_option("--qubits", grf.qubits)->capture_default_str();
  grover->add_option("--target", grf.target, "marked item x0")->capture_default_str();
  grover->add_option("--iterations", grf.iterations, "auto or a count")->capture_default_str();
  grover->add_option("--osc", grf.osc, "fock:k or thermal:nbar")->capture_default_str();
  grover->add_option("--cutoff", grf.cutoff)->capture_default_str();
  grover->add_option("--mode", grf.mode)
      ->check(CLI::IsMember({"bus", "ideal"}))
      ->capture_default_str();
  grover->add_option("--inversion", grf.inversion)
      ->check(CLI::IsMember({"xframe", "explicit"}))
      ->capture_default_str();
  grover->add_option("--out", grf.out, "summary JSON");
  grover->add_option("--csv", grf.csv, "per-iteration probability CSV");
  grover->add_flag("--all-ones", grf.all_ones, "search for 11...1 and report excitation counts");

  auto* verify = app.add_subcommand("verify", "randomized dual-path and identity checks");
  std::uint64_t seed = 42;
  int cases = 50;
  std::string fault = "none";
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--cases", cases)->capture_default_str();
  verify->add_option("--inject-fault", fault, "deliberate defect for mutation testing")
      ->check(CLI::IsMember({"none", "s-sign"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gate->parsed()) return cmd_gate(gate_kind, gf, out);
    if (grover->parsed()) return cmd_grover(grf, out);
    return cmd_verify(seed, cases, fault, out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace oscbus
