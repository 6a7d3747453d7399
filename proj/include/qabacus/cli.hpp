// Copyright 2026 The qabacus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/*
 * cli.hpp: command-line verbs.
 *
 *   spectrum  Robin half-line levels as CSV (n, E_n, eta)
 *   gate      effective 2x2 gate of one pulse or a schedule file (JSON)
 *   compile   pulse schedule for a named or inline target gate (JSON)
 *   verify    analytic vs grid-oracle gate for a schedule file (JSON)
 *   scatter   transmission/reflection of a sigma barrier vs k (CSV)
 *
 * Exit codes: 0 success, 1 computational error, 2 usage error.
 */

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qabacus/barrier.hpp"
#include "qabacus/compiler.hpp"
#include "qabacus/error.hpp"
#include "qabacus/evolve.hpp"
#include "qabacus/format.hpp"
#include "qabacus/gatelab.hpp"
#include "qabacus/oracle.hpp"
#include "qabacus/schedule_json.hpp"
#include "qabacus/spectral.hpp"
#include "qabacus/verify.hpp"

namespace qabacus::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// --help was requested; `text` is the help screen.
struct HelpRequested {
  std::string text;
};

enum class Verb { Spectrum, Gate, Compile, Verify, Scatter };
enum class Format { Json, Csv };

struct Command {
  Verb verb = Verb::Spectrum;
  Format format = Format::Csv;
  std::string output;  ///< empty: standard output
  double omega = 1.0;

  // spectrum
  double theta = 0.0;
  int levels = 6;

  // gate / scatter barrier
  std::optional<double> mu;
  double nu = 0.0;
  std::optional<std::array<double, 4>> wall;  ///< theta+, theta-, v+, v-
  std::int64_t half_periods = 1;
  std::string envelope = "bump";
  int n_max = 64;

  // gate / verify
  std::string schedule_path;

  // compile
  std::string target;

  // verify
  int points = 2048;
  int steps = 2048;

  // scatter
  std::vector<double> k_values{0.5, 1.0, 5.0, 20.0};
  bool with_oracle = false;
};

inline Command parse_args(const std::vector<std::string>& args) {
  CLI::App app{"qabacus: locational-qubit laboratory", "qabacus"};
  app.require_subcommand(1, 1);
  Command cmd;
  std::string format;
  std::optional<double> theta_plus;
  std::optional<double> theta_minus;
  std::optional<double> v_plus;
  std::optional<double> v_minus;

  auto common = [&](CLI::App* sub, const char* default_format) {
    sub->add_option("--omega", cmd.omega, "trap frequency")->capture_default_str();
    sub->add_option("-o,--output", cmd.output, "write to this file instead of stdout");
    sub->add_option("--format", format, std::string("json or csv (default ") + default_format + ")")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto envelope = [&](CLI::App* sub) {
    sub->add_option("--envelope", cmd.envelope, "carrier profile: bump or ground")
        ->check(CLI::IsMember({"bump", "ground"}))
        ->capture_default_str();
    sub->add_option("--n-max", cmd.n_max, "largest oscillator index in the basis")->capture_default_str();
  };

  auto* spectrum = app.add_subcommand("spectrum", "Robin half-line levels");
  common(spectrum, "csv");
  spectrum->add_option("--theta", cmd.theta, "wall angle, 0 Neumann, pi Dirichlet")->capture_default_str();
  spectrum->add_option("--levels", cmd.levels, "number of levels (1..64)")->capture_default_str();

  auto* gate = app.add_subcommand("gate", "effective gate of one pulse or a schedule");
  common(gate, "json");
  envelope(gate);
  gate->add_option("--mu", cmd.mu, "sigma barrier angle mu");
  gate->add_option("--nu", cmd.nu, "sigma barrier phase nu")->capture_default_str();
  gate->add_option("--theta-plus", theta_plus, "wall angle on x > 0");
  gate->add_option("--theta-minus", theta_minus, "wall angle on x < 0");
  gate->add_option("--v-plus", v_plus, "offset energy on x > 0");
  gate->add_option("--v-minus", v_minus, "offset energy on x < 0");
  gate->add_option("--half-periods", cmd.half_periods, "pulse duration")->capture_default_str();
  gate->add_option("--schedule", cmd.schedule_path, "schedule JSON file");

  auto* compile = app.add_subcommand("compile", "pulse schedule for a target gate");
  common(compile, "json");
  compile->add_option("--target", cmd.target, "I, X, H, Z, S, T or a JSON 2x2 matrix")->required();

  auto* verify = app.add_subcommand("verify", "analytic vs grid-oracle gate");
  common(verify, "json");
  envelope(verify);
  verify->add_option("--schedule", cmd.schedule_path, "schedule JSON file")->required();
  verify->add_option("--points", cmd.points, "grid points")->capture_default_str();
  verify->add_option("--steps", cmd.steps, "time steps per half-period")->capture_default_str();

  auto* scatter = app.add_subcommand("scatter", "transmission through a sigma barrier");
  common(scatter, "csv");
  scatter->add_option("--mu", cmd.mu, "sigma barrier angle mu (default pi/2)");
  scatter->add_option("--nu", cmd.nu, "sigma barrier phase nu")->capture_default_str();
  scatter->add_option("--k", cmd.k_values, "comma-separated wavenumbers")->delimiter(',')->capture_default_str();
  scatter->add_flag("--oracle", cmd.with_oracle, "add wavepacket grid columns");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  cmd.verb = name == "spectrum" ? Verb::Spectrum
             : name == "gate"   ? Verb::Gate
             : name == "compile" ? Verb::Compile
             : name == "verify" ? Verb::Verify
                                : Verb::Scatter;
  const bool csv_default = cmd.verb == Verb::Spectrum || cmd.verb == Verb::Scatter;
  cmd.format = format.empty() ? (csv_default ? Format::Csv : Format::Json)
                              : (format == "csv" ? Format::Csv : Format::Json);
  if (cmd.format == Format::Csv && !csv_default) throw UsageError("--format: " + name + " only writes json");

  if (!(cmd.omega > 0.0) || !std::isfinite(cmd.omega)) throw UsageError("--omega: must be positive");
  if (cmd.verb == Verb::Spectrum && (cmd.levels < 1 || cmd.levels > 64)) {
    throw UsageError("--levels: must lie in [1, 64]");
  }
  if (cmd.verb == Verb::Gate) {
    const bool any_wall = theta_plus || theta_minus || v_plus || v_minus;
    const int sources = (cmd.mu ? 1 : 0) + (any_wall ? 1 : 0) + (cmd.schedule_path.empty() ? 0 : 1);
    if (sources != 1) throw UsageError("gate: give exactly one of --mu, --theta-plus/--theta-minus, --schedule");
    if (any_wall) {
      cmd.wall = std::array<double, 4>{theta_plus.value_or(0.0), theta_minus.value_or(0.0), v_plus.value_or(0.0),
                                       v_minus.value_or(0.0)};
    }
    if (cmd.half_periods < 1) throw UsageError("--half-periods: must be >= 1");
  }
  if (cmd.verb == Verb::Verify && (cmd.points < 8 || cmd.points % 2 != 0 || cmd.steps < 1)) {
    throw UsageError("--points/--steps: points must be even and >= 8, steps >= 1");
  }
  if (cmd.verb == Verb::Scatter) {
    if (!cmd.mu) cmd.mu = kPi / 2.0;
    for (double k : cmd.k_values) {
      if (!(k > 0.0)) throw UsageError("--k: wavenumbers must be positive");
    }
  }
  return cmd;
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string json_matrix(const Mat2& m) {
  std::string s = "[";
  for (int r = 0; r < 2; ++r) {
    s += r == 0 ? "[" : ", [";
    for (int c = 0; c < 2; ++c) {
      if (c) s += ", ";
      s += "[" + format_double(m(r, c).real()) + ", " + format_double(m(r, c).imag()) + "]";
    }
    s += "]";
  }
  return s + "]";
}

inline Envelope make_envelope(const Command& cmd) {
  const HOBasisSpec basis{cmd.omega, cmd.n_max};
  return cmd.envelope == "ground" ? Envelope::ground(basis) : Envelope::standard(basis);
}

inline cplx json_complex(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw UsageError("--target: matrix entries must be numbers or [re, im] pairs");
}

}  // namespace detail

/// Named gates I, X, H, Z, S, T, or a JSON 2x2 matrix such as
/// [[0, 1], [1, 0]] or [[[0, 0], [1, 0]], ...] with [re, im] entries. Inline
/// matrices within 1e-6 of unitary are projected onto the nearest unitary.
inline UnitaryMatrix2 parse_target(const std::string& text) {
  if (text == "I") return UnitaryMatrix2::identity();
  if (text == "X") return UnitaryMatrix2::pauli_x();
  if (text == "H") return UnitaryMatrix2::hadamard();
  if (text == "Z") return UnitaryMatrix2::pauli_z();
  if (text == "S") return UnitaryMatrix2::diagonal(0.0, kPi / 2.0);
  if (text == "T") return UnitaryMatrix2::diagonal(0.0, kPi / 4.0);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw UsageError("--target: unknown gate \"" + text + "\"");
  }
  if (!doc.is_array() || doc.size() != 2 || !doc[0].is_array() || doc[0].size() != 2 || !doc[1].is_array() ||
      doc[1].size() != 2) {
    throw UsageError("--target: matrix must be 2x2");
  }
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = detail::json_complex(doc[r][c]);
  }
  if (unitarity_defect(m) > 1e-6) throw UsageError("--target: matrix is not unitary");
  return UnitaryMatrix2::nearest(m);
}

inline void run_spectrum(const Command& cmd, std::ostream& out) {
  const auto spec = robin_spectrum(cmd.theta, cmd.omega, cmd.levels);
  auto eta = [&](std::size_t n) { return (spec.levels[n] - cmd.omega * (2.0 * n + 0.5)) / cmd.omega; };
  if (cmd.format == Format::Csv) {
    out << "n,E_n,eta\n";
    for (std::size_t n = 0; n < spec.levels.size(); ++n) {
      out << n << ',' << format_double(spec.levels[n]) << ',' << format_double(eta(n)) << '\n';
    }
    return;
  }
  out << "{\n  \"theta\": " << format_double(spec.theta) << ",\n  \"omega\": " << format_double(cmd.omega)
      << ",\n  \"levels\": [";
  for (std::size_t n = 0; n < spec.levels.size(); ++n) {
    out << (n ? ",\n" : "\n") << "    {\"n\": " << n << ", \"E_n\": " << format_double(spec.levels[n])
        << ", \"eta\": " << format_double(eta(n)) << "}";
  }
  out << "\n  ]\n}\n";
}

inline PulseSchedule gate_schedule(const Command& cmd) {
  if (!cmd.schedule_path.empty()) return parse_schedule(detail::read_file(cmd.schedule_path));
  PulseSchedule s;
  s.omega = cmd.omega;
  if (cmd.mu) {
    s.pulses.push_back(Pulse::sigma(*cmd.mu, cmd.nu, cmd.half_periods));
  } else {
    const auto& w = *cmd.wall;
    s.pulses.push_back(Pulse::wall(wrap_angle(w[0]), wrap_angle(w[1]), w[2], w[3], cmd.half_periods));
  }
  return s;
}

inline void run_gate(const Command& cmd, std::ostream& out) {
  const PulseSchedule s = gate_schedule(cmd);
  Command local = cmd;
  local.omega = s.omega;
  const GateMatrix g = effective_gate(s, detail::make_envelope(local));
  std::string fidelity = "null";
  try {
    fidelity = format_double(gate_fidelity(schedule_matrix(s), g));
  } catch (const NotQubitExact&) {
  }
  out << "{\n  \"matrix\": " << detail::json_matrix(g.matrix) << ",\n  \"leakage\": " << format_double(g.leakage)
      << ",\n  \"fidelity_vs_ideal\": " << fidelity << "\n}\n";
}

inline void run_compile(const Command& cmd, std::ostream& out) {
  out << emit_schedule(compile_gate(parse_target(cmd.target), cmd.omega));
}

inline void run_verify(const Command& cmd, std::ostream& out) {
  const PulseSchedule s = parse_schedule(detail::read_file(cmd.schedule_path));
  Command local = cmd;
  local.omega = s.omega;
  const VerifyReport r = verify_schedule(s, detail::make_envelope(local), OracleSettings{cmd.points, cmd.steps});
  out << "{\n  \"analytic\": " << detail::json_matrix(r.analytic.matrix)
      << ",\n  \"oracle\": " << detail::json_matrix(r.oracle.matrix)
      << ",\n  \"analytic_leakage\": " << format_double(r.analytic.leakage)
      << ",\n  \"oracle_leakage\": " << format_double(r.oracle.leakage)
      << ",\n  \"max_deviation\": " << format_double(r.max_deviation)
      << ",\n  \"fidelity\": " << format_double(r.fidelity) << ",\n  \"points\": " << cmd.points
      << ",\n  \"steps_per_half_period\": " << cmd.steps << "\n}\n";
}

inline void run_scatter(const Command& cmd, std::ostream& out) {
  const UnitaryMatrix2 u(sigma_matrix(*cmd.mu, cmd.nu));
  struct Row {
    double k, t, r;
    ScatterProbabilities grid;
  };
  std::vector<Row> rows;
  for (double k : cmd.k_values) {
    const auto sc = scattering_coefficients(u, k);
    Row row{k, std::norm(sc.t_left), std::norm(sc.r_left), {}};
    if (cmd.with_oracle) row.grid = wavepacket_scatter(u, k);
    rows.push_back(row);
  }
  if (cmd.format == Format::Csv) {
    out << (cmd.with_oracle ? "k,T,R,T_oracle,R_oracle\n" : "k,T,R\n");
    for (const auto& r : rows) {
      out << format_double(r.k) << ',' << format_double(r.t) << ',' << format_double(r.r);
      if (cmd.with_oracle) out << ',' << format_double(r.grid.transmission) << ',' << format_double(r.grid.reflection);
      out << '\n';
    }
    return;
  }
  out << "{\n  \"mu\": " << format_double(*cmd.mu) << ",\n  \"nu\": " << format_double(cmd.nu) << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i ? ",\n" : "\n") << "    {\"k\": " << format_double(r.k) << ", \"T\": " << format_double(r.t)
        << ", \"R\": " << format_double(r.r);
    if (cmd.with_oracle) {
      out << ", \"T_oracle\": " << format_double(r.grid.transmission)
          << ", \"R_oracle\": " << format_double(r.grid.reflection);
    }
    out << "}";
  }
  out << "\n  ]\n}\n";
}

/// Runs a parsed command; returns the exit code.
inline int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buf;
    switch (cmd.verb) {
      case Verb::Spectrum: run_spectrum(cmd, buf); break;
      case Verb::Gate: run_gate(cmd, buf); break;
      case Verb::Compile: run_compile(cmd, buf); break;
      case Verb::Verify: run_verify(cmd, buf); break;
      case Verb::Scatter: run_scatter(cmd, buf); break;
    }
    if (cmd.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(cmd.output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + cmd.output);
      file << buf.str();
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
}

/// parse_args + execute with the exit-code mapping; args exclude argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  return execute(cmd, out, err);
}

}  // namespace qabacus::cli
