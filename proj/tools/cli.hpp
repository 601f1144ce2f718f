// Copyright 2026 The cvqss Authors
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

#ifndef CVQSS_TOOLS_CLI_HPP_
#define CVQSS_TOOLS_CLI_HPP_

// Command-line front end. Subcommands:
//
//   fidelity         closed-form security report for one plan (JSON)
//   security-region  (g, E) grid of fidelities and verdicts (CSV or JSON)
//   verify-channel   complete-positivity check of a builtin or JSON channel
//   simulate         full moment-level simulation of one protocol run
//
// Exit codes: 0 success, 1 domain/runtime error, 2 usage error.
//
// Secrets:   coherent:x,p  squeezed:zeta,theta  thermal:nbar,zeta
//            general:x,p,zeta,theta,nbar
// Resources: tmsv:r  vacuum  cov:@state.json
// Squeezing values (zeta, r) also accept a dB suffix, e.g. tmsv:13dB.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cvqss/cvqss.hpp"

namespace cvqss::cli {

/// Malformed flag value; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline std::string format_double(double x) { return fmt::format("{:.17g}", x); }

inline double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return value;
}

/// A squeezing parameter, either plain (zeta or r) or in dB ("6dB").
inline double parse_squeezing(std::string_view text, std::string_view what) {
  if (text.size() > 2) {
    const auto suffix = text.substr(text.size() - 2);
    if (suffix == "dB" || suffix == "db") {
      return db_to_zeta(parse_number(text.substr(0, text.size() - 2), what));
    }
  }
  return parse_number(text, what);
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline SecretSpec parse_secret(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto args = colon == std::string_view::npos ? std::vector<std::string_view>{}
                                                    : split(text.substr(colon + 1), ',');
  const auto expect = [&](std::size_t n) {
    if (args.size() != n) {
      throw UsageError(fmt::format("--secret {}: expected {} comma-separated values", kind, n));
    }
  };
  if (kind == "coherent") {
    expect(2);
    return SecretSpec::coherent(parse_number(args[0], "secret x"), parse_number(args[1], "secret p"));
  }
  if (kind == "squeezed") {
    expect(2);
    return SecretSpec::squeezed(parse_squeezing(args[0], "secret zeta"),
                                parse_number(args[1], "secret theta"));
  }
  if (kind == "thermal") {
    expect(2);
    return SecretSpec::thermal(parse_number(args[0], "secret nbar"),
                               parse_squeezing(args[1], "secret zeta"));
  }
  if (kind == "general") {
    expect(5);
    SecretSpec s;
    s.mean = Eigen::Vector2d(parse_number(args[0], "secret x"), parse_number(args[1], "secret p"));
    s.zeta = parse_squeezing(args[2], "secret zeta");
    s.theta = parse_number(args[3], "secret theta");
    s.nbar = parse_number(args[4], "secret nbar");
    return s;
  }
  throw UsageError(fmt::format("--secret: unknown kind '{}'", kind));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": malformed JSON: " + e.what());
  }
}

inline GaussianState parse_resource(std::string_view text) {
  if (text == "vacuum") return make_vacuum(2);
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "tmsv") return make_tmsv(parse_squeezing(arg, "resource r"));
  if (kind == "cov") {
    if (arg.empty() || arg.front() != '@') throw UsageError("--resource cov: expected cov:@file.json");
    GaussianState s = state_from_json(read_json_file(std::string(arg.substr(1))));
    if (s.n_modes() != 2) throw InvalidArgument("resource file must describe a two-mode state");
    if (!s.is_bona_fide()) throw InvalidArgument("resource file: state is not bona fide");
    return s;
  }
  throw UsageError(fmt::format("--resource: unknown kind '{}'", kind));
}

inline ShareSet parse_shares(std::string_view text) {
  if (text == "12") return ShareSet::k12;
  if (text == "13") return ShareSet::k13;
  if (text == "23") return ShareSet::k23;
  throw UsageError(fmt::format("--shares: expected 12, 13 or 23, got '{}'", text));
}

inline Correction parse_correction(std::string_view text) {
  if (text == "auto") return Correction::kAuto;
  if (text == "none") return Correction::kNone;
  if (text == "esa") return Correction::kEsa;
  if (text == "lsatt") return Correction::kLsatt;
  throw UsageError(fmt::format("--correction: unknown value '{}'", text));
}

inline Realization parse_realization(std::string_view text) {
  if (text == "ideal" || text == "ideal_channel") return Realization::kIdealChannel;
  if (text == "feedforward") return Realization::kFeedforward;
  throw UsageError(fmt::format("--realization: unknown value '{}'", text));
}

struct Range {
  double min;
  double max;
  int steps;

  double at(int i) const { return min + (max - min) * i / (steps - 1); }
};

inline Range parse_range(std::string_view text, std::string_view what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError(fmt::format("{}: expected min,max,steps", what));
  Range r{parse_number(parts[0], what), parse_number(parts[1], what), 0};
  const double steps = parse_number(parts[2], what);
  if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
    throw UsageError(fmt::format("{}: steps must be an integer >= 2", what));
  }
  r.steps = static_cast<int>(steps);
  if (!(r.min <= r.max)) throw UsageError(fmt::format("{}: min must not exceed max", what));
  return r;
}

/// Hardware thread count, capped by CVQSS_THREADS when that is a positive integer.
inline unsigned worker_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CVQSS_THREADS")) {
    unsigned n = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return std::min(n, hw);
  }
  return hw;
}

struct RegionRow {
  double g;
  double e;
  double fidelity;
  bool secure;
  bool classical_beaten;
};

/// Grid rows in g-major order. With `resource`, E is read off the resource
/// at each g and the E range is ignored.
inline std::vector<RegionRow> security_region(const SecretSpec& secret, const Range& g_range,
                                              const std::optional<Range>& e_range,
                                              const std::optional<GaussianState>& resource,
                                              unsigned threads) {
  secret.validate();
  if (!(g_range.min > 0.0 && g_range.max < std::numbers::sqrt2)) {
    throw InvalidArgument("security-region: g range must lie inside (0, sqrt 2)");
  }
  if (e_range && !(e_range->min >= 0.0)) {
    throw InvalidArgument("security-region: E range must be >= 0");
  }
  const int e_steps = resource ? 1 : e_range->steps;
  std::vector<RegionRow> rows(static_cast<std::size_t>(g_range.steps) *
                              static_cast<std::size_t>(e_steps));
  const auto fill_g = [&](int gi) {
    const double g = g_range.at(gi);
    for (int ei = 0; ei < e_steps; ++ei) {
      const double e = resource ? steering_parameter(*resource, g, SteeringDirection::kTwoSteersOne)
                                : e_range->at(ei);
      const double f = fidelity_thermal(e, g, secret.zeta, secret.nbar);
      rows[static_cast<std::size_t>(gi) * e_steps + ei] =
          RegionRow{g, e, f, f > kNoCloningFidelity, f > kClassicalFidelity};
    }
  };
  threads = std::clamp(threads, 1u, static_cast<unsigned>(g_range.steps));
  if (threads == 1) {
    for (int gi = 0; gi < g_range.steps; ++gi) fill_g(gi);
    return rows;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int gi = static_cast<int>(t); gi < g_range.steps; gi += static_cast<int>(threads)) {
            fill_g(gi);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

inline void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows) {
  out << "g,E,fidelity,secure,classical_beaten\n";
  for (const auto& r : rows) {
    out << format_double(r.g) << ',' << format_double(r.e) << ',' << format_double(r.fidelity)
        << ',' << (r.secure ? "true" : "false") << ',' << (r.classical_beaten ? "true" : "false")
        << '\n';
  }
}

// Hand-written so numbers carry the same 17 significant digits as the CSV.
inline void write_region_json(std::ostream& out, const std::vector<RegionRow>& rows) {
  out << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RegionRow& r = rows[i];
    out << (i ? "," : "") << "{\"g\":" << format_double(r.g) << ",\"E\":" << format_double(r.e)
        << ",\"fidelity\":" << format_double(r.fidelity)
        << ",\"secure\":" << (r.secure ? "true" : "false")
        << ",\"classical_beaten\":" << (r.classical_beaten ? "true" : "false") << '}';
  }
  out << "]\n";
}

inline double max_deviation(const GaussianState& a, const GaussianState& b) {
  if (a.n_modes() != b.n_modes()) return std::numeric_limits<double>::infinity();
  return std::max((a.mean() - b.mean()).cwiseAbs().maxCoeff(),
                  (a.cov() - b.cov()).cwiseAbs().maxCoeff());
}

struct ProtocolOptions {
  std::string secret = "coherent:0,0";
  std::string resource = "tmsv:1";
  std::string shares = "13";
  double g = 1.0;
  std::string correction = "auto";
  std::optional<double> squeezing_db;
  bool paired_12 = false;
};

inline void add_protocol_options(CLI::App* cmd, ProtocolOptions& o) {
  cmd->add_option("--secret", o.secret, "coherent:x,p | squeezed:zeta,theta | thermal:nbar,zeta | general:x,p,zeta,theta,nbar")
      ->capture_default_str();
  cmd->add_option("--resource", o.resource, "tmsv:r | vacuum | cov:@file.json")->capture_default_str();
  cmd->add_option("--shares", o.shares, "12, 13 or 23")->capture_default_str();
  cmd->add_option("--g", o.g, "reconstruction gain in (0, sqrt 2)")->capture_default_str();
  cmd->add_option("--correction", o.correction, "auto | none | esa | lsatt")->capture_default_str();
  cmd->add_option("--squeezing-db", o.squeezing_db, "override the secret squeezing, in dB");
  cmd->add_flag("--paired-12", o.paired_12, "{1,2}: amplify before dealing, de-amplify after");
}

inline SecretSpec secret_from(const ProtocolOptions& o) {
  SecretSpec s = parse_secret(o.secret);
  if (o.squeezing_db) s.zeta = db_to_zeta(*o.squeezing_db);
  return s;
}

inline ReconstructionPlan plan_from(const ProtocolOptions& o, Realization realization) {
  ReconstructionPlan plan;
  plan.shares = parse_shares(o.shares);
  plan.g = o.g;
  plan.correction = parse_correction(o.correction);
  plan.realization = realization;
  plan.paired_correction_12 = o.paired_12;
  return plan;
}

struct ChannelOptions {
  std::string builtin;
  std::string file;
  double g = 1.0;
  std::optional<double> eta_override;
  std::string shares = "13";
  int modes = 1;
  double gain = 2.0;
  double tau = 0.5;
  double zeta = 0.0;
  double theta = 0.0;
};

inline GaussianChannel channel_from(const ChannelOptions& o) {
  if (!o.file.empty()) return channel_from_json(read_json_file(o.file));
  if (o.builtin == "identity") return GaussianChannel::identity(o.modes);
  if (o.builtin == "reconstruction") {
    return reconstruction_channel(o.g, parse_shares(o.shares), o.eta_override);
  }
  if (o.builtin == "amplifier") return amplifier_channel(o.gain, 0, 1);
  if (o.builtin == "attenuator") return attenuator_channel(o.tau, 0, 1);
  if (o.builtin == "beamsplitter") return beamsplitter_channel(o.tau, 0, 1, 2);
  if (o.builtin == "squeeze") return squeeze_channel(o.zeta, o.theta, 0, 1);
  throw UsageError("verify-channel: give a builtin name or --file");
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-variable (2,3)-threshold quantum state sharing toolkit", "cvqss"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file of option values, one [subcommand] section each");

  ProtocolOptions fid;
  auto* fidelity_cmd = app.add_subcommand("fidelity", "closed-form security report (JSON)");
  add_protocol_options(fidelity_cmd, fid);

  std::string region_secret = "coherent:0,0";
  std::string g_range_text = "0.01,1.41,100";
  std::string e_range_text;
  std::string region_resource;
  std::string format = "csv";
  std::string output = "-";
  std::optional<double> region_db;
  auto* region_cmd = app.add_subcommand("security-region", "fidelity/security grid over (g, E)");
  region_cmd->add_option("--secret", region_secret, "secret DSL")->capture_default_str();
  region_cmd->add_option("--g-range", g_range_text, "min,max,steps")->capture_default_str();
  auto* e_opt = region_cmd->add_option("--e-range", e_range_text, "min,max,steps");
  auto* r_opt = region_cmd->add_option("--resource", region_resource, "take E from a resource");
  e_opt->excludes(r_opt);
  region_cmd->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  region_cmd->add_option("--output", output, "output path, - for stdout")->capture_default_str();
  region_cmd->add_option("--squeezing-db", region_db, "override the secret squeezing, in dB");

  ChannelOptions ch;
  auto* verify_cmd = app.add_subcommand("verify-channel", "complete-positivity check of a channel");
  verify_cmd->add_option("builtin", ch.builtin,
                         "identity | reconstruction | amplifier | attenuator | beamsplitter | squeeze");
  verify_cmd->add_option("--file", ch.file, "channel JSON {\"t\": .., \"n\": ..}");
  verify_cmd->add_option("--g", ch.g, "reconstruction gain");
  verify_cmd->add_option("--eta-override", ch.eta_override, "replace the reconstruction gain eta");
  verify_cmd->add_option("--shares", ch.shares, "13 or 23 (reconstruction)");
  verify_cmd->add_option("--modes", ch.modes, "identity: number of modes");
  verify_cmd->add_option("--gain", ch.gain, "amplifier gain");
  verify_cmd->add_option("--tau", ch.tau, "attenuator / beamsplitter transmissivity");
  verify_cmd->add_option("--zeta", ch.zeta, "squeeze parameter");
  verify_cmd->add_option("--theta", ch.theta, "squeeze angle");

  ProtocolOptions sim;
  std::string realization = "ideal";
  bool compare = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "moment-level protocol simulation (JSON)");
  add_protocol_options(simulate_cmd, sim);
  simulate_cmd->add_option("--realization", realization, "ideal | feedforward")->capture_default_str();
  simulate_cmd->add_flag("--compare", compare, "also report the ideal/feed-forward deviation");

  std::vector<const char*> argv{"cvqss"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (fidelity_cmd->parsed()) {
      const SecurityReport report = security_report(
          parse_resource(fid.resource), secret_from(fid), plan_from(fid, Realization::kIdealChannel));
      out << Json(report).dump() << '\n';
    } else if (region_cmd->parsed()) {
      SecretSpec secret = parse_secret(region_secret);
      if (region_db) secret.zeta = db_to_zeta(*region_db);
      const Range g_range = parse_range(g_range_text, "--g-range");
      std::optional<Range> e_range;
      std::optional<GaussianState> resource;
      if (!region_resource.empty()) {
        resource = parse_resource(region_resource);
      } else {
        e_range = parse_range(e_range_text.empty() ? "0,2,100" : e_range_text, "--e-range");
      }
      const auto rows = security_region(secret, g_range, e_range, resource, worker_count());
      std::ofstream file;
      if (output != "-") {
        file.open(output);
        if (!file) throw std::runtime_error("cannot write " + output);
      }
      std::ostream& sink = output == "-" ? out : file;
      if (format == "csv") {
        write_region_csv(sink, rows);
      } else {
        write_region_json(sink, rows);
      }
      if (output != "-" && !file) throw std::runtime_error("write to " + output + " failed");
    } else if (verify_cmd->parsed()) {
      if (ch.builtin.empty() == ch.file.empty()) {
        throw UsageError("verify-channel: give exactly one of a builtin name or --file");
      }
      const PhysicalityCheck check = channel_is_physical(channel_from(ch));
      Json j = Json::object();
      j["channel"] = ch.file.empty() ? ch.builtin : ch.file;
      j["physical"] = check.physical;
      j["min_eigenvalue"] = check.min_eigenvalue;
      out << j.dump() << '\n';
    } else if (simulate_cmd->parsed()) {
      const SecretSpec secret = secret_from(sim);
      const GaussianState resource = parse_resource(sim.resource);
      const ReconstructionPlan plan = plan_from(sim, parse_realization(realization));
      const ProtocolResult result = run_protocol(secret, resource, plan);
      Json j = Json::object();
      j["secret"] = secret;
      j["fidelity"] = result.fidelity;
      j["output_bona_fide"] = result.output.is_bona_fide();
      j["run"] = result.run;
      if (compare) {
        if (plan.shares == ShareSet::k12) {
          throw InvalidArgument("--compare needs a share-3 reconstruction (13 or 23)");
        }
        ReconstructionPlan other = plan;
        other.realization = plan.realization == Realization::kIdealChannel
                                ? Realization::kFeedforward
                                : Realization::kIdealChannel;
        j["max_deviation"] = max_deviation(result.output, run_protocol(secret, resource, other).output);
      }
      out << j.dump(2) << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace cvqss::cli

#endif  // CVQSS_TOOLS_CLI_HPP_
