#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vanetsim/config.hpp"
#include "vanetsim/config_io.hpp"
#include "vanetsim/csv.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/linkmodel.hpp"
#include "vanetsim/macmodel.hpp"
#include "vanetsim/routing.hpp"
#include "vanetsim/sweep.hpp"

// Command-line front end: `run`, `sweep` and `calc`.
//
// Exit status: 0 success, 1 runtime failure, 2 usage or config error.

namespace vanetsim::cli {

inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Prints with at least 9 significant digits.
inline std::string format_value(double v) {
  char buf[64];
  const double a = std::abs(v);
  if (v == 0.0 || (a >= 0.1 && a < 1e9))
    std::snprintf(buf, sizeof buf, "%.9f", v);
  else
    std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = vanetsim::detail::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "12,24,36" or an inclusive range "12:60:12" (step defaults to 1).
template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& flag, const std::string& text, Parse parse) {
  std::vector<T> out;
  try {
    for (const auto& item : split(text, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() == 1) {
        out.push_back(parse(parts[0]));
      } else if (parts.size() == 2 || parts.size() == 3) {
        const T first = parse(parts[0]);
        const T last = parse(parts[1]);
        const T step = parts.size() == 3 ? parse(parts[2]) : T{1};
        if (!(step > T{0})) throw std::invalid_argument("range step must be positive");
        for (T v = first; v <= last; v += step) out.push_back(v);
      } else {
        throw std::invalid_argument("bad list item '" + item + "'");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

inline Heading parse_heading(const std::string& s) {
  if (s == "F" || s == "f" || s == "forward" || s == "+1" || s == "1") return Heading::Forward;
  if (s == "B" || s == "b" || s == "backward" || s == "-1") return Heading::Backward;
  throw std::invalid_argument("heading must be F or B, got '" + s + "'");
}

inline Lifetime parse_lifetime(const std::string& s) {
  if (s == "inf" || s == "infinite") return Lifetime::infinite();
  return Lifetime::finite(vanetsim::detail::parse_double(s));
}

inline std::vector<double> numbers(const std::vector<std::string>& args, std::size_t from,
                                   std::size_t count) {
  std::vector<double> out;
  for (std::size_t i = from; i < from + count; ++i) out.push_back(vanetsim::detail::parse_double(args[i]));
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

// Creates `dir` and refuses to clobber any of `names` unless forced.
inline void prepare_output(const std::filesystem::path& dir, const std::vector<std::string>& names,
                           bool force) {
  if (!force) {
    for (const auto& n : names)
      if (std::filesystem::exists(dir / n))
        throw std::runtime_error((dir / n).string() + " exists (use --force to overwrite)");
  }
  std::filesystem::create_directories(dir);
}

inline SimConfig resolve_config(const std::string& path, const std::vector<std::string>& overrides,
                                std::optional<std::uint64_t> seed) {
  SimConfig config = path.empty() ? SimConfig{} : load_config(path);
  for (const auto& o : overrides) apply_override(config, o);
  if (seed) config.seed = *seed;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("override", 0, "", e.what());
  }
  return config;
}

inline void print_summary(std::ostream& out, const SimConfig& c, const MetricsSummary& m) {
  out << "protocol            " << to_string(c.protocol) << '\n'
      << "vehicles            " << c.num_vehicles << '\n'
      << "seed                " << c.seed << '\n'
      << "packets generated   " << m.packets_generated << '\n'
      << "packets delivered   " << m.packets_delivered << '\n'
      << "packets in flight   " << m.packets_in_flight << '\n';
  for (const auto& [reason, count] : m.packets_dropped_by_reason)
    out << "dropped " << to_string(reason) << std::string(12 - std::min<std::size_t>(12, to_string(reason).size()), ' ')
        << count << '\n';
  out << "delivery rate       " << format_value(m.delivery_rate) << '\n'
      << "avg delay (s)       " << (m.avg_delay_seconds ? format_value(*m.avg_delay_seconds) : "n/a") << '\n'
      << "broken links        " << m.broken_links << '\n';
}

}  // namespace detail

inline int cmd_calc(const std::string& what, const std::vector<std::string>& args, std::ostream& out) {
  if (what == "backoff") {
    if (args.size() != 3) throw UsageError("usage: calc backoff <cluster_size> <lambda_per_s> <slot_s>");
    const auto v = detail::numbers(args, 0, 3);
    if (v[0] != std::floor(v[0])) throw UsageError("cluster_size must be an integer");
    const ClusterStats stats{static_cast<int>(v[0]), v[1], v[2]};
    stats.validate();
    out << format_value(expected_backoffs(stats).expected_backoffs) << '\n';
    return kOk;
  }
  if (what == "let") {
    if (args.size() != 9)
      throw UsageError("usage: calc let <xa> <ya> <speed_a> <F|B> <xb> <yb> <speed_b> <F|B> <range>");
    auto vehicle = [&](std::size_t at, int id) {
      VehicleState v;
      v.id = id;
      v.x = vanetsim::detail::parse_double(args[at]);
      v.y = vanetsim::detail::parse_double(args[at + 1]);
      v.speed = vanetsim::detail::parse_double(args[at + 2]);
      v.heading = detail::parse_heading(args[at + 3]);
      if (v.speed < 0.0) throw std::invalid_argument("speed must be >= 0");
      return v;
    };
    const VehicleState a = vehicle(0, 0);
    const VehicleState b = vehicle(4, 1);
    const double range = vanetsim::detail::parse_double(args[8]);
    if (!(range > 0.0)) throw std::invalid_argument("range must be > 0");
    const LinkEstimate e = link_estimate(a, b, range);
    if (!e.in_range)
      out << "out_of_range\n";
    else if (e.let.is_infinite())
      out << "inf\n";
    else
      out << format_value(e.let.seconds()) << '\n';
    return kOk;
  }
  if (what == "weight") {
    if (args.size() != 9)
      throw UsageError(
          "usage: calc weight <backoffs> <let|inf> <dist_to_dest> <backoffs_max> <let_max> "
          "<dist_max> <alpha> <beta> <gamma>");
    NeighborView row;
    row.expected_backoffs = vanetsim::detail::parse_double(args[0]);
    row.let_to_current = detail::parse_lifetime(args[1]);
    row.distance_to_dest = vanetsim::detail::parse_double(args[2]);
    const auto v = detail::numbers(args, 3, 6);
    const WeightMaxima maxima{v[0], v[1], v[2]};
    const WeightCoefficients coeffs{v[3], v[4], v[5]};
    coeffs.validate();
    out << format_value(weight(row, maxima, coeffs)) << '\n';
    return kOk;
  }
  throw UsageError("calc: unknown calculator '" + what + "' (expected backoff|let|weight)");
}

/// Entry point shared by the vanetsim binary and the tests.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  CLI::App app{"Highway VANET routing simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  bool force = false;
  bool dump = false;
  bool no_trace = false;

  auto* run_cmd = app.add_subcommand("run", "Run one simulation");
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  for (auto* sub : {run_cmd, sweep_cmd}) {
    sub->add_option("--config", config_path, "Config file (key = value)");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Root random seed");
    sub->add_option("--set", overrides, "Override a config key (key=value)");
    sub->add_flag("--force", force, "Overwrite existing output files");
    sub->add_flag("--dump-config", dump, "Print the resolved config and exit");
  }
  run_cmd->add_flag("--no-trace", no_trace, "Skip trace.csv");

  std::string vehicles_arg = "12:60:12";
  std::string speeds_arg = "30,80";
  std::string protocols_arg = "proposed,gpsr";
  std::string seeds_arg = "1:20";
  sweep_cmd->add_option("--vehicles", vehicles_arg, "Vehicle counts, e.g. 12,24 or 12:60:12");
  sweep_cmd->add_option("--speeds", speeds_arg, "Speeds in km/h");
  sweep_cmd->add_option("--protocols", protocols_arg, "proposed,gpsr");
  sweep_cmd->add_option("--seeds", seeds_arg, "Seeds, e.g. 1:20");

  auto* calc_cmd = app.add_subcommand("calc", "Evaluate one analytic formula");
  calc_cmd->require_subcommand(1);
  std::vector<std::string> calc_args;
  std::string calc_what;
  for (const char* name : {"backoff", "let", "weight"}) {
    auto* sub = calc_cmd->add_subcommand(name);
    sub->add_option("args", calc_args)->allow_extra_args();
    sub->callback([&calc_what, name] { calc_what = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (calc_cmd->parsed()) {
      try {
        return cmd_calc(calc_what, calc_args, out);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("calc ") + calc_what + ": " + e.what());
      }
    }

    const SimConfig config = detail::resolve_config(config_path, overrides, seed);
    if (dump) {
      out << dump_config(config);
      return kOk;
    }

    if (run_cmd->parsed()) {
      const std::filesystem::path dir = out_dir.empty() ? "out" : out_dir;
      std::vector<std::string> names = {"metrics.csv"};
      if (!no_trace) names.push_back("trace.csv");
      detail::prepare_output(dir, names, force);
      const RunResult r = run(config, RunOptions{!no_trace, std::nullopt});
      detail::write_file(dir / "metrics.csv", csv::metrics(config, r.metrics));
      if (!no_trace) detail::write_file(dir / "trace.csv", csv::trace(r.trace));
      detail::print_summary(out, config, r.metrics);
      return kOk;
    }

    // sweep
    SweepAxes axes;
    axes.vehicle_counts = detail::parse_list<int>("--vehicles", vehicles_arg, vanetsim::detail::parse_int);
    axes.speeds_kmh = detail::parse_list<double>("--speeds", speeds_arg, vanetsim::detail::parse_double);
    for (const auto& p : detail::split(protocols_arg, ',')) {
      try {
        axes.protocols.push_back(parse_protocol(p));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--protocols: ") + e.what());
      }
    }
    if (axes.protocols.empty()) throw UsageError("--protocols: empty list");
    axes.seeds = detail::parse_list<std::uint64_t>("--seeds", seeds_arg, vanetsim::detail::parse_u64);

    const std::filesystem::path dir = out_dir.empty() ? "sweep_out" : out_dir;
    const std::vector<std::string> names = {"sweep.csv", "fig_delay.csv", "fig_pdr.csv",
                                            "fig_broken.csv", "errors.csv"};
    detail::prepare_output(dir, names, force);
    const SweepResult r = sweep(config, axes, threads_from_env());
    detail::write_file(dir / "sweep.csv", csv::sweep_table(r));
    detail::write_file(dir / "fig_delay.csv", csv::fig_delay(r));
    detail::write_file(dir / "fig_pdr.csv", csv::fig_pdr(r));
    detail::write_file(dir / "fig_broken.csv", csv::fig_broken(r));
    detail::write_file(dir / "errors.csv", csv::errors(r));
    out << "runs " << r.runs.size() << ", failed " << r.failed_runs() << ", cells " << r.cells.size()
        << '\n';
    return r.failed_runs() < r.runs.size() ? kOk : kRuntimeError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace vanetsim::cli
