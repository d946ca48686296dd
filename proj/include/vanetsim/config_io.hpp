#pragma once

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vanetsim/config.hpp"

// Line-oriented `key = value` config files. '#' starts a comment, blank lines
// are ignored, keys are SimConfig field names. Speeds are in km/h; every
// other value is SI.

namespace vanetsim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, std::string key, const std::string& message)
      : std::runtime_error(format(source, line, key, message)),
        source_(std::move(source)),
        line_(line),
        key_(std::move(key)) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }  // 0 when not tied to a line
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& source, int line, const std::string& key,
                            const std::string& message) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    out += ": ";
    if (!key.empty()) out += "key '" + key + "': ";
    return out + message;
  }

  std::string source_;
  int line_;
  std::string key_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& v) {
  if (v.empty()) throw std::invalid_argument("expected a number");
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE) throw std::invalid_argument("expected a number, got '" + v + "'");
  return d;
}

inline long long parse_integer(const std::string& v) {
  if (v.empty()) throw std::invalid_argument("expected an integer");
  errno = 0;
  char* end = nullptr;
  const long long n = std::strtoll(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw std::invalid_argument("expected an integer, got '" + v + "'");
  return n;
}

inline int parse_int(const std::string& v) {
  const long long n = parse_integer(v);
  if (n < INT32_MIN || n > INT32_MAX) throw std::invalid_argument("integer out of range: " + v);
  return static_cast<int>(n);
}

inline std::uint64_t parse_u64(const std::string& v) {
  if (v.empty() || v.front() == '-') throw std::invalid_argument("expected an unsigned integer, got '" + v + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw std::invalid_argument("expected an unsigned integer, got '" + v + "'");
  return n;
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("expected true|false, got '" + v + "'");
}

// Shortest text that reads back to the same double.
inline std::string format_double(double d) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

struct Field {
  std::string_view key;
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename T>
Field double_field(std::string_view key, T SimConfig::*member) {
  return {key, [member](SimConfig& c, const std::string& v) { c.*member = parse_double(v); },
          [member](const SimConfig& c) { return format_double(c.*member); }};
}

inline Field int_field(std::string_view key, int SimConfig::*member) {
  return {key, [member](SimConfig& c, const std::string& v) { c.*member = parse_int(v); },
          [member](const SimConfig& c) { return std::to_string(c.*member); }};
}

inline const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      int_field("num_vehicles", &SimConfig::num_vehicles),
      double_field("speed_min_kmh", &SimConfig::speed_min_kmh),
      double_field("speed_max_kmh", &SimConfig::speed_max_kmh),
      double_field("comm_range", &SimConfig::comm_range),
      {"road_length", [](SimConfig& c, const std::string& v) { c.road.length = parse_double(v); },
       [](const SimConfig& c) { return format_double(c.road.length); }},
      {"lanes", [](SimConfig& c, const std::string& v) { c.road.lanes = parse_int(v); },
       [](const SimConfig& c) { return std::to_string(c.road.lanes); }},
      {"lane_width", [](SimConfig& c, const std::string& v) { c.road.lane_width = parse_double(v); },
       [](const SimConfig& c) { return format_double(c.road.lane_width); }},
      {"lanes_per_direction",
       [](SimConfig& c, const std::string& v) { c.road.lanes_per_direction = parse_int(v); },
       [](const SimConfig& c) { return std::to_string(c.road.lanes_per_direction); }},
      double_field("lambda", &SimConfig::lambda),
      double_field("slot_seconds", &SimConfig::slot_seconds),
      double_field("dt", &SimConfig::dt),
      int_field("total_ticks", &SimConfig::total_ticks),
      double_field("alpha", &SimConfig::alpha),
      double_field("beta", &SimConfig::beta),
      double_field("gamma", &SimConfig::gamma),
      {"protocol", [](SimConfig& c, const std::string& v) { c.protocol = parse_protocol(v); },
       [](const SimConfig& c) { return std::string(to_string(c.protocol)); }},
      int_field("packet_size_bytes", &SimConfig::packet_size_bytes),
      double_field("data_rate_bps", &SimConfig::data_rate_bps),
      int_field("cw_min", &SimConfig::cw_min),
      int_field("cw_max", &SimConfig::cw_max),
      {"seed", [](SimConfig& c, const std::string& v) { c.seed = parse_u64(v); },
       [](const SimConfig& c) { return std::to_string(c.seed); }},
      int_field("maintenance_interval_ticks", &SimConfig::maintenance_interval_ticks),
      double_field("let_clamp_seconds", &SimConfig::let_clamp_seconds),
      int_field("hop_limit", &SimConfig::hop_limit),
      {"progress_only", [](SimConfig& c, const std::string& v) { c.progress_only = parse_bool(v); },
       [](const SimConfig& c) { return std::string(c.progress_only ? "true" : "false"); }},
      double_field("backoff_cap", &SimConfig::backoff_cap),
  };
  return table;
}

inline const Field* find_field(std::string_view key) {
  // Short spellings accepted on input.
  if (key == "R") key = "comm_range";
  if (key == "speed_min") key = "speed_min_kmh";
  if (key == "speed_max") key = "speed_max_kmh";
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

}  // namespace detail

/// Sets one field from its textual value. Throws ConfigError.
inline void apply_setting(SimConfig& config, const std::string& key, const std::string& value,
                          const std::string& source = "override", int line = 0) {
  const detail::Field* f = detail::find_field(key);
  if (f == nullptr) throw ConfigError(source, line, key, "unknown key");
  try {
    f->set(config, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, line, key, e.what());
  }
}

/// Applies a "key=value" override on top of `config`.
inline void apply_override(SimConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("override", 0, std::string(assignment), "expected key=value");
  apply_setting(config, detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)));
}

/// Parses a config stream on top of the defaults and validates the result.
inline SimConfig parse_config(std::istream& in, const std::string& source = "<config>") {
  SimConfig config;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string text = detail::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "", "expected 'key = value'");
    const std::string key = detail::trim(std::string_view(text).substr(0, eq));
    const std::string value = detail::trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line_no, "", "missing key");
    const detail::Field* f = detail::find_field(key);
    if (f == nullptr) throw ConfigError(source, line_no, key, "unknown key");
    if (!seen.insert(std::string(f->key)).second)
      throw ConfigError(source, line_no, key, "duplicate key");
    apply_setting(config, key, value, source, line_no);
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, 0, "", e.what());
  }
  return config;
}

inline SimConfig parse_config_string(const std::string& text, const std::string& source = "<string>") {
  std::istringstream in(text);
  return parse_config(in, source);
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  return parse_config(in, path);
}

/// Writes every field, one per line, in a form parse_config reads back to an
/// identical SimConfig.
inline std::string dump_config(const SimConfig& config) {
  std::string out = "# vanetsim configuration (speeds in km/h, everything else SI)\n";
  for (const auto& f : detail::fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace vanetsim
