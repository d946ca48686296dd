#pragma once

#include <string>
#include <string_view>

#include "vanetsim/config.hpp"
#include "vanetsim/config_io.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/sweep.hpp"

// CSV renderings of run and sweep results. Headers are fixed; plotting
// scripts depend on them. Every number is SI, so speeds are written in m/s.

namespace vanetsim::csv {

inline constexpr std::string_view kMetricsHeader =
    "protocol,num_vehicles,speed_mps,seed,avg_delay_s,delivery_rate,broken_links,"
    "packets_generated,packets_delivered\n";
inline constexpr std::string_view kTraceHeader =
    "packet_id,source_id,dest_id,created_tick,hop_index,from_id,to_id,tick,hop_delay_s,"
    "status,final_tick,drop_reason\n";
inline constexpr std::string_view kSweepHeader =
    "protocol,num_vehicles,speed_mps,runs,avg_delay_s,delivery_rate,broken_links,"
    "packets_generated,packets_delivered\n";
inline constexpr std::string_view kFigDelayHeader = "protocol,speed_mps,num_vehicles,avg_delay_s\n";
inline constexpr std::string_view kFigPdrHeader = "protocol,speed_mps,num_vehicles,delivery_rate\n";
inline constexpr std::string_view kFigBrokenHeader = "protocol,speed_mps,num_vehicles,broken_links\n";
inline constexpr std::string_view kErrorsHeader = "protocol,num_vehicles,speed_mps,seed,error\n";

inline std::string num(double d) { return detail::format_double(d); }

inline std::string num(const std::optional<double>& d) { return d ? num(*d) : std::string(); }

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

// Average of the configured speed range, km/h.
inline double nominal_speed_kmh(const SimConfig& c) {
  return c.speed_min_kmh == c.speed_max_kmh ? c.speed_min_kmh
                                            : (c.speed_min_kmh + c.speed_max_kmh) / 2.0;
}

inline std::string metrics_row(Protocol protocol, int num_vehicles, double speed_kmh,
                               std::uint64_t seed, const MetricsSummary& m) {
  std::string row;
  row += to_string(protocol);
  row += ',' + std::to_string(num_vehicles);
  row += ',' + num(kmh_to_mps(speed_kmh));
  row += ',' + std::to_string(seed);
  row += ',' + num(m.avg_delay_seconds);
  row += ',' + num(m.delivery_rate);
  row += ',' + std::to_string(m.broken_links);
  row += ',' + std::to_string(m.packets_generated);
  row += ',' + std::to_string(m.packets_delivered);
  return row + '\n';
}

inline std::string metrics(const SimConfig& config, const MetricsSummary& m) {
  return std::string(kMetricsHeader) +
         metrics_row(config.protocol, config.num_vehicles, nominal_speed_kmh(config), config.seed, m);
}

/// One row per hop. Packets dropped before their first hop have no rows.
inline std::string trace(const std::vector<PacketRecord>& packets) {
  std::string out(kTraceHeader);
  for (const auto& p : packets) {
    int from = p.source_id;
    for (std::size_t i = 0; i < p.hops.size(); ++i) {
      const Hop& h = p.hops[i];
      out += std::to_string(p.packet_id);
      out += ',' + std::to_string(p.source_id);
      out += ',' + std::to_string(p.dest_id);
      out += ',' + std::to_string(p.created_tick);
      out += ',' + std::to_string(i);
      out += ',' + std::to_string(from);
      out += ',' + std::to_string(h.vehicle_id);
      out += ',' + std::to_string(h.tick);
      out += ',' + num(h.delay_seconds);
      out += ',';
      out += to_string(p.status);
      out += ',' + std::to_string(p.final_tick);
      out += ',';
      if (p.status == PacketStatus::Dropped) out += to_string(p.drop_reason);
      out += '\n';
      from = h.vehicle_id;
    }
  }
  return out;
}

inline std::string sweep_table(const SweepResult& r) {
  std::string out(kSweepHeader);
  for (const auto& c : r.cells) {
    if (c.runs == 0) continue;
    out += to_string(c.protocol);
    out += ',' + std::to_string(c.num_vehicles);
    out += ',' + num(kmh_to_mps(c.speed_kmh));
    out += ',' + std::to_string(c.runs);
    out += ',' + num(c.avg_delay_seconds);
    out += ',' + num(c.delivery_rate);
    out += ',' + num(c.broken_links);
    out += ',' + num(c.packets_generated);
    out += ',' + num(c.packets_delivered);
    out += '\n';
  }
  return out;
}

template <typename Value>
std::string figure(const SweepResult& r, std::string_view header, Value value) {
  std::string out(header);
  for (const auto& c : r.cells) {
    if (c.runs == 0) continue;
    out += to_string(c.protocol);
    out += ',' + num(kmh_to_mps(c.speed_kmh));
    out += ',' + std::to_string(c.num_vehicles);
    out += ',' + value(c);
    out += '\n';
  }
  return out;
}

inline std::string fig_delay(const SweepResult& r) {
  return figure(r, kFigDelayHeader, [](const SweepCell& c) { return num(c.avg_delay_seconds); });
}
inline std::string fig_pdr(const SweepResult& r) {
  return figure(r, kFigPdrHeader, [](const SweepCell& c) { return num(c.delivery_rate); });
}
inline std::string fig_broken(const SweepResult& r) {
  return figure(r, kFigBrokenHeader, [](const SweepCell& c) { return num(c.broken_links); });
}

inline std::string errors(const SweepResult& r) {
  std::string out(kErrorsHeader);
  for (const auto& run : r.runs) {
    if (run.ok) continue;
    out += to_string(run.protocol);
    out += ',' + std::to_string(run.num_vehicles);
    out += ',' + num(kmh_to_mps(run.speed_kmh));
    out += ',' + std::to_string(run.seed);
    out += ',' + quote(run.error);
    out += '\n';
  }
  return out;
}

}  // namespace vanetsim::csv
