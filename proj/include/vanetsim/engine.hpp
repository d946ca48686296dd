#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "vanetsim/config.hpp"
#include "vanetsim/mobility.hpp"
#include "vanetsim/rng.hpp"
#include "vanetsim/routing.hpp"
#include "vanetsim/topology.hpp"

namespace vanetsim {

enum class PacketStatus { InFlight, Delivered, Dropped };
enum class DropReason { NoRoute, HopLimitExceeded, MaintenanceBroken };

inline std::string_view to_string(PacketStatus s) noexcept {
  switch (s) {
    case PacketStatus::InFlight: return "in_flight";
    case PacketStatus::Delivered: return "delivered";
    case PacketStatus::Dropped: return "dropped";
  }
  return "?";
}

inline std::string_view to_string(DropReason r) noexcept {
  switch (r) {
    case DropReason::NoRoute: return "no_route";
    case DropReason::HopLimitExceeded: return "hop_limit_exceeded";
    case DropReason::MaintenanceBroken: return "maintenance_broken";
  }
  return "?";
}

// One transmission: the receiving vehicle, the delay of that hop and the
// tick it happened in.
struct Hop {
  int vehicle_id = -1;
  double delay_seconds = 0.0;
  int tick = 0;
};

struct PacketRecord {
  std::int64_t packet_id = 0;
  int source_id = -1;
  int dest_id = -1;
  int created_tick = 0;
  std::vector<Hop> hops;
  PacketStatus status = PacketStatus::InFlight;
  int final_tick = -1;  // delivery or drop tick
  DropReason drop_reason = DropReason::NoRoute;
  double total_delay_seconds = 0.0;
};

struct MetricsSummary {
  std::optional<double> avg_delay_seconds;  // absent when nothing was delivered
  double delivery_rate = 0.0;
  std::int64_t broken_links = 0;
  std::int64_t packets_generated = 0;
  std::int64_t packets_delivered = 0;
  std::int64_t packets_in_flight = 0;
  std::map<DropReason, std::int64_t> packets_dropped_by_reason;

  std::int64_t packets_dropped() const {
    std::int64_t n = 0;
    for (const auto& [reason, count] : packets_dropped_by_reason) n += count;
    return n;
  }
};

// Range of every forwarding weight computed during a run.
struct WeightBounds {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::int64_t samples = 0;

  void add(double w) noexcept {
    min = std::min(min, w);
    max = std::max(max, w);
    ++samples;
  }
  void merge(const WeightBounds& o) noexcept {
    min = std::min(min, o.min);
    max = std::max(max, o.max);
    samples += o.samples;
  }
  bool within_unit_interval() const noexcept { return samples == 0 || (min >= 0.0 && max <= 1.0); }
};

struct ScheduledPacket {
  int tick = 0;
  int source = 0;
  int dest = 0;
};

struct RunOptions {
  bool keep_trace = true;
  // Replaces the Poisson workload with a fixed packet schedule. Lambda still
  // drives the backoff model.
  std::optional<std::vector<ScheduledPacket>> workload;
};

struct RunResult {
  MetricsSummary metrics;
  std::vector<PacketRecord> trace;  // ordered by packet_id; empty unless keep_trace
  WeightBounds weights;
};

namespace detail {

struct ActivePacket {
  PacketRecord record;
  std::vector<int> route;
  std::size_t position = 0;  // index of the current holder in route
};

}  // namespace detail

/// Runs one simulation. Each tick: move vehicles, snapshot connectivity,
/// check every in-flight route (on the maintenance cadence), generate new
/// packets and discover their routes, then move every in-flight packet one
/// hop. A hop costs expected_backoffs(forwarder) * slot + transmit time.
inline RunResult run(const SimConfig& config, const RunOptions& options = {}) {
  config.validate();
  const RouteParams params = RouteParams::from(config);
  const bool need_lifetimes = config.protocol == Protocol::Proposed;
  const double transmit = config.transmit_seconds();

  auto mobility_rng = make_stream(config.seed, Stream::Mobility);
  auto arrivals_rng = make_stream(config.seed, Stream::Arrivals);
  auto destination_rng = make_stream(config.seed, Stream::Destinations);

  std::vector<VehicleState> vehicles = spawn_vehicles(config, mobility_rng);
  const int n = config.num_vehicles;

  std::vector<ScheduledPacket> schedule;
  if (options.workload) {
    schedule = *options.workload;
    std::stable_sort(schedule.begin(), schedule.end(),
                     [](const ScheduledPacket& a, const ScheduledPacket& b) { return a.tick < b.tick; });
    for (const auto& p : schedule) {
      if (p.source < 0 || p.source >= n || p.dest < 0 || p.dest >= n || p.source == p.dest)
        throw std::invalid_argument("run: scheduled packet has invalid endpoints");
    }
  }

  RunResult result;
  MetricsSummary& m = result.metrics;
  std::vector<detail::ActivePacket> active;
  std::int64_t next_packet_id = 0;
  std::int64_t delivered = 0;
  double delay_sum = 0.0;

  auto observe = [&result](const ForwardDecision& d) {
    for (const auto& nw : d.weight_table) result.weights.add(nw.weight);
  };

  auto finish = [&](detail::ActivePacket& p, PacketStatus status, int tick) {
    p.record.status = status;
    p.record.final_tick = tick;
    if (status == PacketStatus::Delivered) {
      ++delivered;
      delay_sum += p.record.total_delay_seconds;
    } else {
      ++m.packets_dropped_by_reason[p.record.drop_reason];
    }
    if (options.keep_trace) result.trace.push_back(std::move(p.record));
  };

  auto drop_reason_of = [](RouteFailure f) {
    return f == RouteFailure::HopLimitExceeded ? DropReason::HopLimitExceeded : DropReason::NoRoute;
  };

  std::poisson_distribution<int> arrivals(config.lambda * config.dt > 0.0 ? config.lambda * config.dt
                                                                         : 1.0);
  std::uniform_int_distribution<int> other_vehicle(0, n - 2);
  std::size_t scheduled_next = 0;

  for (int tick = 0; tick < config.total_ticks; ++tick) {
    vehicles = advance(vehicles, config.dt, config.road);
    const Topology topo(vehicles, config, need_lifetimes);
    const bool maintain_now = tick % config.maintenance_interval_ticks == 0;

    // Route maintenance over every in-flight packet.
    std::vector<detail::ActivePacket> kept;
    kept.reserve(active.size());
    for (auto& p : active) {
      if (maintain_now) {
        const Maintenance mr = maintain_route(p.route, p.position, topo, params, observe);
        m.broken_links += mr.broken_links;
        if (mr.status == RouteStatus::Broken) {
          p.record.drop_reason = DropReason::MaintenanceBroken;
          finish(p, PacketStatus::Dropped, tick);
          continue;
        }
      }
      kept.push_back(std::move(p));
    }
    active = std::move(kept);

    // New packets, with their routes discovered on this tick's snapshot.
    auto spawn_packet = [&](int source, int dest) {
      ++m.packets_generated;
      detail::ActivePacket p;
      p.record.packet_id = next_packet_id++;
      p.record.source_id = source;
      p.record.dest_id = dest;
      p.record.created_tick = tick;
      Discovery found = discover_route(topo, {source}, dest, params, observe);
      if (!found.ok()) {
        p.record.drop_reason = drop_reason_of(found.failure);
        finish(p, PacketStatus::Dropped, tick);
        return;
      }
      p.route = std::move(found.route);
      active.push_back(std::move(p));
    };

    if (options.workload) {
      for (; scheduled_next < schedule.size() && schedule[scheduled_next].tick <= tick;
           ++scheduled_next) {
        const auto& sp = schedule[scheduled_next];
        if (sp.tick == tick) spawn_packet(sp.source, sp.dest);
      }
    } else if (config.lambda > 0.0) {
      for (int source = 0; source < n; ++source) {
        const int count = arrivals(arrivals_rng);
        for (int k = 0; k < count; ++k) {
          int dest = other_vehicle(destination_rng);
          if (dest >= source) ++dest;
          spawn_packet(source, dest);
        }
      }
    }

    // One hop per in-flight packet.
    kept.clear();
    for (auto& p : active) {
      if (!(topo.distance(p.route[p.position], p.route[p.position + 1]) < topo.range())) {
        // Link went stale between maintenance passes; repair on use.
        const Maintenance mr = maintain_route(p.route, p.position, topo, params, observe);
        m.broken_links += mr.broken_links;
        if (mr.status == RouteStatus::Broken) {
          p.record.drop_reason = DropReason::MaintenanceBroken;
          finish(p, PacketStatus::Dropped, tick);
          continue;
        }
      }
      const int forwarder = p.route[p.position];
      const int receiver = p.route[p.position + 1];
      const double delay = topo.expected_backoffs(forwarder) * config.slot_seconds + transmit;
      p.record.hops.push_back({receiver, delay, tick});
      p.record.total_delay_seconds += delay;
      ++p.position;
      if (receiver == p.record.dest_id) {
        finish(p, PacketStatus::Delivered, tick);
        continue;
      }
      kept.push_back(std::move(p));
    }
    active = std::move(kept);
  }

  m.packets_in_flight = static_cast<std::int64_t>(active.size());
  if (options.keep_trace) {
    for (auto& p : active) result.trace.push_back(std::move(p.record));
    std::sort(result.trace.begin(), result.trace.end(),
              [](const PacketRecord& a, const PacketRecord& b) { return a.packet_id < b.packet_id; });
  }
  m.packets_delivered = delivered;
  m.delivery_rate = m.packets_generated > 0
                        ? static_cast<double>(delivered) / static_cast<double>(m.packets_generated)
                        : 0.0;
  if (delivered > 0) m.avg_delay_seconds = delay_sum / static_cast<double>(delivered);
  return result;
}

}  // namespace vanetsim
