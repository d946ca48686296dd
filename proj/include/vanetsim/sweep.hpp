#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "vanetsim/config.hpp"
#include "vanetsim/engine.hpp"

namespace vanetsim {

struct SweepAxes {
  std::vector<int> vehicle_counts;
  std::vector<double> speeds_kmh;
  std::vector<Protocol> protocols;
  std::vector<std::uint64_t> seeds;

  void validate() const {
    if (vehicle_counts.empty()) throw std::invalid_argument("sweep: empty vehicle count list");
    if (speeds_kmh.empty()) throw std::invalid_argument("sweep: empty speed list");
    if (protocols.empty()) throw std::invalid_argument("sweep: empty protocol list");
    if (seeds.empty()) throw std::invalid_argument("sweep: empty seed list");
  }

  std::size_t cell_count() const noexcept {
    return vehicle_counts.size() * speeds_kmh.size() * protocols.size();
  }
};

// One (protocol, speed, vehicle count, seed) run of a sweep.
struct SweepRun {
  Protocol protocol = Protocol::Proposed;
  double speed_kmh = 0.0;
  int num_vehicles = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  MetricsSummary metrics;
  WeightBounds weights;
};

// Seed-averaged metrics of one grid cell. Runs that failed are left out.
struct SweepCell {
  Protocol protocol = Protocol::Proposed;
  double speed_kmh = 0.0;
  int num_vehicles = 0;
  int runs = 0;  // successful runs averaged
  std::optional<double> avg_delay_seconds;
  double delivery_rate = 0.0;
  double broken_links = 0.0;
  double packets_generated = 0.0;
  double packets_delivered = 0.0;
};

struct SweepResult {
  std::vector<SweepRun> runs;    // protocol-major, then speed, count, seed
  std::vector<SweepCell> cells;  // protocol-major, then speed, count
  WeightBounds weights;

  std::size_t failed_runs() const {
    std::size_t n = 0;
    for (const auto& r : runs) n += r.ok ? 0 : 1;
    return n;
  }
};

/// Config of one sweep run: the base config with protocol, a fixed speed,
/// vehicle count and seed substituted.
inline SimConfig cell_config(const SimConfig& base, Protocol protocol, double speed_kmh,
                             int num_vehicles, std::uint64_t seed) {
  SimConfig c = base;
  c.protocol = protocol;
  c.speed_min_kmh = speed_kmh;
  c.speed_max_kmh = speed_kmh;
  c.num_vehicles = num_vehicles;
  c.seed = seed;
  return c;
}

/// Parallelism requested through VANETSIM_THREADS; 1 when unset or invalid.
inline unsigned threads_from_env() {
  const char* v = std::getenv("VANETSIM_THREADS");
  if (v == nullptr) return 1;
  try {
    const long n = std::stol(v);
    return n >= 1 ? static_cast<unsigned>(n) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

inline SweepCell average_cell(const SweepRun* first, std::size_t count) {
  SweepCell cell;
  cell.protocol = first->protocol;
  cell.speed_kmh = first->speed_kmh;
  cell.num_vehicles = first->num_vehicles;
  double delay_sum = 0.0;
  int delay_runs = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const SweepRun& r = first[i];
    if (!r.ok) continue;
    ++cell.runs;
    if (r.metrics.avg_delay_seconds) {
      delay_sum += *r.metrics.avg_delay_seconds;
      ++delay_runs;
    }
    cell.delivery_rate += r.metrics.delivery_rate;
    cell.broken_links += static_cast<double>(r.metrics.broken_links);
    cell.packets_generated += static_cast<double>(r.metrics.packets_generated);
    cell.packets_delivered += static_cast<double>(r.metrics.packets_delivered);
  }
  if (cell.runs > 0) {
    const double k = cell.runs;
    cell.delivery_rate /= k;
    cell.broken_links /= k;
    cell.packets_generated /= k;
    cell.packets_delivered /= k;
  }
  if (delay_runs > 0) cell.avg_delay_seconds = delay_sum / delay_runs;
  return cell;
}

/// Runs the Cartesian product of the axes. A failing run is recorded in its
/// SweepRun and never aborts the sweep. Output order does not depend on
/// `threads`.
inline SweepResult sweep(const SimConfig& base, const SweepAxes& axes, unsigned threads = 1) {
  axes.validate();
  SweepResult result;
  for (Protocol p : axes.protocols)
    for (double s : axes.speeds_kmh)
      for (int n : axes.vehicle_counts)
        for (std::uint64_t seed : axes.seeds) {
          SweepRun r;
          r.protocol = p;
          r.speed_kmh = s;
          r.num_vehicles = n;
          r.seed = seed;
          result.runs.push_back(r);
        }

  auto execute = [&base](SweepRun& r) {
    try {
      RunResult out = run(cell_config(base, r.protocol, r.speed_kmh, r.num_vehicles, r.seed),
                          RunOptions{false, std::nullopt});
      r.metrics = std::move(out.metrics);
      r.weights = out.weights;
      r.ok = true;
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
  };

  if (threads <= 1) {
    for (auto& r : result.runs) execute(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < result.runs.size(); i = next++) execute(result.runs[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  const std::size_t per_cell = axes.seeds.size();
  for (std::size_t i = 0; i < result.runs.size(); i += per_cell) {
    result.cells.push_back(average_cell(&result.runs[i], per_cell));
  }
  for (const auto& r : result.runs)
    if (r.ok) result.weights.merge(r.weights);
  return result;
}

}  // namespace vanetsim
