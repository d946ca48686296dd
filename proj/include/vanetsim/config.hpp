#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vanetsim/vehicle.hpp"

namespace vanetsim {

enum class Protocol { Proposed, Gpsr };

inline std::string_view to_string(Protocol p) noexcept {
  return p == Protocol::Proposed ? "proposed" : "gpsr";
}

inline Protocol parse_protocol(std::string_view s) {
  if (s == "proposed") return Protocol::Proposed;
  if (s == "gpsr") return Protocol::Gpsr;
  throw std::invalid_argument("unknown protocol '" + std::string(s) + "' (expected proposed|gpsr)");
}

inline constexpr double kmh_to_mps(double kmh) noexcept { return kmh / 3.6; }

/// Every tunable of one simulation run. Defaults reproduce the highway
/// scenario: 1000 m x 25 m, six lanes, R = 250 m, 512-byte packets,
/// 10 packets/ms per vehicle, equal weights, 500 ticks.
///
/// Speeds are kept in km/h here and converted to m/s when vehicles are
/// spawned; everything else is SI.
struct SimConfig {
  int num_vehicles = 36;
  double speed_min_kmh = 30.0;
  double speed_max_kmh = 80.0;
  double comm_range = 250.0;
  RoadConfig road{};
  double lambda = 10000.0;  // packets/s per vehicle
  double slot_seconds = 13e-6;
  double dt = 1e-3;
  int total_ticks = 500;
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
  Protocol protocol = Protocol::Proposed;
  int packet_size_bytes = 512;
  double data_rate_bps = 6e6;
  // Contention window bounds. Carried for completeness; the analytic
  // backoff model does not use them.
  int cw_min = 31;
  int cw_max = 1023;
  std::uint64_t seed = 1;
  int maintenance_interval_ticks = 1;
  double let_clamp_seconds = 60.0;
  int hop_limit = 64;
  bool progress_only = true;
  double backoff_cap = 1e300;

  double transmit_seconds() const noexcept {
    return packet_size_bytes * 8.0 / data_rate_bps;
  }

  void validate() const {
    road.validate();
    if (num_vehicles < 2) throw std::invalid_argument("num_vehicles must be >= 2");
    if (!(speed_min_kmh >= 0.0) || !(speed_min_kmh <= speed_max_kmh))
      throw std::invalid_argument("speeds must satisfy 0 <= speed_min <= speed_max");
    if (!(comm_range > 0.0)) throw std::invalid_argument("comm_range must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(slot_seconds > 0.0)) throw std::invalid_argument("slot_seconds must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (total_ticks < 1) throw std::invalid_argument("total_ticks must be >= 1");
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0)
      throw std::invalid_argument("alpha, beta, gamma must be >= 0");
    if (std::abs(alpha + beta + gamma - 1.0) > 1e-12)
      throw std::invalid_argument("alpha + beta + gamma must equal 1");
    if (packet_size_bytes < 1) throw std::invalid_argument("packet_size_bytes must be >= 1");
    if (!(data_rate_bps > 0.0)) throw std::invalid_argument("data_rate_bps must be > 0");
    if (cw_min < 1 || cw_max < cw_min) throw std::invalid_argument("need 1 <= cw_min <= cw_max");
    if (maintenance_interval_ticks < 1)
      throw std::invalid_argument("maintenance_interval_ticks must be >= 1");
    if (!(let_clamp_seconds > 0.0)) throw std::invalid_argument("let_clamp_seconds must be > 0");
    if (hop_limit < 1) throw std::invalid_argument("hop_limit must be >= 1");
    if (!(backoff_cap >= 1.0)) throw std::invalid_argument("backoff_cap must be >= 1");
  }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

}  // namespace vanetsim
