#pragma once

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "vanetsim/config.hpp"
#include "vanetsim/vehicle.hpp"

namespace vanetsim {

/// Places `num_vehicles` vehicles uniformly along the road with uniform lane
/// choice and a per-vehicle constant speed drawn from
/// [speed_min_kmh, speed_max_kmh]. Ids are 0..N-1 in creation order.
///
/// Every vehicle consumes the same number of draws regardless of the speed
/// range, so two configs that differ only in speed get identical positions
/// and lanes from the same stream.
inline std::vector<VehicleState> spawn_vehicles(const SimConfig& config, std::mt19937_64& rng) {
  if (config.num_vehicles < 2)
    throw std::invalid_argument("spawn_vehicles: need at least 2 vehicles");
  if (!(config.speed_min_kmh <= config.speed_max_kmh))
    throw std::invalid_argument("spawn_vehicles: speed_min exceeds speed_max");
  config.road.validate();

  std::uniform_real_distribution<double> along(0.0, config.road.length);
  std::uniform_int_distribution<int> lane_pick(0, config.road.lanes - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double vmin = kmh_to_mps(config.speed_min_kmh);
  const double vmax = kmh_to_mps(config.speed_max_kmh);

  std::vector<VehicleState> out;
  out.reserve(static_cast<std::size_t>(config.num_vehicles));
  for (int i = 0; i < config.num_vehicles; ++i) {
    VehicleState v;
    v.id = i;
    v.x = along(rng);
    v.lane = lane_pick(rng);
    v.y = config.road.lane_center(v.lane);
    v.heading = config.road.lane_heading(v.lane);
    const double u = unit(rng);
    v.speed = vmin == vmax ? vmin : vmin + u * (vmax - vmin);
    out.push_back(v);
  }
  return out;
}

// Toroidal wrap of a road coordinate into [0, length].
inline double wrap_position(double x, double length) noexcept {
  double r = std::fmod(x, length);
  if (r < 0.0) r += length;
  return r;
}

/// Moves every vehicle by heading-signed speed * dt along the road axis,
/// wrapping around the road ends. Lane, y, speed and heading are untouched.
inline std::vector<VehicleState> advance(std::span<const VehicleState> vehicles, double dt,
                                         double road_length) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be > 0");
  std::vector<VehicleState> out(vehicles.begin(), vehicles.end());
  for (auto& v : out) v.x = wrap_position(v.x + v.velocity() * dt, road_length);
  return out;
}

inline std::vector<VehicleState> advance(std::span<const VehicleState> vehicles, double dt,
                                         const RoadConfig& road) {
  return advance(vehicles, dt, road.length);
}

}  // namespace vanetsim
