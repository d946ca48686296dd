#pragma once

// Ten-vehicle layout matching the route-selection example: source v1,
// destination v10, R = 250 m. Greedy forwarding gives v1 -> v5 -> v6 -> v10;
// v6 has five neighbors while v8 has two, and the contention-aware route is
// v1 -> v5 -> v8 -> v9 -> v10. Vehicle vK has id K-1. All vehicles are
// parked, so every link lifetime is infinite.

#include <array>
#include <vector>

#include "vanetsim/config.hpp"
#include "vanetsim/vehicle.hpp"

namespace vanetsim::layout {

inline constexpr int v(int label) { return label - 1; }

inline std::vector<VehicleState> world() {
  constexpr std::array<std::array<double, 2>, 10> xy = {{
      {0, 0},      // v1
      {350, 170},  // v2
      {850, 100},  // v3
      {900, -60},  // v4
      {240, 0},    // v5
      {470, 0},    // v6
      {480, 200},  // v7
      {300, -200}, // v8
      {505, -100}, // v9
      {710, 0},    // v10
  }};
  std::vector<VehicleState> out;
  for (int i = 0; i < 10; ++i) {
    VehicleState s;
    s.id = i;
    s.x = xy[static_cast<std::size_t>(i)][0];
    s.y = xy[static_cast<std::size_t>(i)][1];
    s.speed = 0.0;
    s.heading = Heading::Forward;
    out.push_back(s);
  }
  return out;
}

inline SimConfig config() {
  SimConfig c;
  c.num_vehicles = 10;
  c.comm_range = 250.0;
  c.lambda = 10000.0;
  c.slot_seconds = 13e-6;
  return c;
}

}  // namespace vanetsim::layout
