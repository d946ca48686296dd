#pragma once

#include <stdexcept>

namespace vanetsim {

// Sign of motion along the road axis.
enum class Heading : int { Forward = 1, Backward = -1 };

inline constexpr double sign_of(Heading h) noexcept {
  return h == Heading::Forward ? 1.0 : -1.0;
}

/// Kinematic state of one vehicle at one tick. `speed` is a nonnegative
/// magnitude in m/s; direction lives in `heading`.
struct VehicleState {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  Heading heading = Heading::Forward;
  int lane = 0;

  double velocity() const noexcept { return sign_of(heading) * speed; }

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// Straight multi-lane bidirectional highway. Lanes [0, lanes_per_direction)
/// carry Forward traffic, the rest carry Backward traffic.
struct RoadConfig {
  double length = 1000.0;
  int lanes = 6;
  double lane_width = 25.0 / 6.0;
  int lanes_per_direction = 3;

  double width() const noexcept { return lanes * lane_width; }

  double lane_center(int lane) const noexcept { return (lane + 0.5) * lane_width; }

  Heading lane_heading(int lane) const noexcept {
    return lane < lanes_per_direction ? Heading::Forward : Heading::Backward;
  }

  void validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("road_length must be > 0");
    if (lanes_per_direction < 1) throw std::invalid_argument("lanes_per_direction must be >= 1");
    if (lanes != 2 * lanes_per_direction)
      throw std::invalid_argument("lanes must equal 2 * lanes_per_direction");
    if (!(lane_width > 0.0)) throw std::invalid_argument("lane_width must be > 0");
  }

  friend bool operator==(const RoadConfig&, const RoadConfig&) = default;
};

}  // namespace vanetsim
