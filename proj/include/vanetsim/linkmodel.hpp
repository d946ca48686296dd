#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vanetsim/vehicle.hpp"

namespace vanetsim {

/// Remaining lifetime of a link: a finite number of seconds, or Infinite
/// when the pair has no relative motion along the road.
class Lifetime {
 public:
  static constexpr Lifetime infinite() noexcept { return Lifetime(0.0, true); }
  static constexpr Lifetime finite(double seconds) noexcept { return Lifetime(seconds, false); }

  constexpr bool is_infinite() const noexcept { return infinite_; }

  double seconds() const {
    if (infinite_) throw std::logic_error("Lifetime::seconds on an infinite lifetime");
    return seconds_;
  }

  // Finite view of the lifetime, saturated at `cap`.
  constexpr double clamped(double cap) const noexcept {
    return infinite_ ? cap : std::min(seconds_, cap);
  }

  friend constexpr bool operator==(const Lifetime&, const Lifetime&) = default;

 private:
  constexpr Lifetime(double s, bool inf) noexcept : seconds_(s), infinite_(inf) {}
  double seconds_;
  bool infinite_;
};

struct LinkGeometry {
  double distance = 0.0;  // Euclidean separation, m
  double bearing = 0.0;   // atan2(dy, dx), rad
  double lateral = 0.0;   // |distance * sin(bearing)|, m
};

struct LinkEstimate {
  Lifetime let = Lifetime::finite(0.0);
  bool in_range = false;
};

inline LinkGeometry geometry(const VehicleState& a, const VehicleState& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  LinkGeometry g;
  g.distance = std::hypot(dx, dy);
  if (g.distance == 0.0) return g;
  g.bearing = std::atan2(dy, dx);
  // Folded into the first quadrant so swapping a and b is bit-identical.
  g.lateral = g.distance * std::sin(std::atan2(std::abs(dy), std::abs(dx)));
  return g;
}

namespace detail {

// (sqrt(R^2 - w^2) +/- sqrt(d^2 - w^2)) / relative_speed, with "+" while the
// along-road gap is shrinking and "-" once it is growing.
inline LinkEstimate expiry(const VehicleState& a, const VehicleState& b, double range,
                           double relative_speed) {
  const LinkGeometry g = geometry(a, b);
  if (g.distance > range) return {Lifetime::finite(0.0), false};
  if (relative_speed == 0.0) return {Lifetime::infinite(), true};

  const double w2 = g.lateral * g.lateral;
  const double reach = std::sqrt(std::max(0.0, range * range - w2));
  const double gap = std::sqrt(std::max(0.0, g.distance * g.distance - w2));

  // d(d^2)/dt / 2 along the road axis; negative while closing.
  const double closing_rate = (a.x - b.x) * (a.velocity() - b.velocity());
  const double numerator = closing_rate < 0.0 ? reach + gap : reach - gap;
  return {Lifetime::finite(std::max(0.0, numerator) / relative_speed), true};
}

}  // namespace detail

/// Link expiration time for two vehicles travelling the same way.
inline LinkEstimate let_same_direction(const VehicleState& a, const VehicleState& b, double range) {
  if (a.heading != b.heading)
    throw std::invalid_argument("let_same_direction: headings differ");
  return detail::expiry(a, b, range, std::abs(a.speed - b.speed));
}

/// Link expiration time for two vehicles travelling opposite ways.
inline LinkEstimate let_opposite_direction(const VehicleState& a, const VehicleState& b,
                                           double range) {
  if (a.heading == b.heading)
    throw std::invalid_argument("let_opposite_direction: headings are equal");
  return detail::expiry(a, b, range, a.speed + b.speed);
}

inline LinkEstimate link_estimate(const VehicleState& a, const VehicleState& b, double range) {
  return a.heading == b.heading ? let_same_direction(a, b, range)
                                : let_opposite_direction(a, b, range);
}

}  // namespace vanetsim
