#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "vanetsim/linkmodel.hpp"
#include "vanetsim/vehicle.hpp"

namespace vanetsim {

/// Contention cluster of one vehicle: itself plus every vehicle within
/// communication range, each generating Poisson traffic at `lambda`.
struct ClusterStats {
  int cluster_size = 1;
  double lambda = 0.0;        // packets/s per vehicle
  double slot_seconds = 13e-6;

  double load() const noexcept { return cluster_size * lambda; }

  void validate() const {
    if (cluster_size < 1) throw std::invalid_argument("cluster_size must be >= 1");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(slot_seconds > 0.0)) throw std::invalid_argument("slot_seconds must be > 0");
  }
};

struct BackoffEstimate {
  double expected_backoffs = 1.0;
  double success_prob_per_slot = 1.0;
};

// Exponents above this saturate to the configured cap.
inline constexpr double kMaxBackoffExponent = 700.0;
inline constexpr double kDefaultBackoffCap = 1e300;

/// Probability that no other arrival lands in the cluster during `t` seconds.
inline double idle_probability(const ClusterStats& stats, double t) {
  stats.validate();
  if (t < 0.0) throw std::invalid_argument("idle_probability: t must be >= 0");
  return std::exp(-stats.load() * t);
}

/// Mean number of backoff rounds before the channel is won, i.e. the mean of
/// a geometric distribution whose per-slot success probability is the idle
/// probability over one slot. `expected_backoffs` is always computed as
/// 1 / success_prob_per_slot.
inline BackoffEstimate expected_backoffs(const ClusterStats& stats,
                                         double cap = kDefaultBackoffCap) {
  stats.validate();
  const double exponent = stats.load() * stats.slot_seconds;
  double p = exponent > kMaxBackoffExponent ? 0.0 : std::exp(-exponent);
  if (p < 1.0 / cap) p = 1.0 / cap;
  return {1.0 / p, p};
}

/// Cluster of `vehicle` within `all` (which must contain it). Neighbors are
/// vehicles other than `vehicle` at distance <= range.
inline ClusterStats cluster_of(const VehicleState& vehicle, std::span<const VehicleState> all,
                               double range, double lambda, double slot_seconds) {
  int size = 1;
  bool found = false;
  for (const auto& other : all) {
    if (other.id == vehicle.id) {
      found = true;
      continue;
    }
    if (geometry(vehicle, other).distance <= range) ++size;
  }
  if (!found) throw std::invalid_argument("cluster_of: vehicle not in the list");
  return {size, lambda, slot_seconds};
}

}  // namespace vanetsim
