#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanetsim/config.hpp"
#include "vanetsim/linkmodel.hpp"
#include "vanetsim/macmodel.hpp"
#include "vanetsim/vehicle.hpp"

namespace vanetsim {

/// Immutable connectivity snapshot of the world at one tick: pairwise
/// distances, 1-hop neighbor lists (sorted by id), per-vehicle cluster
/// backoff estimates and, optionally, the link lifetime of every neighbor
/// pair.
///
/// Vehicle ids must be dense: world[i].id == i.
class Topology {
 public:
  struct Link {
    int id;
    Lifetime let;
  };

  Topology(std::span<const VehicleState> world, double range, double lambda,
           double slot_seconds, double backoff_cap = kDefaultBackoffCap,
           bool with_lifetimes = true)
      : world_(world.begin(), world.end()),
        range_(range),
        n_(world.size()),
        distance_(n_ * n_, 0.0),
        links_(n_),
        backoffs_(n_, 1.0) {
    if (!(range > 0.0)) throw std::invalid_argument("Topology: range must be > 0");
    for (std::size_t i = 0; i < n_; ++i) {
      if (world_[i].id != static_cast<int>(i))
        throw std::invalid_argument("Topology: vehicle ids must equal their index (id " +
                                    std::to_string(world_[i].id) + " at index " +
                                    std::to_string(i) + ")");
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double d = geometry(world_[i], world_[j]).distance;
        distance_[i * n_ + j] = d;
        distance_[j * n_ + i] = d;
        if (d > range_) continue;
        // Lifetimes are symmetric, so each pair is estimated once.
        const Lifetime let = with_lifetimes ? link_estimate(world_[i], world_[j], range_).let
                                            : Lifetime::infinite();
        links_[i].push_back({static_cast<int>(j), let});
        links_[j].push_back({static_cast<int>(i), let});
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      // Pairs are visited in (i, j > i) order, so links_[i] is already
      // sorted by id.
      const ClusterStats stats{static_cast<int>(links_[i].size()) + 1, lambda, slot_seconds};
      backoffs_[i] = vanetsim::expected_backoffs(stats, backoff_cap).expected_backoffs;
    }
  }

  Topology(std::span<const VehicleState> world, const SimConfig& config,
           bool with_lifetimes = true)
      : Topology(world, config.comm_range, config.lambda, config.slot_seconds,
                 config.backoff_cap, with_lifetimes) {}

  int size() const noexcept { return static_cast<int>(n_); }
  double range() const noexcept { return range_; }
  const VehicleState& vehicle(int id) const { return world_.at(static_cast<std::size_t>(id)); }
  std::span<const VehicleState> world() const noexcept { return world_; }

  double distance(int a, int b) const noexcept {
    return distance_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  }
  bool in_range(int a, int b) const noexcept { return distance(a, b) <= range_; }

  std::span<const Link> neighbors(int id) const noexcept {
    return links_[static_cast<std::size_t>(id)];
  }
  int cluster_size(int id) const noexcept {
    return static_cast<int>(links_[static_cast<std::size_t>(id)].size()) + 1;
  }
  double expected_backoffs(int id) const noexcept {
    return backoffs_[static_cast<std::size_t>(id)];
  }

 private:
  std::vector<VehicleState> world_;
  double range_;
  std::size_t n_;
  std::vector<double> distance_;
  std::vector<std::vector<Link>> links_;
  std::vector<double> backoffs_;
};

}  // namespace vanetsim
