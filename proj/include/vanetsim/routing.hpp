#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanetsim/config.hpp"
#include "vanetsim/linkmodel.hpp"
#include "vanetsim/topology.hpp"
#include "vanetsim/vehicle.hpp"

namespace vanetsim {

/// One candidate forwarder as seen from the current packet holder.
struct NeighborView {
  int neighbor_id = -1;
  double distance_to_dest = 0.0;
  Lifetime let_to_current = Lifetime::infinite();
  double expected_backoffs = 1.0;
};

struct WeightMaxima {
  double backoffs = 1.0;
  double let = 1.0;
  double distance = 1.0;
};

struct WeightCoefficients {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;

  void validate() const {
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0)
      throw std::invalid_argument("weight coefficients must be >= 0");
    if (std::abs(alpha + beta + gamma - 1.0) > 1e-12)
      throw std::invalid_argument("weight coefficients must sum to 1");
  }
};

/// Maxima over a neighbor view. Infinite lifetimes count as `let_clamp`.
inline WeightMaxima maxima_of(std::span<const NeighborView> rows, double let_clamp) {
  WeightMaxima m{0.0, 0.0, 0.0};
  for (const auto& r : rows) {
    m.backoffs = std::max(m.backoffs, r.expected_backoffs);
    m.let = std::max(m.let, r.let_to_current.clamped(let_clamp));
    m.distance = std::max(m.distance, r.distance_to_dest);
  }
  return m;
}

/// Forwarding weight of one neighbor:
///
///   W = alpha * (Nmax - N) / Nmax + beta * LET / LETmax + gamma * (dmax - d) / dmax
///
/// An infinite LET counts as LETmax. With dmax == 0 (every candidate sits on
/// the destination) the distance ratio is 1, and likewise the LET ratio when
/// LETmax == 0. Throws std::logic_error if any ratio leaves [0, 1], which
/// means `maxima` are not the maxima of the view the row came from.
inline double weight(const NeighborView& row, const WeightMaxima& maxima,
                     const WeightCoefficients& coeffs) {
  if (!(maxima.backoffs >= 1.0))
    throw std::invalid_argument("weight: backoff maximum must be >= 1");

  const double backoff_ratio = (maxima.backoffs - row.expected_backoffs) / maxima.backoffs;

  double let_ratio = 1.0;
  if (!row.let_to_current.is_infinite() && maxima.let > 0.0)
    let_ratio = row.let_to_current.seconds() / maxima.let;

  const double distance_ratio =
      maxima.distance > 0.0 ? (maxima.distance - row.distance_to_dest) / maxima.distance : 1.0;

  auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!in_unit(backoff_ratio) || !in_unit(let_ratio) || !in_unit(distance_ratio))
    throw std::logic_error("weight: ratio outside [0,1] (backoff " + std::to_string(backoff_ratio) +
                           ", let " + std::to_string(let_ratio) + ", distance " +
                           std::to_string(distance_ratio) + ")");

  return coeffs.alpha * backoff_ratio + coeffs.beta * let_ratio + coeffs.gamma * distance_ratio;
}

enum class Outcome { NextHop, DirectDelivery, NoRoute };

struct NeighborWeight {
  int id;
  double weight;
};

struct ForwardDecision {
  Outcome outcome = Outcome::NoRoute;
  int next_hop = -1;  // set for NextHop and DirectDelivery
  std::vector<NeighborWeight> weight_table;
};

/// Routing knobs taken from SimConfig.
struct RouteParams {
  Protocol protocol = Protocol::Proposed;
  WeightCoefficients coeffs{};
  double let_clamp_seconds = 60.0;
  int hop_limit = 64;
  bool progress_only = true;

  static RouteParams from(const SimConfig& c) {
    return {c.protocol, {c.alpha, c.beta, c.gamma}, c.let_clamp_seconds, c.hop_limit,
            c.progress_only};
  }
};

namespace detail {

inline bool contains(std::span<const int> ids, int id) noexcept {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

inline void check_endpoints(const Topology& topo, int current, int dest) {
  if (current == dest) throw std::invalid_argument("next hop: current equals destination");
  if (current < 0 || current >= topo.size() || dest < 0 || dest >= topo.size())
    throw std::out_of_range("next hop: vehicle id out of range");
}

}  // namespace detail

/// Weighted next-hop choice. `excluded` holds vehicles the packet already
/// visited; they are left out of the neighbor view. The decision's
/// weight_table is overwritten (capacity is reused).
inline void select_next_hop_proposed(const Topology& topo, int current, int dest,
                                     std::span<const int> excluded, const RouteParams& params,
                                     ForwardDecision& out) {
  detail::check_endpoints(topo, current, dest);
  out.weight_table.clear();
  if (topo.in_range(current, dest)) {
    out.outcome = Outcome::DirectDelivery;
    out.next_hop = dest;
    return;
  }

  thread_local std::vector<NeighborView> rows;
  rows.clear();
  const double holder_distance = topo.distance(current, dest);
  for (const auto& link : topo.neighbors(current)) {
    if (params.progress_only && !(topo.distance(link.id, dest) < holder_distance)) continue;
    if (detail::contains(excluded, link.id)) continue;
    Lifetime let = link.let;
    if (!let.is_infinite()) let = Lifetime::finite(std::min(let.seconds(), params.let_clamp_seconds));
    rows.push_back({link.id, topo.distance(link.id, dest), let, topo.expected_backoffs(link.id)});
  }
  if (rows.empty()) {
    out.outcome = Outcome::NoRoute;
    out.next_hop = -1;
    return;
  }

  const WeightMaxima maxima = maxima_of(rows, params.let_clamp_seconds);
  int best = -1;
  double best_weight = 0.0;
  // Rows are in ascending id order, so strict '>' keeps the lowest id on ties.
  for (const auto& r : rows) {
    const double w = weight(r, maxima, params.coeffs);
    out.weight_table.push_back({r.neighbor_id, w});
    if (best < 0 || w > best_weight) {
      best = r.neighbor_id;
      best_weight = w;
    }
  }
  out.outcome = Outcome::NextHop;
  out.next_hop = best;
}

inline ForwardDecision select_next_hop_proposed(const Topology& topo, int current, int dest,
                                                std::span<const int> excluded,
                                                const RouteParams& params) {
  ForwardDecision d;
  select_next_hop_proposed(topo, current, dest, excluded, params, d);
  return d;
}

inline ForwardDecision select_next_hop_proposed(int current, int dest,
                                                std::span<const VehicleState> world,
                                                const SimConfig& config) {
  const Topology topo(world, config);
  const int visited[] = {current};
  return select_next_hop_proposed(topo, current, dest, visited, RouteParams::from(config));
}

/// Greedy geographic forwarding: the neighbor closest to the destination,
/// provided it is strictly closer than the current holder. No perimeter
/// recovery; a local maximum yields NoRoute.
inline void select_next_hop_gpsr(const Topology& topo, int current, int dest,
                                 std::span<const int> excluded, ForwardDecision& out) {
  detail::check_endpoints(topo, current, dest);
  out.weight_table.clear();
  if (topo.in_range(current, dest)) {
    out.outcome = Outcome::DirectDelivery;
    out.next_hop = dest;
    return;
  }
  int best = -1;
  double best_distance = topo.distance(current, dest);
  for (const auto& link : topo.neighbors(current)) {
    if (detail::contains(excluded, link.id)) continue;
    const double d = topo.distance(link.id, dest);
    if (d < best_distance) {
      best = link.id;
      best_distance = d;
    }
  }
  out.outcome = best < 0 ? Outcome::NoRoute : Outcome::NextHop;
  out.next_hop = best;
}

inline ForwardDecision select_next_hop_gpsr(const Topology& topo, int current, int dest,
                                            std::span<const int> excluded = {}) {
  ForwardDecision d;
  select_next_hop_gpsr(topo, current, dest, excluded, d);
  return d;
}

inline ForwardDecision select_next_hop_gpsr(int current, int dest,
                                            std::span<const VehicleState> world,
                                            const SimConfig& config) {
  const Topology topo(world, config, false);
  return select_next_hop_gpsr(topo, current, dest);
}

inline void select_next_hop(const Topology& topo, int current, int dest,
                            std::span<const int> excluded, const RouteParams& params,
                            ForwardDecision& out) {
  if (params.protocol == Protocol::Proposed)
    select_next_hop_proposed(topo, current, dest, excluded, params, out);
  else
    select_next_hop_gpsr(topo, current, dest, excluded, out);
}

// ---------------------------------------------------------------------------
// Route discovery and maintenance

enum class RouteFailure { None, NoRoute, HopLimitExceeded };

struct Discovery {
  std::vector<int> route;  // source .. destination when ok()
  RouteFailure failure = RouteFailure::None;

  bool ok() const noexcept { return failure == RouteFailure::None; }
};

/// Extends `prefix` hop by hop until the destination is reached. Vehicles
/// already on the route are never revisited. A route may hold at most
/// hop_limit hops. `on_decision` sees every forwarding decision made.
template <typename OnDecision>
Discovery discover_route(const Topology& topo, std::vector<int> prefix, int dest,
                         const RouteParams& params, OnDecision&& on_decision) {
  if (prefix.empty()) throw std::invalid_argument("discover_route: empty prefix");
  Discovery result;
  result.route = std::move(prefix);
  thread_local ForwardDecision decision;
  while (result.route.back() != dest) {
    if (static_cast<int>(result.route.size()) - 1 >= params.hop_limit) {
      result.failure = RouteFailure::HopLimitExceeded;
      return result;
    }
    select_next_hop(topo, result.route.back(), dest, result.route, params, decision);
    on_decision(decision);
    if (decision.outcome == Outcome::NoRoute) {
      result.failure = RouteFailure::NoRoute;
      return result;
    }
    result.route.push_back(decision.next_hop);
  }
  return result;
}

inline Discovery discover_route(const Topology& topo, std::vector<int> prefix, int dest,
                                const RouteParams& params) {
  return discover_route(topo, std::move(prefix), dest, params, [](const ForwardDecision&) {});
}

enum class RouteStatus { Intact, Repaired, Broken };

struct Maintenance {
  RouteStatus status = RouteStatus::Intact;
  std::size_t hop_index = 0;  // index of the hop repaired from (or that broke)
  int broken_links = 0;
  RouteFailure failure = RouteFailure::None;
};

/// Walks the route from `from_index` and checks each consecutive pair. The
/// first pair at distance >= range counts as one broken link and the route
/// is re-discovered from its upstream end, keeping the earlier hops as the
/// visited set. On Repaired `route` is replaced; on Broken it is left as is.
template <typename OnDecision>
Maintenance maintain_route(std::vector<int>& route, std::size_t from_index, const Topology& topo,
                           const RouteParams& params, OnDecision&& on_decision) {
  if (route.size() < 2) throw std::invalid_argument("maintain_route: route needs >= 2 hops");
  Maintenance m;
  for (std::size_t k = from_index; k + 1 < route.size(); ++k) {
    if (topo.distance(route[k], route[k + 1]) < topo.range()) continue;
    m.hop_index = k;
    m.broken_links = 1;
    std::vector<int> prefix(route.begin(), route.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    Discovery fresh = discover_route(topo, std::move(prefix), route.back(), params,
                                     std::forward<OnDecision>(on_decision));
    if (!fresh.ok()) {
      m.status = RouteStatus::Broken;
      m.failure = fresh.failure;
      return m;
    }
    route = std::move(fresh.route);
    m.status = RouteStatus::Repaired;
    return m;
  }
  return m;
}

inline Maintenance maintain_route(std::vector<int>& route, std::size_t from_index,
                                  const Topology& topo, const RouteParams& params) {
  return maintain_route(route, from_index, topo, params, [](const ForwardDecision&) {});
}

inline Maintenance maintain_route(std::vector<int>& route, std::span<const VehicleState> world,
                                  const SimConfig& config) {
  const Topology topo(world, config, config.protocol == Protocol::Proposed);
  return maintain_route(route, 0, topo, RouteParams::from(config));
}

}  // namespace vanetsim
