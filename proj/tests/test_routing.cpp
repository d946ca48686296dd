#include <gtest/gtest.h>

#include <random>

#include "support/ten_car_layout.hpp"
#include "support/oracles.hpp"
#include "vanetsim/routing.hpp"

using namespace vanetsim;
using layout::v;

namespace {

std::vector<int> labels(const std::vector<int>& ids) {
  std::vector<int> out;
  for (int id : ids) out.push_back(id + 1);
  return out;
}

RouteParams params(Protocol p, WeightCoefficients c = {}) {
  RouteParams r;
  r.protocol = p;
  r.coeffs = c;
  return r;
}

std::vector<VehicleState> line(std::initializer_list<double> xs) {
  std::vector<VehicleState> out;
  int id = 0;
  for (double x : xs) {
    VehicleState s;
    s.id = id++;
    s.x = x;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(TenCarLayout, NeighborCounts) {
  const auto w = layout::world();
  const Topology topo(w, layout::config());
  EXPECT_EQ(topo.neighbors(v(6)).size(), 5u);
  EXPECT_EQ(topo.neighbors(v(8)).size(), 2u);
  std::vector<int> n5;
  for (const auto& l : topo.neighbors(v(5))) n5.push_back(l.id + 1);
  EXPECT_EQ(n5, (std::vector<int>{1, 2, 6, 8}));
}

TEST(TenCarLayout, GreedyRoute) {
  const auto w = layout::world();
  const Topology topo(w, layout::config());
  const auto d = discover_route(topo, {v(1)}, v(10), params(Protocol::Gpsr));
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(labels(d.route), (std::vector<int>{1, 5, 6, 10}));
}

TEST(TenCarLayout, ContentionAwareRouteAvoidsBusyVehicle) {
  const auto w = layout::world();
  const Topology topo(w, layout::config());
  for (const WeightCoefficients c : {WeightCoefficients{0.6, 0.1, 0.3}, WeightCoefficients{0.8, 0.0, 0.2},
                                     WeightCoefficients{1.0, 0.0, 0.0}}) {
    const auto d = discover_route(topo, {v(1)}, v(10), params(Protocol::Proposed, c));
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(labels(d.route), (std::vector<int>{1, 5, 8, 9, 10})) << c.alpha;
  }
}

TEST(TenCarLayout, EqualCoefficientsFollowDistance) {
  const auto w = layout::world();
  const Topology topo(w, layout::config());
  const auto d = discover_route(topo, {v(1)}, v(10), params(Protocol::Proposed));
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(labels(d.route), (std::vector<int>{1, 5, 6, 10}));
}

TEST(Weight, WorstBackoffAndDistanceBestLet) {
  const NeighborView row{0, 300.0, Lifetime::finite(10.0), 2.0};
  EXPECT_NEAR(weight(row, {2.0, 10.0, 300.0}, {}), 1.0 / 3.0, 1e-15);
}

// Zero maxima give ratio 1; the backoff term is still 0 at the maximum.
TEST(Weight, DegenerateMaxima) {
  const NeighborView row{0, 0.0, Lifetime::finite(0.0), 1.0};
  EXPECT_NEAR(weight(row, {1.0, 0.0, 0.0}, {}), 2.0 / 3.0, 1e-15);
}

TEST(Weight, ThreeNeighborArgmax) {
  const std::vector<NeighborView> rows = {{0, 300.0, Lifetime::finite(10.0), 1.2},
                                          {1, 300.0, Lifetime::finite(20.0), 2.0},
                                          {2, 150.0, Lifetime::finite(20.0), 2.0}};
  const auto m = maxima_of(rows, 60.0);
  const auto want = oracle::weights({{1.2, 10, 300}, {2, 20, 300}, {2, 20, 150}}, 1 / 3.0, 1 / 3.0, 1 / 3.0, 60);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(weight(rows[i], m, {}), want[i], 1e-15);
  EXPECT_EQ(oracle::argmax(want), 2u);
  EXPECT_NEAR(want[0], 0.3, 1e-15);
  EXPECT_NEAR(want[2], 0.5, 1e-15);
}

TEST(Weight, InfiniteLetCountsAsMaximum) {
  const NeighborView row{0, 100.0, Lifetime::infinite(), 2.0};
  EXPECT_NEAR(weight(row, {4.0, 60.0, 200.0}, {0, 1, 0}), 1.0, 1e-15);
}

TEST(Weight, RatioOutsideUnitIntervalThrows) {
  const NeighborView row{0, 300.0, Lifetime::finite(1.0), 2.0};
  EXPECT_THROW(weight(row, {4.0, 60.0, 200.0}, {}), std::logic_error);
}

TEST(Weight, CoefficientValidation) {
  EXPECT_THROW((WeightCoefficients{0.5, 0.5, 0.5}.validate()), std::invalid_argument);
  EXPECT_THROW((WeightCoefficients{-0.1, 0.6, 0.5}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((WeightCoefficients{0.2, 0.3, 0.5}.validate()));
}

// Random neighbor tables: the selector's weights and choice match a direct
// evaluation of the definition, and every weight is in [0, 1].
TEST(Weight, MatchesDefinitionOracle) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_real_distribution<double> back(1.0, 30.0), let(0.0, 90.0), dist(0.0, 900.0), u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = count(rng);
    std::vector<NeighborView> rows;
    std::vector<oracle::Candidate> cand;
    for (int i = 0; i < n; ++i) {
      const bool inf = u(rng) < 0.2;
      const double l = let(rng);
      rows.push_back({i, dist(rng), inf ? Lifetime::infinite() : Lifetime::finite(l), back(rng)});
      cand.push_back({rows.back().expected_backoffs,
                      inf ? std::numeric_limits<double>::infinity() : l, rows.back().distance_to_dest});
      if (!inf) rows.back().let_to_current = Lifetime::finite(std::min(l, 60.0));
    }
    double a = u(rng), b = u(rng) * (1 - a);
    const WeightCoefficients c{a, b, 1 - a - b};
    const auto want = oracle::weights(cand, c.alpha, c.beta, c.gamma, 60.0);
    const auto maxima = maxima_of(rows, 60.0);
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double w = weight(rows[i], maxima, c);
      EXPECT_NEAR(w, want[i], 1e-12);
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 1.0);
      if (w > weight(rows[best], maxima, c)) best = i;
    }
    EXPECT_EQ(best, oracle::argmax(want));
  }
}

// With only the distance term the weighted selector is greedy forwarding.
TEST(Selector, DistanceOnlyMatchesGreedy) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> x(0, 1000), y(0, 25);
  auto p = params(Protocol::Proposed, {0, 0, 1});
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<VehicleState> w(30);
    for (int i = 0; i < 30; ++i) {
      w[i].id = i;
      w[i].x = x(rng);
      w[i].y = y(rng);
      w[i].speed = 10 + i;
    }
    const Topology topo(w, 250, 10000, 13e-6);
    const int visited[] = {0};
    const auto a = select_next_hop_proposed(topo, 0, 29, visited, p);
    const auto b = select_next_hop_gpsr(topo, 0, 29, visited);
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_EQ(a.next_hop, b.next_hop);
  }
}

TEST(Selector, TieGoesToLowestId) {
  // Vehicles 1 and 2 are mirror images around the road axis.
  auto w = line({0, 200, 200, 400});
  w[1].y = 10;
  w[2].y = -10;
  const Topology topo(w, 250, 10000, 13e-6);
  const int visited[] = {0};
  EXPECT_EQ(select_next_hop_proposed(topo, 0, 3, visited, params(Protocol::Proposed)).next_hop, 1);
  EXPECT_EQ(select_next_hop_gpsr(topo, 0, 3, visited).next_hop, 1);
}

TEST(Selector, DirectDeliveryAndLocalMaximum) {
  const auto w = line({0, 200, 600});
  const Topology topo(w, 250, 10000, 13e-6);
  EXPECT_EQ(select_next_hop_gpsr(topo, 0, 1).outcome, Outcome::DirectDelivery);
  EXPECT_EQ(select_next_hop_gpsr(topo, 0, 2).outcome, Outcome::NextHop);
  EXPECT_EQ(select_next_hop_gpsr(topo, 1, 2).outcome, Outcome::NoRoute);
  const int visited[] = {1};
  EXPECT_EQ(select_next_hop_proposed(topo, 1, 2, visited, params(Protocol::Proposed)).outcome,
            Outcome::NoRoute);
}

TEST(Selector, GreedyNeedsStrictProgress) {
  const auto w = line({0, 0, 300});
  const Topology topo(w, 250, 10000, 13e-6);
  EXPECT_EQ(select_next_hop_gpsr(topo, 0, 2).outcome, Outcome::NoRoute);
}

TEST(Selector, RejectsBadEndpoints) {
  const auto w = line({0, 100});
  const Topology topo(w, 250, 10000, 13e-6);
  EXPECT_THROW(select_next_hop_gpsr(topo, 0, 0), std::invalid_argument);
  EXPECT_THROW(select_next_hop_gpsr(topo, 0, 5), std::out_of_range);
}

TEST(Discovery, HopLimit) {
  const auto w = line({0, 200, 400, 600, 800});
  const Topology topo(w, 250, 10000, 13e-6);
  auto p = params(Protocol::Gpsr);
  p.hop_limit = 3;
  const auto d = discover_route(topo, {0}, 4, p);
  EXPECT_EQ(d.failure, RouteFailure::HopLimitExceeded);
  p.hop_limit = 4;
  const auto ok = discover_route(topo, {0}, 4, p);
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok.route, (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(Maintenance, IntactRouteUntouched) {
  const auto w = line({0, 180, 230, 420});
  const Topology topo(w, 250, 10000, 13e-6);
  std::vector<int> route{0, 1, 3};
  const auto m = maintain_route(route, 0, topo, params(Protocol::Gpsr));
  EXPECT_EQ(m.status, RouteStatus::Intact);
  EXPECT_EQ(m.broken_links, 0);
  EXPECT_EQ(route, (std::vector<int>{0, 1, 3}));
}

TEST(Maintenance, RepairsFromBrokenHop) {
  const auto w = line({0, 180, 230, 440});
  const Topology topo(w, 250, 10000, 13e-6);
  for (Protocol p : {Protocol::Gpsr, Protocol::Proposed}) {
    std::vector<int> route{0, 1, 3};
    const auto m = maintain_route(route, 0, topo, params(p));
    EXPECT_EQ(m.status, RouteStatus::Repaired);
    EXPECT_EQ(m.hop_index, 1u);
    EXPECT_EQ(m.broken_links, 1);
    EXPECT_EQ(route, (std::vector<int>{0, 1, 2, 3}));
  }
}

TEST(Maintenance, BrokenWhenNoDetourExists) {
  const auto w = line({0, 180, 900, 440});
  const Topology topo(w, 250, 10000, 13e-6);
  std::vector<int> route{0, 1, 3};
  const auto m = maintain_route(route, 0, topo, params(Protocol::Gpsr));
  EXPECT_EQ(m.status, RouteStatus::Broken);
  EXPECT_EQ(m.failure, RouteFailure::NoRoute);
  EXPECT_EQ(m.broken_links, 1);
  EXPECT_EQ(route, (std::vector<int>{0, 1, 3}));
}

TEST(Maintenance, SkipsHopsAlreadyTravelled) {
  const auto w = line({0, 260, 400});
  const Topology topo(w, 250, 10000, 13e-6);
  std::vector<int> route{0, 1, 2};
  EXPECT_EQ(maintain_route(route, 1, topo, params(Protocol::Gpsr)).status, RouteStatus::Intact);
}
