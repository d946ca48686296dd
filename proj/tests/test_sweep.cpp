#include <gtest/gtest.h>

#include "vanetsim/csv.hpp"
#include "vanetsim/sweep.hpp"

using namespace vanetsim;

namespace {

SimConfig base() {
  SimConfig c;
  c.total_ticks = 100;
  return c;
}

SweepAxes axes() {
  return {{12, 24}, {30, 80}, {Protocol::Proposed, Protocol::Gpsr}, {1, 2, 3}};
}

}  // namespace

TEST(Sweep, OrderAndShape) {
  const auto r = sweep(base(), axes());
  ASSERT_EQ(r.runs.size(), 24u);
  ASSERT_EQ(r.cells.size(), 8u);
  EXPECT_EQ(r.runs[0].protocol, Protocol::Proposed);
  EXPECT_EQ(r.runs[0].speed_kmh, 30);
  EXPECT_EQ(r.runs[0].num_vehicles, 12);
  EXPECT_EQ(r.runs[2].seed, 3u);
  EXPECT_EQ(r.runs[3].num_vehicles, 24);
  EXPECT_EQ(r.cells.back().protocol, Protocol::Gpsr);
  EXPECT_EQ(r.cells.back().speed_kmh, 80);
  EXPECT_EQ(r.cells.back().num_vehicles, 24);
  EXPECT_EQ(r.failed_runs(), 0u);
  for (const auto& c : r.cells) EXPECT_EQ(c.runs, 3);
}

TEST(Sweep, CellIsMeanOfRuns) {
  const auto r = sweep(base(), axes());
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    double pdr = 0, broken = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      pdr += r.runs[c * 3 + k].metrics.delivery_rate;
      broken += static_cast<double>(r.runs[c * 3 + k].metrics.broken_links);
    }
    EXPECT_NEAR(r.cells[c].delivery_rate, pdr / 3, 1e-15);
    EXPECT_NEAR(r.cells[c].broken_links, broken / 3, 1e-12);
  }
}

TEST(Sweep, RunMatchesStandaloneRun) {
  const auto r = sweep(base(), axes());
  const auto& one = r.runs[5];
  const auto solo = run(cell_config(base(), one.protocol, one.speed_kmh, one.num_vehicles, one.seed));
  EXPECT_EQ(csv::metrics_row(one.protocol, one.num_vehicles, one.speed_kmh, one.seed, one.metrics),
            csv::metrics_row(one.protocol, one.num_vehicles, one.speed_kmh, one.seed, solo.metrics));
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  const auto a = sweep(base(), axes(), 1);
  const auto b = sweep(base(), axes(), 4);
  EXPECT_EQ(csv::sweep_table(a), csv::sweep_table(b));
  EXPECT_EQ(csv::fig_delay(a), csv::fig_delay(b));
}

TEST(Sweep, FailedRunIsRecordedNotFatal) {
  SweepAxes ax = axes();
  ax.vehicle_counts = {1, 12};
  const auto r = sweep(base(), ax);
  EXPECT_EQ(r.failed_runs(), 12u);
  EXPECT_FALSE(r.runs[0].ok);
  EXPECT_FALSE(r.runs[0].error.empty());
  EXPECT_TRUE(r.runs[3].ok);
  EXPECT_NE(csv::errors(r).find("proposed,1,8.333333333333334,1,"), std::string::npos);
}

TEST(Sweep, EmptyAxisThrows) {
  SweepAxes ax = axes();
  ax.seeds.clear();
  EXPECT_THROW(sweep(base(), ax), std::invalid_argument);
}

TEST(Sweep, FigureCsvHeaders) {
  const auto r = sweep(base(), axes());
  EXPECT_EQ(csv::fig_delay(r).rfind("protocol,speed_mps,num_vehicles,avg_delay_s\n", 0), 0u);
  EXPECT_EQ(csv::fig_pdr(r).rfind("protocol,speed_mps,num_vehicles,delivery_rate\n", 0), 0u);
  EXPECT_EQ(csv::fig_broken(r).rfind("protocol,speed_mps,num_vehicles,broken_links\n", 0), 0u);
}
