// Runs the same highway scenario under both protocols and prints the
// headline metrics side by side.
//
//   compare_protocols [config-file]

#include <cstdio>
#include <exception>

#include "vanetsim/vanetsim.hpp"

int main(int argc, char** argv) {
  using namespace vanetsim;
  try {
    const SimConfig base = argc > 1 ? load_config(argv[1]) : SimConfig{};
    std::printf("%-9s %10s %10s %8s %10s\n", "protocol", "delay_ms", "pdr", "broken", "generated");
    for (Protocol p : {Protocol::Proposed, Protocol::Gpsr}) {
      SimConfig c = base;
      c.protocol = p;
      const MetricsSummary m = run(c, RunOptions{false, std::nullopt}).metrics;
      std::printf("%-9s %10.4f %10.5f %8lld %10lld\n", std::string(to_string(p)).c_str(),
                  m.avg_delay_seconds.value_or(0.0) * 1e3, m.delivery_rate,
                  static_cast<long long>(m.broken_links), static_cast<long long>(m.packets_generated));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "compare_protocols: %s\n", e.what());
    return 1;
  }
  return 0;
}
