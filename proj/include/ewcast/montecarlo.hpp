#pragma once

#include <cstdint>
#include <vector>

#include "ewcast/analytics.hpp"

namespace ewcast {

struct SimulationOptions {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  std::uint32_t field_order = 2147483647u;
  int threads = 1;
};

struct SimulationEstimate {
  std::vector<std::vector<std::uint64_t>> layer_counts;  // [user][layer] trials ending at that layer
  std::vector<LayerDistribution> distributions;          // empirical frequencies
  std::vector<double> eta;                               // mean of a_{d} per trial
  std::vector<double> stderr_eta;                        // sample std / sqrt(trials); inf for one trial
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t field_order = 0;

  friend bool operator==(const SimulationEstimate&, const SimulationEstimate&) = default;
};

// Sends the scheduled coded packets with random nonzero coefficients (shared
// by all users in a trial), erases each independently per user, and decodes
// every user by row reduction.
SimulationEstimate simulate(const SystemConfig& config, const Policy& policy, const MetricWeights& weights,
                            const SimulationOptions& options = {});

}  // namespace ewcast
