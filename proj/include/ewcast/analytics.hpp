#pragma once

#include <span>
#include <vector>

#include "ewcast/window_counts.hpp"

namespace ewcast {

// C(n, r); exact below 51, via lgamma above.
double binomial(int n, int r);
// C(n, r) s^r (1 - s)^(n - r)
double binomial_pmf(int n, int r, double success);
// Probability that `received` of `sent` packets survive an erasure rate pe:
// C(sent, received) (1 - pe)^received pe^(sent - received).
double reception_pmf(int sent, int received, double pe);

struct LayerDistribution {
  std::vector<double> probs;  // P(highest decodable layer == l), l = 0..L

  int layer_count() const noexcept { return static_cast<int>(probs.size()) - 1; }
  double at_least(int layer) const;
  double sum() const;
  friend bool operator==(const LayerDistribution&, const LayerDistribution&) = default;
};

struct PolicyEvaluation {
  Policy policy;
  std::vector<double> per_user_eta;
  double aggregate = 0.0;
};

// P(R | T) for a user with erasure probability pe.
double reception_probability(const Reception& r, const Policy& t, double pe);

void check_policy(const Policy& t, const SystemConfig& config);  // keys valid, sum == budget

LayerDistribution layer_distribution(std::size_t user, const SystemConfig& config, const Policy& t);
// All users from one pass over the receptions.
std::vector<LayerDistribution> layer_distributions(const SystemConfig& config, const Policy& t);

double user_metric(const LayerDistribution& dist, std::span<const double> weights);
double aggregate_metric(std::span<const double> per_user_eta);
double aggregate_metric(const SystemConfig& config, const Policy& t, const MetricWeights& weights);

PolicyEvaluation evaluate_policy(const SystemConfig& config, const Policy& t, const MetricWeights& weights);

}  // namespace ewcast
