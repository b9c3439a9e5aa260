#include "ewcast/analytics.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ewcast/decoding.hpp"

namespace ewcast {
namespace {

constexpr int kExactRows = 51;

const std::array<std::array<double, kExactRows>, kExactRows>& pascal() {
  static const auto table = [] {
    std::array<std::array<double, kExactRows>, kExactRows> c{};
    for (int n = 0; n < kExactRows; ++n) {
      c[n][0] = c[n][n] = 1.0;
      for (int r = 1; r < n; ++r) c[n][r] = c[n - 1][r - 1] + c[n - 1][r];
    }
    return c;
  }();
  return table;
}

}  // namespace

double binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) return 0.0;
  if (n < kExactRows) return pascal()[n][r];
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0)));
}

double binomial_pmf(int n, int r, double success) {
  if (r < 0 || r > n) return 0.0;
  return binomial(n, r) * std::pow(success, r) * std::pow(1.0 - success, n - r);
}

double reception_pmf(int sent, int received, double pe) {
  if (received < 0 || received > sent) return 0.0;
  return binomial(sent, received) * std::pow(1.0 - pe, received) * std::pow(pe, sent - received);
}

double LayerDistribution::at_least(int layer) const {
  double s = 0.0;
  for (std::size_t l = static_cast<std::size_t>(std::max(layer, 0)); l < probs.size(); ++l) s += probs[l];
  return s;
}

double LayerDistribution::sum() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double reception_probability(const Reception& r, const Policy& t, double pe) {
  for (const auto& [w, c] : r) {
    if (c > t.at(w)) throw std::invalid_argument("reception exceeds transmissions in window " + to_string(w));
  }
  double p = 1.0;
  for (const auto& [w, n] : t) p *= reception_pmf(n, r.at(w), pe);
  return p;
}

void check_policy(const Policy& t, const SystemConfig& config) {
  check_counts(t, config, "policy");
  if (t.total() != config.budget) {
    throw ConfigError("policy", "policy sends " + std::to_string(t.total()) + " packets but the budget is " +
                                    std::to_string(config.budget));
  }
}

std::vector<LayerDistribution> layer_distributions(const SystemConfig& config, const Policy& t) {
  check_policy(t, config);
  const std::size_t N = config.stream_count();
  std::vector<LayerDistribution> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i].probs.assign(config.streams[i].layer_count() + 1, 0.0);

  std::vector<WindowIndex> windows;
  std::vector<int> sent;
  for (const auto& [w, n] : t) {
    windows.push_back(w);
    sent.push_back(n);
  }
  const SweepDecoder decoder(config, windows);
  const std::size_t M = windows.size();

  // pmf[i][a][r]
  std::vector<std::vector<std::vector<double>>> pmf(N, std::vector<std::vector<double>>(M));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t a = 0; a < M; ++a) {
      for (int r = 0; r <= sent[a]; ++r) pmf[i][a].push_back(reception_pmf(sent[a], r, config.per[i]));
    }
  }

  std::vector<int> recv(M, 0), levels(N), scratch;
  while (true) {
    decoder.decode(recv, levels, scratch);
    for (std::size_t i = 0; i < N; ++i) {
      double p = 1.0;
      for (std::size_t a = 0; a < M; ++a) p *= pmf[i][a][recv[a]];
      out[i].probs[levels[i]] += p;
    }
    std::size_t a = M;
    while (a > 0 && recv[a - 1] == sent[a - 1]) recv[--a] = 0;
    if (a == 0) break;
    ++recv[a - 1];
  }
  return out;
}

LayerDistribution layer_distribution(std::size_t user, const SystemConfig& config, const Policy& t) {
  if (user >= config.stream_count()) throw std::out_of_range("user index out of range");
  return layer_distributions(config, t)[user];
}

double user_metric(const LayerDistribution& dist, std::span<const double> weights) {
  if (dist.probs.size() != weights.size() + 1) throw std::invalid_argument("weights do not match the layer count");
  double eta = 0.0;
  for (std::size_t l = 1; l < dist.probs.size(); ++l) eta += weights[l - 1] * dist.probs[l];
  return eta;
}

double aggregate_metric(std::span<const double> per_user_eta) {
  if (per_user_eta.empty()) throw std::invalid_argument("no users");
  double s = 0.0;
  for (double e : per_user_eta) s += e;
  return s / static_cast<double>(per_user_eta.size());
}

PolicyEvaluation evaluate_policy(const SystemConfig& config, const Policy& t, const MetricWeights& weights) {
  validate_weights(weights, config);
  auto dists = layer_distributions(config, t);
  PolicyEvaluation ev{t, {}, 0.0};
  for (std::size_t i = 0; i < dists.size(); ++i) ev.per_user_eta.push_back(user_metric(dists[i], weights.per_stream[i]));
  ev.aggregate = aggregate_metric(ev.per_user_eta);
  return ev;
}

double aggregate_metric(const SystemConfig& config, const Policy& t, const MetricWeights& weights) {
  return evaluate_policy(config, t, weights).aggregate;
}

}  // namespace ewcast
