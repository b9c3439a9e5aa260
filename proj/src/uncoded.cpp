#include <cmath>

#include "ewcast/optimizer.hpp"

namespace ewcast {

int UncodedAllocation::total() const {
  int t = 0;
  for (const auto& s : counts) {
    for (int n : s) t += n;
  }
  return t;
}

namespace {

void check_allocation(const SystemConfig& config, const UncodedAllocation& alloc) {
  if (alloc.counts.size() != config.stream_count()) throw ConfigError("allocation", "need one count list per stream");
  for (std::size_t i = 0; i < alloc.counts.size(); ++i) {
    if (static_cast<int>(alloc.counts[i].size()) != config.streams[i].layer_count()) {
      throw ConfigError("allocation", "need one count per layer of stream " + std::to_string(i + 1));
    }
    for (int n : alloc.counts[i]) {
      if (n < 0) throw ConfigError("allocation", "negative count");
    }
  }
  if (alloc.total() != config.budget) throw ConfigError("allocation", "allocation does not use the whole budget");
}

// P(every packet of the layer arrives) when n copies are spread round-robin over k packets.
double layer_success(int n, int k, double pe) {
  const int base = n / k, extra = n % k;
  return std::pow(1.0 - std::pow(pe, base + 1), extra) * std::pow(1.0 - std::pow(pe, base), k - extra);
}

UncodedAllocation unflatten(const SystemConfig& config, const std::vector<int>& flat) {
  UncodedAllocation a;
  std::size_t k = 0;
  for (const auto& s : config.streams) {
    a.counts.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(k),
                          flat.begin() + static_cast<std::ptrdiff_t>(k) + s.layer_count());
    k += static_cast<std::size_t>(s.layer_count());
  }
  return a;
}

template <class Visit>
void for_each_allocation(const SystemConfig& config, const SearchOptions& options, Visit visit) {
  std::size_t parts = 0;
  for (const auto& s : config.streams) parts += static_cast<std::size_t>(s.layer_count());
  const std::uint64_t need = policy_count(config.budget, parts);
  if (need > options.cap) throw SearchCapExceeded(need, options.cap);
  std::vector<int> c(parts, 0);
  c[0] = config.budget;
  do {
    visit(c);
  } while (next_composition(c));
}

}  // namespace

UncodedEvaluation uncoded_uep_evaluate(const SystemConfig& config, const UncodedAllocation& alloc,
                                       const MetricWeights& weights) {
  validate_config(config);
  validate_weights(weights, config);
  check_allocation(config, alloc);
  UncodedEvaluation ev{alloc, {}, {}, 0.0};
  for (std::size_t i = 0; i < config.stream_count(); ++i) {
    const auto& k = config.streams[i].packets_per_layer;
    LayerDistribution d;
    d.probs.assign(k.size() + 1, 0.0);
    double reach = 1.0;  // P(d >= l)
    std::vector<double> at_least(k.size() + 2, 0.0);
    at_least[0] = 1.0;
    for (std::size_t l = 0; l < k.size(); ++l) {
      reach *= layer_success(alloc.counts[i][l], k[l], config.per[i]);
      at_least[l + 1] = reach;
    }
    for (std::size_t l = 0; l <= k.size(); ++l) d.probs[l] = at_least[l] - at_least[l + 1];
    ev.per_user_eta.push_back(user_metric(d, weights.per_stream[i]));
    ev.distributions.push_back(std::move(d));
  }
  ev.aggregate = aggregate_metric(ev.per_user_eta);
  return ev;
}

UncodedEvaluation uncoded_uep_optimize(const SystemConfig& config, const MetricWeights& weights,
                                       const SearchOptions& options) {
  validate_config(config);
  validate_weights(weights, config);
  std::optional<UncodedEvaluation> best;
  for_each_allocation(config, options, [&](const std::vector<int>& c) {
    auto ev = uncoded_uep_evaluate(config, unflatten(config, c), weights);
    // enumeration runs from the largest first count down, so a later equal
    // value is always lexicographically smaller
    if (!best || ev.aggregate >= best->aggregate) {
      best = std::move(ev);
    }
  });
  return *best;
}

std::vector<UncodedEvaluation> uncoded_pareto_frontier(const SystemConfig& config, const MetricWeights& weights,
                                                       const SearchOptions& options) {
  validate_config(config);
  validate_weights(weights, config);
  std::vector<UncodedEvaluation> all;
  for_each_allocation(config, options, [&](const std::vector<int>& c) {
    all.push_back(uncoded_uep_evaluate(config, unflatten(config, c), weights));
  });
  // enumeration order is descending; reverse so the smallest allocation comes first
  std::reverse(all.begin(), all.end());
  return pareto_filter(std::move(all), [](const UncodedEvaluation& e) -> const std::vector<double>& { return e.per_user_eta; });
}

std::string format_allocation(const UncodedAllocation& alloc) {
  std::string s;
  for (std::size_t i = 0; i < alloc.counts.size(); ++i) {
    for (std::size_t l = 0; l < alloc.counts[i].size(); ++l) {
      if (!s.empty()) s += ';';
      s += std::to_string(i + 1) + '.' + std::to_string(l + 1) + ':' + std::to_string(alloc.counts[i][l]);
    }
  }
  return s;
}

}  // namespace ewcast
