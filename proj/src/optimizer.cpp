#include "ewcast/optimizer.hpp"

#include <algorithm>
#include <numeric>

namespace ewcast {

bool next_composition(std::vector<int>& c) {
  if (c.size() < 2) return false;
  std::size_t i = c.size() - 1;
  while (i-- > 0) {
    if (c[i] > 0) break;
    if (i == 0) return false;
  }
  int tail = std::accumulate(c.begin() + static_cast<std::ptrdiff_t>(i) + 1, c.end(), 0);
  --c[i];
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(i) + 1, c.end(), 0);
  c[i + 1] = tail + 1;
  return true;
}

std::vector<Policy> enumerate_policies(int budget, const WindowSet& windows, std::uint64_t cap) {
  if (budget < 0) throw ConfigError("budget", "transmission budget must be non-negative");
  if (windows.empty()) throw ConfigError("windows", "window set is empty");
  const std::uint64_t need = policy_count(budget, windows.size());
  if (need > cap) throw SearchCapExceeded(need, cap);
  std::vector<Policy> out;
  out.reserve(need);
  std::vector<int> c(windows.size(), 0);
  c[0] = budget;
  do {
    Policy p;
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (c[a]) p.set(windows[a], c[a]);
    }
    out.push_back(std::move(p));
  } while (next_composition(c));
  return out;
}

PolicyEvaluation optimize(const SystemConfig& config, const WindowSet& windows, const MetricWeights& weights,
                          const SearchOptions& options) {
  validate_config(config);
  validate_weights(weights, config);
  const std::uint64_t need = policy_count(config.budget, windows.size());
  if (need > options.cap) throw SearchCapExceeded(need, options.cap);
  const SearchSpace space(config, windows, config.budget);
  BudgetOptimum best = best_at_budget(space, config.per, weights, config.budget, options.threads);
  PolicyEvaluation ev = evaluate_policy(config, best.policy, weights);
  ev.aggregate = best.value;
  return ev;
}

std::vector<PolicyEvaluation> pareto_frontier(const SystemConfig& config, const WindowSet& windows,
                                              const MetricWeights& weights, const SearchOptions& options) {
  validate_config(config);
  validate_weights(weights, config);
  const std::uint64_t need = policy_count(config.budget, windows.size());
  if (need > options.cap) throw SearchCapExceeded(need, options.cap);
  const SearchSpace space(config, windows, config.budget);
  auto raw = exact_frontier(space, config.per, weights, config.budget, options.threads);
  // smallest policy first so that it wins among near-equal points
  std::sort(raw.begin(), raw.end(), [](const FrontierPoint& a, const FrontierPoint& b) { return lex_less(a.policy, b.policy); });
  auto kept = pareto_filter(std::move(raw), [](const FrontierPoint& p) -> const std::vector<double>& { return p.eta; });
  std::vector<PolicyEvaluation> out;
  for (auto& p : kept) {
    PolicyEvaluation ev{std::move(p.policy), std::move(p.eta), 0.0};
    ev.aggregate = aggregate_metric(ev.per_user_eta);
    out.push_back(std::move(ev));
  }
  return out;
}

int exact_sweep_limit(std::size_t windows, int hi, std::uint64_t cap) {
  int n = -1;
  while (n < hi && policy_count_up_to(n + 1, windows) <= cap) ++n;
  return n;
}

SweepResult improvement_sweep(const SearchSpace& inter, const SearchSpace& intra, const std::vector<double>& per,
                              const MetricWeights& weights, int lo, int hi, int threads) {
  if (lo < 0 || lo > hi) throw ConfigError("budget_range", "need 0 <= lo <= hi");
  if (intra.max_budget() < hi) throw std::invalid_argument("intra search space does not reach the sweep end");
  SweepResult res;
  res.exact_limit = std::min(inter.max_budget(), hi);
  const auto intra_best = best_per_budget(intra, per, weights, hi, threads);
  std::vector<BudgetOptimum> inter_best;
  if (res.exact_limit >= 0) inter_best = best_per_budget(inter, per, weights, res.exact_limit, threads);

  res.certified = true;
  for (int n = lo; n <= hi; ++n) {
    SweepRow row;
    row.budget = n;
    row.intra = intra_best[n].value;
    row.intra_policy = intra_best[n].policy;
    if (n <= res.exact_limit) {
      row.exact = true;
      row.inter = inter_best[n].value;
      row.inter_policy = inter_best[n].policy;
      if (row.intra > 0.0) {
        row.gain = 100.0 * (row.inter - row.intra) / row.intra;
        if (!res.max_gain || *row.gain > *res.max_gain) {
          res.max_gain = row.gain;
          res.max_gain_budget = n;
        }
      }
    } else if (row.intra > 0.0) {
      row.gain_bound = 100.0 * (1.0 - row.intra) / row.intra;
    }
    res.rows.push_back(std::move(row));
  }
  for (const auto& row : res.rows) {
    if (row.exact) continue;
    if (!row.gain_bound || !res.max_gain || *row.gain_bound > *res.max_gain) res.certified = false;
  }
  return res;
}

SweepResult improvement_sweep(const SystemConfig& config, const WindowSet& inter, const WindowSet& intra,
                              const MetricWeights& weights, int lo, int hi, const SearchOptions& options) {
  validate_config(config);
  validate_weights(weights, config);
  if (lo < 0 || lo > hi) throw ConfigError("budget_range", "need 0 <= lo <= hi");
  const std::uint64_t intra_need = policy_count_up_to(hi, intra.size());
  if (intra_need > options.cap) throw SearchCapExceeded(intra_need, options.cap);
  const int limit = exact_sweep_limit(inter.size(), hi, options.cap);
  if (limit < 0) throw SearchCapExceeded(1, options.cap);
  const SearchSpace intra_space(config, intra, hi);
  const SearchSpace inter_space(config, inter, limit);
  return improvement_sweep(inter_space, intra_space, config.per, weights, lo, hi, options.threads);
}

}  // namespace ewcast
