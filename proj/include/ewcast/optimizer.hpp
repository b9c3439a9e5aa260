#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ewcast/analytics.hpp"
#include "ewcast/search_engine.hpp"

namespace ewcast {

// Compositions of budget into `parts` counts, first count descending:
// (2,0), (1,1), (0,2). Returns false after the last one.
bool next_composition(std::vector<int>& counts);
std::vector<Policy> enumerate_policies(int budget, const WindowSet& windows, std::uint64_t cap = 10'000'000);

// Exhaustive argmax of E{eta} over all policies of config.budget on the
// windows. aggregate is the search value; per_user_eta is recomputed
// directly from the winning policy.
PolicyEvaluation optimize(const SystemConfig& config, const WindowSet& windows, const MetricWeights& weights,
                          const SearchOptions& options = {});

// Points closer than this in every coordinate count as the same point.
inline constexpr double kParetoTolerance = 1e-12;

// Non-dominated points sorted by eta_1 descending (ties by later coordinates).
// Weak dominance within kParetoTolerance removes duplicates; among equal
// points the earlier one in the input survives.
template <class Point, class Eta>
std::vector<Point> pareto_filter(std::vector<Point> points, Eta eta);

std::vector<PolicyEvaluation> pareto_frontier(const SystemConfig& config, const WindowSet& windows,
                                              const MetricWeights& weights, const SearchOptions& options = {});

struct UncodedAllocation {
  std::vector<std::vector<int>> counts;  // [stream][layer]

  int total() const;
  friend bool operator==(const UncodedAllocation&, const UncodedAllocation&) = default;
};

struct UncodedEvaluation {
  UncodedAllocation allocation;
  std::vector<LayerDistribution> distributions;
  std::vector<double> per_user_eta;
  double aggregate = 0.0;
};

UncodedEvaluation uncoded_uep_evaluate(const SystemConfig& config, const UncodedAllocation& alloc,
                                       const MetricWeights& weights);
UncodedEvaluation uncoded_uep_optimize(const SystemConfig& config, const MetricWeights& weights,
                                       const SearchOptions& options = {});
std::vector<UncodedEvaluation> uncoded_pareto_frontier(const SystemConfig& config, const MetricWeights& weights,
                                                       const SearchOptions& options = {});
std::string format_allocation(const UncodedAllocation& alloc);  // "1.1:2;1.2:0;2.1:3" (stream.layer:count)

struct SweepRow {
  int budget = 0;
  double intra = 0.0;
  Policy intra_policy;
  bool exact = false;                 // inter optimum computed for this budget
  double inter = 0.0;                 // valid when exact
  Policy inter_policy;                // valid when exact
  std::optional<double> gain;         // percent; empty when undefined or not exact
  std::optional<double> gain_bound;   // percent upper bound for rows beyond the exact limit
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int exact_limit = -1;               // largest budget with an exact inter optimum
  std::optional<double> max_gain;     // over exact rows
  int max_gain_budget = 0;
  // True when no budget beyond the exact limit can beat max_gain: there the
  // gain is at most 100 (1 - intra) / intra because E{eta} never exceeds 1.
  bool certified = false;
};

// gain% of the inter optimum over the intra optimum for budgets lo..hi. The
// inter search covers the largest prefix of budgets whose cumulative policy
// count fits options.cap; the remaining rows only carry the bound above.
SweepResult improvement_sweep(const SystemConfig& config, const WindowSet& inter, const WindowSet& intra,
                              const MetricWeights& weights, int lo, int hi, const SearchOptions& options = {});
// Same, reusing prepared search spaces (e.g. across several erasure rows).
SweepResult improvement_sweep(const SearchSpace& inter, const SearchSpace& intra, const std::vector<double>& per,
                              const MetricWeights& weights, int lo, int hi, int threads = 1);
// Largest budget <= hi whose cumulative policy count on `windows` fits the cap, or -1.
int exact_sweep_limit(std::size_t windows, int hi, std::uint64_t cap);

// ---- implementation of the template ----

template <class Point, class Eta>
std::vector<Point> pareto_filter(std::vector<Point> points, Eta eta) {
  std::stable_sort(points.begin(), points.end(), [&](const Point& a, const Point& b) {
    const std::vector<double>& x = eta(a);
    const std::vector<double>& y = eta(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), std::greater<>());
  });
  std::vector<Point> kept;
  for (auto& p : points) {
    const std::vector<double>& e = eta(p);
    bool dominated = false;
    for (const auto& k : kept) {
      const std::vector<double>& f = eta(k);
      bool all = true;
      for (std::size_t i = 0; i < e.size() && all; ++i) all = f[i] >= e[i] - kParetoTolerance;
      if (all) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(p));
  }
  // A point kept first on a tie within tolerance can still lose clearly in another coordinate.
  std::vector<char> drop(kept.size(), 0);
  for (std::size_t a = 0; a < kept.size(); ++a) {
    const std::vector<double>& e = eta(kept[a]);
    bool dominated = false;
    for (std::size_t b = 0; b < kept.size() && !dominated; ++b) {
      if (a == b) continue;
      const std::vector<double>& f = eta(kept[b]);
      bool all = true, strict = false;
      for (std::size_t i = 0; i < e.size() && all; ++i) {
        all = f[i] >= e[i] - kParetoTolerance;
        strict = strict || f[i] > e[i] + kParetoTolerance;
      }
      dominated = all && strict;
    }
    drop[a] = dominated;
  }
  std::vector<Point> out;
  for (std::size_t a = 0; a < kept.size(); ++a)
    if (!drop[a]) out.push_back(std::move(kept[a]));
  return out;
}

}  // namespace ewcast
