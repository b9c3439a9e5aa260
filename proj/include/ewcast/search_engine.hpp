#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ewcast/window_counts.hpp"

namespace ewcast {

struct SearchOptions {
  std::uint64_t cap = 10'000'000;  // largest number of policies a search may visit
  int threads = 1;                 // 0 picks the hardware concurrency
};

class SearchCapExceeded : public std::runtime_error {
 public:
  SearchCapExceeded(std::uint64_t required, std::uint64_t cap);
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_, cap_;
};

// Compositions of `budget` into `windows` parts; saturates at UINT64_MAX.
std::uint64_t policy_count(int budget, std::size_t windows);
// Policies with any total in 0..budget.
std::uint64_t policy_count_up_to(int budget, std::size_t windows);

int resolve_threads(int requested);

// Decode outcome of every reception that can matter for policies of total at
// most max_budget. Receptions are capped at the window size, which leaves the
// sweep decoder unchanged: a window is checked before every window that
// contains it and decodes at its first check once it holds that many packets.
//
// The table is graded by total count and, within a grade, ordered by the
// count of the first engine window, recursively. Fixing the first count then
// leaves a contiguous run per grade, so summing a window out of the table is
// a handful of long axpy calls.
class SearchSpace {
 public:
  SearchSpace(const SystemConfig& config, const WindowSet& windows, int max_budget);

  const SystemConfig& config() const noexcept { return config_; }
  const WindowSet& windows() const noexcept { return windows_; }
  int max_budget() const noexcept { return budget_; }
  std::size_t state_count() const noexcept { return states_; }
  std::size_t profile_count() const noexcept { return profiles_; }
  // Engine position -> canonical window index.
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  // Highest decodable layer of stream j encoded in profile code c.
  int profile_level(std::size_t code, std::size_t stream) const;

  struct Layout {
    std::vector<int> cap;                       // per depth
    std::vector<std::vector<std::uint64_t>> cnt;  // [depth][total], depth 0..M
    std::vector<std::vector<std::uint64_t>> off;  // [depth][total], prefix sums of cnt
    std::vector<std::vector<std::uint64_t>> pre_begin;  // [depth][total] -> index into pre
    std::vector<std::vector<std::uint64_t>> pre;        // [depth][...] start of x within a grade
  };
  const Layout& layout() const noexcept { return layout_; }
  const std::vector<std::uint8_t>& codes8() const noexcept { return codes8_; }
  const std::vector<std::uint16_t>& codes16() const noexcept { return codes16_; }
  bool wide_codes() const noexcept { return wide_; }

 private:
  SystemConfig config_;
  WindowSet windows_;
  int budget_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> stride_;
  std::size_t profiles_ = 1;
  std::size_t states_ = 0;
  bool wide_ = false;
  Layout layout_;
  std::vector<std::uint8_t> codes8_;
  std::vector<std::uint16_t> codes16_;
};

// Best policy found for one total budget. value is the engine's E{eta};
// the same policy always gets the same value whichever window set holds it.
struct BudgetOptimum {
  int budget = 0;
  double value = 0.0;
  Policy policy;
};

// One exhaustive pass over every policy with total <= upto; entry t is the
// optimum at budget t. Ties on the exact value go to the lexicographically
// smallest policy in canonical window order.
std::vector<BudgetOptimum> best_per_budget(const SearchSpace& space, const std::vector<double>& per,
                                           const MetricWeights& weights, int upto, int threads = 1);
BudgetOptimum best_at_budget(const SearchSpace& space, const std::vector<double>& per,
                             const MetricWeights& weights, int budget, int threads = 1);

struct FrontierPoint {
  std::vector<double> eta;
  Policy policy;
};

// Exact (no tolerance) non-dominated set of per-user eta vectors over all
// policies of the given budget; equal vectors keep the smallest policy.
std::vector<FrontierPoint> exact_frontier(const SearchSpace& space, const std::vector<double>& per,
                                          const MetricWeights& weights, int budget, int threads = 1);

// Per-user eta of every policy with the given total, as computed by the
// search. Meant for cross-checking against direct evaluation.
std::vector<FrontierPoint> all_policy_values(const SearchSpace& space, const std::vector<double>& per,
                                             const MetricWeights& weights, int budget);

}  // namespace ewcast
