#include "ewcast/search_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "ewcast/analytics.hpp"
#include "ewcast/decoding.hpp"
#include "ewcast/kernels.hpp"

namespace ewcast {

SearchCapExceeded::SearchCapExceeded(std::uint64_t required, std::uint64_t cap)
    : std::runtime_error("search space of " +
                         (required == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 1.8e19")
                                                                                : std::to_string(required)) +
                         " policies exceeds the cap of " + std::to_string(cap)),
      required_(required),
      cap_(cap) {}

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

// C(n, k) with saturation
std::uint64_t choose_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact; split the division so nothing overflows early
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t f = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(r / g, f, &r)) return kSat;
  }
  return r;
}

}  // namespace

std::uint64_t policy_count(int budget, std::size_t windows) {
  if (budget < 0) return 0;
  if (windows == 0) return budget == 0 ? 1 : 0;
  return choose_sat(static_cast<std::uint64_t>(budget) + windows - 1, windows - 1);
}

std::uint64_t policy_count_up_to(int budget, std::size_t windows) {
  if (budget < 0) return 0;
  return choose_sat(static_cast<std::uint64_t>(budget) + windows, windows);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SearchSpace::SearchSpace(const SystemConfig& config, const WindowSet& windows, int max_budget)
    : config_(config), windows_(windows), budget_(max_budget) {
  if (windows_.empty()) throw ConfigError("windows", "window set is empty");
  if (max_budget < 0) throw ConfigError("budget", "transmission budget must be non-negative");
  const std::size_t M = windows_.size();
  const std::size_t N = config_.stream_count();

  std::vector<int> size(M);
  for (std::size_t a = 0; a < M; ++a) size[a] = window_size(windows_[a], config_);
  order_.resize(M);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  // Larger windows first keeps the early, most repeated contractions narrow
  // in x; the rule must not depend on the budget so that every search space
  // contracts shared windows in the same relative order.
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t u, std::size_t v) { return size[u] > size[v]; });

  stride_.assign(N, 1);
  for (std::size_t j = N; j-- > 0;) {
    stride_[j] = profiles_;
    profiles_ *= static_cast<std::size_t>(config_.streams[j].layer_count() + 1);
  }
  if (profiles_ > 65536) throw ConfigError("streams", "too many layer combinations for the search engine");
  wide_ = profiles_ > 256;

  auto& L = layout_;
  const int B = budget_;
  L.cap.resize(M);
  for (std::size_t a = 0; a < M; ++a) L.cap[a] = std::min(size[order_[a]], B);
  L.cnt.assign(M + 1, std::vector<std::uint64_t>(B + 1, 0));
  L.off.assign(M + 1, std::vector<std::uint64_t>(B + 2, 0));
  L.pre_begin.assign(M + 1, std::vector<std::uint64_t>(B + 2, 0));
  L.pre.assign(M + 1, {});
  L.cnt[M][0] = 1;
  for (std::size_t a = M; a-- > 0;) {
    for (int t = 0; t <= B; ++t) {
      L.pre_begin[a][t] = L.pre[a].size();
      std::uint64_t run = 0;
      for (int x = 0; x <= std::min(L.cap[a], t); ++x) {
        L.pre[a].push_back(run);
        run += L.cnt[a + 1][t - x];
      }
      L.cnt[a][t] = run;
    }
    L.pre_begin[a][B + 1] = L.pre[a].size();
  }
  for (std::size_t a = 0; a <= M; ++a) {
    for (int t = 0; t <= B; ++t) L.off[a][t + 1] = L.off[a][t] + L.cnt[a][t];
  }
  states_ = L.off[0][B + 1];

  std::vector<WindowIndex> canon(windows_.begin(), windows_.end());
  const SweepDecoder decoder(config_, canon);
  if (wide_) {
    codes16_.resize(states_);
  } else {
    codes8_.resize(states_);
  }
  std::vector<int> recv(M, 0), levels(N), scratch;
  std::size_t pos = 0;
  auto emit = [&] {
    decoder.decode(recv, levels, scratch);
    std::size_t code = 0;
    for (std::size_t j = 0; j < N; ++j) code += static_cast<std::size_t>(levels[j]) * stride_[j];
    if (wide_) {
      codes16_[pos++] = static_cast<std::uint16_t>(code);
    } else {
      codes8_[pos++] = static_cast<std::uint8_t>(code);
    }
  };
  // walk the table in storage order
  auto fill = [&](auto&& self, std::size_t a, int t) -> void {
    if (a + 1 == M) {
      recv[order_[a]] = t;
      emit();
      return;
    }
    for (int x = 0; x <= std::min(L.cap[a], t); ++x) {
      if (L.cnt[a + 1][t - x] == 0) continue;
      recv[order_[a]] = x;
      self(self, a + 1, t - x);
    }
    recv[order_[a]] = 0;
  };
  for (int t = 0; t <= B; ++t) {
    if (L.cnt[0][t]) fill(fill, 0, t);
  }
}

int SearchSpace::profile_level(std::size_t code, std::size_t stream) const {
  return static_cast<int>(code / stride_[stream] % static_cast<std::size_t>(config_.streams[stream].layer_count() + 1));
}

namespace {

// A channel is a group of users whose values share one set of tables: either
// all users with the same erasure rate (their contributions to E{eta} summed in
// user order) or a single user when per-user eta values are wanted.
struct Channels {
  std::vector<double> per;
  std::vector<std::vector<double>> lut;  // [channel][profile code]
};

Channels aggregate_channels(const SearchSpace& s, const std::vector<double>& per, const MetricWeights& w) {
  const std::size_t N = per.size();
  Channels ch;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < N; ++i) {
    auto it = std::find(ch.per.begin(), ch.per.end(), per[i]);
    if (it == ch.per.end()) {
      ch.per.push_back(per[i]);
      members.push_back({i});
    } else {
      members[static_cast<std::size_t>(it - ch.per.begin())].push_back(i);
    }
  }
  for (const auto& g : members) {
    std::vector<double> lut(s.profile_count(), 0.0);
    for (std::size_t c = 0; c < lut.size(); ++c) {
      for (std::size_t i : g) {
        int d = s.profile_level(c, i);
        if (d > 0) lut[c] += w.per_stream[i][d - 1] / static_cast<double>(N);
      }
    }
    ch.lut.push_back(std::move(lut));
  }
  return ch;
}

Channels user_channels(const SearchSpace& s, const std::vector<double>& per, const MetricWeights& w) {
  Channels ch;
  for (std::size_t i = 0; i < per.size(); ++i) {
    ch.per.push_back(per[i]);
    std::vector<double> lut(s.profile_count(), 0.0);
    for (std::size_t c = 0; c < lut.size(); ++c) {
      int d = s.profile_level(c, i);
      if (d > 0) lut[c] = w.per_stream[i][d - 1];
    }
    ch.lut.push_back(std::move(lut));
  }
  return ch;
}

// Weight of reduced count x when n packets are sent through a window whose
// counts are capped at c: the binomial pmf below the cap, the upper tail at it.
struct Weights {
  std::vector<std::vector<std::uint64_t>> row;  // [depth][n] -> offset
  std::vector<std::vector<double>> w;           // [depth] flattened

  Weights(const SearchSpace::Layout& L, double pe, int B) {
    const std::size_t M = L.cap.size();
    row.resize(M);
    w.resize(M);
    for (std::size_t a = 0; a < M; ++a) {
      const int c = L.cap[a];
      for (int n = 0; n <= B; ++n) {
        row[a].push_back(w[a].size());
        for (int x = 0; x <= std::min(n, c); ++x) {
          if (x < c) {
            w[a].push_back(reception_pmf(n, x, pe));
          } else {
            double tail = 0.0;
            for (int r = c; r <= n; ++r) tail += reception_pmf(n, r, pe);
            w[a].push_back(tail);
          }
        }
      }
    }
  }
  const double* at(std::size_t a, int n) const { return w[a].data() + row[a][n]; }
};

constexpr std::size_t kShortBlock = 32;

template <class Code, class Sink>
class Walker {
 public:
  Walker(const SearchSpace& s, const Code* codes, const Channels& ch, const std::vector<Weights>& bw, int target,
         bool exact, Sink& sink)
      : s_(s), L_(s.layout()), codes_(codes), ch_(ch), bw_(bw), target_(target), exact_(exact), sink_(sink),
        k_(kernels::active()), M_(L_.cap.size()), G_(ch.per.size()), canon_(M_, 0), vals_(G_),
        ptrs_(static_cast<std::size_t>(target) + 1), first_(static_cast<std::size_t>(target) + 1) {
    h_.resize(G_);
    for (auto& hg : h_) {
      hg.resize(M_);
      for (std::size_t a = 1; a < M_; ++a) hg[a].resize(L_.off[a][target_ + 1]);
    }
  }

  // Everything below a fixed count for the first engine window.
  void run_first(int n0) {
    std::fill(canon_.begin(), canon_.end(), 0);
    if (M_ == 1) {
      leaf(0, target_, n0);
      return;
    }
    canon_[s_.order()[0]] = n0;
    contract(0, n0, target_ - n0);
    descend(1, target_ - n0);
  }

 private:
  void descend(std::size_t a, int rem) {
    if (a + 1 == M_) {
      if (exact_) {
        leaf(a, rem, rem);
      } else {
        for (int n = 0; n <= rem; ++n) leaf(a, rem, n);
      }
      canon_[s_.order()[a]] = 0;
      return;
    }
    for (int n = 0; n <= rem; ++n) {
      canon_[s_.order()[a]] = n;
      contract(a, n, rem - n);
      descend(a + 1, rem - n);
    }
    canon_[s_.order()[a]] = 0;
  }

  // h[a+1](y) = sum_x w(n, x) h[a](x, y) over grades |y| <= rem.
  void contract(std::size_t a, int n, int rem) {
    const int xmax = std::min(n, L_.cap[a]);
    const auto& cnt1 = L_.cnt[a + 1];
    const auto& off1 = L_.off[a + 1];
    for (std::size_t g = 0; g < G_; ++g) {
      const double* w = bw_[g].at(a, n);
      double* out = h_[g][a + 1].data();
      for (int tau = 0; tau <= rem; ++tau) {
        const std::size_t len = cnt1[tau];
        if (len == 0) continue;
        double* y = out + off1[tau];
        auto in_at = [&](int x) {
          const int t = x + tau;
          return L_.off[a][t] + L_.pre[a][L_.pre_begin[a][t] + x];
        };
        if (a > 0 && len < kShortBlock) {
          for (int x = 0; x <= xmax; ++x) ptrs_[x] = h_[g][a].data() + in_at(x);
          k_.combine(w, ptrs_.data(), static_cast<std::size_t>(xmax) + 1, y, len);
          continue;
        }
        for (int x = 0; x <= xmax; ++x) {
          const std::uint64_t in = in_at(x);
          if (a == 0) {
            gather(x == 0, w[x], ch_.lut[g].data(), codes_ + in, y, len);
          } else if (x == 0) {
            k_.scale(w[x], h_[g][a].data() + in, y, len);
          } else {
            k_.axpy(w[x], h_[g][a].data() + in, y, len);
          }
        }
      }
    }
  }

  void gather(bool first, double w, const double* lut, const Code* code, double* y, std::size_t len) {
    if constexpr (sizeof(Code) == 1) {
      (first ? k_.gather_scale_u8 : k_.gather_axpy_u8)(w, lut, code, y, len);
    } else {
      (first ? k_.gather_scale_u16 : k_.gather_axpy_u16)(w, lut, code, y, len);
    }
  }

  // Last window: counts sit at positions 0..cap directly.
  void leaf(std::size_t a, int rem, int n) {
    const int xmax = std::min(n, L_.cap[a]);
    for (std::size_t g = 0; g < G_; ++g) {
      const double* w = bw_[g].at(a, n);
      if (a == 0) {
        for (int x = 0; x <= xmax; ++x) first_[x] = ch_.lut[g][codes_[x]];
        vals_[g] = k_.fold(w, first_.data(), static_cast<std::size_t>(xmax) + 1);
      } else {
        vals_[g] = k_.fold(w, h_[g][a].data(), static_cast<std::size_t>(xmax) + 1);
      }
    }
    canon_[s_.order()[a]] = n;
    sink_.visit(target_ - rem + n, canon_, vals_);
  }

  const SearchSpace& s_;
  const SearchSpace::Layout& L_;
  const Code* codes_;
  const Channels& ch_;
  const std::vector<Weights>& bw_;
  const int target_;
  const bool exact_;
  Sink& sink_;
  const kernels::Table& k_;
  const std::size_t M_, G_;
  std::vector<int> canon_;
  std::vector<double> vals_;
  std::vector<const double*> ptrs_;
  std::vector<double> first_;
  std::vector<std::vector<std::vector<double>>> h_;  // [channel][depth][position]
};

bool lex_less_dense(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Policy to_policy(const SearchSpace& s, const std::vector<int>& canon) {
  Policy p;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (canon[i]) p.set(s.windows()[i], canon[i]);
  }
  return p;
}

struct BestSink {
  struct Slot {
    bool set = false;
    double value = 0.0;
    std::vector<int> counts;
  };
  std::vector<Slot> best;

  explicit BestSink(int upto) : best(upto + 1) {}

  void offer(int total, double v, const std::vector<int>& canon) {
    Slot& s = best[total];
    if (!s.set || v > s.value || (v == s.value && lex_less_dense(canon, s.counts))) {
      s.set = true;
      s.value = v;
      s.counts = canon;
    }
  }
  void visit(int total, const std::vector<int>& canon, const std::vector<double>& vals) {
    double e = 0.0;
    for (double v : vals) e += v;
    offer(total, e, canon);
  }
  void merge(const BestSink& o) {
    for (std::size_t t = 0; t < best.size(); ++t) {
      if (o.best[t].set) offer(static_cast<int>(t), o.best[t].value, o.best[t].counts);
    }
  }
};

struct FrontierSink {
  struct Point {
    std::vector<double> eta;
    std::vector<int> counts;
  };
  std::vector<Point> pts;

  static bool weakly_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return false;
    }
    return true;
  }

  void offer(const std::vector<double>& eta, const std::vector<int>& canon) {
    for (auto& p : pts) {
      if (weakly_dominates(p.eta, eta)) {
        if (p.eta == eta && lex_less_dense(canon, p.counts)) p.counts = canon;
        return;
      }
    }
    std::erase_if(pts, [&](const Point& p) { return weakly_dominates(eta, p.eta); });
    pts.push_back({eta, canon});
  }
  void visit(int, const std::vector<int>& canon, const std::vector<double>& vals) { offer(vals, canon); }
  void merge(const FrontierSink& o) {
    for (const auto& p : o.pts) offer(p.eta, p.counts);
  }
};

struct CollectSink {
  std::vector<FrontierSink::Point> pts;
  void visit(int, const std::vector<int>& canon, const std::vector<double>& vals) { pts.push_back({vals, canon}); }
  void merge(const CollectSink& o) { pts.insert(pts.end(), o.pts.begin(), o.pts.end()); }
};

template <class Sink, class MakeSink>
Sink run_search(const SearchSpace& s, const Channels& ch, int target, bool exact, int threads, MakeSink make) {
  if (target < 0 || target > s.max_budget()) throw std::invalid_argument("budget outside the search space");
  std::vector<Weights> bw;
  for (double pe : ch.per) bw.emplace_back(s.layout(), pe, target);
  const std::size_t M = s.windows().size();
  // with a single window the first count is also the last one
  std::vector<int> firsts;
  for (int n = (M == 1 && exact) ? target : 0; n <= target; ++n) firsts.push_back(n);
  const int T = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(firsts.size())));
  std::atomic<std::size_t> next{0};
  std::vector<Sink> sinks;
  for (int i = 0; i < T; ++i) sinks.push_back(make());

  auto work = [&](Sink& sink) {
    auto body = [&](const auto* codes) {
      using Code = std::remove_cv_t<std::remove_pointer_t<decltype(codes)>>;
      Walker<Code, Sink> walker(s, codes, ch, bw, target, exact, sink);
      for (std::size_t k; (k = next.fetch_add(1)) < firsts.size();) walker.run_first(firsts[k]);
    };
    if (s.wide_codes()) {
      body(s.codes16().data());
    } else {
      body(s.codes8().data());
    }
  };
  if (T == 1) {
    work(sinks[0]);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < T; ++i) pool.emplace_back(work, std::ref(sinks[i]));
    for (auto& t : pool) t.join();
  }
  for (int i = 1; i < T; ++i) sinks[0].merge(sinks[i]);
  return std::move(sinks[0]);
}

void check_inputs(const SearchSpace& s, const std::vector<double>& per, const MetricWeights& w) {
  SystemConfig c = s.config();
  c.per = per;
  validate_config(c);
  validate_weights(w, c);
}

}  // namespace

std::vector<BudgetOptimum> best_per_budget(const SearchSpace& space, const std::vector<double>& per,
                                           const MetricWeights& weights, int upto, int threads) {
  check_inputs(space, per, weights);
  const Channels ch = aggregate_channels(space, per, weights);
  auto sink = run_search<BestSink>(space, ch, upto, false, threads, [&] { return BestSink(upto); });
  std::vector<BudgetOptimum> out;
  for (int t = 0; t <= upto; ++t) {
    const auto& slot = sink.best[t];
    out.push_back({t, slot.value, to_policy(space, slot.counts)});
  }
  return out;
}

BudgetOptimum best_at_budget(const SearchSpace& space, const std::vector<double>& per, const MetricWeights& weights,
                             int budget, int threads) {
  check_inputs(space, per, weights);
  const Channels ch = aggregate_channels(space, per, weights);
  auto sink = run_search<BestSink>(space, ch, budget, true, threads, [&] { return BestSink(budget); });
  const auto& slot = sink.best[budget];
  return {budget, slot.value, to_policy(space, slot.counts)};
}

std::vector<FrontierPoint> exact_frontier(const SearchSpace& space, const std::vector<double>& per,
                                          const MetricWeights& weights, int budget, int threads) {
  check_inputs(space, per, weights);
  const Channels ch = user_channels(space, per, weights);
  auto sink = run_search<FrontierSink>(space, ch, budget, true, threads, [] { return FrontierSink{}; });
  std::vector<FrontierPoint> out;
  for (const auto& p : sink.pts) out.push_back({p.eta, to_policy(space, p.counts)});
  return out;
}

std::vector<FrontierPoint> all_policy_values(const SearchSpace& space, const std::vector<double>& per,
                                             const MetricWeights& weights, int budget) {
  check_inputs(space, per, weights);
  const Channels ch = user_channels(space, per, weights);
  auto sink = run_search<CollectSink>(space, ch, budget, true, 1, [] { return CollectSink{}; });
  std::vector<FrontierPoint> out;
  for (const auto& p : sink.pts) out.push_back({p.eta, to_policy(space, p.counts)});
  return out;
}

}  // namespace ewcast
