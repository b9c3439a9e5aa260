#include <gtest/gtest.h>

#include <random>

#include "ewcast/analytics.hpp"
#include "ewcast/optimizer.hpp"
#include "reference.hpp"

using namespace ewcast;

namespace {

// Round-robin copies per packet, all packets of layers 1..l needed.
std::vector<double> uncoded_eta(const SystemConfig& c, const UncodedAllocation& a) {
  std::vector<double> out;
  for (std::size_t i = 0; i < c.stream_count(); ++i) {
    const auto& k = c.streams[i].packets_per_layer;
    auto w = ref::weights(c.streams[i]);
    std::vector<double> upto(k.size() + 1, 1.0);
    for (std::size_t l = 0; l < k.size(); ++l) {
      double p = 1.0;
      for (int j = 0; j < k[l]; ++j) {
        const int m = a.counts[i][l] / k[l] + (j < a.counts[i][l] % k[l] ? 1 : 0);
        p *= 1.0 - std::pow(c.per[i], m);
      }
      upto[l + 1] = upto[l] * p;
    }
    double e = 0.0;
    for (std::size_t l = 1; l <= k.size(); ++l) {
      const double exactly = upto[l] - (l < k.size() ? upto[l + 1] : 0.0);
      e += w[l - 1] * exactly;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<std::vector<double>> brute_front(const std::vector<std::vector<double>>& pts) {
  std::vector<std::vector<double>> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      bool ge = true, gt = false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        ge = ge && q[i] >= p[i] - 1e-12;
        gt = gt || q[i] > p[i] + 1e-12;
      }
      dominated = dominated || (ge && gt);
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Optimizer, CompositionOrder) {
  std::vector<int> c{2, 0};
  std::vector<std::vector<int>> seen{c};
  while (next_composition(c)) seen.push_back(c);
  EXPECT_EQ(seen, (std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}}));
  std::vector<int> z{0, 0, 0};
  EXPECT_FALSE(next_composition(z));
}

TEST(Optimizer, EnumerateCounts) {
  auto c = validate_config({{3, 3}, {3, 3}}, {0.2, 0.2}, 0);
  auto ws = enumerate_all_windows(c);
  EXPECT_EQ(enumerate_policies(17, ws).size(), 346104u);
  auto zero = enumerate_policies(0, ws);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero[0].empty());
  EXPECT_THROW(enumerate_policies(17, ws, 1000), SearchCapExceeded);
  for (int b = 0; b <= 8; ++b) {
    auto ps = enumerate_policies(b, ws);
    EXPECT_EQ(ps.size(), static_cast<std::size_t>(ref::choose(b + 7, 7)));
    for (std::size_t i = 1; i < ps.size(); ++i) ASSERT_TRUE(lex_less(ps[i], ps[i - 1]));
    for (const auto& p : ps) ASSERT_EQ(p.total(), b);
  }
}

TEST(Optimizer, Examples) {
  auto c = validate_config({{1}}, {0.5}, 2);
  auto ev = optimize(c, enumerate_all_windows(c), throughput_weights(c));
  EXPECT_EQ(ev.aggregate, 0.75);
  EXPECT_EQ(format_counts(ev.policy), "1:2");

  auto l = validate_config({{3, 3}, {6}}, {0.0, 0.0}, 12);
  auto el = optimize(l, enumerate_all_windows(l), throughput_weights(l));
  EXPECT_EQ(el.aggregate, 1.0);
  EXPECT_EQ(el.policy.total(), 12);
  EXPECT_EQ(evaluate_policy(l, Policy{{WindowIndex{2, 1}, 12}}, throughput_weights(l)).aggregate, 1.0);

  auto z = with_budget(l, 0);
  EXPECT_EQ(optimize(z, enumerate_all_windows(z), throughput_weights(z)).aggregate, 0.0);

  SearchOptions tiny;
  tiny.cap = 10;
  EXPECT_THROW(optimize(with_budget(l, 5), enumerate_all_windows(l), throughput_weights(l), tiny), SearchCapExceeded);
}

TEST(Optimizer, MatchesBruteForceArgmax) {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 30; ++it) {
    auto c = ref::random_config(rng, 3, 2, 2, 7);
    c.budget = static_cast<int>(rng() % 6);
    auto ws = enumerate_all_windows(c);
    auto ev = optimize(c, ws, throughput_weights(c));
    double top = -1.0;
    for (const auto& p : ref::policies(c.budget, {ws.begin(), ws.end()})) top = std::max(top, ref::mean(ref::etas(c, p)));
    EXPECT_NEAR(ev.aggregate, top, 1e-12);
    EXPECT_NEAR(ev.aggregate, ref::mean(ev.per_user_eta), 1e-12);
  }
}

TEST(Optimizer, SupersetAndBudgetMonotone) {
  std::mt19937_64 rng(52);
  for (int it = 0; it < 20; ++it) {
    auto c = ref::random_config(rng, 3, 2, 3, 9);
    auto full = enumerate_all_windows(c), intra = intra_windows(c);
    auto w = throughput_weights(c);
    double prev = 0.0;
    for (int b = 0; b <= 6; ++b) {
      auto cb = with_budget(c, b);
      auto fi = optimize(cb, full, w), ii = optimize(cb, intra, w);
      EXPECT_GE(fi.aggregate, ii.aggregate);
      EXPECT_GE(fi.aggregate, prev);
      prev = fi.aggregate;
    }
  }
}

TEST(Optimizer, StreamSwapSymmetry) {
  auto a = validate_config({{1, 2}, {2}}, {0.2, 0.35}, 6);
  auto b = validate_config({{2}, {1, 2}}, {0.35, 0.2}, 6);
  auto ea = optimize(a, enumerate_all_windows(a), throughput_weights(a));
  auto eb = optimize(b, enumerate_all_windows(b), throughput_weights(b));
  EXPECT_NEAR(ea.aggregate, eb.aggregate, 1e-12);
  auto fa = pareto_frontier(a, enumerate_all_windows(a), throughput_weights(a));
  auto fb = pareto_frontier(b, enumerate_all_windows(b), throughput_weights(b));
  ASSERT_EQ(fa.size(), fb.size());
  std::vector<std::vector<double>> pa, pb;
  for (auto& p : fa) pa.push_back(p.per_user_eta);
  for (auto& p : fb) pb.push_back({p.per_user_eta[1], p.per_user_eta[0]});
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(pa[i][j], pb[i][j], 1e-12);
}

TEST(Optimizer, ParetoFilterExamples) {
  using P = std::vector<double>;
  auto id = [](const P& p) -> const P& { return p; };
  EXPECT_EQ(pareto_filter(std::vector<P>{{0.9, 0.1}, {0.1, 0.9}}, id).size(), 2u);
  auto one = pareto_filter(std::vector<P>{{0.5, 0.5}, {0.6, 0.6}}, id);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (P{0.6, 0.6}));
  EXPECT_EQ(pareto_filter(std::vector<P>{{0.3, 0.3}}, id).size(), 1u);
  EXPECT_EQ(pareto_filter(std::vector<P>{{0.3, 0.3}, {0.3, 0.3 + 1e-14}}, id).size(), 1u);
}

TEST(Optimizer, ParetoMatchesBruteForce) {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 15; ++it) {
    auto c = ref::random_config(rng, 2, 2, 2, 7);
    if (c.stream_count() < 2) continue;
    c.budget = 1 + static_cast<int>(rng() % 5);
    auto ws = enumerate_all_windows(c);
    auto front = pareto_frontier(c, ws, throughput_weights(c));
    std::vector<std::vector<double>> pts;
    for (const auto& p : ref::policies(c.budget, {ws.begin(), ws.end()})) pts.push_back(ref::etas(c, p));
    auto want = brute_front(pts);
    // each brute-force frontier vector is matched by a reported point
    for (const auto& v : want) {
      bool found = false;
      for (const auto& f : front) {
        bool eq = true;
        for (std::size_t i = 0; i < v.size(); ++i) eq = eq && std::abs(f.per_user_eta[i] - v[i]) <= 1e-11;
        found = found || eq;
      }
      EXPECT_TRUE(found);
    }
    for (std::size_t i = 0; i < front.size(); ++i) {
      auto re = ref::etas(c, front[i].policy);
      for (std::size_t j = 0; j < re.size(); ++j) EXPECT_NEAR(front[i].per_user_eta[j], re[j], 1e-12);
      if (i > 0) EXPECT_GE(front[i - 1].per_user_eta[0], front[i].per_user_eta[0]);
    }
  }
}

TEST(Uncoded, Examples) {
  auto c = validate_config({{1}}, {0.5}, 2);
  auto w = throughput_weights(c);
  auto e = uncoded_uep_evaluate(c, UncodedAllocation{{{2}}}, w);
  EXPECT_EQ(e.distributions[0].probs[1], 0.75);
  auto o = uncoded_uep_optimize(c, w);
  EXPECT_EQ(o.allocation, (UncodedAllocation{{{2}}}));

  auto c2 = validate_config({{1, 1}}, {0.5}, 2);
  auto w2 = throughput_weights(c2);
  EXPECT_EQ(uncoded_uep_evaluate(c2, UncodedAllocation{{{1, 1}}}, w2).aggregate, 0.375);
  EXPECT_EQ(uncoded_uep_evaluate(c2, UncodedAllocation{{{2, 0}}}, w2).aggregate, 0.375);
  EXPECT_EQ(uncoded_uep_evaluate(c2, UncodedAllocation{{{0, 2}}}, w2).aggregate, 0.0);
  auto best = uncoded_uep_optimize(c2, w2);
  EXPECT_EQ(best.allocation, (UncodedAllocation{{{1, 1}}}));
  EXPECT_EQ(best.aggregate, 0.375);
  EXPECT_EQ(format_allocation(best.allocation), "1.1:1;1.2:1");

  auto l = validate_config({{3, 3}, {6}}, {0.0, 0.0}, 12);
  EXPECT_EQ(uncoded_uep_evaluate(l, UncodedAllocation{{{3, 3}, {6}}}, throughput_weights(l)).aggregate, 1.0);
  EXPECT_EQ(uncoded_uep_evaluate(l, UncodedAllocation{{{2, 4}, {6}}}, throughput_weights(l)).per_user_eta[0], 0.0);
  EXPECT_EQ(uncoded_uep_optimize(with_budget(l, 0), throughput_weights(l)).aggregate, 0.0);
  EXPECT_THROW(uncoded_uep_evaluate(l, UncodedAllocation{{{3, 3}, {5}}}, throughput_weights(l)), ConfigError);
}

TEST(Uncoded, MatchesPacketProduct) {
  std::mt19937_64 rng(54);
  for (int it = 0; it < 200; ++it) {
    auto c = ref::random_config(rng, 3, 3, 3, 12);
    UncodedAllocation a;
    int total = 0;
    for (const auto& s : c.streams) {
      std::vector<int> row;
      for (std::size_t l = 0; l < s.packets_per_layer.size(); ++l) row.push_back(static_cast<int>(rng() % 7));
      for (int v : row) total += v;
      a.counts.push_back(row);
    }
    c.budget = total;
    auto e = uncoded_uep_evaluate(c, a, throughput_weights(c));
    auto want = uncoded_eta(c, a);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(e.per_user_eta[i], want[i], 1e-12);
    for (const auto& d : e.distributions) EXPECT_NEAR(d.sum(), 1.0, 1e-12);
  }
}

TEST(Uncoded, OptimizeAndFrontierMatchBruteForce) {
  auto c = validate_config({{1, 2}, {2}}, {0.2, 0.4}, 6);
  auto w = throughput_weights(c);
  auto best = uncoded_uep_optimize(c, w);
  double top = -1.0;
  std::vector<std::vector<double>> pts;
  for (int x = 0; x <= 6; ++x)
    for (int y = 0; x + y <= 6; ++y) {
      UncodedAllocation a{{{x, y}, {6 - x - y}}};
      auto e = uncoded_eta(c, a);
      pts.push_back(e);
      top = std::max(top, ref::mean(e));
    }
  EXPECT_NEAR(best.aggregate, top, 1e-12);
  auto front = uncoded_pareto_frontier(c, w);
  EXPECT_EQ(front.size(), brute_front(pts).size());
}

TEST(Sweep, GainAndCertification) {
  auto c = validate_config({{3, 3}, {6}}, {0.2, 0.2}, 0);
  auto w = throughput_weights(c);
  auto full = enumerate_all_windows(c), intra = intra_windows(c);
  SearchOptions big;
  big.cap = 1'000'000'000;
  auto r = improvement_sweep(c, full, intra, w, 0, 20, big);
  ASSERT_EQ(r.rows.size(), 21u);
  EXPECT_EQ(r.exact_limit, 20);
  EXPECT_TRUE(r.certified);
  EXPECT_FALSE(r.rows[0].gain.has_value());
  double top = 0.0;
  for (const auto& row : r.rows) {
    ASSERT_TRUE(row.exact);
    EXPECT_GE(row.inter, row.intra);
    if (row.gain) {
      EXPECT_NEAR(*row.gain, 100.0 * (row.inter - row.intra) / row.intra, 1e-9);
      top = std::max(top, *row.gain);
    }
  }
  ASSERT_TRUE(r.max_gain.has_value());
  EXPECT_EQ(*r.max_gain, top);

  SearchOptions small;
  small.cap = policy_count_up_to(12, full.size());
  auto s = improvement_sweep(c, full, intra, w, 0, 20, small);
  EXPECT_EQ(s.exact_limit, 12);
  for (const auto& row : s.rows) {
    if (row.budget <= 12) {
      EXPECT_TRUE(row.exact);
      EXPECT_EQ(row.inter, r.rows[row.budget].inter);
    } else {
      EXPECT_FALSE(row.exact);
      ASSERT_TRUE(row.gain_bound.has_value());
      EXPECT_NEAR(*row.gain_bound, 100.0 * (1.0 - row.intra) / row.intra, 1e-9);
    }
  }
  EXPECT_EQ(exact_sweep_limit(full.size(), 20, small.cap), 12);
}

// At 3 x 15 transmissions both optima sit close to 1. The inter one is at
// least the value of sending everything on the full window; the intra one
// still misses by about 1.2e-5, so the gain there is about 0.001%.
TEST(Sweep, SaturatesAtThreeTimesSourcePackets) {
  auto c = validate_config({{2, 3}, {3, 3}, {4}}, {0.2, 0.2, 0.2}, 45);
  auto w = throughput_weights(c);
  auto intra = optimize(c, intra_windows(c), w).aggregate;
  auto full = evaluate_policy(c, Policy{{WindowIndex{2, 2, 1}, 45}}, w).aggregate;
  EXPECT_GE(full, 1.0 - 1e-6);
  EXPECT_GE(intra, 1.0 - 1e-4);
  EXPECT_LT(100.0 * (1.0 - intra) / intra, 0.01);
}
