// Independent reference implementations used as test oracles. Nothing here
// calls into the library's decoders, search engine or probability code; only
// the plain data types are shared.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "ewcast/stream_model.hpp"
#include "ewcast/window_counts.hpp"
#include "ewcast/window_lattice.hpp"

namespace ref {

using ewcast::Policy;
using ewcast::Reception;
using ewcast::SystemConfig;
using ewcast::WindowIndex;

// Every lattice point (including the zero point) in nested loop order, stream 1 outermost.
inline std::vector<std::vector<int>> lattice(const SystemConfig& c) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(c.streams.size(), 0);
  for (;;) {
    out.push_back(w);
    int i = static_cast<int>(w.size()) - 1;
    while (i >= 0 && w[i] == c.streams[i].layer_count()) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

inline bool below(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Dense transcription of the sweep: leading zero on each K, a working copy of
// R on the whole lattice and of the remaining packets per layer.
inline int decode(std::size_t user, const SystemConfig& c, const Reception& r, int* events = nullptr) {
  const std::size_t N = c.streams.size();
  const auto pts = lattice(c);
  std::map<std::vector<int>, int> R;
  for (const auto& p : pts) R[p] = 0;
  for (const auto& [w, n] : r) R[std::vector<int>(w.layers().begin(), w.layers().end())] = n;
  std::vector<std::vector<int>> K(N);
  for (std::size_t j = 0; j < N; ++j) {
    K[j].push_back(0);
    for (int k : c.streams[j].packets_per_layer) K[j].push_back(k);
  }
  int d = 0;
  int ev = 0;
  bool again = true;
  while (again) {
    again = false;
    for (const auto& w : pts) {
      if (R[w] <= 0) continue;
      int have = 0;
      for (const auto& v : pts)
        if (below(v, w)) have += R[v];
      int need = 0;
      for (std::size_t j = 0; j < N; ++j)
        for (int l = 0; l <= w[j]; ++l) need += K[j][l];
      if (have < need) continue;
      ++ev;
      d = std::max(d, w[user]);
      if (d == c.streams[user].layer_count()) {
        if (events) *events = ev;
        return d;
      }
      for (const auto& v : pts)
        if (below(v, w)) R[v] = 0;
      for (std::size_t j = 0; j < N; ++j)
        for (int l = 0; l <= w[j]; ++l) K[j][l] = 0;
      again = true;
      break;
    }
  }
  if (events) *events = ev;
  return d;
}

inline double choose(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

inline double pmf(int n, int r, double pe) {
  return choose(n, r) * std::pow(1.0 - pe, r) * std::pow(pe, n - r);
}

// Calls f(R, P(R|T)) for every R <= T.
inline void for_each_reception(const Policy& t, double pe, const std::function<void(const Reception&, double)>& f) {
  std::vector<std::pair<WindowIndex, int>> items(t.begin(), t.end());
  std::vector<int> r(items.size(), 0);
  for (;;) {
    Reception rec;
    double p = 1.0;
    for (std::size_t a = 0; a < items.size(); ++a) {
      if (r[a]) rec.set(items[a].first, r[a]);
      p *= pmf(items[a].second, r[a], pe);
    }
    f(rec, p);
    std::size_t a = 0;
    while (a < items.size() && r[a] == items[a].second) r[a++] = 0;
    if (a == items.size()) break;
    ++r[a];
  }
}

inline std::vector<double> distribution(std::size_t user, const SystemConfig& c, const Policy& t) {
  std::vector<double> probs(c.streams[user].layer_count() + 1, 0.0);
  for_each_reception(t, c.per[user], [&](const Reception& r, double p) { probs[decode(user, c, r)] += p; });
  return probs;
}

inline std::vector<double> weights(const ewcast::StreamSpec& s) {
  std::vector<double> a;
  int cum = 0;
  for (int k : s.packets_per_layer) {
    cum += k;
    a.push_back(static_cast<double>(cum) / s.total_packets());
  }
  return a;
}

inline double eta(std::size_t user, const SystemConfig& c, const Policy& t) {
  auto p = distribution(user, c, t);
  auto a = weights(c.streams[user]);
  double e = 0.0;
  for (std::size_t l = 1; l < p.size(); ++l) e += a[l - 1] * p[l];
  return e;
}

inline std::vector<double> etas(const SystemConfig& c, const Policy& t) {
  std::vector<double> e;
  for (std::size_t i = 0; i < c.streams.size(); ++i) e.push_back(eta(i, c, t));
  return e;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// All compositions of `budget` over the windows, any order.
inline std::vector<Policy> policies(int budget, const std::vector<WindowIndex>& ws) {
  std::vector<Policy> out;
  std::vector<int> cnt(ws.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t a, int left) {
    if (a + 1 == ws.size()) {
      cnt[a] = left;
      Policy p;
      for (std::size_t b = 0; b < ws.size(); ++b)
        if (cnt[b]) p.set(ws[b], cnt[b]);
      out.push_back(p);
      return;
    }
    for (int n = 0; n <= left; ++n) {
      cnt[a] = n;
      rec(a + 1, left - n);
    }
  };
  if (ws.empty()) return out;
  rec(0, budget);
  return out;
}

inline SystemConfig random_config(std::mt19937_64& rng, int max_streams, int max_layers, int max_k, int max_total) {
  for (;;) {
    SystemConfig c;
    const int n = std::uniform_int_distribution<int>(1, max_streams)(rng);
    int total = 0;
    for (int i = 0; i < n; ++i) {
      ewcast::StreamSpec s;
      const int L = std::uniform_int_distribution<int>(1, max_layers)(rng);
      for (int l = 0; l < L; ++l) {
        s.packets_per_layer.push_back(std::uniform_int_distribution<int>(1, max_k)(rng));
        total += s.packets_per_layer.back();
      }
      c.streams.push_back(s);
      c.per.push_back(std::uniform_real_distribution<double>(0.0, 0.6)(rng));
    }
    if (total <= max_total) return c;
  }
}

}  // namespace ref
