#include "ewcast/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "ewcast/prime_field.hpp"
#include "ewcast/random.hpp"
#include "ewcast/search_engine.hpp"

namespace ewcast {
namespace {

struct Schedule {
  std::vector<std::vector<int>> columns;  // per coded packet
  int width = 0;
};

Schedule make_schedule(const SystemConfig& config, const Policy& policy) {
  const PacketLayout layout(config);
  Schedule s;
  s.width = layout.total();
  for (const auto& [w, n] : policy) {
    auto cols = layout.columns(w);
    for (int k = 0; k < n; ++k) s.columns.push_back(cols);
  }
  return s;
}

void run_trials(const SystemConfig& config, const Schedule& sched, const PrimeField& field, std::uint64_t seed,
                std::uint64_t begin, std::uint64_t end, std::vector<std::vector<std::uint64_t>>& counts) {
  const std::size_t N = config.stream_count();
  const PacketLayout layout(config);
  const std::size_t P = sched.columns.size();
  std::vector<std::uint32_t> coded(P * sched.width);
  std::uniform_int_distribution<std::uint32_t> coef(1, field.order() - 1);
  RowSpace space(field, static_cast<std::size_t>(sched.width));

  for (std::uint64_t t = begin; t < end; ++t) {
    std::mt19937_64 rng(split_seed(seed, t, 0));
    std::fill(coded.begin(), coded.end(), 0);
    for (std::size_t p = 0; p < P; ++p) {
      for (int c : sched.columns[p]) coded[p * sched.width + c] = coef(rng);
    }
    for (std::size_t i = 0; i < N; ++i) {
      std::mt19937_64 loss(split_seed(seed, t, i + 1));
      std::bernoulli_distribution erased(config.per[i]);
      space.clear();
      for (std::size_t p = 0; p < P; ++p) {
        if (!erased(loss)) space.insert({coded.data() + p * sched.width, static_cast<std::size_t>(sched.width)});
      }
      const auto& k = config.streams[i].packets_per_layer;
      int col = layout.stream_offset(i);
      int d = 0;
      for (std::size_t l = 0; l < k.size(); ++l) {
        bool ok = true;
        for (int c = 0; c < k[l] && ok; ++c) ok = space.contains_unit(static_cast<std::size_t>(col + c));
        if (!ok) break;
        col += k[l];
        d = static_cast<int>(l) + 1;
      }
      ++counts[i][d];
    }
  }
}

}  // namespace

SimulationEstimate simulate(const SystemConfig& config, const Policy& policy, const MetricWeights& weights,
                            const SimulationOptions& options) {
  validate_config(config);
  validate_weights(weights, config);
  check_policy(policy, config);
  if (options.trials < 1) throw ConfigError("trials", "at least one trial is required");
  if (!is_prime(options.field_order)) throw ConfigError("field_order", "field order must be prime");
  const PrimeField field(options.field_order);
  const Schedule sched = make_schedule(config, policy);
  const std::size_t N = config.stream_count();

  auto fresh = [&] {
    std::vector<std::vector<std::uint64_t>> c(N);
    for (std::size_t i = 0; i < N; ++i) c[i].assign(config.streams[i].layer_count() + 1, 0);
    return c;
  };
  const int T = static_cast<int>(std::min<std::uint64_t>(resolve_threads(options.threads), options.trials));
  std::vector<std::vector<std::vector<std::uint64_t>>> parts(T, fresh());
  if (T == 1) {
    run_trials(config, sched, field, options.seed, 0, options.trials, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < T; ++k) {
      std::uint64_t b = options.trials * k / T, e = options.trials * (k + 1) / T;
      pool.emplace_back([&, b, e, k] { run_trials(config, sched, field, options.seed, b, e, parts[k]); });
    }
    for (auto& th : pool) th.join();
  }

  SimulationEstimate est;
  est.layer_counts = fresh();
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t l = 0; l < part[i].size(); ++l) est.layer_counts[i][l] += part[i][l];
    }
  }
  est.trials = options.trials;
  est.seed = options.seed;
  est.field_order = options.field_order;
  const double n = static_cast<double>(options.trials);
  for (std::size_t i = 0; i < N; ++i) {
    LayerDistribution d;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t l = 0; l < est.layer_counts[i].size(); ++l) {
      const double c = static_cast<double>(est.layer_counts[i][l]);
      d.probs.push_back(c / n);
      if (l > 0) {
        const double a = weights.per_stream[i][l - 1];
        s1 += a * c;
        s2 += a * a * c;
      }
    }
    const double mean = s1 / n;
    est.eta.push_back(mean);
    if (options.trials == 1) {
      est.stderr_eta.push_back(std::numeric_limits<double>::infinity());
    } else {
      const double var = std::max(0.0, (s2 - s1 * mean) / (n - 1.0));
      est.stderr_eta.push_back(std::sqrt(var / n));
    }
    est.distributions.push_back(std::move(d));
  }
  return est;
}

}  // namespace ewcast
