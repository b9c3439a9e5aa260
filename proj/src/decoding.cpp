#include "ewcast/decoding.hpp"

#include <algorithm>
#include <random>

#include "ewcast/prime_field.hpp"
#include "ewcast/random.hpp"

namespace ewcast {

SweepDecoder::SweepDecoder(const SystemConfig& config, std::vector<WindowIndex> windows)
    : streams_(config.stream_count()), windows_(std::move(windows)) {
  for (const auto& w : windows_) check_window(w, config);
  if (!std::is_sorted(windows_.begin(), windows_.end()) ||
      std::adjacent_find(windows_.begin(), windows_.end()) != windows_.end()) {
    throw std::invalid_argument("decoder windows must be distinct and canonically ordered");
  }
  for (const auto& s : config.streams) {
    std::vector<int> cum(1, 0);
    for (int k : s.packets_per_layer) cum.push_back(cum.back() + k);
    cum_.push_back(std::move(cum));
    full_.push_back(s.layer_count());
  }
  const std::size_t M = windows_.size();
  cut_.reserve(M * streams_);
  for (const auto& w : windows_) cut_.insert(cut_.end(), w.layers().begin(), w.layers().end());
  sub_begin_.push_back(0);
  for (std::size_t a = 0; a < M; ++a) {
    for (std::size_t u = 0; u <= a; ++u) {  // a subset is never later in canonical order
      if (is_subset(windows_[u], windows_[a])) sub_.push_back(static_cast<std::uint32_t>(u));
    }
    sub_begin_.push_back(static_cast<std::uint32_t>(sub_.size()));
  }
}

int SweepDecoder::decode(std::span<const int> received, std::span<int> levels, std::vector<int>& r) const {
  const std::size_t M = windows_.size();
  r.assign(received.begin(), received.end());
  std::fill(levels.begin(), levels.end(), 0);
  int events = 0;
  std::size_t a = 0;
  while (a < M) {
    if (r[a] == 0) {
      ++a;
      continue;
    }
    const int* cut = cut_.data() + a * streams_;
    int have = 0;
    for (std::uint32_t k = sub_begin_[a]; k < sub_begin_[a + 1]; ++k) have += r[sub_[k]];
    int need = 0;
    for (std::size_t j = 0; j < streams_; ++j) {
      if (cut[j] > levels[j]) need += cum_[j][cut[j]] - cum_[j][levels[j]];
    }
    if (have < need) {
      ++a;
      continue;
    }
    ++events;
    bool all_done = true;
    for (std::size_t j = 0; j < streams_; ++j) {
      levels[j] = std::max(levels[j], cut[j]);
      all_done = all_done && levels[j] == full_[j];
    }
    if (all_done) break;
    for (std::uint32_t k = sub_begin_[a]; k < sub_begin_[a + 1]; ++k) r[sub_[k]] = 0;
    a = 0;
  }
  return events;
}

namespace {

SweepDecoder decoder_for(const SystemConfig& config, const Reception& reception, std::vector<int>& counts) {
  check_counts(reception, config, "reception");
  std::vector<WindowIndex> windows;
  for (const auto& [w, c] : reception) {
    windows.push_back(w);
    counts.push_back(c);
  }
  return SweepDecoder(config, std::move(windows));
}

}  // namespace

std::vector<int> highest_decodable_layers(const SystemConfig& config, const Reception& reception) {
  std::vector<int> counts;
  SweepDecoder dec = decoder_for(config, reception, counts);
  std::vector<int> levels(config.stream_count()), scratch;
  dec.decode(counts, levels, scratch);
  return levels;
}

int highest_decodable_layer(std::size_t user, const SystemConfig& config, const Reception& reception) {
  if (user >= config.stream_count()) throw std::out_of_range("user index out of range");
  return highest_decodable_layers(config, reception)[user];
}

void check_oracle_options(const OracleOptions& options) {
  if (options.field_order < (1u << 16)) throw ConfigError("field_order", "field order must be at least 2^16");
  if (!is_prime(options.field_order)) throw ConfigError("field_order", "field order must be prime");
  if (options.trials < 1) throw ConfigError("trials", "at least one trial is required");
}

std::vector<int> oracle_decodable_layers(const SystemConfig& config, const Reception& reception,
                                         const OracleOptions& options) {
  check_oracle_options(options);
  check_counts(reception, config, "reception");
  const PrimeField field(options.field_order);
  const PacketLayout layout(config);
  const std::size_t N = config.stream_count();
  std::vector<int> best(N, 0);
  std::vector<std::uint32_t> row(layout.total());

  for (int t = 0; t < options.trials; ++t) {
    std::mt19937_64 rng(split_seed(options.seed, static_cast<std::uint64_t>(t)));
    std::uniform_int_distribution<std::uint32_t> coef(1, field.order() - 1);
    RowSpace space(field, layout.total());
    for (const auto& [w, c] : reception) {
      const auto cols = layout.columns(w);
      for (int n = 0; n < c; ++n) {
        std::fill(row.begin(), row.end(), 0);
        for (int col : cols) row[col] = coef(rng);
        space.insert(row);
      }
    }
    bool all_full = true;
    for (std::size_t i = 0; i < N; ++i) {
      const auto& k = config.streams[i].packets_per_layer;
      int col = layout.stream_offset(i);
      int d = 0;
      for (std::size_t l = 0; l < k.size(); ++l) {
        bool ok = true;
        for (int c = 0; c < k[l] && ok; ++c) ok = space.contains_unit(col + c);
        if (!ok) break;
        col += k[l];
        d = static_cast<int>(l) + 1;
      }
      best[i] = std::max(best[i], d);
      all_full = all_full && best[i] == config.streams[i].layer_count();
    }
    if (all_full) break;
  }
  return best;
}

int oracle_decodable_layer(std::size_t user, const SystemConfig& config, const Reception& reception,
                           const OracleOptions& options) {
  if (user >= config.stream_count()) throw std::out_of_range("user index out of range");
  return oracle_decodable_layers(config, reception, options)[user];
}

}  // namespace ewcast
