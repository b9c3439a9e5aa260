#include "ewcast/stream_model.hpp"

#include <cmath>
#include <numeric>

namespace ewcast {

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

int StreamSpec::total_packets() const noexcept {
  return std::accumulate(packets_per_layer.begin(), packets_per_layer.end(), 0);
}

int StreamSpec::packets_through(int layer) const {
  if (layer < 0 || layer > layer_count()) {
    throw std::out_of_range("layer " + std::to_string(layer) + " outside stream");
  }
  return std::accumulate(packets_per_layer.begin(), packets_per_layer.begin() + layer, 0);
}

int SystemConfig::total_packets() const noexcept {
  int total = 0;
  for (const auto& s : streams) total += s.total_packets();
  return total;
}

std::vector<int> SystemConfig::layer_counts() const {
  std::vector<int> out;
  out.reserve(streams.size());
  for (const auto& s : streams) out.push_back(s.layer_count());
  return out;
}

std::vector<double> throughput_weights(const StreamSpec& stream) {
  const double total = stream.total_packets();
  std::vector<double> a;
  a.reserve(stream.packets_per_layer.size());
  int running = 0;
  for (int k : stream.packets_per_layer) {
    running += k;
    a.push_back(running / total);
  }
  return a;
}

MetricWeights throughput_weights(const SystemConfig& config) {
  MetricWeights w;
  for (const auto& s : config.streams) w.per_stream.push_back(throughput_weights(s));
  return w;
}

SystemConfig validate_config(const SystemConfig& raw) {
  if (raw.streams.empty()) throw ConfigError("streams", "no streams");
  for (std::size_t i = 0; i < raw.streams.size(); ++i) {
    const auto& layers = raw.streams[i].packets_per_layer;
    const std::string where = "streams[" + std::to_string(i) + "]";
    if (layers.empty()) throw ConfigError(where, "stream has no layers (zero-size layer list)");
    for (std::size_t l = 0; l < layers.size(); ++l) {
      if (layers[l] <= 0) {
        throw ConfigError(where + "[" + std::to_string(l) + "]", "zero-size layer");
      }
    }
  }
  if (raw.per.size() != raw.streams.size()) {
    throw ConfigError("per", "mismatched lengths: " + std::to_string(raw.streams.size()) + " streams but " +
                                 std::to_string(raw.per.size()) + " erasure rates");
  }
  for (std::size_t i = 0; i < raw.per.size(); ++i) {
    double p = raw.per[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("per[" + std::to_string(i) + "]", "PER out of range [0, 1]");
    }
  }
  if (raw.budget < 0) throw ConfigError("budget", "transmission budget must be non-negative");
  return raw;
}

SystemConfig validate_config(const std::vector<std::vector<int>>& layer_sizes,
                             const std::vector<double>& per, int budget) {
  SystemConfig c;
  for (const auto& k : layer_sizes) c.streams.push_back(StreamSpec{k});
  c.per = per;
  c.budget = budget;
  return validate_config(c);
}

void validate_weights(const MetricWeights& weights, const SystemConfig& config) {
  if (weights.per_stream.size() != config.streams.size()) {
    throw ConfigError("weights", "need one weight vector per stream");
  }
  for (std::size_t i = 0; i < weights.per_stream.size(); ++i) {
    const auto& a = weights.per_stream[i];
    const std::string where = "weights[" + std::to_string(i) + "]";
    if (static_cast<int>(a.size()) != config.streams[i].layer_count()) {
      throw ConfigError(where, "need one weight per layer");
    }
    double prev = 0.0;
    for (double v : a) {
      if (!(v > 0.0 && v <= 1.0)) throw ConfigError(where, "weights must lie in (0, 1]");
      if (v < prev) throw ConfigError(where, "weights must be non-decreasing");
      prev = v;
    }
  }
}

SystemConfig with_budget(SystemConfig config, int budget) {
  if (budget < 0) throw ConfigError("budget", "transmission budget must be non-negative");
  config.budget = budget;
  return config;
}

SystemConfig with_per(SystemConfig config, std::vector<double> per) {
  config.per = std::move(per);
  return validate_config(config);
}

}  // namespace ewcast
