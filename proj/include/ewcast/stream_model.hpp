#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewcast {

// Raised for every malformed input; field() names the offending field so the
// CLI can point at the right spot in a scenario file.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct StreamSpec {
  std::vector<int> packets_per_layer;  // k_1 .. k_L

  int layer_count() const noexcept { return static_cast<int>(packets_per_layer.size()); }
  int total_packets() const noexcept;
  // Packets in layers 1..layer; layer 0 gives 0.
  int packets_through(int layer) const;

  friend bool operator==(const StreamSpec&, const StreamSpec&) = default;
};

struct SystemConfig {
  std::vector<StreamSpec> streams;
  std::vector<double> per;  // packet erasure rate of each user, one user per stream
  int budget = 0;           // N_t

  std::size_t stream_count() const noexcept { return streams.size(); }
  int total_packets() const noexcept;
  std::vector<int> layer_counts() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

// a_{i,l} for l = 1..L_i of every stream.
struct MetricWeights {
  std::vector<std::vector<double>> per_stream;
};

std::vector<double> throughput_weights(const StreamSpec& stream);
MetricWeights throughput_weights(const SystemConfig& config);

SystemConfig validate_config(const SystemConfig& raw);
SystemConfig validate_config(const std::vector<std::vector<int>>& layer_sizes,
                             const std::vector<double>& per, int budget);

// Weights must have one entry per layer, lie in (0, 1] and never decrease.
void validate_weights(const MetricWeights& weights, const SystemConfig& config);

SystemConfig with_budget(SystemConfig config, int budget);
SystemConfig with_per(SystemConfig config, std::vector<double> per);

}  // namespace ewcast
