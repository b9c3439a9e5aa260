#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ewcast/window_counts.hpp"

namespace ewcast {

// Greedy sweep decoder over a fixed list of windows. Windows are visited in
// canonical order; a window with packets left decodes when the packets left
// in its sub-lattice cover the source packets it still needs, after which
// its sub-lattice is cleared and the sweep restarts.
//
// The run is the same for every user up to the point where that user is
// done, so one pass yields the highest decodable layer of all streams.
class SweepDecoder {
 public:
  SweepDecoder(const SystemConfig& config, std::vector<WindowIndex> windows);

  std::size_t window_count() const noexcept { return windows_.size(); }
  std::size_t stream_count() const noexcept { return streams_; }
  std::span<const WindowIndex> windows() const noexcept { return windows_; }

  // received[a] packets for windows()[a]. Writes d_j for every stream into
  // levels and returns the number of decode events. scratch is resized as needed.
  int decode(std::span<const int> received, std::span<int> levels, std::vector<int>& scratch) const;

 private:
  std::size_t streams_;
  std::vector<WindowIndex> windows_;
  std::vector<int> cut_;                     // window-major [a * streams_ + j]
  std::vector<std::vector<int>> cum_;        // packets of stream j through layer l
  std::vector<int> full_;                    // L_j
  std::vector<std::uint32_t> sub_begin_, sub_;  // windows below each window, itself included
};

// d_i for user (0-based stream index) given its reception.
int highest_decodable_layer(std::size_t user, const SystemConfig& config, const Reception& reception);
std::vector<int> highest_decodable_layers(const SystemConfig& config, const Reception& reception);

struct OracleOptions {
  std::uint32_t field_order = 2147483647u;
  int trials = 3;
  std::uint64_t seed = 1;
};

// Rank-based ground truth: random nonzero coefficients per received packet,
// row reduction, and unit-vector membership of each source packet. The
// maximum over trials is returned since an unlucky draw only lowers rank.
int oracle_decodable_layer(std::size_t user, const SystemConfig& config, const Reception& reception,
                           const OracleOptions& options = {});
std::vector<int> oracle_decodable_layers(const SystemConfig& config, const Reception& reception,
                                         const OracleOptions& options = {});

void check_oracle_options(const OracleOptions& options);

}  // namespace ewcast
