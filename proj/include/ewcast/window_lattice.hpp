#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ewcast/stream_model.hpp"

namespace ewcast {

// Per-stream cut point (l_1, .., l_N). A window covers layers 1..l_i of stream i.
class WindowIndex {
 public:
  WindowIndex() = default;
  explicit WindowIndex(std::vector<int> layers) : layers_(std::move(layers)) {}
  WindowIndex(std::initializer_list<int> layers) : layers_(layers) {}

  std::size_t size() const noexcept { return layers_.size(); }
  int operator[](std::size_t i) const { return layers_[i]; }
  std::span<const int> layers() const noexcept { return layers_; }
  bool is_zero() const noexcept;

  // Lexicographic with stream 1 most significant; this is the canonical order.
  auto operator<=>(const WindowIndex&) const = default;

 private:
  std::vector<int> layers_;
};

std::string to_string(const WindowIndex& w);   // "1.0.2"
WindowIndex parse_window(std::string_view text);

bool is_valid_window(const WindowIndex& w, const SystemConfig& config);
void check_window(const WindowIndex& w, const SystemConfig& config);

int window_size(const WindowIndex& w, const SystemConfig& config);
// Componentwise <=; a window is a subset of another iff its packets are.
bool is_subset(const WindowIndex& a, const WindowIndex& b);
// At most one stream has a nonzero cut.
bool is_intra(const WindowIndex& w);

// Canonically ordered, duplicate-free set of valid windows.
class WindowSet {
 public:
  WindowSet() = default;
  WindowSet(std::vector<WindowIndex> windows, const SystemConfig& config);

  std::size_t size() const noexcept { return windows_.size(); }
  bool empty() const noexcept { return windows_.empty(); }
  const WindowIndex& operator[](std::size_t i) const { return windows_[i]; }
  auto begin() const noexcept { return windows_.begin(); }
  auto end() const noexcept { return windows_.end(); }
  std::span<const WindowIndex> windows() const noexcept { return windows_; }

  bool contains(const WindowIndex& w) const;
  std::optional<std::size_t> index_of(const WindowIndex& w) const;

 private:
  std::vector<WindowIndex> windows_;
};

std::uint64_t full_window_count(const SystemConfig& config);  // prod(L_i + 1) - 1
WindowSet enumerate_all_windows(const SystemConfig& config);
WindowSet intra_windows(const SystemConfig& config);
// The 11-window inter-stream set used for three streams of layer counts
// (2, 2, 1): every intra window plus six cross-stream windows.
WindowSet n3_reference_subset(const SystemConfig& config);

// Column layout of all packets, stream after stream, layer after layer.
class PacketLayout {
 public:
  explicit PacketLayout(const SystemConfig& config);

  int total() const noexcept { return total_; }
  // First column of stream i.
  int stream_offset(std::size_t stream) const { return offsets_[stream]; }
  // Columns of stream i that belong to layers 1..layer.
  int prefix(std::size_t stream, int layer) const { return cumulative_[stream][layer]; }
  // Columns covered by a window, ascending.
  std::vector<int> columns(const WindowIndex& w) const;

 private:
  int total_ = 0;
  std::vector<int> offsets_;
  std::vector<std::vector<int>> cumulative_;
};

}  // namespace ewcast
