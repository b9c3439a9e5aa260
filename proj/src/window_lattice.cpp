#include "ewcast/window_lattice.hpp"

#include <algorithm>
#include <charconv>

namespace ewcast {

bool WindowIndex::is_zero() const noexcept {
  return std::all_of(layers_.begin(), layers_.end(), [](int l) { return l == 0; });
}

std::string to_string(const WindowIndex& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

WindowIndex parse_window(std::string_view text) {
  std::vector<int> layers;
  std::size_t pos = 0;
  while (true) {
    std::size_t dot = text.find('.', pos);
    std::string_view part = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ConfigError("windows", "malformed window '" + std::string(text) + "'");
    }
    layers.push_back(v);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return WindowIndex(std::move(layers));
}

bool is_valid_window(const WindowIndex& w, const SystemConfig& config) {
  if (w.size() != config.stream_count() || w.is_zero()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] > config.streams[i].layer_count()) return false;
  }
  return true;
}

void check_window(const WindowIndex& w, const SystemConfig& config) {
  if (w.size() != config.stream_count()) {
    throw ConfigError("windows", "window " + to_string(w) + " has wrong arity");
  }
  if (w.is_zero()) throw ConfigError("windows", "the all-zero window is not a window");
  if (!is_valid_window(w, config)) {
    throw ConfigError("windows", "window " + to_string(w) + " exceeds the layer count of a stream");
  }
}

int window_size(const WindowIndex& w, const SystemConfig& config) {
  check_window(w, config);
  int s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += config.streams[i].packets_through(w[i]);
  return s;
}

bool is_subset(const WindowIndex& a, const WindowIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("window arity mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool is_intra(const WindowIndex& w) {
  auto nz = std::count_if(w.layers().begin(), w.layers().end(), [](int l) { return l != 0; });
  return nz <= 1;
}

WindowSet::WindowSet(std::vector<WindowIndex> windows, const SystemConfig& config) {
  for (const auto& w : windows) check_window(w, config);
  std::sort(windows.begin(), windows.end());
  auto dup = std::adjacent_find(windows.begin(), windows.end());
  if (dup != windows.end()) throw ConfigError("windows", "duplicate window " + to_string(*dup));
  windows_ = std::move(windows);
}

bool WindowSet::contains(const WindowIndex& w) const { return index_of(w).has_value(); }

std::optional<std::size_t> WindowSet::index_of(const WindowIndex& w) const {
  auto it = std::lower_bound(windows_.begin(), windows_.end(), w);
  if (it == windows_.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - windows_.begin());
}

std::uint64_t full_window_count(const SystemConfig& config) {
  std::uint64_t n = 1;
  for (const auto& s : config.streams) n *= static_cast<std::uint64_t>(s.layer_count() + 1);
  return n - 1;
}

WindowSet enumerate_all_windows(const SystemConfig& config) {
  const auto L = config.layer_counts();
  std::vector<WindowIndex> out;
  std::vector<int> cur(L.size(), 0);
  // odometer, last stream fastest, so output is already canonical
  while (true) {
    std::size_t i = L.size();
    while (i > 0 && cur[i - 1] == L[i - 1]) cur[--i] = 0;
    if (i == 0) break;
    ++cur[i - 1];
    out.emplace_back(cur);
  }
  return WindowSet(std::move(out), config);
}

WindowSet intra_windows(const SystemConfig& config) {
  std::vector<WindowIndex> out;
  for (const auto& w : enumerate_all_windows(config)) {
    if (is_intra(w)) out.push_back(w);
  }
  return WindowSet(std::move(out), config);
}

WindowSet n3_reference_subset(const SystemConfig& config) {
  if (config.layer_counts() != std::vector<int>{2, 2, 1}) {
    throw ConfigError("windows", "the n3-subset needs three streams with 2, 2 and 1 layers");
  }
  std::vector<WindowIndex> w = {
      {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1},
      {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {2, 2, 0}, {2, 2, 1},
  };
  return WindowSet(std::move(w), config);
}

PacketLayout::PacketLayout(const SystemConfig& config) {
  for (const auto& s : config.streams) {
    offsets_.push_back(total_);
    std::vector<int> cum(1, 0);
    for (int k : s.packets_per_layer) cum.push_back(cum.back() + k);
    total_ += cum.back();
    cumulative_.push_back(std::move(cum));
  }
}

std::vector<int> PacketLayout::columns(const WindowIndex& w) const {
  std::vector<int> cols;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (int c = 0; c < cumulative_[i][w[i]]; ++c) cols.push_back(offsets_[i] + c);
  }
  return cols;
}

}  // namespace ewcast
