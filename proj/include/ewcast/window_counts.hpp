#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ewcast/window_lattice.hpp"

namespace ewcast {

// Sparse per-window packet counts; absent windows count zero and zero
// entries are never stored, so equal maps mean equal allocations.
class WindowCounts {
 public:
  using Map = std::map<WindowIndex, int>;

  WindowCounts() = default;
  WindowCounts(std::initializer_list<std::pair<const WindowIndex, int>> init);

  int at(const WindowIndex& w) const;
  void set(const WindowIndex& w, int count);
  void add(const WindowIndex& w, int delta);
  int total() const;
  bool empty() const noexcept { return counts_.empty(); }
  std::size_t support_size() const noexcept { return counts_.size(); }
  const Map& entries() const noexcept { return counts_; }
  auto begin() const noexcept { return counts_.begin(); }
  auto end() const noexcept { return counts_.end(); }

  // Lexicographic comparison of the dense count vectors under the canonical
  // window order. Keys missing from one side count as zero.
  friend bool lex_less(const WindowCounts& a, const WindowCounts& b);
  friend bool operator==(const WindowCounts&, const WindowCounts&) = default;

 private:
  Map counts_;
};

// T: coded transmissions per window. Sums to N_t when evaluated.
using Policy = WindowCounts;
// R: coded packets one user received per window.
using Reception = WindowCounts;

void check_counts(const WindowCounts& counts, const SystemConfig& config, const char* field);

// "l1.l2...lN:count" pairs joined by ';' in canonical order; empty map -> "".
std::string format_counts(const WindowCounts& counts);
WindowCounts parse_counts(std::string_view text);

}  // namespace ewcast
