#include "ewcast/window_counts.hpp"

#include <charconv>
#include <stdexcept>

namespace ewcast {

WindowCounts::WindowCounts(std::initializer_list<std::pair<const WindowIndex, int>> init) {
  for (const auto& [w, c] : init) add(w, c);
}

int WindowCounts::at(const WindowIndex& w) const {
  auto it = counts_.find(w);
  return it == counts_.end() ? 0 : it->second;
}

void WindowCounts::set(const WindowIndex& w, int count) {
  if (count < 0) throw std::invalid_argument("negative count for window " + to_string(w));
  if (count == 0) {
    counts_.erase(w);
  } else {
    counts_[w] = count;
  }
}

void WindowCounts::add(const WindowIndex& w, int delta) { set(w, at(w) + delta); }

int WindowCounts::total() const {
  int t = 0;
  for (const auto& [w, c] : counts_) t += c;
  return t;
}

bool lex_less(const WindowCounts& a, const WindowCounts& b) {
  // walk the merged key sequence; the first key where counts differ decides
  auto ia = a.counts_.begin(), ib = b.counts_.begin();
  while (ia != a.counts_.end() || ib != b.counts_.end()) {
    if (ib == b.counts_.end() || (ia != a.counts_.end() && ia->first < ib->first)) return false;
    if (ia == a.counts_.end() || ib->first < ia->first) return true;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

void check_counts(const WindowCounts& counts, const SystemConfig& config, const char* field) {
  for (const auto& [w, c] : counts) {
    if (!is_valid_window(w, config)) {
      throw ConfigError(field, "window " + to_string(w) + " is not valid for this configuration");
    }
  }
}

std::string format_counts(const WindowCounts& counts) {
  std::string s;
  for (const auto& [w, c] : counts) {
    if (!s.empty()) s += ';';
    s += to_string(w) + ':' + std::to_string(c);
  }
  return s;
}

WindowCounts parse_counts(std::string_view text) {
  WindowCounts out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw ConfigError("policy", "expected window:count in '" + std::string(item) + "'");
    int c = 0;
    std::string_view num = item.substr(colon + 1);
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), c);
    if (ec != std::errc() || p != num.data() + num.size() || c < 0) {
      throw ConfigError("policy", "bad count in '" + std::string(item) + "'");
    }
    WindowIndex w = parse_window(item.substr(0, colon));
    if (out.at(w) != 0) throw ConfigError("policy", "window " + to_string(w) + " listed twice");
    out.set(w, c);
    pos = end + 1;
  }
  return out;
}

}  // namespace ewcast
