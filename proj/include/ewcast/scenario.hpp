#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ewcast/montecarlo.hpp"
#include "ewcast/search_engine.hpp"

namespace ewcast {

// Everything one CLI run needs, read from a JSON scenario file.
struct Scenario {
  std::string source;                     // file path, for diagnostics
  SystemConfig config;                    // per holds the first erasure row
  std::vector<std::vector<double>> per_rows;
  std::string window_selection;           // "full", "intra", "n3-subset" or "explicit"
  WindowSet windows;
  WindowSet intra;                        // comparison set for sweeps
  MetricWeights weights;
  std::optional<Policy> policy;
  int range_lo = 1;
  int range_hi = 1;
  bool uncoded = true;                    // include the uncoded baseline
  SimulationOptions simulation;
  SearchOptions search;
  std::string out_dir = ".";
};

Scenario parse_scenario(const std::string& json_text, const std::string& source = "<string>");
Scenario load_scenario(const std::string& path);

}  // namespace ewcast
