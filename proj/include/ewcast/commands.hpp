#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ewcast/scenario.hpp"

namespace ewcast {

// Each command writes one or more CSV files into scenario.out_dir and
// returns their paths. Progress notes go to `log`.
std::vector<std::string> cmd_analyze(const Scenario& sc, std::ostream& log);
std::vector<std::string> cmd_optimize(const Scenario& sc, std::ostream& log);
std::vector<std::string> cmd_pareto(const Scenario& sc, std::ostream& log);
std::vector<std::string> cmd_sweep(const Scenario& sc, std::ostream& log);
std::vector<std::string> cmd_simulate(const Scenario& sc, std::ostream& log);

// "%.12g"
std::string format_number(double v);

}  // namespace ewcast
