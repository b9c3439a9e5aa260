#include "ewcast/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ewcast/prime_field.hpp"
#include "json.hpp"

namespace ewcast {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "name",      "description", "streams", "per",   "per_rows", "budget", "budget_range",
    "windows",   "intra_windows", "weights", "policy", "uncoded", "trials", "seed",
    "field_order", "cap",       "threads", "out"};

template <class T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field, "unexpected value " + j.dump());
  }
}

WindowSet read_windows(const json& j, const SystemConfig& config, const std::string& field, std::string* label) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (label) *label = s;
    if (s == "full") return enumerate_all_windows(config);
    if (s == "intra") return intra_windows(config);
    if (s == "n3-subset") {
      try {
        return n3_reference_subset(config);
      } catch (const ConfigError& e) {
        throw ConfigError(field, e.what());
      }
    }
    throw ConfigError(field, "expected \"full\", \"intra\", \"n3-subset\" or a list of index tuples");
  }
  if (!j.is_array()) throw ConfigError(field, "expected a window selection");
  if (label) *label = "explicit";
  std::vector<WindowIndex> ws;
  for (const auto& item : j) ws.emplace_back(get_as<std::vector<int>>(item, field));
  try {
    return WindowSet(std::move(ws), config);
  } catch (const ConfigError& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("<file>", "top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.count(key)) throw ConfigError(key, "unknown field");
  }
  Scenario sc;
  sc.source = source;
  if (!j.contains("streams")) throw ConfigError("streams", "missing");
  auto streams = get_as<std::vector<std::vector<int>>>(j["streams"], "streams");

  if (j.contains("per_rows")) {
    sc.per_rows = get_as<std::vector<std::vector<double>>>(j["per_rows"], "per_rows");
    if (sc.per_rows.empty()) throw ConfigError("per_rows", "need at least one row");
    if (j.contains("per")) throw ConfigError("per", "give either per or per_rows");
  } else {
    if (!j.contains("per")) throw ConfigError("per", "missing");
    sc.per_rows.push_back(get_as<std::vector<double>>(j["per"], "per"));
  }
  const int budget = j.contains("budget") ? get_as<int>(j["budget"], "budget") : 0;
  sc.config = validate_config(streams, sc.per_rows[0], budget);
  for (std::size_t r = 1; r < sc.per_rows.size(); ++r) {
    try {
      validate_config(streams, sc.per_rows[r], budget);
    } catch (const ConfigError& e) {
      throw ConfigError("per_rows[" + std::to_string(r) + "]", e.what());
    }
  }

  sc.windows = read_windows(j.value("windows", json("full")), sc.config, "windows", &sc.window_selection);
  sc.intra = read_windows(j.value("intra_windows", json("intra")), sc.config, "intra_windows", nullptr);

  const json& w = j.value("weights", json("throughput"));
  if (w.is_string()) {
    if (w.get<std::string>() != "throughput") throw ConfigError("weights", "expected \"throughput\" or explicit lists");
    sc.weights = throughput_weights(sc.config);
  } else {
    sc.weights.per_stream = get_as<std::vector<std::vector<double>>>(w, "weights");
  }
  validate_weights(sc.weights, sc.config);

  if (j.contains("policy")) {
    const json& p = j["policy"];
    Policy pol;
    if (p.is_string()) {
      pol = parse_counts(p.get<std::string>());
    } else if (p.is_object()) {
      for (const auto& [key, value] : p.items()) {
        int c = get_as<int>(value, "policy");
        if (c < 0) throw ConfigError("policy", "negative count for window " + key);
        pol.set(parse_window(key), c);
      }
    } else {
      throw ConfigError("policy", "expected an object of window: count or a \"l1.l2:count;...\" string");
    }
    check_counts(pol, sc.config, "policy");
    if (!j.contains("budget")) sc.config.budget = pol.total();
    if (pol.total() != sc.config.budget) {
      throw ConfigError("policy", "policy sends " + std::to_string(pol.total()) + " packets but budget is " +
                                      std::to_string(sc.config.budget));
    }
    sc.policy = std::move(pol);
  }

  const int total = sc.config.total_packets();
  sc.range_lo = 1;
  sc.range_hi = 3 * total;
  if (j.contains("budget_range")) {
    auto r = get_as<std::vector<int>>(j["budget_range"], "budget_range");
    if (r.size() != 2 || r[0] < 0 || r[0] > r[1]) throw ConfigError("budget_range", "expected [lo, hi] with 0 <= lo <= hi");
    sc.range_lo = r[0];
    sc.range_hi = r[1];
  }
  sc.uncoded = j.contains("uncoded") ? get_as<bool>(j["uncoded"], "uncoded") : true;
  if (j.contains("trials")) {
    auto t = get_as<long long>(j["trials"], "trials");
    if (t < 1) throw ConfigError("trials", "at least one trial is required");
    sc.simulation.trials = static_cast<std::uint64_t>(t);
  }
  if (j.contains("seed")) sc.simulation.seed = get_as<std::uint64_t>(j["seed"], "seed");
  if (j.contains("field_order")) {
    auto f = get_as<std::uint64_t>(j["field_order"], "field_order");
    if (f > 0xffffffffull || !is_prime(f)) throw ConfigError("field_order", "must be a prime below 2^32");
    sc.simulation.field_order = static_cast<std::uint32_t>(f);
  }
  if (j.contains("cap")) {
    auto c = get_as<double>(j["cap"], "cap");
    if (!(c >= 1)) throw ConfigError("cap", "must be at least 1");
    sc.search.cap = static_cast<std::uint64_t>(c);
  }
  if (j.contains("threads")) {
    int t = get_as<int>(j["threads"], "threads");
    if (t < 0) throw ConfigError("threads", "must be non-negative");
    sc.search.threads = sc.simulation.threads = t;
  }
  if (j.contains("out")) sc.out_dir = get_as<std::string>(j["out"], "out");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace ewcast
