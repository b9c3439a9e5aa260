#include "ewcast/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ewcast/optimizer.hpp"

namespace ewcast {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

class CsvFile {
 public:
  CsvFile(const Scenario& sc, const std::string& name) {
    std::filesystem::create_directories(sc.out_dir);
    path_ = (std::filesystem::path(sc.out_dir) / name).string();
    out_.open(path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw ConfigError("out", "cannot write " + path_);
  }
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  const std::string& path() const { return path_; }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }

  std::string path_;
  std::ofstream out_;
};

std::vector<std::string> eta_header(const char* lead, std::size_t n) {
  std::vector<std::string> h{lead};
  for (std::size_t i = 1; i <= n; ++i) h.push_back("eta_" + std::to_string(i));
  return h;
}

std::string per_label(const std::vector<double>& per) {
  std::string s;
  for (double p : per) s += (s.empty() ? "" : "/") + format_number(p);
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Policy& require_policy(const Scenario& sc) {
  if (!sc.policy) throw ConfigError("policy", "missing; this command needs a policy");
  return *sc.policy;
}

}  // namespace

std::vector<std::string> cmd_analyze(const Scenario& sc, std::ostream& log) {
  const Policy& t = require_policy(sc);
  check_policy(t, sc.config);
  const auto dists = layer_distributions(sc.config, t);
  CsvFile csv(sc, "analyze.csv");
  csv.row("row", "user", "layer", "value");
  std::vector<double> etas;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (std::size_t l = 0; l < dists[i].probs.size(); ++l) csv.row("P", i + 1, l, dists[i].probs[l]);
  }
  for (std::size_t i = 0; i < dists.size(); ++i) {
    etas.push_back(user_metric(dists[i], sc.weights.per_stream[i]));
    csv.row("eta", i + 1, "", etas.back());
  }
  csv.row("E_eta", "", "", aggregate_metric(etas));
  log << "E{eta} = " << format_number(aggregate_metric(etas)) << " for " << format_counts(t) << '\n';
  return {csv.path()};
}

std::vector<std::string> cmd_optimize(const Scenario& sc, std::ostream& log) {
  CsvFile csv(sc, "optimize.csv");
  auto head = eta_header("windows", sc.config.stream_count());
  head.insert(head.begin() + 1, {"budget", "E_eta"});
  head.push_back("policy");
  csv.row(head);
  auto emit = [&](const std::string& label, const PolicyEvaluation& ev) {
    std::vector<std::string> r{label, std::to_string(sc.config.budget), format_number(ev.aggregate)};
    for (double e : ev.per_user_eta) r.push_back(format_number(e));
    r.push_back(format_counts(ev.policy));
    csv.row(r);
    log << label << ": E{eta} = " << format_number(ev.aggregate) << " with " << format_counts(ev.policy) << '\n';
  };
  emit(sc.window_selection, optimize(sc.config, sc.windows, sc.weights, sc.search));
  if (sc.window_selection != "intra") emit("intra", optimize(sc.config, sc.intra, sc.weights, sc.search));
  if (sc.uncoded) {
    auto u = uncoded_uep_optimize(sc.config, sc.weights, sc.search);
    std::vector<std::string> r{"uncoded", std::to_string(sc.config.budget), format_number(u.aggregate)};
    for (double e : u.per_user_eta) r.push_back(format_number(e));
    r.push_back(format_allocation(u.allocation));
    csv.row(r);
    log << "uncoded: E{eta} = " << format_number(u.aggregate) << '\n';
  }
  return {csv.path()};
}

std::vector<std::string> cmd_pareto(const Scenario& sc, std::ostream& log) {
  CsvFile csv(sc, "pareto.csv");
  auto head = eta_header("scheme", sc.config.stream_count());
  head.push_back("E_eta");
  head.push_back("policy");
  csv.row(head);
  auto emit = [&](const std::string& scheme, const std::vector<double>& eta, double agg, const std::string& pol) {
    std::vector<std::string> r{scheme};
    for (double e : eta) r.push_back(format_number(e));
    r.push_back(format_number(agg));
    r.push_back(pol);
    csv.row(r);
  };
  auto coded = [&](const std::string& label, const WindowSet& ws) {
    auto front = pareto_frontier(sc.config, ws, sc.weights, sc.search);
    for (const auto& p : front) emit(label, p.per_user_eta, p.aggregate, format_counts(p.policy));
    log << label << ": " << front.size() << " Pareto points\n";
  };
  coded(sc.window_selection == "full" ? "inter" : sc.window_selection, sc.windows);
  if (sc.window_selection != "intra") coded("intra", sc.intra);
  if (sc.uncoded) {
    auto front = uncoded_pareto_frontier(sc.config, sc.weights, sc.search);
    for (const auto& p : front) emit("uncoded", p.per_user_eta, p.aggregate, format_allocation(p.allocation));
    log << "uncoded: " << front.size() << " Pareto points\n";
  }
  return {csv.path()};
}

std::vector<std::string> cmd_sweep(const Scenario& sc, std::ostream& log) {
  const int lo = sc.range_lo, hi = sc.range_hi;
  const std::uint64_t intra_need = policy_count_up_to(hi, sc.intra.size());
  if (intra_need > sc.search.cap) throw SearchCapExceeded(intra_need, sc.search.cap);
  const int limit = exact_sweep_limit(sc.windows.size(), hi, sc.search.cap);
  if (limit < 0) throw SearchCapExceeded(1, sc.search.cap);
  log << "building search tables (inter exact up to budget " << limit << ")\n";
  auto t0 = std::chrono::steady_clock::now();
  const SearchSpace inter(sc.config, sc.windows, limit);
  const SearchSpace intra(sc.config, sc.intra, hi);
  log << "tables: " << inter.state_count() << " + " << intra.state_count() << " receptions in "
      << seconds_since(t0) << " s\n";

  CsvFile rows(sc, "sweep.csv");
  rows.row("per", "budget", "inter", "intra", "uncoded", "gain_percent", "status", "gain_bound_percent",
           "inter_policy", "intra_policy");
  CsvFile summary(sc, "sweep_summary.csv");
  summary.row("per", "max_gain_percent", "at_budget", "exact_limit", "certified");

  for (const auto& per : sc.per_rows) {
    t0 = std::chrono::steady_clock::now();
    const SystemConfig cfg = with_per(sc.config, per);
    const SweepResult res = improvement_sweep(inter, intra, per, sc.weights, lo, hi, sc.search.threads);
    for (const auto& r : res.rows) {
      std::string unc;
      if (sc.uncoded) unc = format_number(uncoded_uep_optimize(with_budget(cfg, r.budget), sc.weights, sc.search).aggregate);
      rows.row(per_label(per), r.budget, r.exact ? format_number(r.inter) : std::string(), r.intra, unc,
               r.gain ? format_number(*r.gain) : std::string(), r.exact ? "exact" : "bound",
               r.gain_bound ? format_number(*r.gain_bound) : std::string(),
               r.exact ? format_counts(r.inter_policy) : std::string(), format_counts(r.intra_policy));
    }
    summary.row(per_label(per), res.max_gain ? format_number(*res.max_gain) : std::string(), res.max_gain_budget,
                res.exact_limit, res.certified ? "yes" : "no");
    log << "per " << per_label(per) << ": max gain "
        << (res.max_gain ? format_number(*res.max_gain) + "% at budget " + std::to_string(res.max_gain_budget)
                         : std::string("undefined"))
        << (res.certified ? " (certified)" : " (not certified)") << ", " << seconds_since(t0) << " s\n";
  }
  return {rows.path(), summary.path()};
}

std::vector<std::string> cmd_simulate(const Scenario& sc, std::ostream& log) {
  const Policy& t = require_policy(sc);
  const PolicyEvaluation analytic = evaluate_policy(sc.config, t, sc.weights);
  const SimulationEstimate est = simulate(sc.config, t, sc.weights, sc.simulation);
  CsvFile csv(sc, "simulate.csv");
  csv.row("user", "eta_analytic", "eta_mc", "stderr", "z");
  for (std::size_t i = 0; i < est.eta.size(); ++i) {
    const double diff = est.eta[i] - analytic.per_user_eta[i];
    double z = 0.0;
    if (diff != 0.0) z = est.stderr_eta[i] > 0.0 ? diff / est.stderr_eta[i] : std::copysign(INFINITY, diff);
    csv.row(i + 1, analytic.per_user_eta[i], est.eta[i], est.stderr_eta[i], z);
    log << "user " << i + 1 << ": analytic " << format_number(analytic.per_user_eta[i]) << ", simulated "
        << format_number(est.eta[i]) << " +- " << format_number(est.stderr_eta[i]) << '\n';
  }
  return {csv.path()};
}

}  // namespace ewcast
