// Command-line front end: ewcast <analyze|optimize|pareto|sweep|simulate> --config FILE
#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "ewcast/commands.hpp"
#include "ewcast/kernels.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  int threads = -1;
  std::uint64_t seed = 0;
  double cap = 0;
  bool quiet = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis and optimization of expanding-window network coding for layered multicast"};
  app.require_subcommand(1, 1);
  Flags f;
  using Command = std::vector<std::string> (*)(const ewcast::Scenario&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"analyze", "layer distributions and eta for the scenario policy", ewcast::cmd_analyze},
      {"optimize", "best policy for the scenario budget", ewcast::cmd_optimize},
      {"pareto", "Pareto frontier of per-user eta", ewcast::cmd_pareto},
      {"sweep", "inter vs intra optimum over a budget range", ewcast::cmd_sweep},
      {"simulate", "Monte Carlo check of the scenario policy", ewcast::cmd_simulate},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", f.config, "scenario JSON file")->required();
    sub->add_option("--out", f.out, "output directory (overrides the scenario)");
    sub->add_option("--threads", f.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", f.seed, "Monte Carlo seed (overrides the scenario)");
    sub->add_option("--cap", f.cap, "maximum number of policies a search may visit")->check(CLI::PositiveNumber);
    sub->add_flag("-q,--quiet", f.quiet, "no progress output");
    subs.emplace_back(sub, fn);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    ewcast::Scenario sc = ewcast::load_scenario(f.config);
    if (!f.out.empty()) sc.out_dir = f.out;
    if (f.threads >= 0) sc.search.threads = sc.simulation.threads = f.threads;
    if (app.get_subcommands().front()->count("--seed")) sc.simulation.seed = f.seed;
    if (f.cap > 0) sc.search.cap = static_cast<std::uint64_t>(f.cap);

    for (const auto& [sub, fn] : subs) {
      if (!sub->parsed()) continue;
      std::ostream null_stream(nullptr);
      std::ostream& log = f.quiet ? null_stream : std::cerr;
      const auto t0 = std::chrono::steady_clock::now();
      const auto files = fn(sc, log);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (const auto& p : files) std::cout << p << '\n';
      log << sub->get_name() << " finished in " << secs << " s (" << ewcast::kernels::isa_name(ewcast::kernels::active().isa)
          << " kernels)\n";
    }
  } catch (const ewcast::ConfigError& e) {
    std::string_view msg = e.what();
    if (msg.starts_with(e.field() + ": ")) msg.remove_prefix(e.field().size() + 2);
    std::cerr << "ewcast: " << f.config << ": field '" << e.field() << "': " << msg << '\n';
    return 2;
  } catch (const ewcast::SearchCapExceeded& e) {
    std::cerr << "ewcast: " << f.config << ": field 'cap': " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "ewcast: " << f.config << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
