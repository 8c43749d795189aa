// burnside-lab: every experiment of the library behind one executable.
//
// Exit status: 0 ok, 1 a requested check failed, 2 invalid arguments,
// 3 node budget exhausted, 4 regime violation, 5 hypothesis violated with
// --strict.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "blab/errors.hpp"
#include "commands.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

int write_output(const blab::cli::Report& rep, const blab::cli::GlobalOptions& g,
                 const std::string& config, double seconds) {
  const std::string body = g.format == "json" ? blab::cli::render_json(rep)
                                              : blab::cli::render_csv(rep);
  if (g.out.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream(g.out, std::ios::binary) << body;
  nlohmann::json manifest = {
      {"tool", "burnside-lab"},
      {"version", kVersion},
      {"config", config},
      {"output", g.out},
      {"format", g.format},
      {"wall_time_seconds", seconds},
      {"node_budget", g.census().node_budget},
      {"hypothesis_warnings", rep.hypothesis_warnings},
  };
  std::ofstream(g.out + ".manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo experiments on Burnside-type presentations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  blab::cli::GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", g.samples, "Monte Carlo trajectories")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_option("--format", g.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads (0: all cores)")->capture_default_str();
  app.add_flag("--strict", g.strict, "Fail when a reported hypothesis does not hold");
  app.add_option("--budget", g.budget,
                 "Node budget (default: BURNSIDE_LAB_BUDGET or 1e8)");

  blab::cli::Command selected;
  blab::cli::add_word_commands(app, g, selected);
  blab::cli::add_presentation_commands(app, g, selected);
  blab::cli::add_walk_commands(app, g, selected);
  blab::cli::add_baseline_commands(app, g, selected);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const blab::cli::Report rep = selected();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_output(rep, g, app.config_to_str(true, false), seconds);
    for (const auto& w : rep.hypothesis_warnings) {
      std::cerr << "warning: hypothesis not satisfied: " << w << "\n";
    }
    if (rep.failure_status != 0) {
      return rep.failure_status;
    }
    if (g.strict && !rep.hypothesis_warnings.empty()) {
      throw blab::HypothesisViolated(rep.hypothesis_warnings.front());
    }
    return 0;
  } catch (const blab::HypothesisViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const blab::RegimeViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const blab::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const blab::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const blab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
