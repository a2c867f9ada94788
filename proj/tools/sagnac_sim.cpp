// sagnac-sim: scenario-driven front end for the switch simulator.
//
// exit codes: 0 ok, 2 invalid input / failed precondition, 3 solver failure

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "sagnac/error.hpp"
#include "sagnac/phase.hpp"
#include "sagnac/pipeline.hpp"
#include "sagnac/raman.hpp"
#include "sagnac/scenario.hpp"
#include "sagnac/studies.hpp"

namespace fs = std::filesystem;
using namespace sagnac;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_solver = 3;

// Prints warnings; returns false when any fatal precondition failed.
bool report_preconditions(const ScenarioFile& file) {
  bool ok = true;
  for (const auto& p : check_preconditions(file)) {
    std::fprintf(stderr, "%s %s: %s\n", p.fatal ? "error:" : "warning:", p.name.c_str(),
                 p.message.c_str());
    ok = ok && !p.fatal;
  }
  return ok;
}

int cmd_validate(const std::string& path) {
  const auto file = load_scenario(path);
  if (!report_preconditions(file)) return exit_invalid;
  const auto& sc = file.scenario;
  const auto xi = signal_xpm(sc);
  const auto m = window_metrics(sc.fiber, sc.pump, xi);
  std::printf("OK %s (%s)\n", file.name.c_str(), std::string(study_name(file.study.kind)).c_str());
  std::printf("  sigma_ps    %s\n", format_number(sc.pump.sigma()).c_str());
  std::printf("  energy_pj   %s%s\n", format_number(sc.pump.energy()).c_str(),
              file.energy_from_switching_condition ? " (switching energy)" : "");
  std::printf("  e_star_pj   %s\n", m.e_star ? format_number(*m.e_star).c_str() : "undefined");
  std::printf("  t_center_ps %s\n", format_number(m.t_center).c_str());
  std::printf("  tau_w_ps    %s\n", m.walk_through_ok ? format_number(m.tau_w).c_str() : "undefined");
  std::printf("  n_th        %s\n",
              format_number(thermal_occupancy(sc.detuning(), sc.temperature_k)).c_str());
  return exit_ok;
}

int cmd_simulate(const std::string& path, const fs::path& out_dir, unsigned jobs, bool json) {
  const auto file = load_scenario(path);
  if (!report_preconditions(file)) return exit_invalid;
  const auto start = std::chrono::steady_clock::now();
  const auto result = run_study(file, jobs);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_results(out_dir, file, result, wall, json);
  std::printf("%s: %s -> %s (%.2f s)\n", file.name.c_str(),
              std::string(study_name(file.study.kind)).c_str(), out_dir.string().c_str(), wall);
  return exit_ok;
}

int cmd_list() {
  for (auto k : all_studies) {
    std::printf("%-16s fig%-3s %s\n", std::string(study_name(k)).c_str(),
                std::string(study_figure(k)).c_str(), std::string(study_summary(k)).c_str());
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr Sagnac switch simulator", "sagnac-sim"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir;
  unsigned jobs = 1;
  bool json = false;

  auto* sim = app.add_subcommand("simulate", "run a scenario and write its results");
  sim->add_option("scenario", scenario, "scenario JSON file")->required();
  sim->add_option("--out", out_dir, "output directory")->required();
  sim->add_option("--jobs", jobs, "worker threads for independent sweep points")
      ->check(CLI::Range(1u, 1024u));
  sim->add_flag("--json", json, "also write results.json");

  auto* val = app.add_subcommand("validate", "check a scenario without running it");
  val->add_option("scenario", scenario, "scenario JSON file")->required();

  app.add_subcommand("list-studies", "list the study kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (*sim) return cmd_simulate(scenario, out_dir, jobs, json);
    if (*val) return cmd_validate(scenario);
    return cmd_list();
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_invalid;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return exit_solver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_solver;
  }
}
