// Command-line front end: scenario simulation, delta sweeps, and design
// verification reports.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etreg/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Event-triggered output-regulation simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir;
  std::vector<double> deltas;
  unsigned jobs = 0;

  CLI::App* sim = app.add_subcommand("simulate", "Run one scenario and write CSV artifacts");
  sim->add_option("scenario", scenario, "Scenario file (TOML)")->required();
  sim->add_option("--out", out_dir, "Output directory (default: $ETREG_OUT or .)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run the scenario across a list of deltas");
  sweep->add_option("scenario", scenario, "Scenario file (TOML)")->required();
  sweep->add_option("--delta", deltas, "Comma-separated delta values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--jobs", jobs, "Worker pool size (default: available parallelism)");
  sweep->add_option("--out", out_dir, "Output directory (default: $ETREG_OUT or .)");

  CLI::App* verify = app.add_subcommand("verify", "Check the scenario's design constructions");
  verify->add_option("scenario", scenario, "Scenario file (TOML)")->required();

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return etreg::cmd_simulate(scenario, out_dir, std::cout, std::cerr);
  if (sweep->parsed()) return etreg::cmd_sweep(scenario, deltas, jobs, out_dir, std::cout, std::cerr);
  return etreg::cmd_verify(scenario, std::cout, std::cerr);
}
