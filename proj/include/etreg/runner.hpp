#pragma once

// Run orchestration shared by the CLI and the test suites: scenario runs,
// CSV emission (shortest round-trip decimals, fixed column orders), delta
// sweeps on a worker pool, and the design verification report.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "etreg/analysis.hpp"
#include "etreg/scenario.hpp"

namespace etreg {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

const char* status_name(SimStatus status);

/// Column orders are part of the output contract:
///   trace   -> t,e,y,y0,u,v1..,z1..,x1..,eta1..,xihat1..
///   trigger -> k,t_k,dwell
///   sweep   -> delta,sigma,trigger_count,tail_sup_error,min_dwell
void write_trace_csv(std::ostream& os, const SimResult& res);
void write_trigger_csv(std::ostream& os, const SimResult& res);
void write_metrics_csv(std::ostream& os, const Scenario& sc, const SimResult& res,
                       const Metrics& m);

/// Metrics over the default tail window [max(0, t_last - 5), t_last].
Metrics tail_metrics(const SimResult& res);

std::filesystem::path resolve_out_dir(const Scenario& sc, const std::string& override_dir);

/// Exit codes: 0 on Completed, 1 on parse/validation failures, 2 when the
/// run ends with ZenoGuard/MaxTriggers/NonFiniteState (named on `err`).
int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::ostream& out, std::ostream& err);

/// One summary row per delta, assembled in the order given; a failing row
/// does not abort the sweep. jobs = 0 picks the available parallelism.
int cmd_sweep(const std::string& scenario_path, const std::vector<double>& deltas,
              unsigned jobs, const std::string& out_dir, std::ostream& out, std::ostream& err);

/// Prints Psi, the Sylvester residual, Hurwitz verdicts, the
/// controllability rank, the rho positivity spot-check, and the chain
/// identities; exit 0 iff every check passes.
int cmd_verify(const std::string& scenario_path, std::ostream& out, std::ostream& err);

}  // namespace etreg
