#pragma once

// Scenario files: TOML ingestion, constraint validation, and assembly of the
// closed-loop components they describe.

#include <optional>
#include <string>
#include <vector>

#include "etreg/hybridsim.hpp"

namespace etreg {

struct Scenario {
  std::string source_path;

  std::string plant_kind;  // "lorenz"
  Vector w;

  std::string exo_kind;  // "lorenz"

  Vector lambda;

  std::string rho_catalog;            // "lorenz" | "polynomial"
  std::vector<Vector> rho_poly;       // ascending coefficients per rho_i
  bool paper_literal_vartheta1 = false;

  Vector varrho;
  std::optional<Matrix> M;
  std::optional<Vector> N;

  double sigma = 0.0;
  double delta = 0.0;
  std::string pi_kind;  // "lorenz" | "zero"

  double t_end = 0.0;
  double h = 0.0;
  double event_tol = 0.0;
  std::size_t max_triggers = 1'000'000;
  double min_dwell_guard = 1e-7;
  std::size_t report_stride = 10;

  SimInit init;

  std::string out_dir;  // optional; empty = unset
};

/// Parse a scenario file (ParseError on malformed input) and run the
/// validation pass (ValidationError naming the violated constraint).
Scenario load_scenario(const std::string& path);

/// Re-check all scenario constraints; used after programmatic edits.
void validate_scenario(const Scenario& sc);

struct BuiltSystem {
  OutputFeedbackPlant plant;
  Exosystem exo;
  ObserverGains gains;
  BackstepLaw law;
  InternalModel im;
  TriggerPolicy policy;
  SimConfig cfg;
};

/// Construct every component the scenario references. Errors from component
/// constructors (NotHurwitz, NotControllable, ...) propagate unchanged.
BuiltSystem build_system(const Scenario& sc);

}  // namespace etreg
