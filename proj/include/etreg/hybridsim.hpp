#pragma once

// Hybrid closed-loop execution: fixed-step RK4 on the stacked continuous
// states (v, z, x, η, ξ̂) with latched inputs frozen, node-resolution event
// scanning, bisection to localize trigger crossings, and guards against
// Zeno-like accumulation.

#include <cstddef>
#include <functional>
#include <vector>

#include "etreg/exogen.hpp"
#include "etreg/matrix.hpp"
#include "etreg/plant.hpp"
#include "etreg/regulation.hpp"
#include "etreg/trigger.hpp"

namespace etreg {

struct ClosedLoopState {
  double t = 0.0;
  Vector v;
  Vector z;
  Vector x;
  Vector eta;
  Vector xi_hat;
  Latched latched;  // latched.t_k <= t; the error e is recomputed, never stored
};

struct SimInit {
  Vector v0;
  Vector z0;
  Vector x0;
  Vector eta0;
  Vector xi_hat0;
};

struct SimConfig {
  double t_end = 0.0;
  double h = 0.0;          // fixed integration step; must satisfy event_tol < h < t_end
  double event_tol = 0.0;  // bisection width for event times
  std::size_t max_triggers = 1'000'000;
  double min_dwell_guard = 1e-7;
  std::size_t report_stride = 10;  // trace row every this many accepted steps
  Vector w;
  SimInit init;
};

enum class SimStatus { kCompleted, kZenoGuard, kMaxTriggers };

struct TraceRow {
  double t = 0.0;
  double e = 0.0;
  double y = 0.0;
  double y0 = 0.0;
  double u = 0.0;
  Vector v;
  Vector z;
  Vector x;
  Vector eta;
  Vector xi_hat;
};

struct TriggerRecord {
  std::size_t k = 0;
  double t_k = 0.0;
  double dwell = 0.0;
  // Diagnostics for the latch-reset invariants (not serialized):
  double g_pre = 0.0;          // localized trigger value just before latching
  double g_post = 0.0;         // trigger value right after latching
  double xi_check_r_k = 0.0;   // ξ̌_r at the latch
  double bracket_g_lo = 0.0;   // node values bracketing the crossing
  double bracket_g_hi = 0.0;
  double bracket_dt = 0.0;
};

struct SimResult {
  std::vector<TraceRow> trace;
  std::vector<TriggerRecord> trigger_log;
  SimStatus status = SimStatus::kCompleted;
  double max_intersample_g = 0.0;  // max g over accepted non-firing nodes
};

/// Bisection for the first time with g >= 0 inside a bracket
/// (t_lo, g_lo < 0), (t_hi, g_hi >= 0). Shrinks the bracket below event_tol
/// and returns the right endpoint. Throws BracketInvalid on a bad bracket.
double locate_event(double t_lo, double g_lo, double t_hi, double g_hi,
                    const std::function<double(double)>& g_of_t, double event_tol);

/// Run the closed loop. t = 0 is a latch instant. Throws NonFiniteState on
/// integration blow-up; Zeno-guard and trigger-budget exhaustion are
/// reported through SimResult::status.
SimResult simulate(const OutputFeedbackPlant& plant, const Exosystem& exo,
                   const ObserverGains& gains, const BackstepLaw& law, const InternalModel& im,
                   const TriggerPolicy& policy, const SimConfig& cfg);

}  // namespace etreg
