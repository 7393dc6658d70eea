#pragma once

// Output-based event-triggered mechanism. Between events the rule monitors
//   g = ϑ̃_r² + π_r(χ̃) - σ² ρ_r(ξ̌_r) ξ̌_r² - δ²
// against the current latch and fires (inclusively) when g >= 0.

#include <cstddef>
#include <functional>

#include "etreg/matrix.hpp"
#include "etreg/regulation.hpp"

namespace etreg {

/// π_r(χ̃) with χ̃ = col(η̃, ẽ); nonnegative, vanishing at the origin.
using PiFn = std::function<double(const Vector& eta_tilde, double e_tilde)>;

struct TriggerPolicy {
  double sigma = 0.0;  // (0, 1)
  double delta = 0.0;  // >= 0; delta = 0 is accepted but relies on the Zeno guard
  PiFn pi_r;
  ScalarFn rho_r;  // shared with the backstepping law
};

/// Validates ranges, π_r(0, 0) = 0, and π_r >= 0 on a probe grid of scaled
/// unit directions (s = internal-model order, for the η̃ probes).
TriggerPolicy make_trigger_policy(double sigma, double delta, PiFn pi_r, ScalarFn rho_r,
                                  std::size_t s);

/// Deviations of the latched values from the current signals. All zero at a
/// latch instant. xi_tilde is carried for logging; the built-in rules use it
/// only through ϑ̃_r.
struct Deviations {
  double e_tilde = 0.0;           // e(t_k) - e(t)
  Vector eta_tilde;               // η(t_k) - η(t)
  Vector xi_tilde;                // ξ̂(t_k) - ξ̂(t)
  double vartheta_tilde_r = 0.0;  // ϑ_r(ξ̌_r(t_k)) - ϑ_r(ξ̌_r(t))
};

struct CurrentSignals {
  double e = 0.0;
  Vector eta;
  Vector xi_hat;
};

Deviations deviations(const CurrentSignals& current, const Latched& latched,
                      const BackstepLaw& law);

/// The trigger function g evaluated at the current checked coordinate
/// ξ̌_r(t); the mechanism fires when the returned value is >= 0.
double trigger_value(const Deviations& dev, double xi_check_r, const TriggerPolicy& pol);

/// The Lorenz π_2: 5 ||B Ψ η̃ - λ ẽ||^4 + |λ_2 ẽ|², with B Ψ η̃ the r-vector
/// (0, ..., 0, Ψ η̃).
double lorenz_pi(const Vector& eta_tilde, double e_tilde, const Vector& psi,
                 const Vector& lambda);

PiFn make_lorenz_pi(Vector psi, Vector lambda);

/// The Lorenz rule in its printed form,
///   f̃ - σ² |ϑ_2(ξ̌_2) ξ̌_2| - δ²,
/// algebraically identical to trigger_value with π_2 = lorenz_pi since
/// |ϑ_2(ξ̌_2) ξ̌_2| = ρ_2(ξ̌_2) ξ̌_2². Kept as a second evaluation path for
/// cross-checking.
double lorenz_trigger_value_literal(const Deviations& dev, double xi_check_r,
                                    const Vector& psi, const Vector& lambda,
                                    const BackstepLaw& law, double sigma, double delta);

}  // namespace etreg
