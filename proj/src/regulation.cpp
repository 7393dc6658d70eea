#include "etreg/regulation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "etreg/matfun.hpp"

namespace etreg {

ObserverGains build_observer(const Vector& lambda) {
  const std::size_t r = lambda.size();
  if (r < 1) throw InvalidParams("build_observer: need at least one gain");
  Matrix a(r, r);
  for (std::size_t i = 0; i < r; ++i) a(i, 0) = -lambda[i];
  for (std::size_t i = 0; i + 1 < r; ++i) a(i, i + 1) = 1.0;
  if (hurwitz_verdict(a) != Stability::kHurwitz)
    throw NotHurwitz("build_observer: A_o is not Hurwitz for the given gains");
  return ObserverGains{lambda, std::move(a)};
}

namespace {

// Probe grid for positivity checks: 0 and ±10^k, k = -6..3 in half-decade steps.
std::vector<double> positivity_grid() {
  std::vector<double> grid{0.0};
  for (double ex = -6.0; ex <= 3.0 + 1e-9; ex += 0.5) {
    const double v = std::pow(10.0, ex);
    grid.push_back(v);
    grid.push_back(-v);
  }
  return grid;
}

}  // namespace

BackstepLaw make_backstep_law(std::vector<ScalarFn> rho, double sigma) {
  if (rho.empty()) throw InvalidParams("backstep law needs at least one gain function");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw InvalidParams("backstep law: sigma must lie in (0, 1)");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!rho[i]) throw InvalidParams("backstep law: rho_" + std::to_string(i + 1) + " is empty");
    for (double s : positivity_grid()) {
      if (!(rho[i](s) > 0.0))
        throw InvalidParams("backstep law: rho_" + std::to_string(i + 1) +
                            " is not positive at s = " + std::to_string(s));
    }
  }
  BackstepLaw law;
  law.sigma = sigma;
  law.chain_vartheta.reserve(rho.size() >= 1 ? rho.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    ScalarFn rho_i = rho[i];
    law.chain_vartheta.push_back([rho_i](double s) { return -rho_i(s) * s; });
  }
  law.rho = std::move(rho);
  return law;
}

BackstepLaw lorenz_backstep_law(double sigma, bool literal_vartheta1) {
  std::vector<ScalarFn> rho{
      [](double s) {
        const double s2 = s * s;
        return 6.0 * (s2 * s2 * s2 + 1.0);
      },
      [](double s) { return 12.0 * (s * s + 1.0); },
  };
  BackstepLaw law = make_backstep_law(std::move(rho), sigma);
  if (literal_vartheta1) {
    // Printed variant: the chain adds 6(e^6 + 1) without the factor e, so
    // ϑ_1 does not vanish at the origin.
    law.chain_vartheta[0] = [](double s) {
      const double s2 = s * s;
      return -6.0 * (s2 * s2 * s2 + 1.0);
    };
  }
  return law;
}

Vector checked_coords(double e, const Vector& xi_hat, const BackstepLaw& law) {
  const std::size_t r = law.r();
  if (xi_hat.size() != r) throw DimensionMismatch("checked_coords: xi_hat length must equal r");
  Vector checked(r);
  checked[0] = e;
  for (std::size_t i = 0; i + 1 < r; ++i)
    checked[i + 1] = xi_hat[i + 1] - law.chain_vartheta[i](checked[i]);
  return checked;
}

double control_input(const Latched& latched, const BackstepLaw& law, const InternalModel& im) {
  const Vector checked = checked_coords(latched.e_k, latched.xi_hat_k, law);
  return law.vartheta_r(checked[checked.size() - 1]) + dot(im.Psi, latched.eta_k);
}

Latched make_latched(double t, double e, Vector eta, Vector xi_hat, std::size_t k,
                     const BackstepLaw& law, const InternalModel& im) {
  Latched latched;
  latched.t_k = t;
  latched.e_k = e;
  latched.eta_k = std::move(eta);
  latched.xi_hat_k = std::move(xi_hat);
  latched.k = k;
  latched.u_k = control_input(latched, law, im);
  return latched;
}

std::pair<Vector, Vector> controller_rates(const ControllerState& cs, const Latched& latched,
                                           const ObserverGains& gains, const InternalModel& im,
                                           double u) {
  const std::size_t r = gains.lambda.size();
  const std::size_t s = im.order();
  if (cs.xi_hat.size() != r || latched.xi_hat_k.size() != r)
    throw DimensionMismatch("controller_rates: xi_hat length must equal r");
  if (cs.eta.size() != s || latched.eta_k.size() != s)
    throw DimensionMismatch("controller_rates: eta length must equal s");

  const double u_bar = u - dot(im.Psi, latched.eta_k);
  Vector dxi = gains.A_o * cs.xi_hat;
  for (std::size_t i = 0; i < r; ++i) dxi[i] += gains.lambda[i] * latched.e_k;
  dxi[r - 1] += u_bar;

  Vector deta = im.M * cs.eta;
  for (std::size_t i = 0; i < s; ++i) deta[i] += im.N[i] * u;
  return {std::move(deta), std::move(dxi)};
}

std::pair<Vector, Vector> controller_zoh_step(const Latched& latched, const ObserverGains& gains,
                                              const InternalModel& im, const BackstepLaw& law,
                                              double dt) {
  if (!(dt > 0.0)) throw InvalidParams("controller_zoh_step: dt must be positive");
  const std::size_t r = gains.lambda.size();
  const std::size_t s = im.order();
  if (latched.xi_hat_k.size() != r || latched.eta_k.size() != s || law.r() != r)
    throw DimensionMismatch("controller_zoh_step: latched state sizes do not match");

  // Constant drives over the hold interval, column-shaped for zoh_discretize.
  const double u_bar = latched.u_k - dot(im.Psi, latched.eta_k);
  Matrix xi_drive(r, 1);
  for (std::size_t i = 0; i < r; ++i) xi_drive(i, 0) = gains.lambda[i] * latched.e_k;
  xi_drive(r - 1, 0) += u_bar;
  Matrix eta_drive(s, 1);
  for (std::size_t i = 0; i < s; ++i) eta_drive(i, 0) = im.N[i] * latched.u_k;

  const auto [ad_o, bd_o] = zoh_discretize(gains.A_o, xi_drive, dt);
  const auto [ad_m, bd_m] = zoh_discretize(im.M, eta_drive, dt);

  Vector xi_next = ad_o * latched.xi_hat_k;
  for (std::size_t i = 0; i < r; ++i) xi_next[i] += bd_o(i, 0);
  Vector eta_next = ad_m * latched.eta_k;
  for (std::size_t i = 0; i < s; ++i) eta_next[i] += bd_m(i, 0);
  return {std::move(eta_next), std::move(xi_next)};
}

}  // namespace etreg
