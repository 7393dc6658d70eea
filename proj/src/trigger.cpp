#include "etreg/trigger.hpp"

#include <cmath>
#include <utility>

namespace etreg {

TriggerPolicy make_trigger_policy(double sigma, double delta, PiFn pi_r, ScalarFn rho_r,
                                  std::size_t s) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw InvalidParams("trigger policy: sigma must lie in (0, 1)");
  if (!(delta >= 0.0)) throw InvalidParams("trigger policy: delta must be >= 0");
  if (!pi_r) throw InvalidParams("trigger policy: pi_r is required");
  if (!rho_r) throw InvalidParams("trigger policy: rho_r is required");

  if (std::abs(pi_r(Vector::zeros(s), 0.0)) > 1e-15)
    throw InvalidParams("trigger policy: pi_r(0, 0) must vanish");
  for (double scale : {1e-3, 1.0, 1e3}) {
    for (std::size_t j = 0; j < s; ++j) {
      for (double sign : {1.0, -1.0}) {
        Vector probe = Vector::zeros(s);
        probe[j] = sign * scale;
        if (pi_r(probe, 0.0) < 0.0)
          throw InvalidParams("trigger policy: pi_r must be nonnegative");
      }
    }
    for (double sign : {1.0, -1.0}) {
      if (pi_r(Vector::zeros(s), sign * scale) < 0.0)
        throw InvalidParams("trigger policy: pi_r must be nonnegative");
    }
  }
  return TriggerPolicy{sigma, delta, std::move(pi_r), std::move(rho_r)};
}

Deviations deviations(const CurrentSignals& current, const Latched& latched,
                      const BackstepLaw& law) {
  if (current.eta.size() != latched.eta_k.size() ||
      current.xi_hat.size() != latched.xi_hat_k.size())
    throw DimensionMismatch("deviations: current and latched sizes differ");

  Deviations dev;
  dev.e_tilde = latched.e_k - current.e;
  dev.eta_tilde = latched.eta_k - current.eta;
  dev.xi_tilde = latched.xi_hat_k - current.xi_hat;

  const Vector checked_k = checked_coords(latched.e_k, latched.xi_hat_k, law);
  const Vector checked_now = checked_coords(current.e, current.xi_hat, law);
  const std::size_t r = law.r();
  dev.vartheta_tilde_r = law.vartheta_r(checked_k[r - 1]) - law.vartheta_r(checked_now[r - 1]);
  return dev;
}

double trigger_value(const Deviations& dev, double xi_check_r, const TriggerPolicy& pol) {
  const double vt2 = dev.vartheta_tilde_r * dev.vartheta_tilde_r;
  const double hold = pol.sigma * pol.sigma * pol.rho_r(xi_check_r) * xi_check_r * xi_check_r;
  return vt2 + pol.pi_r(dev.eta_tilde, dev.e_tilde) - hold - pol.delta * pol.delta;
}

double lorenz_pi(const Vector& eta_tilde, double e_tilde, const Vector& psi,
                 const Vector& lambda) {
  if (eta_tilde.size() != psi.size())
    throw DimensionMismatch("lorenz_pi: eta_tilde and Psi sizes differ");
  const std::size_t r = lambda.size();
  const double psi_eta = dot(psi, eta_tilde);
  // || B Ψ η̃ - λ ẽ ||²: B places Ψ η̃ in the last component.
  double nrm2 = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    double comp = -lambda[i] * e_tilde;
    if (i == r - 1) comp += psi_eta;
    nrm2 += comp * comp;
  }
  const double inj = lambda[r - 1] * e_tilde;
  return 5.0 * nrm2 * nrm2 + inj * inj;
}

PiFn make_lorenz_pi(Vector psi, Vector lambda) {
  return [psi = std::move(psi), lambda = std::move(lambda)](const Vector& eta_tilde,
                                                            double e_tilde) {
    return lorenz_pi(eta_tilde, e_tilde, psi, lambda);
  };
}

double lorenz_trigger_value_literal(const Deviations& dev, double xi_check_r, const Vector& psi,
                                    const Vector& lambda, const BackstepLaw& law, double sigma,
                                    double delta) {
  const double f_tilde = dev.vartheta_tilde_r * dev.vartheta_tilde_r +
                         lorenz_pi(dev.eta_tilde, dev.e_tilde, psi, lambda);
  const double hold = sigma * sigma * std::abs(law.vartheta_r(xi_check_r) * xi_check_r);
  return f_tilde - hold - delta * delta;
}

}  // namespace etreg
