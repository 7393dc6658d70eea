#include "etreg/hybridsim.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace etreg {

double locate_event(double t_lo, double g_lo, double t_hi, double g_hi,
                    const std::function<double(double)>& g_of_t, double event_tol) {
  if (!(t_lo < t_hi)) throw BracketInvalid("locate_event: bracket endpoints out of order");
  if (!(g_lo < 0.0)) throw BracketInvalid("locate_event: left endpoint must have g < 0");
  if (!(g_hi >= 0.0)) throw BracketInvalid("locate_event: right endpoint must have g >= 0");
  if (!(event_tol > 0.0)) throw BracketInvalid("locate_event: event_tol must be positive");

  while (t_hi - t_lo > event_tol) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;  // bracket exhausted in double precision
    if (g_of_t(mid) >= 0.0)
      t_hi = mid;
    else
      t_lo = mid;
  }
  return t_hi;
}

namespace {

struct Stacked {
  Vector v, z, x, eta, xi;
};

Stacked axpy(const Stacked& base, double a, const Stacked& d) {
  Stacked out = base;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += a * d.v[i];
  for (std::size_t i = 0; i < out.z.size(); ++i) out.z[i] += a * d.z[i];
  for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += a * d.x[i];
  for (std::size_t i = 0; i < out.eta.size(); ++i) out.eta[i] += a * d.eta[i];
  for (std::size_t i = 0; i < out.xi.size(); ++i) out.xi[i] += a * d.xi[i];
  return out;
}

bool stacked_finite(const Stacked& s) {
  return s.v.is_finite() && s.z.is_finite() && s.x.is_finite() && s.eta.is_finite() &&
         s.xi.is_finite();
}

// Drives held constant over one inter-event interval.
struct HeldDrive {
  double u = 0.0;
  Vector xi_drive;   // λ e_k + B (u_k - Ψ η_k)
  Vector eta_drive;  // N u_k
};

HeldDrive make_drive(const Latched& latched, const ObserverGains& gains,
                     const InternalModel& im) {
  HeldDrive d;
  d.u = latched.u_k;
  const std::size_t r = gains.lambda.size();
  d.xi_drive = Vector(r);
  for (std::size_t i = 0; i < r; ++i) d.xi_drive[i] = gains.lambda[i] * latched.e_k;
  d.xi_drive[r - 1] += latched.u_k - dot(im.Psi, latched.eta_k);
  d.eta_drive = Vector(im.order());
  for (std::size_t i = 0; i < im.order(); ++i) d.eta_drive[i] = im.N[i] * latched.u_k;
  return d;
}

void validate_config(const SimConfig& cfg) {
  if (!(cfg.event_tol > 0.0 && cfg.event_tol < cfg.h && cfg.h < cfg.t_end))
    throw InvalidParams("simulate: need 0 < event_tol < h < t_end");
  if (cfg.max_triggers < 1) throw InvalidParams("simulate: max_triggers must be >= 1");
  if (cfg.report_stride < 1) throw InvalidParams("simulate: report_stride must be >= 1");
  if (!(cfg.min_dwell_guard > 0.0))
    throw InvalidParams("simulate: min_dwell_guard must be positive");
}

}  // namespace

SimResult simulate(const OutputFeedbackPlant& plant, const Exosystem& exo,
                   const ObserverGains& gains, const BackstepLaw& law, const InternalModel& im,
                   const TriggerPolicy& policy, const SimConfig& cfg) {
  validate_config(cfg);
  const std::size_t r = plant.r;
  if (gains.lambda.size() != r || law.r() != r)
    throw DimensionMismatch("simulate: observer/backstepping order must match the plant");
  if (cfg.init.v0.size() != exo.n_v || cfg.init.z0.size() != plant.n_z ||
      cfg.init.x0.size() != r || cfg.init.xi_hat0.size() != r ||
      cfg.init.eta0.size() != im.order())
    throw DimensionMismatch("simulate: initial condition sizes do not match the components");

  Stacked st{cfg.init.v0, cfg.init.z0, cfg.init.x0, cfg.init.eta0, cfg.init.xi_hat0};
  double t = 0.0;

  const auto error_of = [&](const Stacked& q) { return q.x[0] - exo.q(q.v, cfg.w); };

  Latched latched = make_latched(0.0, error_of(st), st.eta, st.xi, 0, law, im);
  HeldDrive drive = make_drive(latched, gains, im);

  const auto derivative = [&](const Stacked& q) {
    Stacked d;
    d.v = exo.S * q.v;
    auto [dz, dx] = plant_rates(plant, PlantState{q.z, q.x}, drive.u, q.v, cfg.w);
    d.z = std::move(dz);
    d.x = std::move(dx);
    d.eta = im.M * q.eta;
    d.eta += drive.eta_drive;
    d.xi = gains.A_o * q.xi;
    d.xi += drive.xi_drive;
    return d;
  };

  // One classical RK4 step of width dt from q.
  const auto rk4 = [&](const Stacked& q, double dt) {
    const Stacked k1 = derivative(q);
    const Stacked k2 = derivative(axpy(q, 0.5 * dt, k1));
    const Stacked k3 = derivative(axpy(q, 0.5 * dt, k2));
    const Stacked k4 = derivative(axpy(q, dt, k3));
    Stacked out = q;
    out = axpy(out, dt / 6.0, k1);
    out = axpy(out, dt / 3.0, k2);
    out = axpy(out, dt / 3.0, k3);
    out = axpy(out, dt / 6.0, k4);
    return out;
  };

  const auto trigger_at = [&](const Stacked& q) {
    const double e = error_of(q);
    const Deviations dev = deviations(CurrentSignals{e, q.eta, q.xi}, latched, law);
    const Vector checked = checked_coords(e, q.xi, law);
    return trigger_value(dev, checked[r - 1], policy);
  };

  SimResult res;
  res.max_intersample_g = -std::numeric_limits<double>::infinity();

  const auto push_row = [&](const Stacked& q, double tq) {
    TraceRow row;
    row.t = tq;
    row.y = q.x[0];
    row.y0 = exo.q(q.v, cfg.w);
    row.e = row.y - row.y0;
    row.u = drive.u;
    row.v = q.v;
    row.z = q.z;
    row.x = q.x;
    row.eta = q.eta;
    row.xi_hat = q.xi;
    res.trace.push_back(std::move(row));
  };

  double g_node = trigger_at(st);  // <= -δ² right after the initial latch
  push_row(st, t);

  std::size_t step_index = 0;
  const double t_end_eps = cfg.h * 1e-9;
  while (t < cfg.t_end - t_end_eps) {
    const double dt = std::min(cfg.h, cfg.t_end - t);
    Stacked next = rk4(st, dt);
    if (!stacked_finite(next))
      throw NonFiniteState("simulate: state is no longer finite at t = " + std::to_string(t + dt));
    const double g_next = trigger_at(next);

    if (g_next >= 0.0) {
      double t_star = t + dt;
      Stacked ev = std::move(next);
      if (g_node < 0.0) {
        const auto g_of_t = [&](double tau) { return trigger_at(rk4(st, tau - t)); };
        t_star = locate_event(t, g_node, t + dt, g_next, g_of_t, cfg.event_tol);
        if (t_star != t + dt) ev = rk4(st, t_star - t);
      }
      // With a degenerate latch (only possible for δ = 0 at the origin)
      // g_node can itself be >= 0; then the node is the event.
      const double g_pre = trigger_at(ev);

      const std::size_t k = latched.k + 1;
      const double dwell = t_star - latched.t_k;
      latched = make_latched(t_star, error_of(ev), ev.eta, ev.xi, k, law, im);
      drive = make_drive(latched, gains, im);
      st = std::move(ev);
      t = t_star;

      const double g_post = trigger_at(st);
      const Vector checked_k = checked_coords(latched.e_k, latched.xi_hat_k, law);
      res.trigger_log.push_back(TriggerRecord{k, t_star, dwell, g_pre, g_post,
                                              checked_k[r - 1], g_node, g_next, dt});
      g_node = g_post;

      if (k >= cfg.max_triggers) {
        res.status = SimStatus::kMaxTriggers;
        break;
      }
      if (dwell < cfg.min_dwell_guard) {
        res.status = SimStatus::kZenoGuard;
        break;
      }
    } else {
      res.max_intersample_g = std::max(res.max_intersample_g, g_next);
      st = std::move(next);
      t += dt;
      ++step_index;
      g_node = g_next;
      if (step_index % cfg.report_stride == 0) push_row(st, t);
    }
  }

  if (res.trace.empty() || res.trace.back().t != t) push_row(st, t);
  return res;
}

}  // namespace etreg
