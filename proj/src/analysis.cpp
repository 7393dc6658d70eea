#include "etreg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace etreg {

Metrics compute_metrics(const SimResult& res, double t_a, double t_b) {
  if (!(t_a < t_b)) throw EmptyWindow("compute_metrics: tail window is empty");

  Metrics m;
  bool any = false;
  for (const TraceRow& row : res.trace) {
    if (row.t < t_a || row.t > t_b) continue;
    any = true;
    m.tail_sup_error = std::max(m.tail_sup_error, std::abs(row.e));
  }
  if (!any) throw EmptyWindow("compute_metrics: no trace rows in the tail window");

  m.trigger_count_total = res.trigger_log.size();

  const double horizon = res.trace.empty() ? 0.0 : res.trace.back().t;
  const double window = 5.0;
  const std::size_t n_windows =
      static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / window)));
  m.trigger_counts_windowed.assign(n_windows, 0);

  double min_dwell = std::numeric_limits<double>::infinity();
  double sum_dwell = 0.0;
  for (const TriggerRecord& ev : res.trigger_log) {
    min_dwell = std::min(min_dwell, ev.dwell);
    sum_dwell += ev.dwell;
    const std::size_t idx =
        std::min(n_windows - 1, static_cast<std::size_t>(ev.t_k / window));
    ++m.trigger_counts_windowed[idx];
  }
  m.min_dwell = min_dwell;
  m.mean_dwell =
      res.trigger_log.empty() ? 0.0 : sum_dwell / static_cast<double>(res.trigger_log.size());
  return m;
}

CoordChain coord_chain(double b, const InternalModel& im, std::size_t r) {
  if (!(b > 0.0)) throw InvalidGain("coord_chain: input gain b must be positive");
  if (r < 1) throw InvalidParams("coord_chain: r must be >= 1");
  const std::size_t s = im.order();

  CoordChain chain;
  chain.c.assign(r, Vector(s));
  chain.c[r - 1] = im.N * (1.0 / b);
  for (std::size_t i = r - 1; i-- > 0;) chain.c[i] = im.M * chain.c[i + 1];

  chain.d = Vector(r);
  for (std::size_t i = 0; i < r; ++i) chain.d[i] = b * dot(im.Psi, chain.c[r - 1 - i]);

  chain.U_d = Matrix::identity(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < i; ++j) chain.U_d(i, j) = -chain.d[i - j - 1];

  chain.C = Matrix(s, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < s; ++i) chain.C(i, j) = chain.c[j][i];

  chain.A_d = Matrix(r, r);
  chain.A_c = Matrix(r, r);
  for (std::size_t i = 0; i + 1 < r; ++i) {
    chain.A_d(i, i + 1) = 1.0;
    chain.A_c(i, i + 1) = 1.0;
  }
  for (std::size_t j = 0; j < r; ++j) chain.A_d(r - 1, j) = chain.d[r - 1 - j];
  return chain;
}

TransformedView transformed_view(const ClosedLoopState& state, const RegulatorSolution& sol,
                                 const CoordChain& chain, double b, const Vector& w) {
  if (!sol.zz || !sol.xx || !sol.theta)
    throw MissingSolution("transformed_view: regulator solution not supplied");
  if (!(b > 0.0)) throw InvalidGain("transformed_view: input gain b must be positive");

  TransformedView tv;
  tv.z_bar = state.z - sol.zz(state.v, w);
  tv.x_bar = state.x - sol.xx(state.v, w);
  tv.eta_bar = state.eta - sol.theta(state.v, w) - chain.C * tv.x_bar;
  tv.xi = (chain.U_d * tv.x_bar) * (1.0 / b);
  return tv;
}

}  // namespace etreg
