#include "etreg/exogen.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace etreg {

Exosystem make_exosystem(Matrix s, std::function<double(const Vector&, const Vector&)> q,
                         const std::vector<Vector>& sample_w) {
  if (!s.is_square()) throw DimensionMismatch("exosystem matrix S must be square");
  if (!q) throw InvalidParams("exosystem needs a reference output q(v, w)");
  // Neutral stability requires every eigenvalue on the imaginary axis, so
  // neither S nor -S can be Hurwitz.
  if (hurwitz_verdict(s) == Stability::kHurwitz)
    throw InvalidParams("exosystem S is Hurwitz; it must be neutrally stable");
  if (hurwitz_verdict(s * -1.0) == Stability::kHurwitz)
    throw InvalidParams("exosystem -S is Hurwitz; S must be neutrally stable");
  const std::size_t n_v = s.rows();
  for (const Vector& w : sample_w) {
    if (std::abs(q(Vector::zeros(n_v), w)) > 1e-12)
      throw InvalidParams("exosystem q(0, w) must vanish");
  }
  return Exosystem{std::move(s), n_v, std::move(q)};
}

std::pair<Matrix, Vector> companion_from_generator(const SteadyStateGenerator& g) {
  if (g.s < 1 || g.varrho.size() != g.s)
    throw InvalidParams("generator needs s >= 1 coefficients");
  Matrix phi(g.s, g.s);
  for (std::size_t i = 0; i + 1 < g.s; ++i) phi(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < g.s; ++j) phi(g.s - 1, j) = g.varrho[j];
  Vector gamma = Vector::unit(g.s, 0);
  return {phi, gamma};
}

std::size_t controllability_rank(const Matrix& m, const Vector& n, double tol) {
  if (!m.is_square() || m.rows() != n.size())
    throw DimensionMismatch("controllability_rank: M must be s×s, N length s");
  const std::size_t s = m.rows();
  Matrix ctrb(s, s);
  Vector col = n;
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < s; ++i) ctrb(i, j) = col[i];
    col = m * col;
  }
  return pivoted_rank(ctrb, tol);
}

InternalModel synthesize(const SteadyStateGenerator& g, const Matrix& m, const Vector& n) {
  auto [phi, gamma] = companion_from_generator(g);
  if (hurwitz_verdict(phi) == Stability::kHurwitz ||
      hurwitz_verdict(phi * -1.0) == Stability::kHurwitz)
    throw InvalidParams("generator polynomial roots must lie on the imaginary axis");

  if (m.rows() != g.s || !m.is_square())
    throw DimensionMismatch("synthesize: M must be s×s");
  if (n.size() != g.s) throw DimensionMismatch("synthesize: N must have length s");
  if (hurwitz_verdict(m) != Stability::kHurwitz)
    throw NotHurwitz("synthesize: M is not Hurwitz");
  const std::size_t rank = controllability_rank(m, n);
  if (rank != g.s)
    throw NotControllable("synthesize: (M, N) controllability rank " + std::to_string(rank) +
                          " of " + std::to_string(g.s));

  const Matrix c = outer(n, gamma);
  const Matrix t = solve_sylvester(phi, m, c);

  // Psi = Gamma T^-1 as a row: solve Tᵀ ψᵀ = Γᵀ.
  const Vector psi = solve_linear(t.transpose(), gamma);

  InternalModel im{phi, gamma, m, n, t, psi};
  const double resid = (t * phi - m * t - c).frobenius_norm();
  if (!(resid <= 1e-10 * std::max(1.0, c.frobenius_norm())))
    throw SingularSystem("synthesize: Sylvester residual out of tolerance");
  Vector check = t.transpose() * psi;
  check -= gamma;
  if (!(check.norm() <= 1e-9)) throw SingularSystem("synthesize: Psi T != Gamma");
  return im;
}

std::pair<Matrix, Vector> default_stabilizer_pair(std::size_t s) {
  if (s < 1) throw InvalidParams("default_stabilizer_pair: s >= 1 required");
  // Coefficients of prod_{i=1..s} (λ + i) = λ^s + a1 λ^(s-1) + ... + as.
  std::vector<double> coeff{1.0};
  for (std::size_t i = 1; i <= s; ++i) {
    std::vector<double> next(coeff.size() + 1, 0.0);
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      next[j] += coeff[j] * static_cast<double>(i);
      next[j + 1] += coeff[j];
    }
    coeff = std::move(next);
  }
  // coeff is ascending in λ: coeff[k] multiplies λ^k. Companion last row is
  // (-a_s, ..., -a_1) = -coeff[0..s-1].
  Matrix m(s, s);
  for (std::size_t i = 0; i + 1 < s; ++i) m(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < s; ++j) m(s - 1, j) = -coeff[j];
  return {m, Vector::unit(s, s - 1)};
}

InternalModel synthesize(const SteadyStateGenerator& g) {
  auto [m, n] = default_stabilizer_pair(g.s);
  return synthesize(g, m, n);
}

Vector internal_model_rates(const InternalModel& im, const Vector& eta, double u) {
  if (eta.size() != im.order())
    throw DimensionMismatch("internal_model_rates: eta length must equal s");
  Vector rates = im.M * eta;
  for (std::size_t i = 0; i < rates.size(); ++i) rates[i] += im.N[i] * u;
  return rates;
}

}  // namespace etreg
