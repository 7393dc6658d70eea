#include "etreg/matfun.hpp"

#include <cmath>
#include <cstddef>

namespace etreg {

std::vector<double> char_poly(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("char_poly needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<double> c(n + 1);
  c[0] = 1.0;
  // M_k = A M_{k-1} + c_{k-1} I,  c_k = -tr(A M_k)/k, with M_1 = I.
  Matrix m = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += c[k - 1];
    }
    c[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

Stability hurwitz_verdict(const Matrix& a, double pivot_tol) {
  const std::vector<double> p = char_poly(a);
  const std::size_t n = p.size() - 1;
  if (n == 0) return Stability::kHurwitz;

  // Routh array: row 0 holds p0, p2, ...; row 1 holds p1, p3, ...
  const std::size_t w = n / 2 + 1;
  std::vector<double> prev(w, 0.0), cur(w, 0.0), next(w, 0.0);
  for (std::size_t j = 0; j < w; ++j) {
    if (2 * j < p.size()) prev[j] = p[2 * j];
    if (2 * j + 1 < p.size()) cur[j] = p[2 * j + 1];
  }

  std::vector<double> first_col{prev[0]};
  for (std::size_t row = 1; row <= n; ++row) {
    const double pivot = cur[0];
    if (std::abs(pivot) <= pivot_tol) return Stability::kMarginal;
    first_col.push_back(pivot);
    if (row == n) break;
    for (std::size_t j = 0; j + 1 < w; ++j)
      next[j] = (pivot * prev[j + 1] - prev[0] * cur[j + 1]) / pivot;
    next[w - 1] = 0.0;
    prev = cur;
    cur = next;
  }

  for (double v : first_col) {
    if (v <= pivot_tol) return Stability::kNotHurwitz;
  }
  return Stability::kHurwitz;
}

bool is_hurwitz(const Matrix& a) { return hurwitz_verdict(a) == Stability::kHurwitz; }

Matrix expm(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("expm needs a square matrix");
  if (!a.is_finite()) throw Overflow("expm: input has non-finite entries");
  const std::size_t n = a.rows();

  int squarings = 0;
  double norm = a.one_norm();
  while (norm > 0.5 && squarings < 1100) {
    norm *= 0.5;
    ++squarings;
  }
  Matrix b = a * std::ldexp(1.0, -squarings);

  // Horner form of the order-13 Taylor polynomial:
  // e^B ≈ I + B(I + B/2 (I + ... (I + B/13))).
  const Matrix eye = Matrix::identity(n);
  Matrix p = eye;
  for (int j = 13; j >= 1; --j) p = eye + (b * p) * (1.0 / j);

  for (int i = 0; i < squarings; ++i) p = p * p;
  if (!p.is_finite()) throw Overflow("expm: result overflowed");
  return p;
}

std::pair<Matrix, Matrix> zoh_discretize(const Matrix& a, const Matrix& b, double dt) {
  if (!a.is_square()) throw DimensionMismatch("zoh_discretize: A must be square");
  if (b.rows() != a.rows()) throw DimensionMismatch("zoh_discretize: B rows must match A");
  if (!(dt > 0.0)) throw InvalidParams("zoh_discretize: dt must be positive");

  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix aug(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j) * dt;
    for (std::size_t j = 0; j < m; ++j) aug(i, n + j) = b(i, j) * dt;
  }
  const Matrix e = expm(aug);

  Matrix ad(n, n), bd(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ad(i, j) = e(i, j);
    for (std::size_t j = 0; j < m; ++j) bd(i, j) = e(i, n + j);
  }
  return {ad, bd};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const double f = a(ia, ja);
      if (f == 0.0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          k(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return k;
}

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw DimensionMismatch("solve_sylvester: A and B must be square of equal size");
  if (c.rows() != a.rows() || c.cols() != a.cols())
    throw DimensionMismatch("solve_sylvester: C shape must match A");

  const std::size_t s = a.rows();
  const Matrix eye = Matrix::identity(s);
  const Matrix op = kron(a.transpose(), eye) - kron(eye, b);

  // Column-major vec.
  Vector rhs(s * s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) rhs[j * s + i] = c(i, j);

  const Vector xv = solve_linear(op, rhs);

  Matrix x(s, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) x(i, j) = xv[j * s + i];

  const double resid = (x * a - b * x - c).frobenius_norm();
  if (!(resid <= 1e-10 * std::max(1.0, c.frobenius_norm())))
    throw SingularSystem("solve_sylvester: residual too large; spectra likely overlap");
  return x;
}

}  // namespace etreg
