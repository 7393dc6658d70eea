#pragma once

// Independent reference implementations used by the tests to compute
// expected values. These deliberately avoid the library's solver paths:
// full-pivot Gaussian elimination instead of partial-pivot LU, plain scaled
// Taylor series instead of the production exponential, and a shifted
// norm-squaring spectral estimate instead of the Routh table.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "etreg/matrix.hpp"

namespace oracle {

using etreg::Matrix;
using etreg::Vector;

// Gaussian elimination with full pivoting.
inline Vector gauss_solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> col_of(n);
  for (std::size_t j = 0; j < n; ++j) col_of[j] = j;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = k, pj = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (best == 0.0) throw std::runtime_error("gauss_solve: singular system");
    if (pi != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pi, j), a(k, j));
      std::swap(b[pi], b[k]);
    }
    if (pj != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, pj), a(i, k));
      std::swap(col_of[pj], col_of[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }

  Vector y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * y[j];
    y[ii] = s / a(ii, ii);
  }
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[col_of[j]] = y[j];
  return x;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja)
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          k(ia * b.rows() + ib, ja * b.cols() + jb) = a(ia, ja) * b(ib, jb);
  return k;
}

// X A - B X = C by dense vectorization and full-pivot elimination.
inline Matrix sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
  const std::size_t s = a.rows();
  const Matrix eye = Matrix::identity(s);
  const Matrix op = oracle::kron(a.transpose(), eye) - oracle::kron(eye, b);
  Vector rhs(s * s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) rhs[j * s + i] = c(i, j);
  const Vector xv = gauss_solve(op, rhs);
  Matrix x(s, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) x(i, j) = xv[j * s + i];
  return x;
}

// e^A from a high-order plain Taylor series on A / 2^scale_pow, squared back.
inline Matrix expm_series(const Matrix& a, int terms = 40, int scale_pow = 20) {
  const std::size_t n = a.rows();
  const Matrix b = a * std::ldexp(1.0, -scale_pow);
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= terms; ++k) {
    term = term * b;
    term *= 1.0 / k;
    sum += term;
  }
  for (int k = 0; k < scale_pow; ++k) sum = sum * sum;
  return sum;
}

// Fine-step RK4 on the affine system x' = A x + c.
inline Vector rk4_affine(const Matrix& a, const Vector& c, Vector x, double t_total,
                         std::size_t steps) {
  const double h = t_total / static_cast<double>(steps);
  const auto f = [&](const Vector& q) { return a * q + c; };
  for (std::size_t i = 0; i < steps; ++i) {
    const Vector k1 = f(x);
    const Vector k2 = f(x + k1 * (0.5 * h));
    const Vector k3 = f(x + k2 * (0.5 * h));
    const Vector k4 = f(x + k3 * h);
    x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  }
  return x;
}

// Max real part of the spectrum: power/subspace iteration on the shifted
// matrix B = A + shift I, whose dominant modulus sorts by real part for a
// large enough shift; the spectral radius of B comes from normalized
// repeated squaring, lim ||B^(2^m)||^(1/2^m).
inline double spectral_abscissa(const Matrix& a) {
  const std::size_t n = a.rows();
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    bound = std::max(bound, row);
  }
  // Imaginary-part bias on |λ + shift| is at most bound² / (2 shift).
  const double shift = 4000.0 * std::max(1.0, bound * bound);
  Matrix b = a;
  for (std::size_t i = 0; i < n; ++i) b(i, i) += shift;

  double nrm = b.frobenius_norm();
  Matrix m = b * (1.0 / nrm);
  double log_rho = std::log(nrm);
  double scale = 1.0;
  for (int k = 1; k <= 60; ++k) {
    scale *= 0.5;
    const Matrix sq = m * m;
    const double s = sq.frobenius_norm();
    m = sq * (1.0 / s);
    log_rho += scale * std::log(s);
  }
  return std::exp(log_rho) - shift;
}

// Divide a monic polynomial (descending coefficients) by (λ - root).
// Returns the remainder; the quotient replaces `poly` minus its last entry.
inline double synthetic_division(std::vector<double>& poly, double root) {
  std::vector<double> out(poly.size() - 1);
  double carry = poly[0];
  for (std::size_t i = 1; i < poly.size(); ++i) {
    out[i - 1] = carry;
    carry = poly[i] + carry * root;
  }
  poly = std::move(out);
  return carry;
}

// Forward-substitution inverse of a unit lower triangular matrix.
inline Matrix unit_lower_inverse(const Matrix& l) {
  const std::size_t n = l.rows();
  Matrix inv = Matrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * inv(k, j);
      inv(i, j) = -s;
    }
  }
  return inv;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

// Well-separated Sylvester instance: skew-symmetric A (imaginary spectrum)
// and negative-definite B (real spectrum <= -1).
struct SylvesterInstance {
  Matrix a, b, c;
};

inline SylvesterInstance random_sylvester_instance(std::mt19937_64& rng, std::size_t n) {
  const Matrix g = random_matrix(rng, n);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g(i, j) - g(j, i);
  const Matrix h = random_matrix(rng, n);
  Matrix b = h.transpose() * h;
  b *= -1.0;
  b -= Matrix::identity(n);
  return {a, b, random_matrix(rng, n)};
}

}  // namespace oracle
