#include "etreg/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace etreg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace

Vector Vector::unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1.0;
  return v;
}

bool Vector::is_finite() const {
  for (double x : e_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double Vector::norm() const {
  double s = 0.0;
  for (double x : e_) s += x * x;
  return std::sqrt(s);
}

double Vector::inf_norm() const {
  double m = 0.0;
  for (double x : e_) m = std::max(m, std::abs(x));
  return m;
}

Vector& Vector::operator+=(const Vector& o) {
  require(size() == o.size(), "vector sizes differ in +=");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require(size() == o.size(), "vector sizes differ in -=");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Vector& Vector::operator*=(double a) {
  for (double& x : e_) x *= a;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(Vector a, double s) { return a *= s; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator-(Vector a) { return a *= -1.0; }

double dot(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector sizes differ in dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    require(row.size() == c, "ragged initializer in Matrix::from_rows");
    std::size_t j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

bool Matrix::is_finite() const {
  for (double x : e_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : e_) s += x * x;
  return std::sqrt(s);
}

double Matrix::one_norm() const {
  double m = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shapes differ in +=");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shapes differ in -=");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Matrix& Matrix::operator*=(double a) {
  for (double& x : e_) x *= a;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "inner dimensions differ in matrix product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require(a.cols() == x.size(), "dimensions differ in matrix-vector product");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix outer(const Vector& u, const Vector& v) {
  Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

LuSolver::LuSolver(Matrix a) : n_(a.rows()), lu_(std::move(a)), perm_(n_) {
  if (!lu_.is_square()) throw DimensionMismatch("LuSolver needs a square matrix");
  a_norm1_ = lu_.one_norm();
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < 1e-300) throw SingularSystem("LU pivot vanished: matrix is singular");
    if (p != k) {
      std::swap(perm_[p], perm_[k]);
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(p, j), lu_(k, j));
    }
    const double piv = lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double m = lu_(i, k) / piv;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

Vector LuSolver::solve(const Vector& b) const {
  if (b.size() != n_) throw DimensionMismatch("rhs size differs from system size");
  Vector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_(ii, j) * y[j];
    y[ii] = s / lu_(ii, ii);
  }
  return y;
}

Matrix LuSolver::solve(const Matrix& b) const {
  if (b.rows() != n_) throw DimensionMismatch("rhs rows differ from system size");
  Matrix x(n_, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const Vector xj = solve(b.col(j));
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = xj[i];
  }
  return x;
}

Matrix LuSolver::inverse() const { return solve(Matrix::identity(n_)); }

double LuSolver::condition_1norm() const {
  if (n_ == 0) return 0.0;
  return a_norm1_ * inverse().one_norm();
}

namespace {

const LuSolver& gate_condition(const LuSolver& lu) {
  const double cond = lu.condition_1norm();
  if (!(cond <= kConditionLimit)) {
    throw SingularSystem("estimated condition " + std::to_string(cond) +
                         " exceeds limit; refusing to solve");
  }
  return lu;
}

}  // namespace

Vector solve_linear(const Matrix& a, const Vector& b) {
  LuSolver lu(a);
  return gate_condition(lu).solve(b);
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  LuSolver lu(a);
  return gate_condition(lu).solve(b);
}

Matrix inverse(const Matrix& a) {
  LuSolver lu(a);
  return gate_condition(lu).inverse();
}

std::size_t pivoted_rank(Matrix a, double tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    // Full pivot: largest remaining entry.
    std::size_t pi = k, pj = k;
    double best = 0.0;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (best <= tol) break;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(pi, j), a(k, j));
    for (std::size_t i = 0; i < m; ++i) std::swap(a(i, pj), a(i, k));
    ++rank;
    for (std::size_t i = k + 1; i < m; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return rank;
}

}  // namespace etreg
