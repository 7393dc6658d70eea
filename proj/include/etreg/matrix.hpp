#pragma once

// Dense real vectors and row-major matrices sized for control-design work
// (n <= 64). Plain value types; no views, no expression templates.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "etreg/errors.hpp"

namespace etreg {

/// Solves refuse matrices whose estimated 1-norm condition exceeds this.
inline constexpr double kConditionLimit = 1e12;

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : e_(n, fill) {}
  Vector(std::initializer_list<double> xs) : e_(xs) {}

  static Vector zeros(std::size_t n) { return Vector(n); }
  static Vector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return e_.size(); }
  double& operator[](std::size_t i) { return e_[i]; }
  double operator[](std::size_t i) const { return e_[i]; }
  double* data() { return e_.data(); }
  const double* data() const { return e_.data(); }

  bool is_finite() const;
  double norm() const;      // euclidean
  double inf_norm() const;  // max |x_i|

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double a);

 private:
  std::vector<double> e_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(Vector a, double s);
Vector operator*(double s, Vector a);
Vector operator-(Vector a);
double dot(const Vector& a, const Vector& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Matrix transpose() const;
  Vector col(std::size_t j) const;
  Vector row(std::size_t i) const;

  bool is_finite() const;
  double frobenius_norm() const;
  double one_norm() const;  // max column absolute sum
  double trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> e_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Vector operator*(const Matrix& a, const Vector& x);

/// Column times row, u v^T.
Matrix outer(const Vector& u, const Vector& v);

/// Partial-pivot LU factorization PA = LU of a square matrix.
/// Construction throws SingularSystem only on an (essentially) exact zero
/// pivot; conditioning is gated by the solve_linear/inverse entry points.
class LuSolver {
 public:
  explicit LuSolver(Matrix a);

  std::size_t size() const { return n_; }
  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

  /// ||A||_1 * ||A^-1||_1, with the inverse norm computed exactly from
  /// column solves (cheap at these sizes).
  double condition_1norm() const;

 private:
  std::size_t n_ = 0;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double a_norm1_ = 0.0;
};

/// Solve A x = b, refusing matrices with estimated condition > kConditionLimit.
Vector solve_linear(const Matrix& a, const Vector& b);
Matrix solve_linear(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

/// Numerical rank via full-pivot elimination with an absolute pivot tolerance.
std::size_t pivoted_rank(Matrix a, double tol);

}  // namespace etreg
