#pragma once

// Matrix functions behind the regulator synthesis pipeline: characteristic
// polynomial, Hurwitz verdicts, matrix exponential, zero-order-hold
// discretization, and the Sylvester equation X A - B X = C.

#include <utility>
#include <vector>

#include "etreg/matrix.hpp"

namespace etreg {

/// Monic characteristic polynomial of a square matrix by Faddeev-LeVerrier:
/// returns {1, c1, ..., cn} for det(λI - A) = λ^n + c1 λ^(n-1) + ... + cn.
std::vector<double> char_poly(const Matrix& a);

enum class Stability {
  kHurwitz,     // all eigenvalues strictly in the open left half plane
  kNotHurwitz,  // some Routh first-column entry negative beyond tolerance
  kMarginal     // a Routh pivot within tolerance of zero; not Hurwitz
};

/// Routh-table stability test on the characteristic polynomial. No
/// eigenvalue solver involved; pivots within `pivot_tol` of zero report
/// kMarginal (distinct from a clean sign change).
Stability hurwitz_verdict(const Matrix& a, double pivot_tol = 1e-12);

/// True iff hurwitz_verdict(a) == Stability::kHurwitz.
bool is_hurwitz(const Matrix& a);

/// Matrix exponential: scale A by 2^-k until ||A 2^-k||_1 <= 0.5, apply an
/// order-13 truncated Taylor series, square k times. Holds relative error
/// below ~1e-10 for ||A|| <= 100. Throws Overflow when entries leave the
/// representable range.
Matrix expm(const Matrix& a);

/// Exact zero-order-hold discretization over a step dt > 0:
///   A_d = e^(A dt),  B_d = (∫_0^dt e^(A τ) dτ) B,
/// read off the exponential of the augmented block [[A, B], [0, 0]] dt.
std::pair<Matrix, Matrix> zoh_discretize(const Matrix& a, const Matrix& b, double dt);

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Unique solution X of X A - B X = C for square A, B with disjoint spectra,
/// via the vectorized system (Aᵀ ⊗ I - I ⊗ B) vec(X) = vec(C) and
/// partial-pivot LU. O(s^6), fine for the intended s <= ~8. Throws
/// SingularSystem when the Kronecker operator is numerically singular
/// (overlapping spectra).
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c);

}  // namespace etreg
