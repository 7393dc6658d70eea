#pragma once

// Exosystem representation and internal-model synthesis: companion pair
// (Phi, Gamma) from the steady-state generator polynomial, Sylvester solve
// for T, and the feedforward row Psi = Gamma T^-1.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "etreg/matfun.hpp"
#include "etreg/matrix.hpp"

namespace etreg {

/// Autonomous neutrally-stable signal generator v' = S v with reference
/// output y0 = q(v, w).
struct Exosystem {
  Matrix S;
  std::size_t n_v = 0;
  std::function<double(const Vector& v, const Vector& w)> q;
};

/// Validates the necessary condition for neutral stability (neither S nor
/// -S may be Hurwitz) and spot-tests q(0, w) = 0 on the supplied w samples.
Exosystem make_exosystem(Matrix s, std::function<double(const Vector&, const Vector&)> q,
                         const std::vector<Vector>& sample_w = {});

/// Order-s generator: every steady-state input solves
///   d^s u/dt^s = ϱ1 u + ϱ2 u' + ... + ϱs u^(s-1),
/// with P(λ) = λ^s - ϱ1 - ϱ2 λ - ... - ϱs λ^(s-1) having distinct roots on
/// the imaginary axis (the caller's obligation; the necessary Hurwitz
/// conditions are validated at synthesis).
struct SteadyStateGenerator {
  std::size_t s = 0;
  Vector varrho;  // (ϱ1, ..., ϱs)
};

/// Companion realization: Phi has ones on the superdiagonal and last row
/// (ϱ1, ..., ϱs); Gamma is the 1×s row (1, 0, ..., 0).
std::pair<Matrix, Vector> companion_from_generator(const SteadyStateGenerator& g);

struct InternalModel {
  Matrix Phi;    // s×s companion
  Vector Gamma;  // 1×s row
  Matrix M;      // s×s Hurwitz
  Vector N;      // s×1 column
  Matrix T;      // Sylvester solution of T Phi - M T = N Gamma
  Vector Psi;    // 1×s row, Gamma T^-1

  std::size_t order() const { return Phi.rows(); }
};

/// Controllability-matrix rank of [N, MN, ..., M^(s-1) N].
std::size_t controllability_rank(const Matrix& m, const Vector& n, double tol = 1e-10);

/// Synthesize the internal model for a given stabilizer pair (M, N).
/// Throws NotHurwitz / NotControllable / SingularSystem.
InternalModel synthesize(const SteadyStateGenerator& g, const Matrix& m, const Vector& n);

/// Default stabilizer pair: companion M with poles at -1, -2, ..., -s and
/// N = (0, ..., 0, 1)ᵀ: reproducible and controllable, spectrum disjoint
/// from any imaginary-axis Phi.
std::pair<Matrix, Vector> default_stabilizer_pair(std::size_t s);

/// Synthesize with the default (M, N).
InternalModel synthesize(const SteadyStateGenerator& g);

/// Compensator rates M η + N u.
Vector internal_model_rates(const InternalModel& im, const Vector& eta, double u);

}  // namespace etreg
