#pragma once

// Output-feedback-form plants
//   z' = f(z, y, v, w)
//   x_i' = g_i(z, y, v, w) + x_{i+1},   i < r
//   x_r' = g_r(z, y, v, w) + b(w) u,    y = x_1
// supplied as function values plus dimension metadata, and the concrete
// hyper-chaotic Lorenz instance. Evaluation functions must be reentrant.

#include <cstddef>
#include <functional>
#include <utility>

#include "etreg/exogen.hpp"
#include "etreg/matrix.hpp"

namespace etreg {

struct PlantState {
  Vector z;  // n_z
  Vector x;  // r; the measured output is x[0]
};

struct OutputFeedbackPlant {
  std::size_t r = 0;    // relative degree
  std::size_t n_z = 0;  // inverse-dynamics dimension
  std::function<Vector(const Vector& z, double y, const Vector& v, const Vector& w)> f;
  std::vector<std::function<double(const Vector& z, double y, const Vector& v, const Vector& w)>> g;
  std::function<double(const Vector& w)> b;  // positive input gain
};

/// Uncertain Lorenz parameters a = a_nominal + w with |w_i| <= 1 and the
/// sign constraints a1 < 0, a3 < 0, b = a7 > 0.
struct LorenzParams {
  Vector w = Vector::zeros(7);

  static Vector nominal() { return Vector{-8.0, 1.0, -6.0, 2.0, -1.0, -2.0, 1.0}; }
  Vector a() const;  // nominal + w
};

/// The r = 2, n_z = 2 hyper-chaotic Lorenz plant:
///   z1' = a1 z1 + a2 x1,  z2' = a3 z2 + z1 x1,
///   x1' = x2 + a4 z1 + a5 x1 - z1 z2,  x2' = b u + a6 z1.
/// Throws InvalidParams when the parameter invariants fail.
OutputFeedbackPlant lorenz_plant(const LorenzParams& p);

/// Harmonic exosystem v1' = v2, v2' = -v1 with y0 = v1.
Exosystem lorenz_exosystem();

/// Plant vector field under a held input u.
std::pair<Vector, Vector> plant_rates(const OutputFeedbackPlant& plant, const PlantState& st,
                                      double u, const Vector& v, const Vector& w);

}  // namespace etreg
