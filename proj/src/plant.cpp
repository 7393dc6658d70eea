#include "etreg/plant.hpp"

#include <cmath>
#include <string>

namespace etreg {

Vector LorenzParams::a() const {
  Vector out = nominal();
  if (w.size() != 7) throw InvalidParams("LorenzParams: w must have 7 entries");
  for (std::size_t i = 0; i < 7; ++i) out[i] += w[i];
  return out;
}

OutputFeedbackPlant lorenz_plant(const LorenzParams& p) {
  if (p.w.size() != 7) throw InvalidParams("lorenz_plant: w must have 7 entries");
  for (std::size_t i = 0; i < 7; ++i) {
    if (!(std::abs(p.w[i]) <= 1.0))
      throw InvalidParams("lorenz_plant: |w_" + std::to_string(i + 1) + "| must be <= 1");
  }
  const Vector a = p.a();
  if (!(a[0] < 0.0)) throw InvalidParams("lorenz_plant: a1 must stay negative");
  if (!(a[2] < 0.0)) throw InvalidParams("lorenz_plant: a3 must stay negative");
  if (!(a[6] > 0.0)) throw InvalidParams("lorenz_plant: input gain b must stay positive");

  OutputFeedbackPlant plant;
  plant.r = 2;
  plant.n_z = 2;
  plant.f = [a](const Vector& z, double y, const Vector&, const Vector&) {
    return Vector{a[0] * z[0] + a[1] * y, a[2] * z[1] + z[0] * y};
  };
  plant.g = {
      [a](const Vector& z, double y, const Vector&, const Vector&) {
        return a[3] * z[0] + a[4] * y - z[0] * z[1];
      },
      [a](const Vector& z, double, const Vector&, const Vector&) { return a[5] * z[0]; },
  };
  plant.b = [b = a[6]](const Vector&) { return b; };

  // Spot-check the equilibrium contract f(0,0,0,w) = 0, g_i(0,0,0,w) = 0.
  const Vector z0 = Vector::zeros(2);
  const Vector v0 = Vector::zeros(2);
  if (plant.f(z0, 0.0, v0, p.w).norm() > 1e-12 ||
      std::abs(plant.g[0](z0, 0.0, v0, p.w)) > 1e-12 ||
      std::abs(plant.g[1](z0, 0.0, v0, p.w)) > 1e-12)
    throw InvalidParams("lorenz_plant: equilibrium spot-check failed");
  return plant;
}

Exosystem lorenz_exosystem() {
  Matrix s = Matrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}});
  auto q = [](const Vector& v, const Vector&) { return v[0]; };
  return make_exosystem(std::move(s), q, {Vector::zeros(7)});
}

std::pair<Vector, Vector> plant_rates(const OutputFeedbackPlant& plant, const PlantState& st,
                                      double u, const Vector& v, const Vector& w) {
  if (st.z.size() != plant.n_z || st.x.size() != plant.r || plant.g.size() != plant.r)
    throw DimensionMismatch("plant_rates: state dimensions do not match the plant");
  const double y = st.x[0];
  Vector dz = plant.f(st.z, y, v, w);
  if (dz.size() != plant.n_z) throw DimensionMismatch("plant_rates: f returned wrong length");
  Vector dx(plant.r);
  for (std::size_t i = 0; i < plant.r; ++i) {
    dx[i] = plant.g[i](st.z, y, v, w);
    if (i + 1 < plant.r)
      dx[i] += st.x[i + 1];
    else
      dx[i] += plant.b(w) * u;
  }
  return {std::move(dz), std::move(dx)};
}

}  // namespace etreg
