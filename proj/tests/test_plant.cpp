#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "etreg/plant.hpp"
#include "oracles.hpp"

using namespace etreg;

namespace {

Vector paper_w() { return Vector{0.5, -0.4, 0.1, -0.3, 0.2, -0.3, 0.4}; }

// Direct substitution into the plant equations, the reference for every
// expected rate below.
std::pair<Vector, Vector> lorenz_rates_by_hand(const Vector& a, const Vector& z, const Vector& x,
                                               double u) {
  const double y = x[0];
  Vector dz{a[0] * z[0] + a[1] * y, a[2] * z[1] + z[0] * y};
  Vector dx{x[1] + a[3] * z[0] + a[4] * y - z[0] * z[1], a[6] * u + a[5] * z[0]};
  return {dz, dx};
}

}  // namespace

TEST_CASE("lorenz_plant: nominal parameters, z = (1,0), x = 0, u = 0") {
  const OutputFeedbackPlant plant = lorenz_plant(LorenzParams{});
  const PlantState st{Vector{1.0, 0.0}, Vector{0.0, 0.0}};
  const auto [dz, dx] = plant_rates(plant, st, 0.0, Vector::zeros(2), Vector::zeros(7));

  const auto [dz_ref, dx_ref] =
      lorenz_rates_by_hand(LorenzParams::nominal(), st.z, st.x, 0.0);
  CHECK(dz[0] == doctest::Approx(-8.0));
  CHECK(dz[1] == doctest::Approx(0.0));
  CHECK(dx[0] == doctest::Approx(2.0));
  CHECK(dx[1] == doctest::Approx(dx_ref[1]));  // a6 z1 = -2
  CHECK(dz[0] == doctest::Approx(dz_ref[0]));
  CHECK(dz[1] == doctest::Approx(dz_ref[1]));
  CHECK(dx[0] == doctest::Approx(dx_ref[0]));
}

TEST_CASE("lorenz_plant: the origin is an equilibrium for any valid w") {
  for (const Vector& w : {Vector::zeros(7), paper_w()}) {
    LorenzParams p;
    p.w = w;
    const OutputFeedbackPlant plant = lorenz_plant(p);
    const PlantState st{Vector::zeros(2), Vector::zeros(2)};
    const auto [dz, dx] = plant_rates(plant, st, 0.0, Vector::zeros(2), w);
    CHECK(dz.norm() == 0.0);
    CHECK(dx.norm() == 0.0);
  }
}

TEST_CASE("lorenz_plant: the benchmark uncertainty gives b = 1.4") {
  LorenzParams p;
  p.w = paper_w();
  const OutputFeedbackPlant plant = lorenz_plant(p);
  CHECK(plant.b(p.w) == doctest::Approx(1.4));
}

TEST_CASE("lorenz_plant: parameter invariants are enforced") {
  LorenzParams bad_b;
  bad_b.w = Vector{0, 0, 0, 0, 0, 0, -1.0};  // b = 1 - 1 = 0
  CHECK_THROWS_AS(lorenz_plant(bad_b), InvalidParams);

  LorenzParams out_of_box;
  out_of_box.w = Vector{1.5, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(lorenz_plant(out_of_box), InvalidParams);

  LorenzParams wrong_len;
  wrong_len.w = Vector::zeros(6);
  CHECK_THROWS_AS(lorenz_plant(wrong_len), InvalidParams);
}

TEST_CASE("lorenz_plant: b stays positive on the valid corners of the uncertainty box") {
  // Corners w_i = ±1 subject to the sign constraints: only w7 = -1 breaks
  // an invariant, every other corner must construct with b > 0.
  for (int mask = 0; mask < (1 << 7); ++mask) {
    LorenzParams p;
    for (int i = 0; i < 7; ++i) p.w[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    if (p.w[6] == -1.0) {
      CHECK_THROWS_AS(lorenz_plant(p), InvalidParams);
      continue;
    }
    const OutputFeedbackPlant plant = lorenz_plant(p);
    CHECK(plant.b(p.w) > 0.0);
  }
}

TEST_CASE("plant_rates: chain coupling and input channel") {
  const OutputFeedbackPlant plant = lorenz_plant(LorenzParams{});
  const Vector w0 = Vector::zeros(7);

  // x = (0, 1): the chain feeds x2 into x1'.
  const auto [dz1, dx1] =
      plant_rates(plant, {Vector::zeros(2), Vector{0.0, 1.0}}, 0.0, Vector::zeros(2), w0);
  CHECK(dx1[0] == doctest::Approx(1.0));
  CHECK(dz1.norm() == 0.0);

  // u = 1 from the zero state with the benchmark w: x2' = b(w) = 1.4.
  LorenzParams p;
  p.w = paper_w();
  const OutputFeedbackPlant uncertain = lorenz_plant(p);
  const auto [dz2, dx2] =
      plant_rates(uncertain, {Vector::zeros(2), Vector::zeros(2)}, 1.0, Vector::zeros(2), p.w);
  CHECK(dx2[1] == doctest::Approx(1.4));
}

TEST_CASE("plant_rates: affine in u with slope b(w)") {
  LorenzParams p;
  p.w = paper_w();
  const OutputFeedbackPlant plant = lorenz_plant(p);
  const PlantState st{Vector{0.3, -0.2}, Vector{0.1, 0.4}};
  const Vector v{0.5, -0.5};
  for (double u : {-2.0, 0.0, 1.0}) {
    const auto [dz_a, dx_a] = plant_rates(plant, st, u, v, p.w);
    const auto [dz_b, dx_b] = plant_rates(plant, st, u + 1.0, v, p.w);
    CHECK(dx_b[1] - dx_a[1] == doctest::Approx(plant.b(p.w)).epsilon(1e-15));
    CHECK(dx_b[0] == dx_a[0]);
    CHECK((dz_b - dz_a).norm() == 0.0);
  }
}

TEST_CASE("plant_rates: dimension mismatches are rejected") {
  const OutputFeedbackPlant plant = lorenz_plant(LorenzParams{});
  CHECK_THROWS_AS(
      plant_rates(plant, {Vector::zeros(3), Vector::zeros(2)}, 0.0, Vector::zeros(2),
                  Vector::zeros(7)),
      DimensionMismatch);
}

TEST_CASE("lorenz_exosystem: rotation by π/2 and the projection output") {
  const Exosystem exo = lorenz_exosystem();
  CHECK(exo.q(Vector{0.3, 0.7}, Vector::zeros(7)) == doctest::Approx(0.3));

  // Integrate v' = S v with RK4, h = 1e-3, from (1, 0).
  Vector v{1.0, 0.0};
  const double h = 1e-3;
  const auto step = [&](Vector q) {
    const Vector k1 = exo.S * q;
    const Vector k2 = exo.S * (q + k1 * (0.5 * h));
    const Vector k3 = exo.S * (q + k2 * (0.5 * h));
    const Vector k4 = exo.S * (q + k3 * h);
    return q + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  };
  const double quarter_turn = std::acos(-1.0) / 2.0;
  const std::size_t n_quarter = static_cast<std::size_t>(quarter_turn / h);
  for (std::size_t i = 0; i < n_quarter; ++i) v = step(v);
  // Land exactly on π/2 with one short step.
  const double rem = quarter_turn - static_cast<double>(n_quarter) * h;
  {
    const Vector k1 = exo.S * v;
    const Vector k2 = exo.S * (v + k1 * (0.5 * rem));
    const Vector k3 = exo.S * (v + k2 * (0.5 * rem));
    const Vector k4 = exo.S * (v + k3 * rem);
    v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (rem / 6.0);
  }
  CHECK(v[0] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(v[1] == doctest::Approx(-1.0).epsilon(1e-8));

  // Norm preservation out to t = 10 (skew-symmetric S).
  Vector far{1.0, 0.0};
  for (std::size_t i = 0; i < 10000; ++i) far = step(far);
  CHECK(far.norm() == doctest::Approx(1.0).epsilon(1e-8));
}
