#pragma once

// Metrics over simulation results and coordinate-chain diagnostics:
// c_r = b^-1 N, c_{i-1} = M c_i, d_i = b Ψ c_{r+1-i}, the unit lower
// triangular U_d, and transformed-coordinate views when a regulator
// solution is supplied by the caller.

#include <cstddef>
#include <functional>
#include <vector>

#include "etreg/exogen.hpp"
#include "etreg/hybridsim.hpp"
#include "etreg/matrix.hpp"

namespace etreg {

struct Metrics {
  double tail_sup_error = 0.0;  // max |e| over the tail window
  std::size_t trigger_count_total = 0;
  std::vector<std::size_t> trigger_counts_windowed;  // fixed 5 s windows
  double min_dwell = 0.0;
  double mean_dwell = 0.0;
};

/// Tail-window and dwell statistics. Throws EmptyWindow when no trace rows
/// fall inside [t_a, t_b] or the window is empty.
Metrics compute_metrics(const SimResult& res, double t_a, double t_b);

struct CoordChain {
  std::vector<Vector> c;  // c[0] = c_1, ..., c[r-1] = c_r, each length s
  Vector d;               // d[0] = d_1, ..., d[r-1] = d_r
  Matrix U_d;             // r×r unit lower triangular with the -d sub-bands
  Matrix C;               // s×r block row [c_1 ... c_r]
  Matrix A_d;             // superdiagonal ones, last row (d_r, ..., d_1)
  Matrix A_c;             // shift matrix (superdiagonal ones, zero last row)
};

/// Assemble the chain for input gain b > 0; throws InvalidGain otherwise.
CoordChain coord_chain(double b, const InternalModel& im, std::size_t r);

/// User-supplied steady-state solution (z(v,w), x(v,w), θ(v,w)).
struct RegulatorSolution {
  std::function<Vector(const Vector& v, const Vector& w)> zz;
  std::function<Vector(const Vector& v, const Vector& w)> xx;
  std::function<Vector(const Vector& v, const Vector& w)> theta;
};

struct TransformedView {
  Vector z_bar;    // z - z(v,w)
  Vector x_bar;    // x - x(v,w)
  Vector eta_bar;  // η - θ(v,w) - C x̄
  Vector xi;       // b^-1 U_d x̄
};

/// Throws MissingSolution when any component of sol is empty.
TransformedView transformed_view(const ClosedLoopState& state, const RegulatorSolution& sol,
                                 const CoordChain& chain, double b, const Vector& w);

}  // namespace etreg
