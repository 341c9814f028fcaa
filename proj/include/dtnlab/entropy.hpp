#pragma once

// Metric-entropy constructions: epsilon-discrete families of small smooth
// potentials, delta-nets for bounded holomorphic functions on an ellipse
// around an energy interval, and the size of the composed net for the
// image of the DtN-difference map.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dtnlab/energy.hpp"
#include "dtnlab/potential.hpp"

namespace dtnlab {

using cplx = std::complex<double>;

// ---- bump ----

// b(t) = exp(1 - 1/(1 - 36 t^2)) for |t| < 1/6, else 0; b(0) = 1. The cell
// bump is the tensor product prod_k b(y_k).
double cell_bump_1d(double t);
// b(t), b'(t), ..., b^(k)(t), exact up to rounding (Taylor-jet arithmetic).
std::vector<double> cell_bump_jet(double t, int k);
// sup_t |b^(j)(t)| for j = 0..k from a dense sample of (-1/6, 1/6).
std::vector<double> cell_bump_derivative_sups(int k);
// max over multi-indices |alpha| <= k of sup |d^alpha prod b(y_i)| in R^d.
double cell_bump_cm_norm(int d, int k);

// ---- epsilon-discrete family ----

class EpsDiscreteFamily {
 public:
  // ParameterError unless 2 <= d <= 3, m > 0, beta > 0 and 0 < eps < mu beta.
  static EpsDiscreteFamily build(int d, double m, double eps, double beta);

  int d() const noexcept { return d_; }
  double m() const noexcept { return m_; }
  double eps() const noexcept { return eps_; }
  double beta() const noexcept { return beta_; }
  int cells_per_axis() const noexcept { return N_; }
  long cell_count() const noexcept { return cells_; }
  double bump_cm_norm() const noexcept { return bump_cm_; }
  double mu() const noexcept { return 0.5 / bump_cm_; }
  // ln(2^(N^d)).
  double log_pattern_count() const noexcept;
  // 2^-(d+1) (mu beta/eps)^(d/m), the guaranteed lower bound on ln|Z|.
  double log_count_lower_bound() const noexcept;
  // eps * N^m * bump_cm_norm, which must not exceed beta.
  double cm_budget() const noexcept;

  // Sign pattern of a member: +-1 per cell, drawn from a 64-bit seed.
  std::vector<int> pattern(std::uint64_t seed) const;
  // eps sum_cells s_cell prod_k b(N (x_k - c_k)); x has d coordinates.
  double member_value(const std::vector<int>& signs, const double* x) const;
  // Partial derivative d^alpha of the member at x.
  double member_derivative(const std::vector<int>& signs, const double* x,
                           const std::vector<int>& alpha) const;
  // Cell centre along one axis.
  double cell_center(int i) const;
  double cell_width() const noexcept { return 1.0 / (3.0 * N_); }

  // Sup distance between two members on a grid with `per_cell` points per
  // axis in every cell (odd per_cell includes the centres).
  double sup_distance(const std::vector<int>& a, const std::vector<int>& b,
                      int per_cell = 9) const;
  // Sup of |member| on the same grid.
  double sup_norm(const std::vector<int>& signs, int per_cell = 9) const;
  // C^k norm max_{|alpha| <= k} sup |d^alpha f| measured on the grid.
  double measured_cm_norm(const std::vector<int>& signs, int k,
                          int per_cell = 9) const;

  // d = 2 member re-expanded in theta as sum_{|n| <= n_cut} g_n(r) e^{i n theta}
  // with g_n interpolated from a radial table. `residual` receives the
  // largest reconstruction error found on a check grid.
  Potential as_potential(const std::vector<int>& signs, int n_cut,
                         double* residual = nullptr) const;

 private:
  int d_ = 2;
  double m_ = 1.0;
  double eps_ = 0.0;
  double beta_ = 0.0;
  int N_ = 1;
  long cells_ = 1;
  int k_ = 1;  // ceil(m)
  double bump_cm_ = 1.0;
};

// ---- holomorphic-function net ----

// W_{I,gamma}: the image of the strip |Im z| <= gamma under
// z -> (a+b)/2 + (a-b)/2 cos z, an ellipse around I with foci a, b.
cplx ellipse_point(const Interval& I, cplx z);
// Largest distance from a point of W_{I,gamma} to I.
double ellipse_reach(const Interval& I, double gamma);
// Largest gamma with ellipse_reach(I, gamma) <= reach (bisection).
double gamma_for_reach(const Interval& I, double reach);

struct HoloNet {
  Interval I;
  double gamma = 0.0;
  double C = 0.0;
  double delta = 0.0;
  bool degenerate = false;  // a == b: grid of complex values
  int n_delta = 0;
  double delta_prime = 0.0;  // grid step of the coefficient lattice
  double grid_step = 0.0;    // same as delta_prime (delta/2 when degenerate)
  long grid_half = 0;        // lattice points k with |k step| <= bound
  double y_delta_size = 0;   // (1 + 2 grid_half)^2
  int coefficient_count = 0; // n_delta + 1 (1 when degenerate)
  int quadrature_points = 0; // 4 (n_delta + 1)

  // coefficient_count * ln|Y_delta|.
  double log_cardinality() const;
  // log_cardinality / (ln 1/delta)^2.
  double nu() const;
};

// ParameterError unless 0 < delta < 1/e, gamma > 0, C > 0 and a <= b.
HoloNet build_holo_net(const Interval& I, double gamma, double C, double delta);

struct NetProjection {
  // Lattice indices (re, im) of each retained coefficient.
  std::vector<std::pair<long, long>> element;
  std::vector<cplx> coefficients;  // measured a_n (f = sum a_n cos(n x))
  double sup_error = 0.0;          // on a 1000-point grid of I
  std::vector<std::string> warnings;
  // Value of the net element at x in I.
  cplx element_value(const HoloNet& net, double x) const;
};

// Nearest net element by per-coefficient rounding. g is evaluated on I only;
// the bound |g| <= C on W_{I,gamma} is the caller's responsibility and a
// coefficient above its a-priori bound (times 1 + slack) raises a warning.
NetProjection project_to_net(const HoloNet& net,
                             const std::function<cplx(double)>& g,
                             double slack = 1e-6);

// Every element of a tiny net (coefficient_count * (1+2 grid_half)^2 small),
// as index tuples; used to confirm the cardinality formula.
std::vector<std::vector<std::pair<long, long>>> enumerate_net(const HoloNet& net,
                                                              long limit = 1000000);

// ---- image net ----

struct ImageNetSize {
  int l_delta_s = 0;
  double net_C = 0.0;        // sup_l (1+l)^{2s+d} 4 rho 2^{-l}
  long tuple_count = 0;      // four-tuples with max(j,i) <= l_delta_s
  double tuple_bound = 0.0;  // 8 (1 + l_delta_s)^(2d-2)
  std::vector<double> gammas;  // per interval
  double log_cardinality = 0.0;
  double eta = 0.0;  // log_cardinality / (ln 1/delta)^(2d)
};

// Smallest l with (1+l')^{2s+d} 4 rho 2^{-l'} <= delta for every l' >= l.
int l_delta_s(double s, int d, double delta, double rho_hat);

// Size of the composed delta-net for the image of the ball of radius
// 2 sigma/3 in X_{S,s}: per-entry holomorphic nets at
// delta_jpiq = (1+max(j,i))^{-2s-d} delta on ellipses that stay within
// sigma/6 of each interval.
ImageNetSize dtn_image_net_size(const EnergyIntervalSet& S, double s, int d,
                                double delta, double rho_hat);

}  // namespace dtnlab
