#include "dtnlab/free_solutions.hpp"

#include <cmath>
#include <limits>

#include "dtnlab/errors.hpp"
#include "dtnlab/spectrum.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {

// Below this |F|/sum|terms| the boundary value is cancellation noise.
constexpr double kCancellationFloor = 1e-13;

void check_dim(int j, int d) {
  if (j < 0) throw ParameterError("degree j must be >= 0");
  if (d < 2) throw ParameterError("dimension d must be >= 2");
}

NormalizedJ boundary_series(int j, int d, const ComplexEnergy& E) {
  const Order a = Order::from_degree(j, d);
  const NormalizedJ f = bessel_j_normalized(a, 0.25 * E.E);
  if (std::abs(f.f) < kCancellationFloor * f.abs_sum) {
    double dist = std::numeric_limits<double>::infinity();
    const double x_max = std::sqrt(std::abs(E.E)) + 10.0;
    for (double z : bessel_j_zeros_below(a, x_max)) {
      dist = std::min(dist, std::abs(E.E - z * z));
    }
    throw ConditioningError(
        "energy is numerically a Dirichlet eigenvalue of degree " +
            std::to_string(j),
        dist);
  }
  return f;
}

ScaledComplex scaled(const ScaledSeriesEval& e) { return e.value; }

}  // namespace

cplx free_radial_ratio(int j, int d, const ComplexEnergy& E, double r) {
  check_dim(j, d);
  if (!(r > 0.0 && r <= 1.0)) throw ParameterError("radius must be in (0, 1]");
  const NormalizedJ at_one = boundary_series(j, d, E);
  if (r == 1.0) return {1.0, 0.0};
  const NormalizedJ at_r =
      bessel_j_normalized(Order::from_degree(j, d), 0.25 * E.E * r * r);
  return std::pow(r, j) * at_r.f / at_one.f;
}

cplx ring_radial(int j, int d, const ComplexEnergy& E, double r) {
  check_dim(j, d);
  if (E.E == cplx(0.0, 0.0)) throw ParameterError("ring_radial needs E != 0");
  const Order a = Order::from_degree(j, d);
  const cplx kr = E.k * r;
  const ScaledComplex t1 =
      scaled(bessel_y_scaled(a, kr)) * scaled(bessel_j_scaled(a, E.k));
  const ScaledComplex t2 =
      scaled(bessel_j_scaled(a, kr)) * scaled(bessel_y_scaled(a, E.k));
  return std::pow(r, -0.5 * (d - 2)) * (t1 - t2).value();
}

cplx ring_radial_deriv(int j, int d, const ComplexEnergy& E, double r) {
  check_dim(j, d);
  if (E.E == cplx(0.0, 0.0)) throw ParameterError("ring_radial needs E != 0");
  const Order a = Order::from_degree(j, d);
  const cplx kr = E.k * r;
  const ScaledComplex jk = scaled(bessel_j_scaled(a, E.k));
  const ScaledComplex yk = scaled(bessel_y_scaled(a, E.k));
  const ScaledComplex d1 =
      scaled(bessel_deriv_scaled(BesselKind::Y, a, kr)) * jk -
      scaled(bessel_deriv_scaled(BesselKind::J, a, kr)) * yk;
  const ScaledComplex v = scaled(bessel_y_scaled(a, kr)) * jk -
                          scaled(bessel_j_scaled(a, kr)) * yk;
  const double h = 0.5 * (d - 2);
  return std::pow(r, -h) * E.k * d1.value() -
         h * std::pow(r, -h - 1.0) * v.value();
}

cplx free_dtn_entry(int j, int d, const ComplexEnergy& E) {
  check_dim(j, d);
  if (E.E == cplx(0.0, 0.0)) return {static_cast<double>(j), 0.0};
  const NormalizedJ f = boundary_series(j, d, E);
  return static_cast<double>(j) + 2.0 * f.w_df / f.f;
}

}  // namespace dtnlab
