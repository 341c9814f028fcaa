#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dtnlab/errors.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundCheck two_sided(double log_value, double log_lower, double log_upper) {
  BoundCheck b;
  b.margin = std::min(log_value - log_lower, log_upper - log_value);
  b.holds = b.margin >= 0.0;
  return b;
}

BoundCheck one_sided(double log_value, double log_upper) {
  BoundCheck b;
  b.margin = log_upper - log_value;
  b.holds = b.margin >= 0.0;
  return b;
}

BoundCheck not_evaluated() {
  BoundCheck b;
  b.evaluated = false;
  b.holds = true;
  b.margin = 0.0;
  return b;
}

}  // namespace

ThresholdConditions threshold_conditions(double C, int N) {
  if (!(C > 0.0)) throw ParameterError("threshold: C must be > 0");
  ThresholdConditions t;
  t.greater_than_three = N > 3;
  t.nielsen_term = std::expm1((0.25 * C * C) / (N + 1.0));
  const double twoN = 2.0 * N;
  if (twoN <= C * C) {
    t.y_theta_term = kInf;
    return t;
  }
  const double lc = std::log(0.5 * C);
  const double lg = std::lgamma(static_cast<double>(N));
  const double first =
      std::exp(std::log(3.0 * std::numbers::pi) +
               std::max(0.0, (twoN + 1.0) * lc) - lg);
  const double middle = (C * C) / (twoN - C * C);
  const double last = std::exp(twoN * lc + 0.25 * C * C - lg);
  t.y_theta_term = first + middle + last;
  return t;
}

int lemma_bessel_threshold(double C, int d) {
  if (d < 2) throw ParameterError("threshold: d must be >= 2");
  if (!(C > 0.0) || !std::isfinite(C)) {
    throw ParameterError("threshold: C must be finite and > 0");
  }
  for (int N = 4; N < 10000000; ++N) {
    if (threshold_conditions(C, N).all()) return N;
  }
  throw InternalError("threshold search did not terminate");
}

LemmaBoundsReport verify_lemma_bounds(int n, int d, cplx z) {
  const Order alpha = Order::from_degree(n, d);
  const double a = alpha.value();
  LemmaBoundsReport r;
  const double abs_z = std::abs(z);
  if (abs_z == 0.0) {
    // Both sides vanish (J) or are infinite (Y): nothing to compare.
    r.j_bound = not_evaluated();
    r.j_deriv_bound = not_evaluated();
    r.y_bound = not_evaluated();
    r.y_deriv_bound = not_evaluated();
    return r;
  }
  const double lz = std::log(0.5 * abs_z);
  const double log_pi = std::log(std::numbers::pi);

  const double log_j = bessel_j_scaled(alpha, z).value.log_abs();
  const double log_p = a * lz - log_abs_gamma(a + 1.0);
  r.j_bound = two_sided(log_j, log_p + std::log(0.5), log_p + std::log(1.5));

  const double log_jd =
      bessel_deriv_scaled(BesselKind::J, alpha, z).value.log_abs();
  r.j_deriv_bound =
      one_sided(log_jd, std::log(3.0) + (a - 1.0) * lz - log_abs_gamma(a));

  const double log_y = bessel_y_scaled(alpha, z).value.log_abs();
  const double log_q = -a * lz + log_abs_gamma(a);
  r.y_bound = two_sided(log_y, log_q - std::log(2.0) - log_pi,
                        log_q + std::log(1.5) - log_pi);

  const double log_yd =
      bessel_deriv_scaled(BesselKind::Y, alpha, z).value.log_abs();
  r.y_deriv_bound = one_sided(log_yd, std::log(3.0) - log_pi +
                                          (-a - 1.0) * lz +
                                          log_abs_gamma(a + 1.0));
  return r;
}

}  // namespace dtnlab
