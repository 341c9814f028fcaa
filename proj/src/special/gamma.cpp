#include <cmath>
#include <limits>
#include <string>

#include "dtnlab/errors.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

Order::Order(int twice_alpha, int dim_parity)
    : twice_alpha_(twice_alpha), dim_parity_(dim_parity) {}

Order Order::from_degree(int n, int d) {
  if (d < 2) throw ParameterError("Order: dimension must be >= 2");
  if (n < 0) throw ParameterError("Order: degree must be >= 0");
  return Order(2 * n + d - 2, d);
}

Order Order::from_twice(int twice_alpha) {
  if (twice_alpha < 0 && twice_alpha % 2 == 0) {
    throw ParameterError("Order: negative integer orders are not supported");
  }
  const int parity = (twice_alpha % 2 == 0) ? 2 : 3;
  return Order(twice_alpha, parity);
}

Order Order::shifted(int k) const {
  const int t = twice_alpha_ + 2 * k;
  if (t < 0 && t % 2 == 0) {
    throw ParameterError("Order: shift produces a negative integer order");
  }
  return Order(t, dim_parity_);
}

Order Order::negated() const {
  if (is_integer()) {
    throw ParameterError("Order: only half-integer orders can be negated");
  }
  return Order(-twice_alpha_, dim_parity_);
}

// ---- ScaledComplex ----

namespace {
constexpr double kMaxLog = 709.78;  // log(DBL_MAX)
}

cplx ScaledComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  const double la = log_abs();
  if (la > kMaxLog) {
    throw ScaleOverflowError("value exceeds double range (log|v| = " +
                             std::to_string(la) + ")");
  }
  return mantissa * std::exp(log_scale);
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa)) + log_scale;
}

ScaledComplex ScaledComplex::rescaled_to(double new_log_scale) const {
  if (is_zero()) return {cplx(0.0, 0.0), new_log_scale};
  return {mantissa * std::exp(log_scale - new_log_scale), new_log_scale};
}

namespace {
// Keep |mantissa| near 1 so that chained products never overflow.
ScaledComplex normalize(ScaledComplex a) {
  const double m = std::abs(a.mantissa);
  if (m == 0.0 || !std::isfinite(m)) return a;
  const double lm = std::log(m);
  return {a.mantissa / m, a.log_scale + lm};
}
}  // namespace

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  return normalize({a.mantissa * b.mantissa, a.log_scale + b.log_scale});
}

ScaledComplex operator*(const ScaledComplex& a, cplx c) {
  return normalize({a.mantissa * c, a.log_scale});
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  return normalize({a.mantissa / b.mantissa, a.log_scale - b.log_scale});
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double s = std::max(a.log_scale, b.log_scale);
  return normalize(
      {a.rescaled_to(s).mantissa + b.rescaled_to(s).mantissa, s});
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
  return a + ScaledComplex{-b.mantissa, b.log_scale};
}

SeriesEval ScaledSeriesEval::unscaled() const {
  SeriesEval out;
  out.value = value.value();
  out.truncation_terms = truncation_terms;
  out.tail_bound = tail_bound * std::exp(value.log_scale);
  return out;
}

// ---- gamma / digamma ----

double log_abs_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("Gamma has a pole at a nonpositive integer");
  }
  // tgamma is more accurate than exp(lgamma) where it does not overflow.
  if (x > 0.0 && x < 170.0) return std::log(std::tgamma(x));
  return std::lgamma(x);
}

int gamma_sign(double x) {
  if (x > 0.0) return 1;
  if (x == std::floor(x)) throw PoleError("Gamma has a pole");
  // Gamma alternates sign between consecutive negative integers.
  const long k = static_cast<long>(std::ceil(-x));
  return (k % 2 == 0) ? 1 : -1;
}

double digamma(double x) {
  if (!(x > 0.0)) throw InternalError("digamma: argument must be positive");
  double shift = 0.0;
  while (x < 20.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli-number asymptotic series.
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  const double psi = std::log(x) - 0.5 * inv - series;
  if (!std::isfinite(psi)) throw InternalError("digamma: evaluation failed");
  return psi - shift;
}

}  // namespace dtnlab
