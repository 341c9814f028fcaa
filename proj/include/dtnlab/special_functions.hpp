#pragma once

// Bessel functions J_alpha, Y_alpha of integer and half-integer order at
// complex argument, evaluated from their power series with certified
// truncation bounds, plus the order-threshold and bound checks used to
// control DtN matrix elements.

#include <complex>
#include <vector>

namespace dtnlab {

using cplx = std::complex<double>;

// Exact integer or half-integer Bessel order, stored as 2*alpha.
class Order {
 public:
  // alpha = n + (d-2)/2, the order attached to degree-n harmonics in R^d.
  static Order from_degree(int n, int d);
  // alpha = twice_alpha / 2. Negative values are only accepted for
  // half-integers (they are needed for J_{-alpha}).
  static Order from_twice(int twice_alpha);

  int twice_alpha() const noexcept { return twice_alpha_; }
  int dim_parity() const noexcept { return dim_parity_; }
  double value() const noexcept { return 0.5 * twice_alpha_; }
  bool is_integer() const noexcept { return twice_alpha_ % 2 == 0; }
  bool is_half_integer() const noexcept { return !is_integer(); }
  bool is_negative() const noexcept { return twice_alpha_ < 0; }

  // alpha + k; throws ParameterError if that yields a negative integer.
  Order shifted(int k) const;
  // -alpha; half-integer orders only.
  Order negated() const;

  friend bool operator==(const Order&, const Order&) = default;

 private:
  Order(int twice_alpha, int dim_parity);
  int twice_alpha_;
  int dim_parity_;
};

// A complex number stored as mantissa * exp(log_scale). Used wherever
// (|z|/2)^{+-alpha} and Gamma(alpha) overflow or underflow a double.
struct ScaledComplex {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  // Throws ScaleOverflowError when the magnitude exceeds DBL_MAX.
  cplx value() const;
  // log|value|; -inf for zero.
  double log_abs() const;
  bool is_zero() const noexcept { return mantissa == cplx(0.0, 0.0); }

  ScaledComplex rescaled_to(double new_log_scale) const;
};

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator*(const ScaledComplex& a, cplx c);
ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);

struct SeriesEval {
  cplx value{0.0, 0.0};
  int truncation_terms = 0;
  double tail_bound = 0.0;  // rigorous bound on the dropped remainder
};

// Series value plus tail bound, both in units of exp(value.log_scale).
struct ScaledSeriesEval {
  ScaledComplex value;
  int truncation_terms = 0;
  double tail_bound = 0.0;

  SeriesEval unscaled() const;
};

enum class BesselKind { J, Y };

// ---- gamma / digamma support ----

// log|Gamma(x)| and sign(Gamma(x)) for x not a nonpositive integer.
double log_abs_gamma(double x);
int gamma_sign(double x);
// psi(x) = Gamma'(x)/Gamma(x) for x > 0 by upward shift to x >= 20, the
// asymptotic expansion there, and psi(x) = psi(x+1) - 1/x back down.
double digamma(double x);

// ---- Bessel functions ----

SeriesEval bessel_j(Order alpha, cplx z);
SeriesEval bessel_y(Order alpha, cplx z);
SeriesEval bessel_deriv(BesselKind kind, Order alpha, cplx z);

ScaledSeriesEval bessel_j_scaled(Order alpha, cplx z);
ScaledSeriesEval bessel_y_scaled(Order alpha, cplx z);
ScaledSeriesEval bessel_deriv_scaled(BesselKind kind, Order alpha, cplx z);

// Normalised series F(w) = sum_m (-w)^m / (m! (alpha+1)_m), so that
// J_alpha(z) = (z/2)^alpha / Gamma(alpha+1) * F(z^2/4). Also returns
// w F'(w) and the absolute term sum (a cancellation measure). F is entire
// in w, which makes ratios like J_a(kr)/J_a(k) entire in E = k^2.
struct NormalizedJ {
  cplx f{1.0, 0.0};
  cplx w_df{0.0, 0.0};
  double abs_sum = 1.0;
  double tail_bound = 0.0;
  int truncation_terms = 1;
};
NormalizedJ bessel_j_normalized(Order alpha, cplx w);

// exp((|z|^2/4)/|alpha0+1|) - 1, |alpha0+1| = min_k>=1 |alpha+k|: the
// relative deviation of J_alpha(z) from its leading power term.
double nielsen_theta_bound(Order alpha, cplx z);

// Smallest N > 3 with exp((C^2/4)/(N+1)) - 1 <= 1/2 and
// 3 pi max(1,(C/2)^{2N+1})/Gamma(N) + C^2/(2N-C^2)
//   + (C/2)^{2N} e^{C^2/4}/Gamma(N) <= 1/2.
// Every order index n >= N+1 then obeys the four bounds of LemmaBoundsReport.
int lemma_bessel_threshold(double C, int d);

// The three threshold conditions at a given N, exposed for tests/reports.
struct ThresholdConditions {
  bool greater_than_three = false;
  double nielsen_term = 0.0;  // exp((C^2/4)/(N+1)) - 1
  double y_theta_term = 0.0;  // left side of the Gamma-denominated sum
  bool all() const noexcept {
    return greater_than_three && nielsen_term <= 0.5 && y_theta_term <= 0.5;
  }
};
ThresholdConditions threshold_conditions(double C, int N);

struct BoundCheck {
  bool holds = true;
  // log-space slack: positive when satisfied; for two-sided checks the
  // smaller of the two slacks.
  double margin = 0.0;
  bool evaluated = true;  // false where both sides are infinite (z = 0 for Y)
};

// The four inequalities at alpha = n + (d-2)/2:
//   (1/2) P <= |J_a| <= (3/2) P,            P = (|z|/2)^a / Gamma(a+1)
//   |J_a'| <= 3 (|z|/2)^{a-1} / Gamma(a)
//   (1/2pi) Q <= |Y_a| <= (3/2pi) Q,        Q = (|z|/2)^{-a} Gamma(a)
//   |Y_a'| <= (3/pi) (|z|/2)^{-a-1} Gamma(a+1)
struct LemmaBoundsReport {
  BoundCheck j_bound;
  BoundCheck j_deriv_bound;
  BoundCheck y_bound;
  BoundCheck y_deriv_bound;
  bool all_hold() const noexcept {
    return j_bound.holds && j_deriv_bound.holds && y_bound.holds &&
           y_deriv_bound.holds;
  }
};
LemmaBoundsReport verify_lemma_bounds(int n, int d, cplx z);

// First `count` positive zeros of J_alpha (alpha >= 0), to 1e-12 absolute.
std::vector<double> bessel_j_zeros(Order alpha, int count);
// All positive zeros of J_alpha below x_max.
std::vector<double> bessel_j_zeros_below(Order alpha, double x_max);

}  // namespace dtnlab
