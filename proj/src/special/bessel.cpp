#include <cmath>
#include <numbers>

#include "dtnlab/errors.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesEps = 1e-16;
constexpr int kMaxTerms = 100000;

// Minimal complex type over an arbitrary real field. std::complex is not
// usable with __float128 here, and the series only needs ring operations.
template <class R>
struct HC {
  R re{0};
  R im{0};
};

template <class R>
HC<R> from(cplx z) {
  return {static_cast<R>(z.real()), static_cast<R>(z.imag())};
}
template <class R>
cplx to_cplx(const HC<R>& a) {
  return {static_cast<double>(a.re), static_cast<double>(a.im)};
}
template <class R>
HC<R> operator+(const HC<R>& a, const HC<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
HC<R> operator*(const HC<R>& a, const HC<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
HC<R> operator*(const HC<R>& a, R s) {
  return {a.re * s, a.im * s};
}
template <class R>
double mag(const HC<R>& a) {
  return std::hypot(static_cast<double>(a.re), static_cast<double>(a.im));
}

// Euler-Mascheroni constant as a double-double, exact enough for quad.
template <class R>
R euler_gamma() {
  return static_cast<R>(0.5772156649015329) +
         static_cast<R>(-4.942915152430645e-18);
}

enum class Precision { Double, Extended, Quad };

// Cancellation in the alternating series grows like exp(|z|) relative to
// the result; widen the accumulator accordingly.
Precision choose_precision(double abs_z) {
  if (abs_z <= 2.0) return Precision::Double;
  if (abs_z <= 12.0) return Precision::Extended;
  return Precision::Quad;
}

// Ratio of consecutive terms, q_m = |w| / ((m+1) |m+1+alpha|), is
// nonincreasing once m+1+alpha > 0; a geometric tail then bounds the rest.
struct TailState {
  bool certified = false;
  double q = 0.0;
};

TailState tail_ratio(double abs_w, int next_m, double alpha) {
  // next_m: index of the first dropped term.
  const double a = next_m + alpha;
  if (a <= 0.0) return {};
  const double q = abs_w / (static_cast<double>(next_m) * a);
  if (q >= 1.0) return {};
  // Ratios keep shrinking only if the denominators keep growing, which
  // holds for a > 0.
  return {true, q};
}

template <class R>
NormalizedJ sum_normalized_j(double alpha, cplx w) {
  const HC<R> minus_w = from<R>(-w);
  const double abs_w = std::abs(w);
  HC<R> term{R(1), R(0)};
  HC<R> sum = term;
  HC<R> wdf{R(0), R(0)};
  NormalizedJ out;
  out.abs_sum = 1.0;
  int m = 0;
  for (; m < kMaxTerms; ++m) {
    const R denom = static_cast<R>(m + 1) * (static_cast<R>(m + 1) +
                                             static_cast<R>(alpha));
    term = term * minus_w * (R(1) / denom);
    sum = sum + term;
    wdf = wdf + term * static_cast<R>(m + 1);
    const double t = mag(term);
    out.abs_sum += t;
    const double s = mag(sum);
    const TailState ts = tail_ratio(abs_w, m + 2, alpha);
    if (t == 0.0) {
      out.tail_bound = 0.0;
      break;
    }
    if (ts.certified && t < kSeriesEps * s) {
      const double tail = t * ts.q / (1.0 - ts.q);
      if (tail <= kSeriesEps * s) {
        out.tail_bound = tail;
        break;
      }
    }
  }
  if (m == kMaxTerms) throw InternalError("Bessel series did not converge");
  out.truncation_terms = m + 2;
  out.f = to_cplx(sum);
  out.w_df = to_cplx(wdf);
  return out;
}

// Integer-order Y pieces in J-scale: sum_m t_m h_m with
// h_m = psi(m+1) + psi(m+n+1), plus the log-free J-series itself.
struct YSeries {
  cplx f;        // J normalised series
  cplx psi_sum;  // sum_m t_m h_m
  cplx finite;   // sum_{m<n} (n-m-1)!/(m!(n-1)!) w^m
  // -finite + rho (2 ln(z/2) f - psi_sum), rho = w^n/(n!(n-1)!): the whole
  // of pi Y_n in units of (z/2)^{-n} (n-1)!, formed before rounding since
  // the finite part and the rest cancel heavily for |z| > n.
  cplx combined;
  double rho_abs = 0.0;
  double tail_f = 0.0;
  double tail_psi = 0.0;
  int terms = 0;
};

template <class R>
YSeries sum_y_integer(int n, cplx w, cplx log_half) {
  const HC<R> minus_w = from<R>(-w);
  const HC<R> plus_w = from<R>(w);
  const double abs_w = std::abs(w);
  YSeries out;

  // psi(1) + psi(n+1) = -2 gamma + H_n, accumulated in R.
  R h = R(-2) * euler_gamma<R>();
  for (int k = 1; k <= n; ++k) h = h + R(1) / static_cast<R>(k);

  HC<R> term{R(1), R(0)};
  HC<R> sum = term;
  HC<R> psi_sum = term * h;
  int m = 0;
  for (; m < kMaxTerms; ++m) {
    const R denom = static_cast<R>(m + 1) * static_cast<R>(m + 1 + n);
    term = term * minus_w * (R(1) / denom);
    h = h + R(1) / static_cast<R>(m + 1) + R(1) / static_cast<R>(m + 1 + n);
    sum = sum + term;
    psi_sum = psi_sum + term * h;
    const double t = mag(term);
    if (t == 0.0) break;
    const TailState ts = tail_ratio(abs_w, m + 2, static_cast<double>(n));
    const double s = std::min(mag(sum), mag(psi_sum));
    if (ts.certified && t * std::abs(static_cast<double>(h)) < kSeriesEps * s) {
      const double q = ts.q;
      const double tail_f = t * q / (1.0 - q);
      // h_k <= |h_{m+1}| + c (k-m-1) with c the current increment size.
      const double c = 1.0 / (m + 2) + 1.0 / (m + 2 + n);
      const double hm = std::abs(static_cast<double>(h));
      const double tail_psi =
          t * (hm * q / (1.0 - q) + c * q / ((1.0 - q) * (1.0 - q)));
      if (tail_f <= kSeriesEps * mag(sum) &&
          tail_psi <= kSeriesEps * mag(psi_sum)) {
        out.tail_f = tail_f;
        out.tail_psi = tail_psi;
        break;
      }
    }
  }
  if (m == kMaxTerms) throw InternalError("Y_n series did not converge");
  out.terms = m + 2;
  out.f = to_cplx(sum);
  out.psi_sum = to_cplx(psi_sum);

  // Finite sum with e_0 = 1, e_{m+1} = e_m / ((m+1)(n-m-1)).
  HC<R> e{R(1), R(0)};
  HC<R> fin{R(0), R(0)};
  for (int k = 0; k < n; ++k) {
    fin = fin + e;
    if (k + 1 < n) {
      e = e * plus_w *
          (R(1) / (static_cast<R>(k + 1) * static_cast<R>(n - k - 1)));
    }
  }
  out.finite = to_cplx(fin);
  if (n > 0) {
    HC<R> rho{R(1), R(0)};
    for (int k = 1; k <= n; ++k) {
      rho = rho * plus_w * (R(1) / static_cast<R>(k));
      if (k < n) rho = rho * (R(1) / static_cast<R>(k));
    }
    const HC<R> two_log = from<R>(2.0 * log_half);
    HC<R> inner = two_log * sum;
    inner = inner + psi_sum * R(-1);
    const HC<R> total = rho * inner + fin * R(-1);
    out.combined = to_cplx(total);
    out.rho_abs = mag(rho);
  }
  return out;
}

template <class Fn>
auto dispatch_precision(double abs_z, Fn&& fn) {
  switch (choose_precision(abs_z)) {
    case Precision::Double:
      return fn(double{});
    case Precision::Extended:
      return fn((long double){});
    case Precision::Quad:
    default:
      return fn(__float128{});
  }
}

// Bring value and tail to a common, normalised scale.
ScaledSeriesEval normalized(ScaledSeriesEval e) {
  const double m = std::abs(e.value.mantissa);
  if (m == 0.0 || !std::isfinite(m)) return e;
  e.value.mantissa /= m;
  e.tail_bound /= m;
  e.value.log_scale += std::log(m);
  return e;
}

ScaledSeriesEval add(const ScaledSeriesEval& a, const ScaledSeriesEval& b) {
  const double s = std::max(a.value.log_scale, b.value.log_scale);
  const double fa = std::exp(a.value.log_scale - s);
  const double fb = std::exp(b.value.log_scale - s);
  ScaledSeriesEval out;
  out.value = {a.value.mantissa * fa + b.value.mantissa * fb, s};
  out.tail_bound = a.tail_bound * fa + b.tail_bound * fb;
  out.truncation_terms = a.truncation_terms + b.truncation_terms;
  return normalized(out);
}

ScaledSeriesEval times(const ScaledSeriesEval& a, cplx c) {
  ScaledSeriesEval out = a;
  out.value.mantissa *= c;
  out.tail_bound *= std::abs(c);
  return normalized(out);
}

ScaledSeriesEval exact_zero() {
  ScaledSeriesEval e;
  e.value = {cplx(0.0, 0.0), 0.0};
  e.truncation_terms = 1;
  return e;
}

ScaledSeriesEval exact_one() {
  ScaledSeriesEval e;
  e.value = {cplx(1.0, 0.0), 0.0};
  e.truncation_terms = 1;
  return e;
}

// Principal-branch (z/2)^alpha / Gamma(alpha+1) in scaled form.
ScaledComplex j_prefactor(double alpha, cplx z) {
  const cplx half = 0.5 * z;
  const double log_mag = alpha * std::log(std::abs(half)) -
                         log_abs_gamma(alpha + 1.0);
  const double phase = alpha * std::arg(half);
  const double sign = gamma_sign(alpha + 1.0);
  return {std::polar(sign, phase), log_mag};
}

ScaledSeriesEval y_half_integer(Order alpha, cplx z) {
  // Y_{n+1/2} = (-1)^{n+1} J_{-(n+1/2)};  Y_{-(n+1/2)} = (-1)^n J_{n+1/2}.
  if (!alpha.is_negative()) {
    const int n = (alpha.twice_alpha() - 1) / 2;
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return times(bessel_j_scaled(alpha.negated(), z), sign);
  }
  const int n = (-alpha.twice_alpha() - 1) / 2;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return times(bessel_j_scaled(alpha.negated(), z), sign);
}

ScaledSeriesEval y_integer(int n, cplx z) {
  const cplx w = 0.25 * z * z;
  const cplx half = 0.5 * z;
  const cplx log_half = std::log(half);
  const YSeries ys = dispatch_precision(std::abs(z), [&](auto tag) {
    return sum_y_integer<decltype(tag)>(n, w, log_half);
  });

  if (n == 0) {
    // (2/pi) ln(z/2) J_0 - (1/pi) sum t_m h_m, in J-scale.
    const ScaledComplex pj = j_prefactor(0.0, z);
    ScaledSeriesEval e;
    e.value = {pj.mantissa * ((2.0 / kPi) * log_half * ys.f -
                              (1.0 / kPi) * ys.psi_sum),
               pj.log_scale};
    e.tail_bound = (2.0 / kPi) * std::abs(log_half) * ys.tail_f +
                   (1.0 / kPi) * ys.tail_psi;
    e.truncation_terms = ys.terms;
    return normalized(e);
  }

  // Y_n = (1/pi) (z/2)^{-n} (n-1)! * combined.
  ScaledSeriesEval e;
  e.value = {(1.0 / kPi) * std::polar(1.0, -n * std::arg(half)) * ys.combined,
             -n * std::log(std::abs(half)) + log_abs_gamma(n)};
  e.tail_bound = (1.0 / kPi) * ys.rho_abs *
                 (2.0 * std::abs(log_half) * ys.tail_f + ys.tail_psi);
  e.truncation_terms = ys.terms + n;
  return normalized(e);
}

}  // namespace

NormalizedJ bessel_j_normalized(Order alpha, cplx w) {
  const double abs_z = 2.0 * std::sqrt(std::abs(w));
  const double a = alpha.value();
  return dispatch_precision(abs_z, [&](auto tag) {
    return sum_normalized_j<decltype(tag)>(a, w);
  });
}

ScaledSeriesEval bessel_j_scaled(Order alpha, cplx z) {
  if (z == cplx(0.0, 0.0)) {
    if (alpha.twice_alpha() == 0) return exact_one();
    if (alpha.is_negative()) throw PoleError("J_{-alpha} is singular at z = 0");
    return exact_zero();
  }
  const NormalizedJ nj = bessel_j_normalized(alpha, 0.25 * z * z);
  const ScaledComplex p = j_prefactor(alpha.value(), z);
  ScaledSeriesEval e;
  e.value = {p.mantissa * nj.f, p.log_scale};
  e.tail_bound = nj.tail_bound;
  e.truncation_terms = nj.truncation_terms;
  return normalized(e);
}

ScaledSeriesEval bessel_y_scaled(Order alpha, cplx z) {
  if (z == cplx(0.0, 0.0)) throw PoleError("Y_alpha has a pole at z = 0");
  if (alpha.is_half_integer()) return y_half_integer(alpha, z);
  return y_integer(alpha.twice_alpha() / 2, z);
}

ScaledSeriesEval bessel_deriv_scaled(BesselKind kind, Order alpha, cplx z) {
  const auto eval = [kind](Order a, cplx x) {
    return kind == BesselKind::J ? bessel_j_scaled(a, x)
                                 : bessel_y_scaled(a, x);
  };
  if (alpha.twice_alpha() == 0) {
    // J_0' = -J_1, Y_0' = -Y_1.
    if (kind == BesselKind::J && z == cplx(0.0, 0.0)) return exact_zero();
    return times(eval(Order::from_twice(2), z), -1.0);
  }
  if (z == cplx(0.0, 0.0)) {
    if (kind == BesselKind::Y || alpha.twice_alpha() < 2) {
      throw PoleError("derivative is singular at z = 0");
    }
    if (alpha.twice_alpha() == 2) {
      ScaledSeriesEval half = exact_one();
      half.value.mantissa = 0.5;
      return half;
    }
    return exact_zero();
  }
  // f'_a = f_{a-1} - (a/z) f_a. For Y_{1/2}, Y_{-1/2} = J_{1/2}.
  const ScaledSeriesEval lower = eval(alpha.shifted(-1), z);
  const ScaledSeriesEval same = eval(alpha, z);
  return add(lower, times(same, -alpha.value() / z));
}

SeriesEval bessel_j(Order alpha, cplx z) {
  return bessel_j_scaled(alpha, z).unscaled();
}

SeriesEval bessel_y(Order alpha, cplx z) {
  if (alpha.is_negative()) {
    throw ParameterError("bessel_y: order must be nonnegative");
  }
  return bessel_y_scaled(alpha, z).unscaled();
}

SeriesEval bessel_deriv(BesselKind kind, Order alpha, cplx z) {
  return bessel_deriv_scaled(kind, alpha, z).unscaled();
}

double nielsen_theta_bound(Order alpha, cplx z) {
  // For alpha >= 0 the least |alpha+k|, k >= 1, is alpha + 1.
  const double a = alpha.value();
  if (a < 0.0) throw ParameterError("nielsen_theta_bound: alpha must be >= 0");
  const double n2 = std::norm(z);
  return std::expm1((0.25 * n2) / (a + 1.0));
}

}  // namespace dtnlab
