#include <cmath>
#include <vector>

#include "dtnlab/errors.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {

// Consecutive positive zeros of J_alpha, alpha >= 0, are more than 3 apart,
// so a scan with this step sees every sign change exactly once.
constexpr double kScanStep = 0.5;
constexpr double kZeroTol = 1e-12;

// J_alpha(x) up to a positive factor exp(-ref); only sign and relative
// size matter to the root finder.
double j_rel(Order alpha, double x, double ref) {
  const ScaledSeriesEval e = bessel_j_scaled(alpha, cplx(x, 0.0));
  return e.value.mantissa.real() * std::exp(e.value.log_scale - ref);
}

double refine(Order alpha, double lo, double hi) {
  const double ref = bessel_j_scaled(alpha, cplx(hi, 0.0)).value.log_scale;
  double flo = j_rel(alpha, lo, ref);
  double fhi = j_rel(alpha, hi, ref);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw InternalError("bessel_j_zeros: bracket lost its sign change");
  }
  while (hi - lo > kZeroTol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = j_rel(alpha, mid, ref);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  // Safeguarded secant polish: accept only if it stays in the bracket and
  // does not increase the residual.
  double x = 0.5 * (lo + hi);
  const double fx = j_rel(alpha, x, ref);
  if (fhi != flo) {
    const double s = hi - fhi * (hi - lo) / (fhi - flo);
    if (s > lo && s < hi && std::abs(j_rel(alpha, s, ref)) <= std::abs(fx)) {
      x = s;
    }
  }
  return x;
}

template <class Stop>
std::vector<double> scan_zeros(Order alpha, Stop stop) {
  if (alpha.is_negative()) {
    throw ParameterError("bessel_j_zeros: order must be >= 0");
  }
  std::vector<double> zeros;
  // J_alpha keeps its sign on (0, alpha]; start there.
  double a = std::max(alpha.value(), 1e-3);
  double fa = bessel_j_scaled(alpha, cplx(a, 0.0)).value.mantissa.real();
  while (!stop(zeros, a)) {
    const double b = a + kScanStep;
    const double fb = bessel_j_scaled(alpha, cplx(b, 0.0)).value.mantissa.real();
    if ((fa > 0.0) != (fb > 0.0) || fb == 0.0) {
      zeros.push_back(refine(alpha, a, b));
      if (fb == 0.0) {
        // Step off the exact zero so the next bracket is clean.
        a = b + 1e-9;
        fa = bessel_j_scaled(alpha, cplx(a, 0.0)).value.mantissa.real();
        continue;
      }
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

}  // namespace

std::vector<double> bessel_j_zeros(Order alpha, int count) {
  if (count < 1) throw ParameterError("bessel_j_zeros: count must be >= 1");
  return scan_zeros(alpha, [count](const std::vector<double>& z, double) {
    return static_cast<int>(z.size()) >= count;
  });
}

std::vector<double> bessel_j_zeros_below(Order alpha, double x_max) {
  std::vector<double> out =
      scan_zeros(alpha, [x_max](const std::vector<double>&, double x) {
        return x >= x_max;
      });
  while (!out.empty() && out.back() >= x_max) out.pop_back();
  return out;
}

}  // namespace dtnlab
