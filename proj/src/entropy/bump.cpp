#include <cmath>
#include <vector>

#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {
constexpr double kHalf = 1.0 / 6.0;
constexpr int kSupSamples = 200001;
}  // namespace

double cell_bump_1d(double t) {
  const double u = 1.0 - 36.0 * t * t;
  if (!(u > 0.0)) return 0.0;
  return std::exp(1.0 - 1.0 / u);
}

std::vector<double> cell_bump_jet(double t, int k) {
  if (k < 0) throw ParameterError("cell_bump_jet: order must be >= 0");
  std::vector<double> out(k + 1, 0.0);
  const double u0 = 1.0 - 36.0 * t * t;
  if (!(u0 > 0.0)) return out;
  // Taylor coefficients in h of u(t+h), 1/u, w = 1 - 1/u, exp(w).
  std::vector<double> u(k + 1, 0.0), r(k + 1, 0.0), w(k + 1, 0.0), b(k + 1, 0.0);
  u[0] = u0;
  if (k >= 1) u[1] = -72.0 * t;
  if (k >= 2) u[2] = -36.0;
  r[0] = 1.0 / u0;
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= std::min(n, 2); ++j) acc += u[j] * r[n - j];
    r[n] = -acc / u0;
  }
  w[0] = 1.0 - r[0];
  for (int n = 1; n <= k; ++n) w[n] = -r[n];
  b[0] = std::exp(w[0]);
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += j * w[j] * b[n - j];
    b[n] = acc / n;
  }
  double fact = 1.0;
  for (int n = 0; n <= k; ++n) {
    if (n > 0) fact *= n;
    out[n] = fact * b[n];
  }
  return out;
}

std::vector<double> cell_bump_derivative_sups(int k) {
  std::vector<double> sup(k + 1, 0.0);
  for (int i = 1; i < kSupSamples - 1; ++i) {
    const double t = -kHalf + 2.0 * kHalf * i / (kSupSamples - 1);
    const std::vector<double> jet = cell_bump_jet(t, k);
    for (int j = 0; j <= k; ++j) sup[j] = std::max(sup[j], std::abs(jet[j]));
  }
  sup[0] = 1.0;
  return sup;
}

double cell_bump_cm_norm(int d, int k) {
  if (d < 1 || k < 0) throw ParameterError("cell_bump_cm_norm: bad arguments");
  const std::vector<double> sup = cell_bump_derivative_sups(k);
  // best[n][t]: largest product over n factors with total order exactly t.
  std::vector<double> best(k + 1, 0.0);
  for (int t = 0; t <= k; ++t) best[t] = sup[t];
  for (int n = 2; n <= d; ++n) {
    std::vector<double> next(k + 1, 0.0);
    for (int t = 0; t <= k; ++t) {
      for (int a = 0; a <= t; ++a) next[t] = std::max(next[t], best[t - a] * sup[a]);
    }
    best = next;
  }
  double out = 0.0;
  for (double v : best) out = std::max(out, v);
  return out;
}

}  // namespace dtnlab
