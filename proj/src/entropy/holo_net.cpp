#include <cmath>
#include <numbers>

#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {

constexpr double kPi = std::numbers::pi;

double half_width(const Interval& I) { return 0.5 * (I.a - I.b); }
double midpoint(const Interval& I) { return 0.5 * (I.a + I.b); }

// cos(n arccos t) on [-1, 1].
double chebyshev_t(int n, double t) {
  return std::cos(n * std::acos(std::clamp(t, -1.0, 1.0)));
}

long lattice_round(double x, double step, long half) {
  const long k = std::lround(x / step);
  return std::clamp(k, -half, half);
}

}  // namespace

cplx ellipse_point(const Interval& I, cplx z) {
  return midpoint(I) + half_width(I) * std::cos(z);
}

double ellipse_reach(const Interval& I, double gamma) {
  if (I.a == I.b) return 0.0;
  const int n = 4001;
  double out = 0.0;
  for (int q = 0; q < n; ++q) {
    const double x = kPi * q / (n - 1);
    const cplx p = ellipse_point(I, cplx(x, gamma));
    const double dx = std::max({I.a - p.real(), p.real() - I.b, 0.0});
    out = std::max(out, std::hypot(dx, p.imag()));
  }
  return out;
}

double gamma_for_reach(const Interval& I, double reach) {
  if (!(reach > 0.0)) throw ParameterError("gamma_for_reach: reach must be > 0");
  if (I.a == I.b) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (ellipse_reach(I, hi) <= reach) {
    lo = hi;
    hi *= 2.0;
    if (hi > 700.0) return lo;
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ellipse_reach(I, mid) <= reach ? lo : hi) = mid;
  }
  return lo;
}

double HoloNet::log_cardinality() const {
  return coefficient_count * std::log(y_delta_size);
}

double HoloNet::nu() const {
  const double l = std::log(1.0 / delta);
  return log_cardinality() / (l * l);
}

HoloNet build_holo_net(const Interval& I, double gamma, double C, double delta) {
  if (!(delta > 0.0 && delta < std::exp(-1.0))) {
    throw ParameterError("holo net: delta must lie in (0, 1/e)");
  }
  if (!(gamma > 0.0) || !(C > 0.0) || !std::isfinite(C)) {
    throw ParameterError("holo net: gamma and C must be > 0");
  }
  if (!(I.a <= I.b)) throw ParameterError("holo net: interval needs a <= b");
  HoloNet net;
  net.I = I;
  net.gamma = gamma;
  net.C = C;
  net.delta = delta;
  if (I.a == I.b) {
    net.degenerate = true;
    net.grid_step = 0.5 * delta;
    net.delta_prime = net.grid_step;
    net.grid_half = static_cast<long>(std::floor(C / net.grid_step));
    net.coefficient_count = 1;
  } else {
    // phi(n) <= 0 is the coefficient condition in log form; phi is concave
    // in n, so past its apex the first n with phi <= 0 is final.
    const double base = std::log(2.0 * kPi * C) - std::log(6.0 / (kPi * kPi)) -
                        std::log(delta);
    const auto phi = [&](long n) { return base - n * gamma + 2.0 * std::log(n + 1.0); };
    const double apex = 2.0 / gamma - 1.0;
    long last_bad = -1;
    for (long n = 0;; ++n) {
      if (phi(n) > 0.0) last_bad = n;
      else if (n >= apex) break;
      if (n > 100'000'000) throw ParameterError("holo net: n_delta out of range");
    }
    net.n_delta = static_cast<int>(last_bad + 1);
    net.delta_prime = 3.0 / (kPi * kPi) * delta /
                      ((net.n_delta + 1.0) * (net.n_delta + 1.0));
    net.grid_step = net.delta_prime;
    net.grid_half = static_cast<long>(std::floor(2.0 * kPi * C / net.delta_prime));
    net.coefficient_count = net.n_delta + 1;
    net.quadrature_points = 4 * (net.n_delta + 1);
  }
  const double side = 1.0 + 2.0 * static_cast<double>(net.grid_half);
  net.y_delta_size = side * side;
  return net;
}

cplx NetProjection::element_value(const HoloNet& net, double x) const {
  if (net.degenerate) {
    return net.grid_step * cplx(element[0].first, element[0].second);
  }
  const double t = (x - midpoint(net.I)) / half_width(net.I);
  cplx sum = 0.0;
  for (std::size_t n = 0; n < element.size(); ++n) {
    sum += net.grid_step * cplx(element[n].first, element[n].second) *
           chebyshev_t(static_cast<int>(n), t);
  }
  return sum;
}

NetProjection project_to_net(const HoloNet& net,
                             const std::function<cplx(double)>& g, double slack) {
  NetProjection out;
  if (net.degenerate) {
    const cplx v = g(net.I.a);
    if (std::abs(v) > net.C * (1.0 + slack)) {
      out.warnings.push_back("|g| exceeds C at the point interval");
    }
    out.coefficients = {v};
    out.element = {{lattice_round(v.real(), net.grid_step, net.grid_half),
                    lattice_round(v.imag(), net.grid_step, net.grid_half)}};
    out.sup_error = std::abs(v - out.element_value(net, net.I.a));
    return out;
  }
  const int M = net.quadrature_points;
  std::vector<cplx> f(M);
  for (int q = 0; q < M; ++q) {
    f[q] = g(ellipse_point(net.I, cplx(2.0 * kPi * q / M, 0.0)).real());
  }
  for (int n = 0; n <= net.n_delta; ++n) {
    cplx c = 0.0;
    for (int q = 0; q < M; ++q) c += f[q] * std::cos(2.0 * kPi * n * q / M);
    c *= 2.0 * kPi / M;
    if (std::abs(c) > 2.0 * kPi * net.C * std::exp(-n * net.gamma) * (1.0 + slack)) {
      out.warnings.push_back("coefficient " + std::to_string(n) +
                             " exceeds its a-priori bound: |g| <= C on the "
                             "ellipse is violated");
    }
    // f(x) = a_0 + sum_n a_n cos(n x) with a_n = c_n/pi, a_0 = c_0/(2 pi).
    const cplx a = (n == 0) ? c / (2.0 * kPi) : c / kPi;
    out.coefficients.push_back(a);
    out.element.emplace_back(lattice_round(a.real(), net.grid_step, net.grid_half),
                             lattice_round(a.imag(), net.grid_step, net.grid_half));
  }
  const int pts = 1000;
  for (int i = 0; i < pts; ++i) {
    const double x = net.I.a + (net.I.b - net.I.a) * i / (pts - 1);
    out.sup_error = std::max(out.sup_error, std::abs(g(x) - out.element_value(net, x)));
  }
  return out;
}

std::vector<std::vector<std::pair<long, long>>> enumerate_net(const HoloNet& net,
                                                              long limit) {
  const long side = 1 + 2 * net.grid_half;
  const double total = std::pow(static_cast<double>(side) * side, net.coefficient_count);
  if (total > static_cast<double>(limit)) {
    throw CapabilityError("enumerate_net: net has more than `limit` elements");
  }
  std::vector<std::pair<long, long>> cell;
  for (long re = -net.grid_half; re <= net.grid_half; ++re) {
    for (long im = -net.grid_half; im <= net.grid_half; ++im) cell.emplace_back(re, im);
  }
  std::vector<std::vector<std::pair<long, long>>> out{{}};
  for (int n = 0; n < net.coefficient_count; ++n) {
    std::vector<std::vector<std::pair<long, long>>> next;
    next.reserve(out.size() * cell.size());
    for (const auto& prefix : out) {
      for (const auto& c : cell) {
        auto e = prefix;
        e.push_back(c);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace dtnlab
