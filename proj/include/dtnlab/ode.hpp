#pragma once

// Adaptive Dormand-Prince 5(4) for small complex systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "dtnlab/errors.hpp"

namespace dtnlab {

template <std::size_t N>
using OdeState = std::array<std::complex<double>, N>;

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-300;
  double h_init = 1e-3;
  long max_steps = 2000000;
};

struct OdeStats {
  long steps = 0;
  long rejected = 0;
  bool stopped_early = false;
  double t_end = 0.0;
};

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). After every accepted
// step on_step(t, y) may rescale y in place; returning false stops there.
// S is an OdeState or a dynamic Eigen complex vector.
template <class S, class F, class OnStep>
OdeStats integrate_dp45(F&& f, double t0, double t1, S& y,
                        const OdeOptions& opt, OnStep&& on_step) {
  const auto N = static_cast<std::size_t>(y.size());
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                   a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                   a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                   a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                   b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  // b - b*, the embedded fourth-order difference.
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                   e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                   e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  OdeStats st;
  st.t_end = t0;
  if (!(t1 > t0)) return st;
  double t = t0;
  double h = std::min(opt.h_init, t1 - t0);
  S k1 = f(t, y);
  S k2, k3, k4, k5, k6, k7, tmp, y_new;
  const auto combo = [&](std::initializer_list<std::pair<double, const S*>> terms,
                         double hh) {
    S out = y;
    for (const auto& [c, k] : terms) {
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < N; ++i) out[i] += hh * c * (*k)[i];
    }
    return out;
  };
  while (t < t1) {
    if (st.steps + st.rejected > opt.max_steps) {
      throw InternalError("ODE integration exceeded the step budget");
    }
    if (t + h > t1) h = t1 - t;
    tmp = combo({{a21, &k1}}, h);
    k2 = f(t + h / 5.0, tmp);
    tmp = combo({{a31, &k1}, {a32, &k2}}, h);
    k3 = f(t + 3.0 * h / 10.0, tmp);
    tmp = combo({{a41, &k1}, {a42, &k2}, {a43, &k3}}, h);
    k4 = f(t + 4.0 * h / 5.0, tmp);
    tmp = combo({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h);
    k5 = f(t + 8.0 * h / 9.0, tmp);
    tmp = combo({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h);
    k6 = f(t + h, tmp);
    y_new = combo({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    k7 = f(t + h, y_new);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::complex<double> e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
               e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) {
      h *= 0.1;
      ++st.rejected;
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw InternalError("ODE step size underflow");
      }
      continue;
    }
    if (err <= 1.0) {
      t = (t + h >= t1) ? t1 : t + h;
      y = y_new;
      k1 = k7;
      ++st.steps;
      const bool go_on = on_step(t, y);
      if (!go_on) {
        st.stopped_early = t < t1;
        st.t_end = t;
        return st;
      }
      // on_step may have rescaled y.
      k1 = f(t, y);
    } else {
      ++st.rejected;
    }
    const double fac = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw InternalError("ODE step size underflow");
    }
  }
  st.t_end = t;
  return st;
}

}  // namespace dtnlab
