#include "dtnlab/radial_solver.hpp"

#include <cmath>
#include <vector>

#include "dtnlab/errors.hpp"
#include "dtnlab/ode.hpp"

namespace dtnlab {

namespace {

constexpr double kRenormHigh = 1e100;
constexpr double kEigenRatio = 1e-11;

struct Setup {
  double q = 0.0;    // j(j+d-2)
  double dm2 = 0.0;  // d-2
  cplx E;
  const RadialProfile* g = nullptr;
  std::vector<double> knots;  // t-values: ln r0, breakpoints..., 0
};

Setup make_setup(const Potential& v, const ComplexEnergy& E, int j, int d,
                 const RadialSolverOptions& opt) {
  if (j < 0) throw ParameterError("degree j must be >= 0");
  if (d != 2 && d != 3) throw CapabilityError("radial solver supports d = 2, 3");
  if (v.kind() != Potential::Kind::Radial) {
    throw ParameterError("radial solver needs a radial potential");
  }
  if (!(opt.r0 > 0.0 && opt.r0 < 0.1)) throw ParameterError("r0 must be small");
  Setup s;
  s.q = static_cast<double>(j) * (j + d - 2);
  s.dm2 = d - 2;
  s.E = E.E;
  s.g = &v.profile();
  s.knots.push_back(std::log(opt.r0));
  for (double b : v.breakpoints()) {
    if (b > opt.r0 && b < 1.0) s.knots.push_back(std::log(b));
  }
  s.knots.push_back(0.0);
  return s;
}

// Potential value over the open piece (t_lo, t_hi): at a knot the
// one-sided limit matters, so nudge inside.
cplx potential_at(const Setup& s, double t, double t_lo, double t_hi) {
  const double eps = 1e-13 * (t_hi - t_lo);
  t = std::clamp(t, t_lo + eps, t_hi - eps);
  return (*s.g)(std::exp(t));
}

}  // namespace

RadialDtnResult radial_dtn_detail(const Potential& v, const ComplexEnergy& E,
                                  int j, int d, const RadialSolverOptions& opt) {
  const Setup s = make_setup(v, E, j, d, opt);
  OdeOptions oo;
  oo.rtol = opt.rtol;
  oo.atol = 1e-14;
  RadialDtnResult res;

  const cplx v0 = (*s.g)(0.0);
  OdeState<1> y{static_cast<double>(j) +
                (v0 - s.E) * opt.r0 * opt.r0 / (2.0 * j + d)};
  const double pole_level = 10.0 * (j + d + std::abs(s.E) + 10.0);

  std::size_t piece = 0;
  double t = s.knots.front();
  // Riccati phase.
  for (; piece + 1 < s.knots.size(); ++piece) {
    const double lo = s.knots[piece], hi = s.knots[piece + 1];
    auto rhs = [&](double tt, const OdeState<1>& u) {
      const double r2 = std::exp(2.0 * tt);
      return OdeState<1>{s.q - s.dm2 * u[0] - u[0] * u[0] +
                         r2 * (potential_at(s, tt, lo, hi) - s.E)};
    };
    const OdeStats st = integrate_dp45(
        rhs, lo, hi, y, oo,
        [&](double, OdeState<1>& u) { return std::abs(u[0]) <= pole_level; });
    res.steps += st.steps;
    t = st.t_end;
    if (st.stopped_early || std::abs(y[0]) > pole_level) break;
  }
  if (piece + 1 == s.knots.size() && std::abs(y[0]) <= pole_level) {
    res.value = y[0];
    return res;
  }

  // Linear phase: (R, P = r R') from R = 1, P = y.
  res.linear_fallback = true;
  OdeState<2> u{cplx(1.0, 0.0), y[0]};
  for (; piece + 1 < s.knots.size(); ++piece) {
    const double lo = std::max(t, s.knots[piece]), hi = s.knots[piece + 1];
    if (!(hi > lo)) continue;
    auto rhs = [&](double tt, const OdeState<2>& w) {
      const double r2 = std::exp(2.0 * tt);
      const cplx coef =
          s.q + r2 * (potential_at(s, tt, s.knots[piece], hi) - s.E);
      return OdeState<2>{w[1], -s.dm2 * w[1] + coef * w[0]};
    };
    const OdeStats st = integrate_dp45(
        rhs, lo, hi, u, oo, [](double, OdeState<2>& w) {
          const double m = std::max(std::abs(w[0]), std::abs(w[1]));
          if (m > kRenormHigh || (m < 1.0 / kRenormHigh && m > 0.0)) {
            w[0] /= m;
            w[1] /= m;
          }
          return true;
        });
    res.steps += st.steps;
  }
  if (std::abs(u[0]) < kEigenRatio * std::abs(u[1])) {
    throw ConditioningError(
        "R(1) vanishes: E is numerically an eigenvalue of -Laplace + v",
        std::abs(u[0] / u[1]));
  }
  res.value = u[1] / u[0];
  return res;
}

cplx radial_dtn(const Potential& v, const ComplexEnergy& E, int j, int d,
                const RadialSolverOptions& opt) {
  return radial_dtn_detail(v, E, j, d, opt).value;
}

cplx radial_lambda(const Potential& v, const ComplexEnergy& E, int j, int d,
                   const RadialSolverOptions& opt) {
  if (v.is_zero()) {
    (void)make_setup(v, E, j, d, opt);
    return {0.0, 0.0};
  }
  const Setup s = make_setup(v, E, j, d, opt);
  OdeOptions oo;
  oo.rtol = opt.rtol;
  oo.atol = 1e-300;

  const cplx v0 = (*s.g)(0.0);
  const double r02 = opt.r0 * opt.r0;
  const double den = 2.0 * j + d;
  // State: R_v, P_v, R_0, P_0, W.
  OdeState<5> u{cplx(1.0, 0.0), static_cast<double>(j) + (v0 - s.E) * r02 / den,
                cplx(1.0, 0.0), static_cast<double>(j) - s.E * r02 / den,
                v0 * r02 / den};
  for (std::size_t piece = 0; piece + 1 < s.knots.size(); ++piece) {
    const double lo = s.knots[piece], hi = s.knots[piece + 1];
    auto rhs = [&](double tt, const OdeState<5>& w) {
      const double r2 = std::exp(2.0 * tt);
      const cplx vv = potential_at(s, tt, lo, hi);
      const cplx cv = s.q + r2 * (vv - s.E);
      const cplx c0 = s.q - r2 * s.E;
      return OdeState<5>{w[1], -s.dm2 * w[1] + cv * w[0], w[3],
                         -s.dm2 * w[3] + c0 * w[2],
                         -s.dm2 * w[4] + r2 * vv * w[0] * w[2]};
    };
    integrate_dp45(rhs, lo, hi, u, oo, [](double, OdeState<5>& w) {
      const double m1 = std::max(std::abs(w[0]), std::abs(w[1]));
      const double m2 = std::max(std::abs(w[2]), std::abs(w[3]));
      const double s1 = (m1 > kRenormHigh) ? m1 : 1.0;
      const double s2 = (m2 > kRenormHigh) ? m2 : 1.0;
      if (s1 != 1.0 || s2 != 1.0) {
        w[0] /= s1;
        w[1] /= s1;
        w[2] /= s2;
        w[3] /= s2;
        w[4] /= s1 * s2;
      }
      return true;
    });
  }
  if (std::abs(u[0]) < kEigenRatio * std::abs(u[1]) ||
      std::abs(u[2]) < kEigenRatio * std::abs(u[3])) {
    throw ConditioningError("R(1) vanishes: E is numerically an eigenvalue",
                            std::min(std::abs(u[0] / u[1]), std::abs(u[2] / u[3])));
  }
  return u[4] / (u[0] * u[2]);
}

}  // namespace dtnlab
