#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dtnlab/errors.hpp"
#include "dtnlab/free_solutions.hpp"
#include "dtnlab/galerkin.hpp"
#include "dtnlab/ode.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Riccati entries beyond this mean a Dirichlet eigenvalue of a smaller
// disk was crossed inside the support.
constexpr double kPoleLevel = 1e8;

struct ModeClass {
  std::vector<int> modes;  // ascending
};

// Modes couple only when they differ by a multiple of g, the gcd of the
// nonzero mode indices: solve each residue class separately.
std::vector<ModeClass> mode_classes(const Potential& v, int J) {
  int g = 0;
  for (const auto& [n, prof] : v.modes()) {
    if (n != 0 && std::abs(n) <= 2 * J) g = std::gcd(g, std::abs(n));
  }
  std::vector<ModeClass> out;
  if (g == 0) {
    for (int j = -J; j <= J; ++j) out.push_back({{j}});
    return out;
  }
  out.resize(g);
  for (int j = -J; j <= J; ++j) out[((j % g) + g) % g].modes.push_back(j);
  std::erase_if(out, [](const ModeClass& c) { return c.modes.empty(); });
  return out;
}

// u(1) for the free mode-j solution with u(r_s) = 0, r u'(r_s) = 1.
cplx transfer_t12(int j, cplx E, double t_s, double rtol) {
  const double q = static_cast<double>(j) * j;
  OdeState<2> u{cplx(0.0, 0.0), cplx(1.0, 0.0)};
  OdeOptions oo;
  oo.rtol = rtol;
  oo.atol = 1e-300;
  integrate_dp45(
      [&](double t, const OdeState<2>& w) {
        return OdeState<2>{w[1], (q - std::exp(2.0 * t) * E) * w[0]};
      },
      t_s, 0.0, u, oo, [](double, OdeState<2>&) { return true; });
  return u[0];
}

struct ClassResult {
  MatrixXcd lambda;  // K x K, exponential basis restricted to the class
};

ClassResult solve_class(const Potential& v, const ComplexEnergy& E,
                        const ModeClass& cls, const GalerkinOptions& opt,
                        const std::vector<cplx>& X, const std::vector<cplx>& T12) {
  const int K = static_cast<int>(cls.modes.size());
  const double r_s = v.support_radius();
  const double r_start = std::max(v.inner_radius(), opt.r0);
  const double t_s = std::log(r_s);

  // Coupling profiles needed by this class: n = m_a - m_b.
  std::vector<std::vector<const RadialProfile*>> prof(K, std::vector<const RadialProfile*>(K, nullptr));
  bool any = false;
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      const auto it = v.modes().find(cls.modes[a] - cls.modes[b]);
      if (it != v.modes().end()) {
        prof[a][b] = &it->second;
        any = true;
      }
    }
  }
  ClassResult res;
  res.lambda = MatrixXcd::Zero(K, K);
  if (!any || !(r_s > r_start)) return res;

  // State: Y0 (K) then Delta (K x K, column major).
  VectorXcd y(K + K * K);
  y.setZero();
  const cplx w_start = 0.25 * E.E * r_start * r_start;
  for (int a = 0; a < K; ++a) {
    const int j = std::abs(cls.modes[a]);
    const NormalizedJ f = bessel_j_normalized(Order::from_degree(j, 2), w_start);
    y(a) = static_cast<double>(j) + 2.0 * f.w_df / f.f;
  }
  if (r_start == opt.r0 && prof[0][0] != nullptr) {
    // Delta ~ g_0(0) r^2/(2|j|+2) for a potential that reaches the origin.
    for (int a = 0; a < K; ++a) {
      const cplx g0 = (*prof[a][a])(0.0);
      y(K + a * K + a) = g0 * r_start * r_start / (2.0 * std::abs(cls.modes[a]) + 2.0);
    }
  }

  std::vector<double> qj(K);
  for (int a = 0; a < K; ++a) qj[a] = static_cast<double>(cls.modes[a]) * cls.modes[a];

  std::vector<double> knots{std::log(r_start)};
  for (double b : v.breakpoints()) {
    if (b > r_start && b < r_s) knots.push_back(std::log(b));
  }
  knots.push_back(t_s);

  const double scale = std::max(v.sup_norm(), 1e-300) * r_s * r_s;
  OdeOptions oo;
  oo.rtol = opt.rtol;
  oo.atol = 1e-15 * scale;

  MatrixXcd Vr(K, K);
  for (std::size_t piece = 0; piece + 1 < knots.size(); ++piece) {
    const double lo = knots[piece], hi = knots[piece + 1];
    auto rhs = [&](double t, const VectorXcd& s) {
      const double tt = std::clamp(t, lo + 1e-13 * (hi - lo), hi - 1e-13 * (hi - lo));
      const double r = std::exp(tt);
      const double r2 = std::exp(2.0 * t);
      for (int b = 0; b < K; ++b) {
        for (int a = 0; a < K; ++a) {
          Vr(a, b) = prof[a][b] ? (*prof[a][b])(r) : cplx(0.0, 0.0);
        }
      }
      VectorXcd out(K + K * K);
      const auto Y0 = s.head(K);
      Eigen::Map<const MatrixXcd> D(s.data() + K, K, K);
      Eigen::Map<MatrixXcd> dD(out.data() + K, K, K);
      for (int a = 0; a < K; ++a) out(a) = qj[a] - Y0(a) * Y0(a) - r2 * E.E;
      dD.noalias() = -(D * D);
      dD += r2 * Vr;
      dD -= Y0.asDiagonal() * D;
      dD -= D * Y0.asDiagonal();
      return out;
    };
    const OdeStats st = integrate_dp45(rhs, lo, hi, y, oo, [&](double, VectorXcd& s) {
      return s.cwiseAbs().maxCoeff() < kPoleLevel;
    });
    if (st.stopped_early || !(y.cwiseAbs().maxCoeff() < kPoleLevel)) {
      throw ConditioningError(
          "log-derivative pole inside the support: E exceeds the lowest "
          "Dirichlet eigenvalue of the support disk",
          std::exp(st.t_end));
    }
  }

  Eigen::Map<const MatrixXcd> D(y.data() + K, K, K);
  std::vector<cplx> Xc(K), Tc(K);
  for (int a = 0; a < K; ++a) {
    Xc[a] = X[std::abs(cls.modes[a])];
    Tc[a] = T12[std::abs(cls.modes[a])];
  }
  MatrixXcd B = MatrixXcd::Identity(K, K);
  for (int a = 0; a < K; ++a) B.row(a) += (Tc[a] / Xc[a]) * D.row(a);
  Eigen::PartialPivLU<MatrixXcd> lu(B);
  const double rc = lu.rcond();
  if (!(rc > opt.rcond_floor)) {
    throw ConditioningError("E is numerically a Dirichlet eigenvalue of -Laplace + v", rc);
  }
  // Lambda = diag(1/X) Delta B^{-1} diag(1/X).
  MatrixXcd L = lu.solve(MatrixXcd::Identity(K, K));
  L = D * L;
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) L(a, b) /= Xc[a] * Xc[b];
  }
  res.lambda = L;
  return res;
}

}  // namespace

GalerkinSolution log_derivative_solve(const Potential& v, const ComplexEnergy& E,
                                      int j_max, const GalerkinOptions& opt) {
  const int J = j_max;
  const int size = 2 * J + 1;
  GalerkinSolution sol;
  sol.J = J;
  sol.phi0 = MatrixXcd::Zero(size, size);
  sol.lambda = MatrixXcd::Zero(size, size);
  for (int j = 0; j <= J; ++j) {
    const cplx val = free_dtn_entry(j, 2, E);
    sol.phi0(J + j, J + j) = val;
    sol.phi0(J - j, J - j) = val;
  }
  if (!v.is_zero()) {
    const double r_s = v.support_radius();
    std::vector<cplx> X(J + 1), T12(J + 1);
    for (int j = 0; j <= J; ++j) {
      if (r_s >= 1.0) {
        X[j] = 1.0;
        T12[j] = 0.0;
      } else {
        X[j] = 1.0 / free_radial_ratio(j, 2, E, r_s);
        T12[j] = transfer_t12(j, E.E, std::log(r_s), opt.rtol);
      }
    }
    for (const ModeClass& cls : mode_classes(v, J)) {
      const ClassResult cr = solve_class(v, E, cls, opt, X, T12);
      const int K = static_cast<int>(cls.modes.size());
      for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) {
          sol.lambda(J + cls.modes[a], J + cls.modes[b]) = cr.lambda(a, b);
        }
      }
    }
  }
  sol.phi = sol.phi0 + sol.lambda;
  return sol;
}

}  // namespace dtnlab
