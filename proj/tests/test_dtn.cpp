#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dtnlab/errors.hpp"
#include "dtnlab/free_solutions.hpp"
#include "dtnlab/lambda.hpp"
#include "dtnlab/operator_norms.hpp"
#include "dtnlab/radial_solver.hpp"
#include "dtnlab/spectrum.hpp"
#include "oracles.hpp"

using namespace dtnlab;
using std::numbers::pi;

namespace {

ComplexEnergy en(double re, double im = 0.0) { return ComplexEnergy::from_energy({re, im}); }

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST(Energy, PrincipalBranch) {
  EXPECT_NEAR(std::abs(en(4.0).k - 2.0), 0.0, 1e-15);
  EXPECT_GT(en(-4.0, 1e-9).k.imag(), 0.0);
  EXPECT_GE(en(-1.0, -0.5).k.real(), 0.0);
  const auto nodes = chebyshev_lobatto(6.2, 7.0, 33);
  EXPECT_EQ(nodes.front(), 6.2);
  EXPECT_EQ(nodes.back(), 7.0);
  EnergyIntervalSet S({{6.2, 7.0}, {8.0, 8.0}}, 0.3, 5);
  EXPECT_EQ(S.grid().size(), 6u);
  EXPECT_EQ(S.refined().grid().size(), 10u);
}

TEST(FreeRadialRatio, Examples) {
  EXPECT_NEAR(std::abs(free_radial_ratio(3, 2, en(0.0), 0.5) - 0.125), 0.0, 1e-15);
  for (int j : {0, 2, 7}) {
    for (int d : {2, 3}) {
      EXPECT_NEAR(std::abs(free_radial_ratio(j, d, en(3.0, 1.0), 1.0) - 1.0), 0.0, 1e-14);
    }
  }
  const double ref = std::cyl_bessel_j(0, 0.5) / std::cyl_bessel_j(0, 1.0);
  EXPECT_NEAR(free_radial_ratio(0, 2, en(1.0), 0.5).real(), ref, 1e-14);
}

TEST(RingRadial, WronskianScaling) {
  for (int j = 0; j <= 6; ++j) {
    for (double E : {1.0, 6.5, 20.0}) {
      EXPECT_NEAR(std::abs(ring_radial(j, 2, en(E), 1.0)), 0.0, 1e-13);
      EXPECT_NEAR(std::abs(ring_radial_deriv(j, 2, en(E), 1.0) - 2.0 / pi), 0.0, 1e-11)
          << j << " " << E;
    }
  }
}

TEST(FreeDtnEntry, Examples) {
  for (int d : {2, 3}) EXPECT_NEAR(std::abs(free_dtn_entry(5, d, en(0.0)) - 5.0), 0.0, 1e-14);
  const double E = 1e-3;
  EXPECT_NEAR(free_dtn_entry(0, 2, en(E)).real(), -E / 2 - E * E / 16, 1e-7 * E);
  EXPECT_LT(free_dtn_entry(0, 3, en(pi * pi - 1e-6)).real(), -1e5);
  for (int d : {2, 3}) {
    for (int j = 0; j <= 20; ++j) {
      for (double e : {0.7, 3.3, 8.1}) {
        EXPECT_LE(oracle::rel_err(free_dtn_entry(j, d, en(e)), oracle::free_dtn_real(j, d, e)), 1e-11);
      }
    }
  }
}

TEST(Spectrum, LowestEigenvalues) {
  const auto s2 = dirichlet_spectrum(2, 10, 30.0);
  ASSERT_FALSE(s2.empty());
  EXPECT_NEAR(s2[0].value, 2.404825557695773 * 2.404825557695773, 1e-10);
  EXPECT_EQ(s2[0].j, 0);
  EXPECT_EQ(s2[0].multiplicity, 1);
  const auto s3 = dirichlet_spectrum(3, 10, 30.0);
  EXPECT_NEAR(s3[0].value, pi * pi, 1e-10);
  EXPECT_EQ(s3[1].multiplicity, 3);
}

TEST(Spectrum, CompletenessAgainstSignChangeScan) {
  const double E_max = 50.0, x_max = std::sqrt(E_max);
  for (int d : {2, 3}) {
    long expected = 0;
    for (int j = 0; j < 20; ++j) {
      auto f = [&](double x) { return d == 2 ? std::cyl_bessel_j(j, x) : std::sph_bessel(j, x); };
      int zeros = 0;
      double prev = f(1e-3);
      for (double x = 1e-3; x <= x_max; x += 1e-4) {
        const double cur = f(x);
        if ((prev < 0) != (cur < 0) && prev != 0.0) ++zeros;
        prev = cur;
      }
      expected += zeros * harmonic_dim(j, d);
    }
    long got = 0;
    for (const auto& ev : dirichlet_spectrum_complete(d, E_max)) got += ev.multiplicity;
    EXPECT_EQ(got, expected) << "d=" << d;
  }
}

TEST(SigmaCheck, Verdicts) {
  const SigmaCheck ok = sigma_regular_check({6.2, 7.0}, 0.3, 2);
  EXPECT_EQ(ok.verdict, Regularity::Certified);
  EXPECT_NEAR(ok.distance, 6.2 - 2.404825557695773 * 2.404825557695773, 1e-9);
  EXPECT_EQ(sigma_regular_check({5.0, 6.0}, 0.3, 2).verdict, Regularity::Violated);
  const double lam = dirichlet_spectrum(2, 0, 10.0)[0].value;
  EXPECT_EQ(sigma_regular_check({lam + 0.3, 7.0}, 0.3, 2).verdict, Regularity::NecessaryOnly);
  EXPECT_EQ(sigma_regular_check({6.2, 7.0}, 0.3, 2, false).verdict, Regularity::NecessaryOnly);
}

TEST(Resolvent, Examples) {
  const double s = 0.3;
  EXPECT_NEAR(resolvent_bound(s, 2 * s / 3, 5 * s / 6), 6 / s, 1e-12);
  EXPECT_NEAR(resolvent_bound(s, 0.0, s), 1 / s, 1e-12);
  EXPECT_NEAR((2 * s / 3) * resolvent_bound(s, 2 * s / 3, 5 * s / 6), 4.0, 1e-12);
  EXPECT_THROW(resolvent_bound(s, 2 * s / 3, 0.1), RegularityError);
}

TEST(RadialDtn, ZeroPotentialMatchesFree) {
  for (int d : {2, 3}) {
    for (int j : {0, 3, 12}) {
      const ComplexEnergy E = en(4.0, 0.5);
      EXPECT_LE(oracle::rel_err(radial_dtn(Potential::zero(), E, j, d), free_dtn_entry(j, d, E)), 1e-10);
    }
  }
}

TEST(RadialDtn, EnergyShiftIdentity) {
  for (double c : {-1.0, 0.5, 2.0}) {
    for (int d : {2, 3}) {
      for (int j : {0, 1, 5, 20}) {
        for (cplx E : {cplx(0.8, 0.0), cplx(3.1, 0.2), cplx(-0.5, 1.0)}) {
          const ComplexEnergy e = ComplexEnergy::from_energy(E);
          const cplx got = radial_dtn(Potential::constant(c), e, j, d);
          const cplx ref = free_dtn_entry(j, d, ComplexEnergy::from_energy(E - c));
          EXPECT_LE(oracle::rel_err(got, ref), 1e-8) << c << " " << d << " " << j << " " << E;
        }
      }
    }
  }
}

TEST(RadialDtn, MatchedBesselStep) {
  for (double c : {-1.0, 0.5, 2.0}) {
    for (int d : {2, 3}) {
      for (int j : {0, 2, 9, 20}) {
        for (double E : {0.6, 2.5, 4.4}) {
          const cplx got = radial_dtn(Potential::step(c, 1.0 / 3.0), en(E), j, d);
          const double ref = oracle::matched_step_dtn(j, d, c, 1.0 / 3.0, E);
          EXPECT_LE(oracle::rel_err(got, ref), 1e-8) << c << " " << d << " " << j << " " << E;
        }
      }
    }
  }
}

TEST(RadialDtn, EigenvalueRaisesConditioning) {
  const double lam = 2.404825557695773 * 2.404825557695773;
  EXPECT_THROW(radial_dtn(Potential::zero(), en(lam), 0, 2), ConditioningError);
}

TEST(RadialLambda, SmallDifferenceKeepsRelativeAccuracy) {
  const Potential v = Potential::radial_bump(0.2, 0.0, 1.0 / 3.0);
  const ComplexEnergy E = en(6.5);
  for (int j : {0, 4, 10}) {
    const cplx lam = radial_lambda(v, E, j, 2);
    const cplx diff = radial_dtn(v, E, j, 2) - free_dtn_entry(j, 2, E);
    EXPECT_LE(std::abs(lam - diff), 1e-9 * (std::abs(free_dtn_entry(j, 2, E)) + 1));
  }
  // past the cancellation limit the direct difference is noise, the
  // Wronskian form keeps decaying
  EXPECT_LT(std::abs(radial_lambda(v, E, 24, 2)), 1e-12);
  EXPECT_GT(std::abs(radial_lambda(v, E, 24, 2)), 0.0);
}

TEST(LambdaMatrix, ZeroPotential) {
  const DtnMatrix m = lambda_matrix(Potential::zero(), en(6.5), 6, 2);
  EXPECT_EQ(max_abs(m.A), 0.0);
  const DtnMatrix g = galerkin_dtn(Potential::zero(), en(6.5), 6);
  for (int k = 0; k < g.A.rows(); ++k) {
    EXPECT_LE(oracle::rel_err(g.A(k, k), free_dtn_entry(g.basis[k].j, 2, en(6.5))), 1e-10);
  }
  EXPECT_LT(max_abs(g.A - Eigen::MatrixXcd(g.A.diagonal().asDiagonal())), 1e-14);
}

TEST(LambdaMatrix, SupportRule) {
  EXPECT_THROW(lambda_matrix(Potential::radial_bump(0.1, 0.5, 0.3), en(6.5), 4, 2), ParameterError);
}

TEST(Galerkin, RadialPotentialIsDiagonalAndMatchesRadialSolver) {
  const Potential v = Potential::radial_bump(0.2, 0.0, 1.0 / 3.0);
  const ComplexEnergy E = en(6.5, 0.1);
  const DtnMatrix g = galerkin_dtn(v, E, 8);
  const DtnMatrix r = radial_dtn_matrix(v, E, 8, 2);
  const double scale = max_abs(r.A);
  EXPECT_LT(max_abs(g.A - r.A), 1e-9 * scale);
  Eigen::MatrixXcd off = g.A;
  off.diagonal().setZero();
  EXPECT_LT(max_abs(off), 1e-12 * scale);
}

TEST(Galerkin, CollocationCrossCheck) {
  // Mode-n profiles vanish like r^|n| so collocation converges spectrally.
  std::map<int, RadialProfile> modes;
  modes[0] = [](double r) { return cplx(0.3 + 0.1 * r * r, 0.0); };
  modes[2] = [](double r) { return cplx(0.1 * r * r, 0.05 * r * r); };
  modes[-2] = [](double r) { return cplx(0.1 * r * r, -0.05 * r * r); };
  const Potential v = Potential::fourier(modes, 1.0, false, 0.5).as_oracle();
  const ComplexEnergy E = en(3.0);
  GalerkinOptions col;
  col.method = CoupledMethod::Collocation;
  col.r_points = 48;
  const GalerkinSolution a = galerkin_solve(v, E, 6);
  const GalerkinSolution b = galerkin_solve(v, E, 6, col);
  EXPECT_LT(max_abs(a.lambda - b.lambda), 1e-8 * max_abs(a.lambda));
}

TEST(Galerkin, CounterexampleVanishingBlock) {
  for (int n : {4, 6, 8}) {
    const Potential v = Potential::counterexample(n, 1.0, 0.3);
    const DtnMatrix m = lambda_matrix(v, en(6.5), 10, 2);
    double inside = 0.0, first = 0.0;
    for (size_t c = 0; c < m.basis.size(); ++c) {
      for (size_t r = 0; r < m.basis.size(); ++r) {
        const int j = m.basis[c].j, i = m.basis[r].j;
        const double a = std::abs(m.A(r, c));
        if (j + i < n) inside = std::max(inside, a);
        if (std::max(j, i) == n - (n - 1) / 2) first = std::max(first, a);
      }
    }
    EXPECT_LE(inside, 1e-14) << n;
    EXPECT_GT(first, 1e-12) << n;
  }
}

TEST(Galerkin, SymmetryForRealPotential) {
  const Potential v = Potential::counterexample(4, 1.0, 0.3);
  const DtnMatrix m = lambda_matrix(v, en(6.5), 8, 2);
  EXPECT_LE(max_abs(m.A - m.A.transpose()), 1e-10 * max_abs(m.A));
}

TEST(Galerkin, HolomorphyProxy) {
  const Potential v = Potential::counterexample(4, 1.0, 0.3);
  const auto nodes = chebyshev_lobatto(6.2, 7.0, 33);
  std::vector<DtnMatrix> ms;
  for (double e : nodes) ms.push_back(lambda_matrix(v, en(e), 6, 2));
  // degree-10 least-squares fit in the scaled variable per entry
  Eigen::MatrixXd V(nodes.size(), 11);
  for (size_t k = 0; k < nodes.size(); ++k) {
    const double t = (2 * nodes[k] - 13.2) / 0.8;
    for (int p = 0; p <= 10; ++p) V(k, p) = std::cos(p * std::acos(std::clamp(t, -1.0, 1.0)));
  }
  const auto qr = V.colPivHouseholderQr();
  double worst = 0.0;
  for (int r = 0; r < ms[0].A.rows(); ++r) {
    for (int c = 0; c < ms[0].A.cols(); ++c) {
      Eigen::VectorXcd y(nodes.size());
      for (size_t k = 0; k < nodes.size(); ++k) y(k) = ms[k].A(r, c);
      const double peak = y.cwiseAbs().maxCoeff();
      if (peak < 1e-14) continue;
      const Eigen::VectorXd cr = qr.solve(y.real().eval()), ci = qr.solve(y.imag().eval());
      const Eigen::VectorXcd fit = (V * cr).cast<cplx>() + cplx(0, 1) * (V * ci).cast<cplx>();
      worst = std::max(worst, (fit - y).cwiseAbs().maxCoeff() / peak);
    }
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Norms, DiagonalAndZero) {
  const int J = 5;
  DtnMatrix m = DtnMatrix::zeros(2, J, en(6.5));
  const OperatorNorm z = hs_operator_norm(m, 1.0);
  EXPECT_EQ(z.norm, 0.0);
  EXPECT_EQ(z.bound, 0.0);
  double expect = 0.0;
  for (size_t k = 0; k < m.basis.size(); ++k) {
    const double a = std::pow(0.5, m.basis[k].j) * (k % 2 ? 1.0 : 0.7);
    m.A(k, k) = a;
    expect = std::max(expect, std::pow(1.0 + m.basis[k].j, 2.0) * a);
  }
  EXPECT_NEAR(hs_operator_norm(m, 1.0).norm, expect, 1e-14 * expect);
}

TEST(Norms, RandomDecayingMatricesObeyBound) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2;
    DtnMatrix m = DtnMatrix::zeros(d, 6, en(6.5));
    const double s = u(rng);
    for (Eigen::Index r = 0; r < m.A.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.A.cols(); ++c) {
        const int l = std::max(m.basis[r].j, m.basis[c].j);
        m.A(r, c) = cplx(g(rng), g(rng)) * std::pow(2.0, -l);
      }
    }
    const OperatorNorm n = hs_operator_norm(m, s);
    EXPECT_LE(n.norm, n.bound);
    EXPECT_NEAR(n.bound, 4 * weighted_sup(m, s), 1e-12 * n.bound);
  }
}

TEST(Norms, XssCurveConsistency) {
  const Potential v = Potential::radial_bump(0.2, 0.0, 1.0 / 3.0);
  EnergyIntervalSet S({{6.5, 6.5}}, 0.3, 2);
  const EnergyCurveMatrix curve = lambda_curve(v, S, 8, 2);
  ASSERT_EQ(curve.samples.size(), 1u);
  EXPECT_DOUBLE_EQ(xss_norm(curve, 0.5), weighted_sup(curve.samples[0], 0.5));
}

TEST(DecayFit, ZeroIsUndefinedAndBumpDecays) {
  EXPECT_FALSE(decay_fit(DtnMatrix::zeros(2, 6, en(6.5)), 1.0).defined);
  const Potential v = Potential::radial_bump(0.2, 0.0, 1.0 / 3.0);
  const DtnMatrix m = lambda_matrix(v, en(6.5), 24, 2);
  const DecayFit f = decay_fit(m, 0.2 * resolvent_bound(0.3, 0.2, spectrum_distance(cplx(6.5), 2)));
  ASSERT_TRUE(f.defined);
  EXPECT_LE(f.slope, -0.9);
  EXPECT_GT(f.rho_hat, 0.0);
}
