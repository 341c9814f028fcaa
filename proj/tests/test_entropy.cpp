#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"

using namespace dtnlab;
using std::numbers::pi;

TEST(Bump, ValuesAndJet) {
  EXPECT_EQ(cell_bump_1d(0.0), 1.0);
  EXPECT_EQ(cell_bump_1d(1.0 / 6.0), 0.0);
  EXPECT_EQ(cell_bump_1d(-0.3), 0.0);
  const double h = 1e-5;
  for (double t : {-0.12, -0.05, 0.02, 0.1}) {
    const auto jet = cell_bump_jet(t, 3);
    EXPECT_DOUBLE_EQ(jet[0], cell_bump_1d(t));
    const auto jp = cell_bump_jet(t + h, 3), jm = cell_bump_jet(t - h, 3);
    for (int k = 0; k < 3; ++k) {
      const double fd = (jp[k] - jm[k]) / (2 * h);
      EXPECT_NEAR(jet[k + 1], fd, 1e-5 * (1 + std::abs(fd))) << t << " " << k;
    }
  }
  const auto sups = cell_bump_derivative_sups(1);
  EXPECT_DOUBLE_EQ(sups[0], 1.0);
  // C^1 norm in R^2: max(sup b, sup|b'| sup b)
  EXPECT_NEAR(cell_bump_cm_norm(2, 1), std::max(1.0, sups[1]), 1e-12);
  EXPECT_THROW(cell_bump_jet(0.0, -1), ParameterError);
}

TEST(EpsFamily, BuildValidation) {
  EXPECT_THROW(EpsDiscreteFamily::build(4, 1.0, 1e-3, 1.0), ParameterError);
  EXPECT_THROW(EpsDiscreteFamily::build(2, 0.0, 1e-3, 1.0), ParameterError);
  EXPECT_THROW(EpsDiscreteFamily::build(2, 1.0, 1e-3, -1.0), ParameterError);
  const double mu = 0.5 / cell_bump_cm_norm(2, 1);
  EXPECT_THROW(EpsDiscreteFamily::build(2, 1.0, mu * 1.0001, 1.0), ParameterError);
  const auto f = EpsDiscreteFamily::build(2, 1.0, 1e-3, 1.0);
  EXPECT_NEAR(f.mu(), mu, 1e-15);
  EXPECT_EQ(f.cells_per_axis(), static_cast<int>(std::floor(mu / 1e-3)));
  EXPECT_LE(f.cm_budget(), f.beta());
  EXPECT_GE(f.log_pattern_count(), f.log_count_lower_bound());
}

TEST(EpsFamily, OneCellDifferenceAndAllPlus) {
  const auto f = EpsDiscreteFamily::build(2, 1.0, 0.01, 1.0);
  std::vector<int> a(f.cell_count(), 1);
  std::vector<int> b = a;
  b[f.cell_count() / 2] = -1;
  EXPECT_DOUBLE_EQ(f.sup_distance(a, b), 2 * f.eps());
  EXPECT_DOUBLE_EQ(f.sup_norm(a), f.eps());
  EXPECT_DOUBLE_EQ(f.sup_distance(a, a), 0.0);
}

TEST(EpsFamily, RandomPairsAreDiscreteAndWithinBudget) {
  const auto f = EpsDiscreteFamily::build(2, 1.0, 0.01, 1.0);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto a = f.pattern(2 * s), b = f.pattern(2 * s + 1);
    ASSERT_NE(a, b);
    EXPECT_GE(f.sup_distance(a, b), f.eps());
    EXPECT_LE(f.measured_cm_norm(a, 1), f.beta() * (1 + 1e-6));
  }
  EXPECT_EQ(f.pattern(5), f.pattern(5));
}

TEST(EpsFamily, DerivativeMatchesFiniteDifference) {
  const auto f = EpsDiscreteFamily::build(3, 1.0, 0.02, 1.0);
  const auto s = f.pattern(9);
  const double x[3] = {0.01, -0.02, 0.03};
  const double h = 1e-6;
  double xp[3] = {x[0] + h, x[1], x[2]}, xm[3] = {x[0] - h, x[1], x[2]};
  const double fd = (f.member_value(s, xp) - f.member_value(s, xm)) / (2 * h);
  EXPECT_NEAR(f.member_derivative(s, x, {1, 0, 0}), fd, 1e-5 * (1 + std::abs(fd)));
}

TEST(EpsFamily, PotentialReexpansion) {
  const auto f = EpsDiscreteFamily::build(2, 1.0, 0.02, 1.0);
  const auto s = f.pattern(3);
  double residual = 1.0;
  const Potential v = f.as_potential(s, 64, &residual);
  EXPECT_LE(residual, 0.05 * f.eps());
  const double x[2] = {0.3 * std::cos(0.7), 0.3 * std::sin(0.7)};
  EXPECT_NEAR(v.value(0.3, 0.7).real(), f.member_value(s, x), 0.05 * f.eps());
  EXPECT_LE(v.support_radius(), 1.0 / 3.0);
}

TEST(Ellipse, ReachAndInverse) {
  const Interval I{6.2, 7.0};
  EXPECT_NEAR(std::abs(ellipse_point(I, 0.0) - cplx(6.2)), 0.0, 1e-14);
  // semi-axes (b-a)/2 cosh g, (b-a)/2 sinh g; reach along the major axis
  const double g = 0.5;
  EXPECT_GE(ellipse_reach(I, g), 0.4 * (std::cosh(g) - 1) - 1e-12);
  const double gr = gamma_for_reach(I, 0.05);
  EXPECT_NEAR(ellipse_reach(I, gr), 0.05, 1e-6);
  EXPECT_THROW(gamma_for_reach(I, 0.0), ParameterError);
}

TEST(HoloNet, ProjectionOfSimpleFunctions) {
  const Interval I{6.2, 7.0};
  const HoloNet net = build_holo_net(I, 0.6, 1.0, 1e-3);
  EXPECT_EQ(net.coefficient_count, net.n_delta + 1);
  EXPECT_NEAR(net.log_cardinality(), net.coefficient_count * std::log(net.y_delta_size), 1e-9);
  const NetProjection zero = project_to_net(net, [](double) { return cplx(0.0); });
  EXPECT_EQ(zero.sup_error, 0.0);
  for (const auto& e : zero.element) EXPECT_EQ(e, std::make_pair(0L, 0L));
  const NetProjection c = project_to_net(net, [](double) { return cplx(0.4, -0.3); });
  EXPECT_LE(c.sup_error, net.delta);
  EXPECT_TRUE(c.warnings.empty());
  const NetProjection p = project_to_net(net, [](double x) {
    const double t = x - 6.6;
    return cplx(0.2 * t * t * t - 0.1 * t, 0.05);
  });
  EXPECT_LE(p.sup_error, net.delta);
  EXPECT_THROW(build_holo_net(I, 0.6, 1.0, 0.5), ParameterError);
  EXPECT_THROW(build_holo_net({2.0, 1.0}, 0.6, 1.0, 0.1), ParameterError);
}

TEST(HoloNet, DegenerateIntervalGrid) {
  const HoloNet net = build_holo_net({3.0, 3.0}, 0.5, 1.0, 0.05);
  EXPECT_TRUE(net.degenerate);
  EXPECT_EQ(net.coefficient_count, 1);
  for (double a = 0.0; a < 2 * pi; a += 0.37) {
    for (double r : {0.0, 0.3, 0.71, 1.0}) {
      const cplx c = std::polar(r, a);
      EXPECT_LE(project_to_net(net, [c](double) { return c; }).sup_error, net.delta);
    }
  }
}

TEST(HoloNet, TinyNetEnumeration) {
  const double dl = 0.3;
  const double unit = 6.0 / (pi * pi) * dl / (2 * pi);
  for (double C : {0.9 * unit, std::exp(0.01) * unit}) {
    const HoloNet net = build_holo_net({0.0, 1.0}, 3.0, C, dl);
    const auto all = enumerate_net(net);
    const std::set<std::vector<std::pair<long, long>>> distinct(all.begin(), all.end());
    EXPECT_EQ(static_cast<double>(distinct.size()), std::pow(net.y_delta_size, net.coefficient_count));
  }
  const HoloNet point = build_holo_net({2.0, 2.0}, 3.0, 0.2, dl);
  EXPECT_EQ(static_cast<double>(enumerate_net(point).size()), point.y_delta_size);
}

TEST(ImageNet, LDeltaScanAndMonotone) {
  // direct scan of (1+l)^{2s+d} 4 rho 2^{-l} <= delta from l upward
  auto scan = [](double s, int d, double delta, double rho) {
    int last_fail = -1;
    for (int l = 0; l < 2000; ++l) {
      if (std::pow(1.0 + l, 2 * s + d) * 4 * rho * std::pow(2.0, -l) > delta) last_fail = l;
    }
    return last_fail + 1;
  };
  EXPECT_EQ(l_delta_s(0.0, 2, 1e-3, 1.0), scan(0.0, 2, 1e-3, 1.0));
  EXPECT_EQ(l_delta_s(1.5, 3, 1e-5, 2.0), scan(1.5, 3, 1e-5, 2.0));
  int prev = 0;
  for (double dl = 0.36; dl > 1e-8; dl /= 3) {
    const int l = l_delta_s(0.5, 2, dl, 0.1);
    EXPECT_GE(l, prev);
    prev = l;
  }
  EnergyIntervalSet S({{6.2, 7.0}}, 0.3, 9);
  const ImageNetSize a = dtn_image_net_size(S, 0.0, 2, 1e-2, 1.0);
  const ImageNetSize b = dtn_image_net_size(S, 0.0, 2, 1e-3, 1.0);
  EXPECT_GE(b.log_cardinality, a.log_cardinality);
  EXPECT_LE(static_cast<double>(a.tuple_count), a.tuple_bound);
  ASSERT_EQ(a.gammas.size(), 1u);
  EXPECT_LE(ellipse_reach({6.2, 7.0}, a.gammas[0]), 0.05 + 1e-9);
}
