#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dtnlab/errors.hpp"
#include "dtnlab/harmonics.hpp"

using namespace dtnlab;
using std::numbers::pi;

TEST(HarmonicDim, Examples) {
  EXPECT_EQ(harmonic_dim(0, 2), 1);
  EXPECT_EQ(harmonic_dim(0, 5), 1);
  EXPECT_EQ(harmonic_dim(3, 2), 2);
  EXPECT_EQ(harmonic_dim(2, 3), 5);
  EXPECT_EQ(harmonic_dim(2, 4), 9);
  for (int j = 0; j <= 100; ++j) {
    EXPECT_EQ(harmonic_dim(j, 2), j == 0 ? 1 : 2);
    EXPECT_EQ(harmonic_dim(j, 3), 2 * j + 1);
  }
  EXPECT_THROW(harmonic_dim(-1, 2), ParameterError);
}

TEST(HarmonicIndex, SlotRange) {
  EXPECT_NO_THROW(HarmonicIndex::make(2, 5, 3));
  EXPECT_THROW(HarmonicIndex::make(2, 6, 3), ParameterError);
  EXPECT_THROW(HarmonicIndex::make(0, 2, 2), ParameterError);
  EXPECT_EQ(enumerate_harmonics(4, 2).size(), 9u);
  EXPECT_EQ(enumerate_harmonics(4, 3).size(), 25u);
}

TEST(BasisEval, ConstantNormalisation) {
  for (double t : {0.0, 1.0, 4.0}) {
    EXPECT_NEAR(basis_eval_angle(0, 1, t), 1.0 / std::sqrt(2 * pi), 1e-15);
  }
  EXPECT_THROW(basis_eval(HarmonicIndex{1, 1, 4}, {1, 0, 0, 0}), CapabilityError);
}

TEST(BasisEval, GramMatrixCircle) {
  const int J = 16, nq = 256;
  const auto idx = enumerate_harmonics(J, 2);
  double worst = 0.0;
  for (const auto& a : idx) {
    for (const auto& b : idx) {
      double s = 0.0;
      for (int k = 0; k < nq; ++k) {
        const double t = 2 * pi * k / nq;
        s += basis_eval(a, {std::cos(t), std::sin(t)}) * basis_eval(b, {std::cos(t), std::sin(t)});
      }
      s *= 2 * pi / nq;
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BasisEval, GramMatrixSphere) {
  const int J = 4, nt = 400, np = 64;
  const auto idx = enumerate_harmonics(J, 3);
  std::vector<std::vector<double>> pts;
  std::vector<double> w;
  for (int a = 0; a < nt; ++a) {
    const double th = pi * (a + 0.5) / nt;
    for (int b = 0; b < np; ++b) {
      const double ph = 2 * pi * b / np;
      pts.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
      w.push_back(std::sin(th) * (pi / nt) * (2 * pi / np));
    }
  }
  double worst = 0.0;
  for (const auto& a : idx) {
    for (const auto& b : idx) {
      double s = 0.0;
      for (size_t k = 0; k < pts.size(); ++k) s += w[k] * basis_eval(a, pts[k]) * basis_eval(b, pts[k]);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(BasisEval, HomogeneousExtensionIsHarmonic) {
  const double h = 1e-3;
  for (int j = 0; j <= 5; ++j) {
    for (int p = 1; p <= harmonic_dim(j, 2); ++p) {
      auto u = [&](double x, double y) {
        const double r = std::hypot(x, y);
        return std::pow(r, j) * basis_eval(HarmonicIndex{j, p, 2}, {x / r, y / r});
      };
      for (auto [x, y] : {std::pair{0.4, 0.3}, {-0.5, 0.2}, {0.1, -0.7}}) {
        const double lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4 * u(x, y)) / (h * h);
        EXPECT_NEAR(lap, 0.0, 1e-5) << j << "," << p;
      }
    }
  }
}

TEST(HsNorm, Examples) {
  CoeffSeq c(2, 4);
  c.set({2, 1, 2}, 1.0);
  EXPECT_DOUBLE_EQ(hs_norm(c, 1.0), 3.0);
  CoeffSeq e(2, 2);
  e.set({0, 1, 2}, 1.0);
  e.set({1, 2, 2}, 1.0);
  EXPECT_DOUBLE_EQ(hs_norm(e, 0.0), std::sqrt(2.0));
  EXPECT_THROW(c.set({5, 1, 2}, 1.0), ParameterError);
  EXPECT_THROW(hs_norm(c, -1.0), ParameterError);
}

TEST(HsNorm, RandomAgainstReferenceSumAndMonotone) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  CoeffSeq c(3, 10);
  double ref = 0.0;
  for (const auto& idx : enumerate_harmonics(10, 3)) {
    const std::complex<double> v(g(rng), g(rng));
    c.set(idx, v);
    ref += std::pow(1.0 + idx.j, 4) * std::norm(v);
  }
  EXPECT_NEAR(hs_norm(c, 2.0) / std::sqrt(ref), 1.0, 1e-14);
  double prev = 0.0;
  for (double s = 0.0; s <= 3.0; s += 0.25) {
    const double n = hs_norm(c, s);
    EXPECT_GE(n, prev);
    prev = n;
  }
}
