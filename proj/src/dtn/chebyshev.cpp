#include "dtnlab/chebyshev.hpp"

#include <cmath>
#include <numbers>

#include "dtnlab/errors.hpp"

namespace dtnlab {

ChebyshevGrid chebyshev_grid(int N) {
  if (N < 2) throw ParameterError("chebyshev_grid: N must be >= 2");
  ChebyshevGrid g;
  g.N = N;
  g.x.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    // sin form keeps the nodes exactly antisymmetric
    g.x(k) = std::sin(std::numbers::pi * (N - 2.0 * k) / (2.0 * N));
  }
  Eigen::VectorXd c(N + 1);
  for (int k = 0; k <= N; ++k) {
    c(k) = ((k == 0 || k == N) ? 2.0 : 1.0) * ((k % 2 == 0) ? 1.0 : -1.0);
  }
  g.D.setZero(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) {
      if (i != j) g.D(i, j) = (c(i) / c(j)) / (g.x(i) - g.x(j));
    }
  }
  // Negative-sum trick for the diagonal.
  for (int i = 0; i <= N; ++i) g.D(i, i) = -g.D.row(i).sum();
  g.D2 = g.D * g.D;
  return g;
}

}  // namespace dtnlab
