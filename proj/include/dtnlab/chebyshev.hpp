#pragma once

#include <Eigen/Dense>

namespace dtnlab {

// Chebyshev points x_k = cos(pi k / N), k = 0..N, with first and second
// differentiation matrices.
struct ChebyshevGrid {
  int N = 0;
  Eigen::VectorXd x;
  Eigen::MatrixXd D;
  Eigen::MatrixXd D2;
};

ChebyshevGrid chebyshev_grid(int N);

}  // namespace dtnlab
