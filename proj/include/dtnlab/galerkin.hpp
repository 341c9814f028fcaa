#pragma once

// d = 2 coupled-mode solvers: psi = sum_j u_j(r) e^{i j theta}, |j| <= J,
//   u_j'' + u_j'/r - j^2 u_j/r^2 + E u_j - sum_n g_n u_{j-n} = 0.
//
// LogDerivative (default): the matrix Riccati equation for Y = r U' U^{-1}
// is integrated adaptively across the support of v, carrying Y_0 (free,
// diagonal) and Delta = Y - Y_0 separately; outside the support the modes
// decouple and are propagated to r = 1 exactly, which gives Lambda directly
// as diag(1/X) Delta (I + diag(T12/X) Delta)^{-1} diag(1/X).
//
// Collocation: Chebyshev collocation on r in [-1, 1] with u_j extended with
// parity (-1)^j, so only the M positive interior nodes are unknowns and the
// regular solution is selected without a condition at r = 0. Spectrally
// accurate for smooth profiles, but a narrow bump needs many nodes.

#include <string>

#include <Eigen/Dense>

#include "dtnlab/energy.hpp"
#include "dtnlab/potential.hpp"

namespace dtnlab {

enum class CoupledMethod { LogDerivative, Collocation };

struct GalerkinOptions {
  CoupledMethod method = CoupledMethod::LogDerivative;
  double rtol = 1e-12;           // log-derivative step tolerance
  double r0 = 1e-6;              // log-derivative start when v reaches r = 0
  int r_points = 128;            // positive interior collocation nodes
  double leak_tolerance = 1e-8;  // boundary-mode leakage that triggers a warning
  double rcond_floor = 1e-14;    // below this the solve is declared singular
};

struct GalerkinSolution {
  int J = 0;
  // Exponential basis: phi(i+J, j0+J) = u_i'(1) for boundary data e^{i j0 theta}.
  Eigen::MatrixXcd phi;
  Eigen::MatrixXcd phi0;  // v = 0 on the same discretisation
  Eigen::MatrixXcd lambda;  // phi - phi0, formed without cancellation
  double leak = 0.0;      // largest |Lambda| reaching the cut modes |i| = J
  double min_rcond = 1.0;
  bool triangular = false;  // collocation: all nonzero modes shared one sign
};

GalerkinSolution galerkin_solve(const Potential& v, const ComplexEnergy& E,
                                int j_max, const GalerkinOptions& opt = {});
GalerkinSolution collocation_solve(const Potential& v, const ComplexEnergy& E,
                                   int j_max, const GalerkinOptions& opt);
GalerkinSolution log_derivative_solve(const Potential& v, const ComplexEnergy& E,
                                      int j_max, const GalerkinOptions& opt);

// Matrix of an operator in the real basis f_jp of enumerate_harmonics(J, 2),
// from its matrix in the normalised exponentials e^{i j theta}/sqrt(2 pi).
// Result(iq, jp) = <A f_jp, f_iq>.
Eigen::MatrixXcd exponential_to_real(const Eigen::MatrixXcd& m_exp, int J);

}  // namespace dtnlab
