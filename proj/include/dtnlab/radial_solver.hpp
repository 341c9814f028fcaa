#pragma once

// DtN entries of radial potentials from the radial ODE
//   -R'' - ((d-1)/r) R' + (j(j+d-2)/r^2) R + v R = E R,
// integrated in t = ln r from a series start near the origin.

#include "dtnlab/energy.hpp"
#include "dtnlab/potential.hpp"

namespace dtnlab {

struct RadialSolverOptions {
  double r0 = 1e-6;
  double rtol = 1e-12;
};

struct RadialDtnResult {
  cplx value{0.0, 0.0};      // R'(1)/R(1)
  bool linear_fallback = false;
  long steps = 0;
};

// Riccati (log-derivative) integration of y = r R'/R, switching to the
// renormalised linear system for (R, rR') if y runs into a pole.
// ConditioningError when E is numerically an eigenvalue of -Laplace + v.
RadialDtnResult radial_dtn_detail(const Potential& v, const ComplexEnergy& E,
                                  int j, int d,
                                  const RadialSolverOptions& opt = {});
cplx radial_dtn(const Potential& v, const ComplexEnergy& E, int j, int d,
                const RadialSolverOptions& opt = {});

// Diagonal entry of Phi(E) - Phi_0(E) for degree j. Integrates the
// Wronskian W = P_v R_0 - P_0 R_v (P = r R') alongside both solutions, so
// tiny differences keep their relative accuracy.
cplx radial_lambda(const Potential& v, const ComplexEnergy& E, int j, int d,
                   const RadialSolverOptions& opt = {});

}  // namespace dtnlab
