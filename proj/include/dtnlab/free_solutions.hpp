#pragma once

// Free (v = 0) radial solutions and DtN eigenvalues on the unit ball.

#include "dtnlab/energy.hpp"

namespace dtnlab {

// r^{-(d-2)/2} J_a(kr)/J_a(k), a = j+(d-2)/2, evaluated as
// r^j F(E r^2/4)/F(E/4) with the entire normalised series F, so the E = 0
// limit r^j comes out directly.
cplx free_radial_ratio(int j, int d, const ComplexEnergy& E, double r);

// R_j(k, r) = r^{-(d-2)/2} (Y_a(kr) J_a(k) - J_a(kr) Y_a(k)); E != 0.
cplx ring_radial(int j, int d, const ComplexEnergy& E, double r);
// d/dr R_j(k, r).
cplx ring_radial_deriv(int j, int d, const ComplexEnergy& E, double r);

// -(d-2)/2 + k J_a'(k)/J_a(k), i.e. j + 2 w F'(w)/F(w) at w = E/4.
cplx free_dtn_entry(int j, int d, const ComplexEnergy& E);

}  // namespace dtnlab
