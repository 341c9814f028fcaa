#pragma once

// Assembly of DtN matrices Phi(E) and differences Lambda = Phi(E) - Phi_0(E)
// in the real harmonic basis, for single energies and energy grids.

#include "dtnlab/dtn_matrix.hpp"
#include "dtnlab/galerkin.hpp"
#include "dtnlab/potential.hpp"
#include "dtnlab/radial_solver.hpp"

namespace dtnlab {

struct SolverSettings {
  GalerkinOptions galerkin;
  RadialSolverOptions radial;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Full DtN matrix of -Laplace + v - E on the unit disk (d = 2).
DtnMatrix galerkin_dtn(const Potential& v, const ComplexEnergy& E, int j_max,
                       const SolverSettings& settings = {});

// Diagonal DtN matrix of a radial potential from the radial ODE (d = 2, 3).
DtnMatrix radial_dtn_matrix(const Potential& v, const ComplexEnergy& E,
                            int j_max, int d, const SolverSettings& settings = {});

// Lambda_{v,E}: radial potentials use the Wronskian form of the radial ODE,
// angular-Fourier ones (d = 2) the Galerkin solver with v and 0 on the same
// grid. Requires supp v in B(0,1/3) unless v is an oracle potential.
DtnMatrix lambda_matrix(const Potential& v, const ComplexEnergy& E, int j_max,
                        int d, const SolverSettings& settings = {});

// Phi_1(E) - Phi_2(E) on a shared Galerkin discretisation (d = 2).
DtnMatrix dtn_difference(const Potential& v1, const Potential& v2,
                         const ComplexEnergy& E, int j_max,
                         const SolverSettings& settings = {});

// lambda_matrix at every grid energy of S, in grid order.
EnergyCurveMatrix lambda_curve(const Potential& v, const EnergyIntervalSet& S,
                               int j_max, int d,
                               const SolverSettings& settings = {});

}  // namespace dtnlab
