#pragma once

// Dirichlet spectrum of -Laplace on the unit ball, sigma-regularity of
// energy intervals, and the resolvent bound used by the image net.

#include <string>
#include <vector>

#include "dtnlab/energy.hpp"

namespace dtnlab {

struct DirichletEigenvalue {
  double value = 0.0;  // j_{a,k}^2
  int j = 0;           // degree
  long multiplicity = 1;
};

// Eigenvalues below E_max for degrees j <= j_max, ascending.
std::vector<DirichletEigenvalue> dirichlet_spectrum(int d, int j_max,
                                                    double E_max);
// Every eigenvalue below E_max (the degree cut is chosen so none is missed:
// the first zero of J_a exceeds a).
std::vector<DirichletEigenvalue> dirichlet_spectrum_complete(int d,
                                                             double E_max);

// min |E - lambda| over a precomputed spectrum (+inf when empty).
double spectrum_distance(cplx E, const std::vector<DirichletEigenvalue>& spec);
// Same, computing enough of the spectrum to be exact.
double spectrum_distance(cplx E, int d);

enum class Regularity { Certified, NecessaryOnly, Violated };
std::string to_string(Regularity r);

struct SigmaCheck {
  Regularity verdict = Regularity::Certified;
  double distance = 0.0;        // dist(witness, I)
  DirichletEigenvalue witness;  // closest free eigenvalue
};

// violated if dist(spectrum, I) < sigma; certified if dist > sigma and the
// potentials are real; otherwise (equality within 1e-12 relative, or
// complex potentials) necessary-only.
SigmaCheck sigma_regular_check(Interval I, double sigma, int d,
                               bool real_potentials = true);
// Worst verdict over the intervals of S.
SigmaCheck sigma_regular_check(const EnergyIntervalSet& S, int d,
                               bool real_potentials = true);

// 1/(dist - v_sup); requires v_sup <= 2 sigma/3, RegularityError when the
// denominator is not positive.
double resolvent_bound(double sigma, double v_sup, double dist);

}  // namespace dtnlab
