#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dtnlab/energy.hpp"
#include "dtnlab/harmonics.hpp"

namespace dtnlab {

// Truncated matrix of a DtN map (or DtN difference) in the real basis
// f_jp, j <= j_max: A(row = iq, col = jp) = a_{jpiq} = <A f_jp, f_iq>.
struct DtnMatrix {
  int d = 2;
  int j_max = 0;
  ComplexEnergy energy;
  std::vector<HarmonicIndex> basis;
  Eigen::MatrixXcd A;
  // Truncation certificate 4 sup_{l > j_max} (1+l)^d rho 2^{-l} with
  // rho = max |a| 2^{max(j,i)} (the s = 0 case; see tail_bound_for).
  double tail_bound = 0.0;
  std::vector<std::string> warnings;

  static DtnMatrix zeros(int d, int j_max, const ComplexEnergy& E);

  int index_of(const HarmonicIndex& idx) const;
  cplx entry(const HarmonicIndex& jp, const HarmonicIndex& iq) const;
  // Degree of each basis element, in basis order.
  std::vector<int> degrees() const;
};

DtnMatrix operator-(const DtnMatrix& a, const DtnMatrix& b);

// Samples of a matrix-valued function of E on the grid of an energy set.
struct EnergyCurveMatrix {
  EnergyIntervalSet interval_set;
  std::vector<double> energies;
  std::vector<DtnMatrix> samples;
};

}  // namespace dtnlab
