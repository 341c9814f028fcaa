#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dtnlab/dtn_matrix.hpp"

namespace dtnlab {

struct OperatorNorm {
  double norm = 0.0;   // largest singular value of D^s A D^s, D = diag(1+j)
  double bound = 0.0;  // 4 sup (1+max(j,i))^{2s+d} |a_{jpiq}|
};

OperatorNorm hs_operator_norm(const DtnMatrix& m, double s);
OperatorNorm hs_operator_norm(const Eigen::MatrixXcd& a,
                              const std::vector<int>& degrees, int d, double s);

// sup over entries of (1+max(j,i))^{2s+d} |a_{jpiq}|.
double weighted_sup(const DtnMatrix& m, double s);
// The X_{S,s} norm: weighted_sup maximised over the sampled energies.
double xss_norm(const EnergyCurveMatrix& curve, double s);

// 4 sup_{l > j_max} (1+l)^{2s+d} rho 2^{-l}, rho = max |a| 2^{max(j,i)}.
double tail_bound_for(const DtnMatrix& m, double s);
double tail_bound_for(const EnergyCurveMatrix& curve, double s);

struct DecayFitOptions {
  // Levels at or below max(abs_floor, rel_floor * peak) are treated as
  // solver noise and excluded from the slope fit.
  double rel_floor = 1e-13;
  double abs_floor = 0.0;
};

struct DecayFit {
  bool defined = false;  // false for an all-zero matrix
  double rho_hat = 0.0;  // max |a| 2^{max(j,i)} / (||v|| * resolvent)
  double slope = 0.0;    // least-squares slope of log2 level maxima vs level
  int fit_first = 0;
  int fit_last = -1;
  std::vector<double> level_max;  // max |a| over entries with max(j,i) = l
};

// `scale` is ||v||_inf times the resolvent factor.
DecayFit decay_fit(const DtnMatrix& m, double scale,
                   const DecayFitOptions& opt = {});
DecayFit decay_fit(const EnergyCurveMatrix& curve, double scale,
                   const DecayFitOptions& opt = {});
DecayFit decay_fit_levels(std::vector<double> level_max, double scale,
                          const DecayFitOptions& opt = {});

std::vector<double> level_maxima(const DtnMatrix& m);

}  // namespace dtnlab
