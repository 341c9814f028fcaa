#include "dtnlab/lambda.hpp"

#include <cstdio>

#include "dtnlab/errors.hpp"
#include "dtnlab/operator_norms.hpp"
#include "dtnlab/parallel.hpp"

namespace dtnlab {

namespace {

DtnMatrix from_exponential(const Eigen::MatrixXcd& m_exp, int j_max,
                           const ComplexEnergy& E) {
  DtnMatrix m = DtnMatrix::zeros(2, j_max, E);
  m.A = exponential_to_real(m_exp, j_max);
  return m;
}

void add_leak_warning(DtnMatrix& m, double leak, double tol) {
  if (leak > tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "truncation: %.3e of boundary-mode mass reaches |j| = j_max",
                  leak);
    m.warnings.emplace_back(buf);
  }
}

// Fill a diagonal matrix with one value per degree.
template <class F>
DtnMatrix diagonal_matrix(int j_max, int d, const ComplexEnergy& E,
                          const SolverSettings& settings, F&& per_degree) {
  DtnMatrix m = DtnMatrix::zeros(d, j_max, E);
  std::vector<cplx> vals(j_max + 1);
  parallel_for(vals.size(), settings.threads,
               [&](std::size_t j) { vals[j] = per_degree(static_cast<int>(j)); });
  for (std::size_t k = 0; k < m.basis.size(); ++k) {
    m.A(k, k) = vals[m.basis[k].j];
  }
  return m;
}

void check_dim(int d) {
  if (d != 2 && d != 3) throw CapabilityError("only d = 2 and d = 3 are supported");
}

}  // namespace

DtnMatrix galerkin_dtn(const Potential& v, const ComplexEnergy& E, int j_max,
                       const SolverSettings& settings) {
  const GalerkinSolution sol = galerkin_solve(v, E, j_max, settings.galerkin);
  DtnMatrix m = from_exponential(sol.phi, j_max, E);
  add_leak_warning(m, sol.leak, settings.galerkin.leak_tolerance);
  return m;
}

DtnMatrix radial_dtn_matrix(const Potential& v, const ComplexEnergy& E,
                            int j_max, int d, const SolverSettings& settings) {
  check_dim(d);
  return diagonal_matrix(j_max, d, E, settings, [&](int j) {
    return radial_dtn(v, E, j, d, settings.radial);
  });
}

DtnMatrix lambda_matrix(const Potential& v, const ComplexEnergy& E, int j_max,
                        int d, const SolverSettings& settings) {
  check_dim(d);
  v.require_small_support();
  DtnMatrix m;
  if (v.kind() == Potential::Kind::Radial) {
    m = diagonal_matrix(j_max, d, E, settings, [&](int j) {
      return radial_lambda(v, E, j, d, settings.radial);
    });
  } else {
    if (d != 2) {
      throw CapabilityError("non-radial potentials are supported only in d = 2");
    }
    const GalerkinSolution sol = galerkin_solve(v, E, j_max, settings.galerkin);
    m = from_exponential(sol.lambda, j_max, E);
    add_leak_warning(m, sol.leak, settings.galerkin.leak_tolerance);
  }
  m.tail_bound = tail_bound_for(m, 0.0);
  return m;
}

DtnMatrix dtn_difference(const Potential& v1, const Potential& v2,
                         const ComplexEnergy& E, int j_max,
                         const SolverSettings& settings) {
  const GalerkinSolution s1 = galerkin_solve(v1, E, j_max, settings.galerkin);
  const GalerkinSolution s2 = galerkin_solve(v2, E, j_max, settings.galerkin);
  DtnMatrix m = from_exponential(s1.lambda - s2.lambda, j_max, E);
  add_leak_warning(m, std::max(s1.leak, s2.leak), settings.galerkin.leak_tolerance);
  m.tail_bound = tail_bound_for(m, 0.0);
  return m;
}

EnergyCurveMatrix lambda_curve(const Potential& v, const EnergyIntervalSet& S,
                               int j_max, int d, const SolverSettings& settings) {
  EnergyCurveMatrix curve{S, S.grid(), {}};
  curve.samples.resize(curve.energies.size());
  SolverSettings inner = settings;
  inner.threads = 1;  // parallelism is over energies here
  parallel_for(curve.energies.size(), settings.threads, [&](std::size_t i) {
    curve.samples[i] =
        lambda_matrix(v, ComplexEnergy::real(curve.energies[i]), j_max, d, inner);
  });
  return curve;
}

}  // namespace dtnlab
