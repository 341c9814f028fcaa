#pragma once

// Helpers shared by the experiment drivers.

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include "dtnlab/errors.hpp"
#include "dtnlab/experiments.hpp"
#include "dtnlab/lambda.hpp"
#include "dtnlab/spectrum.hpp"

namespace dtnlab::detail {

inline SolverSettings solver_settings(const CommonConfig& c) {
  SolverSettings s;
  s.threads = c.threads;
  s.galerkin.r_points = c.r_points;
  s.galerkin.method = c.coupled_method == "collocation" ? CoupledMethod::Collocation
                                                        : CoupledMethod::LogDerivative;
  return s;
}

inline json common_echo(const CommonConfig& c) {
  json iv = json::array();
  for (const Interval& I : c.intervals) iv.push_back({I.a, I.b});
  return {{"seed", c.seed},       {"j_max", c.j_max},       {"e_grid", c.e_grid},
          {"s", c.s},             {"sigma", c.sigma},       {"intervals", iv},
          {"threads", c.threads}, {"r_points", c.r_points}, {"coupled_method", c.coupled_method}};
}

// Aborts with the witness eigenvalue when S is not sigma-regular; records
// the verdict (and a note for complex potentials) otherwise.
inline SigmaCheck require_regular(ExperimentReport& rep, const EnergyIntervalSet& S, int d,
                                  bool real_potentials) {
  const SigmaCheck sc = sigma_regular_check(S, d, real_potentials);
  if (sc.verdict == Regularity::Violated) {
    throw RegularityError("energy set is not sigma-regular: Dirichlet eigenvalue " +
                              format_number(sc.witness.value) + " (degree " +
                              std::to_string(sc.witness.j) + ") lies at distance " +
                              format_number(sc.distance) + " < sigma",
                          sc.witness.value);
  }
  rep.verdict("sigma_regular", "dtn_engine.sigma_regular_check", true, sc.distance - S.sigma(),
              to_string(sc.verdict) + "; witness " + format_number(sc.witness.value));
  if (sc.verdict != Regularity::Certified) {
    rep.notes.push_back("sigma-regularity is " + to_string(sc.verdict) +
                        ": the free spectrum keeps distance " + format_number(sc.distance) +
                        " from S, which is necessary but not a certificate for complex potentials");
  }
  return sc;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void collect_warnings(ExperimentReport& rep, const std::string& tag,
                             const std::vector<std::string>& w) {
  for (const std::string& s : w) rep.warnings.push_back(tag + ": " + s);
}

}  // namespace dtnlab::detail
