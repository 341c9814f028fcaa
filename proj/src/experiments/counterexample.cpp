#include <cmath>
#include <limits>

#include "common.hpp"
#include "dtnlab/errors.hpp"
#include "dtnlab/operator_norms.hpp"

namespace dtnlab {

InstabilityFit fit_instability(const std::vector<double>& eps,
                               const std::vector<double>& norms, double m) {
  if (eps.size() != norms.size()) throw ParameterError("fit_instability: size mismatch");
  InstabilityFit f;
  f.c_envelope = std::numeric_limits<double>::infinity();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::pow(eps[i], -1.0 / m);
    const double y = -std::log(norms[i]);
    f.c_envelope = std::min(f.c_envelope, y / x);
    if (std::isfinite(y)) {
      sxy += x * y;
      sxx += x * x;
    }
  }
  f.c_least_squares = sxx > 0.0 ? sxy / sxx : 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::pow(eps[i], -1.0 / m);
    f.residuals.push_back(std::log(norms[i]) + f.c_least_squares * x);
  }
  f.exists = !eps.empty() && f.c_envelope > 0.0;
  return f;
}

ExperimentReport run_counterexample(const CounterexampleConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment_id = "counterexample";
  rep.config_echo = detail::common_echo(cfg.common);
  rep.config_echo["n_list"] = cfg.n_list;
  rep.config_echo["m"] = cfg.m;
  rep.config_echo["block_tolerance"] = cfg.block_tolerance;

  const EnergyIntervalSet S = cfg.common.energy_set();
  detail::require_regular(rep, S, 2, false);
  const SolverSettings settings = detail::solver_settings(cfg.common);
  const int J = cfg.common.j_max;
  const double s = cfg.common.s;

  rep.tables.emplace_back("counterexample",
                          std::vector<std::string>{"n", "sup_norm", "block_max", "c_prime",
                                                   "eps_equiv", "v_sup_measured", "xss_norm",
                                                   "norm_bound", "tail_bound", "decay_slope"});
  rep.tables.emplace_back("energy_norms",
                          std::vector<std::string>{"n", "E", "norm", "bound", "block_max"});
  Table& main = rep.table("counterexample");
  Table& per_e = rep.table("energy_norms");

  std::vector<double> eps_list, norm_list, cprime;
  bool sandwich_ok = true;
  double sandwich_margin = std::numeric_limits<double>::infinity();
  for (int n : cfg.n_list) {
    const Potential v = Potential::counterexample(n, cfg.m, cfg.common.sigma);
    const double eps_equiv = cfg.common.sigma / 3.0 * std::pow(static_cast<double>(n), -cfg.m);
    double v_meas = 0.0;
    for (int i = 0; i <= 2400; ++i) {
      v_meas = std::max(v_meas, std::abs(v.value(i / 2400.0, 0.3)));
    }
    const EnergyCurveMatrix curve = lambda_curve(v, S, J, 2, settings);
    const int blk = (n - 1) / 2;
    double sup_norm = 0.0, block_max = 0.0, tail = 0.0;
    for (std::size_t e = 0; e < curve.samples.size(); ++e) {
      const DtnMatrix& M = curve.samples[e];
      const OperatorNorm on = hs_operator_norm(M, s);
      double bm = 0.0;
      for (std::size_t r = 0; r < M.basis.size(); ++r) {
        for (std::size_t c = 0; c < M.basis.size(); ++c) {
          if (M.basis[r].j <= blk && M.basis[c].j <= blk) bm = std::max(bm, std::abs(M.A(r, c)));
        }
      }
      per_e.add({n, curve.energies[e], on.norm, on.bound, bm});
      sup_norm = std::max(sup_norm, on.norm);
      block_max = std::max(block_max, bm);
      if (on.norm > on.bound) sandwich_ok = false;
      sandwich_margin = std::min(sandwich_margin, on.bound - on.norm);
      detail::collect_warnings(rep, "n=" + std::to_string(n), M.warnings);
    }
    tail = tail_bound_for(curve, s);
    const double xss = xss_norm(curve, s);
    const DecayFit fit = decay_fit(curve, 1.0);
    const double cp = sup_norm * std::pow(2.0, n / 4.0);
    main.add({n, sup_norm, block_max, cp, eps_equiv, v_meas, xss, 4.0 * xss, tail,
              fit.defined ? json(fit.slope) : json(nullptr)});
    eps_list.push_back(eps_equiv);
    norm_list.push_back(sup_norm);
    cprime.push_back(cp);

    const std::string tag = "[n=" + std::to_string(n) + "]";
    rep.verdict("vanishing_block" + tag, "dtn_engine.vanishing_block",
                block_max <= cfg.block_tolerance, cfg.block_tolerance - block_max);
    rep.verdict("potential_sup_norm" + tag, "dtn_engine.potential",
                std::abs(v_meas - eps_equiv) <= 1e-12 * eps_equiv,
                1e-12 * eps_equiv - std::abs(v_meas - eps_equiv));
    rep.verdict("x_norm_dominates" + tag, "dtn_engine.xss_norm", sup_norm <= 4.0 * xss,
                4.0 * xss - sup_norm);
  }
  rep.verdict("norm_sandwich", "dtn_engine.norm_sandwich", sandwich_ok, sandwich_margin);

  const double med = detail::median(cprime);
  const double cmax = *std::max_element(cprime.begin(), cprime.end());
  rep.verdict("c_prime_bounded", "experiments_cli.counterexample.c_prime", cmax <= 4.0 * med,
              4.0 * med - cmax,
              "max c' = " + format_number(cmax) + ", 4 median = " + format_number(4.0 * med));

  bool decreasing = true;
  double dec_margin = std::numeric_limits<double>::infinity();
  int pairs = 0;
  for (std::size_t i = 0; i + 1 < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 6) continue;
    ++pairs;
    decreasing = decreasing && norm_list[i + 1] < norm_list[i];
    dec_margin = std::min(dec_margin, norm_list[i] - norm_list[i + 1]);
  }
  if (pairs > 0) {
    rep.verdict("sup_norm_decreasing", "experiments_cli.counterexample.sup_norm", decreasing,
                dec_margin);
  } else {
    rep.skip("sup_norm_decreasing", "experiments_cli.counterexample.sup_norm",
             "needs two tested n >= 6");
  }

  const InstabilityFit fit = fit_instability(eps_list, norm_list, cfg.m);
  rep.tables.emplace_back("instability_fit",
                          std::vector<std::string>{"n", "eps", "x", "ln_norm", "envelope",
                                                   "fit_residual"});
  Table& ft = rep.table("instability_fit");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const double x = std::pow(eps_list[i], -1.0 / cfg.m);
    ft.add({cfg.n_list[i], eps_list[i], x, std::log(norm_list[i]),
            std::exp(-fit.c_envelope * x), fit.residuals[i]});
  }
  rep.verdict("instability_envelope", "experiments_cli.counterexample.instability", fit.exists,
              fit.c_envelope,
              "c_envelope = " + format_number(fit.c_envelope) +
                  ", least-squares c = " + format_number(fit.c_least_squares));
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace dtnlab
