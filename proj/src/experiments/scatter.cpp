#include <cmath>
#include <limits>
#include <random>

#include "common.hpp"
#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"
#include "dtnlab/operator_norms.hpp"
#include "dtnlab/parallel.hpp"

namespace dtnlab {

ExperimentReport run_instability_scatter(const ScatterConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment_id = "scatter";
  rep.config_echo = detail::common_echo(cfg.common);
  json pairs = json::array();
  for (const auto& [a, b] : cfg.pairs) pairs.push_back({a, b});
  rep.config_echo.update({{"m", cfg.m},
                          {"eps", cfg.eps},
                          {"beta", cfg.beta ? json(*cfg.beta) : json(nullptr)},
                          {"pair_count", cfg.pair_count},
                          {"n_cut", cfg.n_cut},
                          {"residual_tolerance", cfg.residual_tolerance},
                          {"pairs", pairs},
                          {"overlay_n", cfg.overlay_n}});
  rep.notes.push_back(
      "the real-valued pair whose DtN maps are closer than exp(-eps^(-1/(2m))) exists by a "
      "counting argument over astronomically many members; it is not searched for, and the "
      "table reports the sampled pairs only");

  const EnergyIntervalSet S = cfg.common.energy_set();
  detail::require_regular(rep, S, 2, true);
  const SolverSettings settings = detail::solver_settings(cfg.common);
  const int J = cfg.common.j_max;
  const double s = cfg.common.s;

  // Two cells per axis unless beta is given.
  const double mu = 0.5 / cell_bump_cm_norm(2, static_cast<int>(std::ceil(cfg.m - 1e-12)));
  const double beta = cfg.beta ? *cfg.beta : std::pow(2.5, cfg.m) * cfg.eps / mu;
  const EpsDiscreteFamily fam = EpsDiscreteFamily::build(2, cfg.m, cfg.eps, beta);
  rep.config_echo["beta_used"] = beta;
  rep.config_echo["cells_per_axis"] = fam.cells_per_axis();

  std::mt19937_64 rng(cfg.common.seed);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chosen;
  std::size_t next_explicit = 0;
  while (static_cast<int>(chosen.size()) < cfg.pair_count) {
    std::pair<std::uint64_t, std::uint64_t> p;
    if (next_explicit < cfg.pairs.size()) {
      p = cfg.pairs[next_explicit++];
    } else {
      p = {rng(), rng()};
    }
    if (p.first == p.second || fam.pattern(p.first) == fam.pattern(p.second)) {
      rep.notes.push_back("pair (" + std::to_string(p.first) + ", " + std::to_string(p.second) +
                          ") names one member twice: rejected and resampled");
      continue;
    }
    chosen.push_back(p);
  }

  rep.tables.emplace_back("scatter", std::vector<std::string>{
      "pair", "seed_a", "seed_b", "v_distance", "dtn_distance", "log_dtn_distance", "eps",
      "theorem_rhs", "residual_a", "residual_b"});
  Table& sc = rep.table("scatter");
  const std::vector<double> energies = S.grid();
  double min_vdist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const auto pa = fam.pattern(chosen[k].first), pb = fam.pattern(chosen[k].second);
    double ra = 0.0, rb = 0.0;
    const Potential va = fam.as_potential(pa, cfg.n_cut, &ra);
    const Potential vb = fam.as_potential(pb, cfg.n_cut, &rb);
    for (double r : {ra, rb}) {
      if (r > cfg.residual_tolerance * cfg.eps) {
        rep.warnings.push_back("pair " + std::to_string(k) + ": angular re-expansion residual " +
                               format_number(r) + " with modes |n| <= " +
                               std::to_string(cfg.n_cut) +
                               " (modes beyond 2 j_max do not enter the truncated system)");
      }
    }
    std::vector<double> norms(energies.size());
    SolverSettings inner = settings;
    inner.threads = 1;
    parallel_for(energies.size(), settings.threads, [&](std::size_t e) {
      const DtnMatrix M = dtn_difference(va, vb, ComplexEnergy::real(energies[e]), J, inner);
      norms[e] = hs_operator_norm(M, s).norm;
    });
    double sup = 0.0;
    for (double n : norms) sup = std::max(sup, n);
    const double vd = fam.sup_distance(pa, pb);
    min_vdist = std::min(min_vdist, vd);
    sc.add({static_cast<long>(k), chosen[k].first, chosen[k].second, vd, sup, std::log(sup),
            cfg.eps, std::exp(-std::pow(cfg.eps, -1.0 / (2.0 * cfg.m))), ra, rb});
  }
  rep.verdict("pairs_eps_separated", "entropy_nets.eps_discreteness", min_vdist >= cfg.eps,
              min_vdist - cfg.eps);

  // Counterexample overlay on the same energy grid.
  const int J_overlay = std::max(J, 16);
  std::vector<double> eps_list, norm_list;
  for (int n : cfg.overlay_n) {
    const Potential v = Potential::counterexample(n, cfg.m, cfg.common.sigma);
    const EnergyCurveMatrix curve = lambda_curve(v, S, J_overlay, 2, settings);
    double sup = 0.0;
    for (const DtnMatrix& M : curve.samples) sup = std::max(sup, hs_operator_norm(M, s).norm);
    eps_list.push_back(cfg.common.sigma / 3.0 * std::pow(static_cast<double>(n), -cfg.m));
    norm_list.push_back(sup);
  }
  const InstabilityFit fit = fit_instability(eps_list, norm_list, cfg.m);
  rep.tables.emplace_back("overlay", std::vector<std::string>{
      "n", "eps", "dtn_norm", "fitted_curve", "theorem_rhs", "fit_residual"});
  Table& ov = rep.table("overlay");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    ov.add({cfg.overlay_n[i], eps_list[i], norm_list[i],
            std::exp(-fit.c_envelope * std::pow(eps_list[i], -1.0 / cfg.m)),
            std::exp(-std::pow(eps_list[i], -1.0 / (2.0 * cfg.m))), fit.residuals[i]});
  }
  rep.verdict("overlay_envelope", "experiments_cli.counterexample.instability", fit.exists,
              fit.c_envelope, "c = " + format_number(fit.c_envelope));
  rep.plots.push_back({{"kind", "scatter"},
                       {"table", "scatter"},
                       {"x", "eps"},
                       {"y", "log_dtn_distance"},
                       {"overlay", {{"table", "overlay"}, {"x", "eps"},
                                    {"y", {"fitted_curve", "theorem_rhs", "dtn_norm"}},
                                    {"y_scale", "log"}}}});
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace dtnlab
