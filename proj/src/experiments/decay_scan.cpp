#include <cmath>
#include <limits>

#include "common.hpp"
#include "dtnlab/errors.hpp"
#include "dtnlab/operator_norms.hpp"

namespace dtnlab {

namespace {

std::vector<double> curve_levels(const EnergyCurveMatrix& c) {
  std::vector<double> out;
  for (const DtnMatrix& m : c.samples) {
    const std::vector<double> l = level_maxima(m);
    if (out.size() < l.size()) out.resize(l.size(), 0.0);
    for (std::size_t i = 0; i < l.size(); ++i) out[i] = std::max(out[i], l[i]);
  }
  return out;
}

double asymmetry(const EnergyCurveMatrix& c) {
  double out = 0.0;
  for (const DtnMatrix& m : c.samples) {
    out = std::max(out, (m.A - m.A.transpose()).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace

ExperimentReport run_decay_scan(const DecayScanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment_id = "decay-scan";
  rep.config_echo = detail::common_echo(cfg.common);
  rep.config_echo["potential"] = cfg.potential;
  rep.config_echo["d"] = cfg.d;
  rep.config_echo["j_max_check"] = cfg.j_max_check;
  rep.config_echo["refine"] = cfg.refine;

  const Potential v = potential_from_json(cfg.potential);
  const EnergyIntervalSet S = cfg.common.energy_set();
  const SigmaCheck sc = detail::require_regular(rep, S, cfg.d, v.is_real());
  const SolverSettings settings = detail::solver_settings(cfg.common);
  const double s = cfg.common.s;
  const int d = cfg.d;

  double scale = v.sup_norm();
  try {
    scale *= resolvent_bound(cfg.common.sigma, v.sup_norm(), sc.distance);
  } catch (const ParameterError&) {
    rep.notes.push_back("||v|| exceeds 2 sigma/3: rho_hat is normalised by ||v|| alone");
  }
  if (!(scale > 0.0)) scale = 1.0;

  const EnergyCurveMatrix c1 = lambda_curve(v, S, cfg.common.j_max, d, settings);
  const EnergyCurveMatrix c2 = lambda_curve(v, S, cfg.j_max_check, d, settings);
  for (const DtnMatrix& m : c1.samples) detail::collect_warnings(rep, "E=" + format_number(m.energy.E.real()), m.warnings);
  const DecayFit f1 = decay_fit_levels(curve_levels(c1), scale);
  const DecayFit f2 = decay_fit_levels(curve_levels(c2), scale);

  rep.tables.emplace_back("levels", std::vector<std::string>{"l", "level_max", "weighted",
                                                             "envelope"});
  Table& lv = rep.table("levels");
  for (std::size_t l = 0; l < f2.level_max.size(); ++l) {
    const double w = std::pow(1.0 + l, 2.0 * s + d) * f2.level_max[l];
    lv.add({static_cast<long>(l), f2.level_max[l], w,
            f2.defined ? f2.rho_hat * scale * std::pow(2.0, -static_cast<double>(l)) : 0.0});
  }
  rep.tables.emplace_back("summary", std::vector<std::string>{"j_max", "rho_hat", "slope",
                                                              "fit_first", "fit_last",
                                                              "xss_norm", "tail_bound"});
  Table& sm = rep.table("summary");
  for (const auto* pr : {&c1, &c2}) {
    const DecayFit& f = pr == &c1 ? f1 : f2;
    const int jm = pr == &c1 ? cfg.common.j_max : cfg.j_max_check;
    sm.add({jm, f.defined ? json(f.rho_hat) : json(nullptr), f.defined ? json(f.slope) : json(nullptr),
            f.fit_first, f.fit_last, xss_norm(*pr, s), tail_bound_for(*pr, s)});
  }

  if (!f1.defined || !f2.defined) {
    rep.skip("decay_slope", "dtn_engine.decay_fit", "all-zero matrices: fit undefined");
    rep.skip("rho_hat_stable", "dtn_engine.decay_fit", "all-zero matrices: fit undefined");
  } else {
    rep.verdict("decay_slope", "dtn_engine.decay_fit", f1.slope <= -0.9, -0.9 - f1.slope,
                "slope = " + format_number(f1.slope));
    const double rel = std::abs(f2.rho_hat / f1.rho_hat - 1.0);
    rep.verdict("rho_hat_stable", "dtn_engine.decay_fit", rel <= 0.2, 0.2 - rel,
                "rho_hat " + format_number(f1.rho_hat) + " -> " + format_number(f2.rho_hat));
  }
  if (v.is_real()) {
    const double asym = std::max(asymmetry(c1), asymmetry(c2));
    rep.verdict("symmetric", "dtn_engine.symmetry", asym <= 1e-7, 1e-7 - asym);
  }
  if (cfg.refine) {
    const EnergyCurveMatrix cr = lambda_curve(v, S.refined(), cfg.common.j_max, d, settings);
    const double a = xss_norm(c1, s), b = xss_norm(cr, s);
    rep.tables.emplace_back("refinement", std::vector<std::string>{"points_per_interval",
                                                                   "xss_norm"});
    rep.table("refinement").add({S.grid_points_per_interval(), a});
    rep.table("refinement").add({S.refined().grid_points_per_interval(), b});
    rep.notes.push_back("grid refinement changes the X_{S,s} norm by " +
                        format_number(std::abs(b - a)));
  }
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace dtnlab
