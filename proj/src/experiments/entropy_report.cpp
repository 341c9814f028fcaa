#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "common.hpp"
#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {

constexpr double kPi = std::numbers::pi;

// A random function holomorphic near W_{I,gamma}, rescaled so that its
// sampled maximum on the ellipse boundary is 0.9 C.
std::function<cplx(cplx)> random_admissible(std::mt19937_64& rng, const Interval& I,
                                            double gamma, double C) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double mid = 0.5 * (I.a + I.b), hw = 0.5 * (I.b - I.a);
  const int type = static_cast<int>(rng() % 3);
  std::function<cplx(cplx)> g;
  if (type == 0) {
    // Chebyshev sum in t = (E - mid)/hw.
    const int K = static_cast<int>(rng() % 13);
    std::vector<cplx> b(K + 1);
    for (int n = 0; n <= K; ++n) b[n] = cplx(u(rng), u(rng)) * std::exp(-0.5 * n * gamma);
    g = [b, mid, hw](cplx E) {
      const cplx t = (E - mid) / hw;
      cplx t0 = 1.0, t1 = t, sum = b[0];
      for (std::size_t n = 1; n < b.size(); ++n) {
        sum += b[n] * t1;
        const cplx t2 = 2.0 * t * t1 - t0;
        t0 = t1;
        t1 = t2;
      }
      return sum;
    };
  } else if (type == 1) {
    const cplx kappa(2.0 * u(rng), 2.0 * u(rng));
    const cplx a(u(rng), u(rng));
    g = [kappa, a, mid](cplx E) { return a * std::exp(kappa * (E - mid)); };
  } else {
    // Pole outside the ellipse, at least half its semi-minor axis away.
    const double theta = kPi * (u(rng) + 1.0);
    const double grow = 1.5 + (u(rng) + 1.0);
    const cplx p = mid + hw * std::cos(cplx(theta, grow * gamma));
    const cplx a(u(rng), u(rng));
    g = [a, p](cplx E) { return a / (E - p); };
  }
  double sup = 0.0;
  for (int q = 0; q < 4000; ++q) {
    const cplx z(2.0 * kPi * q / 4000.0, gamma);
    sup = std::max(sup, std::abs(g(ellipse_point(I, z))));
  }
  const double scale = sup > 0.0 ? 0.9 * C / sup : 0.0;
  return [g, scale](cplx E) { return scale * g(E); };
}

}  // namespace

ExperimentReport run_entropy_report(const EntropyConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment_id = "entropy";
  rep.config_echo = detail::common_echo(cfg.common);
  rep.config_echo.update({{"d", cfg.d},
                          {"m", cfg.m},
                          {"family_eps", cfg.family_eps},
                          {"family_beta", cfg.family_beta},
                          {"pair_count", cfg.pair_count},
                          {"cm_samples", cfg.cm_samples},
                          {"net_C", cfg.net_C},
                          {"net_deltas", cfg.net_deltas},
                          {"test_delta", cfg.test_delta},
                          {"function_count", cfg.function_count},
                          {"rho_hat", cfg.rho_hat},
                          {"image_deltas", cfg.image_deltas},
                          {"eps", cfg.eps},
                          {"beta", cfg.beta ? json(*cfg.beta) : json(nullptr)}});
  std::mt19937_64 rng(cfg.common.seed);
  const EnergyIntervalSet S = cfg.common.energy_set();

  // ---- epsilon-discrete family ----
  const EpsDiscreteFamily fam = EpsDiscreteFamily::build(cfg.d, cfg.m, cfg.family_eps,
                                                         cfg.family_beta);
  rep.tables.emplace_back("family", std::vector<std::string>{
      "d", "m", "eps", "beta", "mu", "bump_cm_norm", "N", "cells", "log_pattern_count",
      "log_count_lower_bound", "cm_budget"});
  rep.table("family").add({fam.d(), fam.m(), fam.eps(), fam.beta(), fam.mu(), fam.bump_cm_norm(),
                           fam.cells_per_axis(), fam.cell_count(), fam.log_pattern_count(),
                           fam.log_count_lower_bound(), fam.cm_budget()});
  rep.verdict("family_count_bound", "entropy_nets.eps_family.count",
              fam.log_pattern_count() >= fam.log_count_lower_bound(),
              fam.log_pattern_count() - fam.log_count_lower_bound());

  rep.tables.emplace_back("discreteness", std::vector<std::string>{
      "pair", "seed_a", "seed_b", "differing_cells", "sup_distance"});
  Table& disc = rep.table("discreteness");
  double min_dist = std::numeric_limits<double>::infinity();
  for (int p = 0; p < cfg.pair_count; ++p) {
    std::uint64_t sa = rng(), sb = rng();
    std::vector<int> a = fam.pattern(sa), b = fam.pattern(sb);
    while (sa == sb || a == b) {
      sb = rng();
      b = fam.pattern(sb);
    }
    long diff = 0;
    for (std::size_t c = 0; c < a.size(); ++c) diff += a[c] != b[c];
    const double dist = fam.sup_distance(a, b);
    min_dist = std::min(min_dist, dist);
    disc.add({p, sa, sb, diff, dist});
  }
  rep.verdict("eps_discrete", "entropy_nets.eps_discreteness", min_dist >= fam.eps(),
              min_dist - fam.eps());

  rep.tables.emplace_back("cm_norms", std::vector<std::string>{"member", "seed", "sup_norm",
                                                               "cm_norm", "beta"});
  Table& cmt = rep.table("cm_norms");
  const bool integer_m = std::abs(cfg.m - std::round(cfg.m)) < 1e-12;
  double cm_worst = 0.0, sup_worst = 0.0;
  for (int i = 0; i < cfg.cm_samples; ++i) {
    const std::uint64_t sd = rng();
    const std::vector<int> pat = fam.pattern(sd);
    const double sn = fam.sup_norm(pat);
    const double cm = integer_m ? fam.measured_cm_norm(pat, static_cast<int>(std::round(cfg.m)))
                                : fam.cm_budget();
    cmt.add({i, sd, sn, cm, fam.beta()});
    cm_worst = std::max(cm_worst, cm);
    sup_worst = std::max(sup_worst, std::abs(sn - fam.eps()));
  }
  if (!integer_m) {
    rep.notes.push_back("m is not an integer: the C^m budget is checked through "
                        "eps N^m bump_cm_norm <= beta instead of measured derivatives");
  }
  rep.verdict("cm_budget", "entropy_nets.cm_budget",
              cm_worst <= fam.beta() * (1.0 + 1e-6) && fam.cm_budget() <= fam.beta(),
              fam.beta() * (1.0 + 1e-6) - cm_worst);
  rep.verdict("member_sup_norm", "entropy_nets.eps_family", sup_worst <= 1e-15 * fam.eps(),
              0.0 - sup_worst);

  // ---- holomorphic-function nets ----
  const Interval I = S.intervals().front();
  const double gamma = gamma_for_reach(I, cfg.common.sigma / 6.0 * (1.0 - 1e-9));
  rep.tables.emplace_back("holo_nets", std::vector<std::string>{
      "a", "b", "gamma", "C", "delta", "n_delta", "delta_prime", "grid_half", "y_delta_size",
      "log_cardinality", "nu"});
  Table& hn = rep.table("holo_nets");
  double nu_run = 0.0;
  std::vector<HoloNet> nets;
  for (double dl : cfg.net_deltas) {
    nets.push_back(build_holo_net(I, gamma, cfg.net_C, dl));
    nu_run = std::max(nu_run, nets.back().nu());
  }
  bool nu_ok = true;
  for (const HoloNet& n : nets) {
    hn.add({I.a, I.b, gamma, n.C, n.delta, n.n_delta, n.delta_prime, n.grid_half,
            n.y_delta_size, n.log_cardinality(), n.nu()});
    const double l = std::log(1.0 / n.delta);
    nu_ok = nu_ok && n.log_cardinality() <= nu_run * l * l * (1.0 + 1e-12);
  }
  rep.notes.push_back("holomorphic-net nu for this run: " + format_number(nu_run));
  rep.verdict("holo_net_cardinality", "entropy_nets.holo_net.cardinality", nu_ok, nu_run);

  const HoloNet test_net = build_holo_net(I, gamma, cfg.net_C, cfg.test_delta);
  rep.tables.emplace_back("projection", std::vector<std::string>{"function", "sup_error",
                                                                 "delta", "warnings"});
  Table& pt = rep.table("projection");
  int within = 0, warned = 0;
  double worst = 0.0;
  for (int f = 0; f < cfg.function_count; ++f) {
    const auto g = random_admissible(rng, I, gamma, cfg.net_C);
    const NetProjection pr = project_to_net(test_net, [&](double x) { return g(cplx(x, 0.0)); });
    within += pr.sup_error <= test_net.delta;
    warned += !pr.warnings.empty();
    worst = std::max(worst, pr.sup_error);
    pt.add({f, pr.sup_error, test_net.delta, static_cast<long>(pr.warnings.size())});
  }
  rep.verdict("holo_net_coverage", "entropy_nets.holo_net.coverage",
              within == cfg.function_count, test_net.delta - worst,
              std::to_string(within) + " of " + std::to_string(cfg.function_count) +
                  " within delta; " + std::to_string(warned) + " precondition warnings");

  // Tiny nets: n_delta in {0, 1} plus a point interval, enumerated in full.
  rep.tables.emplace_back("enumeration", std::vector<std::string>{
      "case", "n_delta", "grid_half", "formula_count", "enumerated_count"});
  Table& en = rep.table("enumeration");
  bool enum_ok = true;
  {
    const double dl = 0.3, gm = 3.0;
    const double unit = 6.0 / (kPi * kPi) * dl / (2.0 * kPi);
    const std::vector<std::pair<Interval, double>> cases = {
        {{0.0, 1.0}, 0.9 * unit}, {{0.0, 1.0}, std::exp(0.01) * unit}, {{2.0, 2.0}, 0.2}};
    int k = 0;
    for (const auto& [iv, C] : cases) {
      const HoloNet net = build_holo_net(iv, gm, C, dl);
      const auto all = enumerate_net(net);
      std::set<std::vector<std::pair<long, long>>> distinct(all.begin(), all.end());
      const double formula = std::pow(net.y_delta_size, net.coefficient_count);
      enum_ok = enum_ok && static_cast<double>(distinct.size()) == formula;
      en.add({k++, net.n_delta, net.grid_half, formula, static_cast<long>(distinct.size())});
    }
  }
  rep.verdict("net_enumeration", "entropy_nets.holo_net.enumeration", enum_ok, 0.0);

  // ---- image net ----
  rep.tables.emplace_back("image_net", std::vector<std::string>{
      "delta", "l_delta_s", "net_C", "tuple_count", "tuple_bound", "log_cardinality", "eta"});
  Table& imt = rep.table("image_net");
  std::vector<double> etas;
  bool tuples_ok = true;
  for (double dl : cfg.image_deltas) {
    const ImageNetSize in = dtn_image_net_size(S, cfg.common.s, cfg.d, dl, cfg.rho_hat);
    imt.add({dl, in.l_delta_s, in.net_C, in.tuple_count, in.tuple_bound, in.log_cardinality,
             in.eta});
    etas.push_back(in.eta);
    tuples_ok = tuples_ok && in.tuple_count <= in.tuple_bound;
  }
  rep.verdict("tuple_count_bound", "entropy_nets.image_net.tuples", tuples_ok, 0.0);
  bool eta_bounded = true;
  for (std::size_t i = 1; i < etas.size(); ++i) {
    eta_bounded = eta_bounded && etas[i] <= etas[0] * (1.0 + 1e-12);
  }
  rep.verdict("image_net_shape", "entropy_nets.image_net.shape", eta_bounded,
              etas.empty() ? 0.0 : etas.front() - *std::max_element(etas.begin(), etas.end()),
              "log|Y| / (ln 1/delta)^(2d) does not grow as delta shrinks");

  // ---- |Z| > |Y| bookkeeping ----
  const double delta = std::exp(-std::pow(cfg.eps, -1.0 / (2.0 * cfg.m))) / 8.0;
  const ImageNetSize iy = dtn_image_net_size(S, cfg.common.s, cfg.d, delta, cfg.rho_hat);
  const double mu = fam.mu();
  const double em = std::pow(iy.eta, cfg.m / cfg.d);
  const double beta_bound =
      std::max({cfg.common.sigma / 3.0, em * std::pow(2.0, 3.0 * cfg.m),
                cfg.common.sigma / 3.0 * em * std::pow(2.0, cfg.m) *
                    std::pow(2.0 * std::log(8.0), 2.0 * cfg.m)}) / mu;
  const double beta = cfg.beta ? *cfg.beta : 1.01 * beta_bound;
  const EpsDiscreteFamily big = EpsDiscreteFamily::build(cfg.d, cfg.m, cfg.eps, beta);
  rep.tables.emplace_back("z_vs_y", std::vector<std::string>{
      "eps", "m", "d", "delta", "beta", "beta_bound", "mu", "N", "log_Z", "log_Z_lower_bound",
      "log_Y", "eta"});
  rep.table("z_vs_y").add({cfg.eps, cfg.m, cfg.d, delta, beta, beta_bound, mu,
                           big.cells_per_axis(), big.log_pattern_count(),
                           big.log_count_lower_bound(), iy.log_cardinality, iy.eta});
  rep.verdict("z_exceeds_y", "entropy_nets.counting", big.log_pattern_count() > iy.log_cardinality,
              big.log_pattern_count() - iy.log_cardinality,
              "ln|Z| = " + format_number(big.log_pattern_count()) +
                  ", ln|Y| = " + format_number(iy.log_cardinality));
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace dtnlab
