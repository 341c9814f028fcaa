#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "dtnlab/experiments.hpp"
#include "dtnlab/parallel.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {

// Sunflower points filling |z| < C plus a ring of points on |z| = C.
std::vector<cplx> disk_grid(double C, int points) {
  const int ring = std::max(1, points / 20);
  const int inner = points - ring;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<cplx> z;
  z.reserve(points);
  for (int k = 0; k < inner; ++k) {
    z.push_back(std::polar(C * std::sqrt((k + 0.5) / inner), k * golden));
  }
  for (int k = 0; k < ring; ++k) {
    z.push_back(std::polar(C, 2.0 * std::numbers::pi * (k + 0.25) / ring));
  }
  return z;
}

struct Tally {
  long checks = 0;
  long violations = 0;
  double min_margin[4] = {std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
  void add(const LemmaBoundsReport& r) {
    const BoundCheck* b[4] = {&r.j_bound, &r.j_deriv_bound, &r.y_bound, &r.y_deriv_bound};
    for (int i = 0; i < 4; ++i) {
      if (!b[i]->evaluated) continue;
      ++checks;
      if (!b[i]->holds) ++violations;
      min_margin[i] = std::min(min_margin[i], b[i]->margin);
    }
  }
  void merge(const Tally& o) {
    checks += o.checks;
    violations += o.violations;
    for (int i = 0; i < 4; ++i) min_margin[i] = std::min(min_margin[i], o.min_margin[i]);
  }
};

}  // namespace

ExperimentReport run_bessel_certification(const BesselCertConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment_id = "bessel-cert";
  rep.config_echo = {{"C_list", cfg.C_list}, {"d_list", cfg.d_list}, {"points", cfg.points},
                     {"n_count", cfg.n_count}, {"threads", cfg.common.threads}};
  rep.tables.emplace_back("certification",
                          std::vector<std::string>{"C", "d", "N", "n_first", "n_last", "points",
                                                   "checks", "violations", "min_margin_j",
                                                   "min_margin_j_deriv", "min_margin_y",
                                                   "min_margin_y_deriv"});
  rep.tables.emplace_back("threshold",
                          std::vector<std::string>{"C", "d", "N", "nielsen_term", "y_theta_term"});
  Table& cert = rep.table("certification");
  Table& thr = rep.table("threshold");

  for (double C : cfg.C_list) {
    for (int d : cfg.d_list) {
      const int N = lemma_bessel_threshold(C, d);
      const ThresholdConditions tc = threshold_conditions(C, N);
      thr.add({C, d, N, tc.nielsen_term, tc.y_theta_term});
      const std::vector<cplx> grid = disk_grid(C, cfg.points);
      std::vector<Tally> per_point(grid.size());
      parallel_for(grid.size(), cfg.common.threads, [&](std::size_t i) {
        for (int n = N + 1; n <= N + cfg.n_count; ++n) {
          per_point[i].add(verify_lemma_bounds(n, d, grid[i]));
        }
      });
      Tally t;
      for (const Tally& p : per_point) t.merge(p);
      cert.add({C, d, N, N + 1, N + cfg.n_count, static_cast<long>(grid.size()), t.checks,
                t.violations, t.min_margin[0], t.min_margin[1], t.min_margin[2],
                t.min_margin[3]});
      const std::string tag = "C=" + format_number(C) + ",d=" + std::to_string(d);
      rep.verdict("zero_violations[" + tag + "]", "special_functions.lemma_bounds",
                  t.violations == 0, 0.0 - static_cast<double>(t.violations),
                  std::to_string(t.violations) + " of " + std::to_string(t.checks));
      const double mm = std::min({t.min_margin[0], t.min_margin[1], t.min_margin[2],
                                  t.min_margin[3]});
      rep.verdict("positive_margins[" + tag + "]", "special_functions.lemma_bounds", mm > 0.0,
                  mm);
    }
  }
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace dtnlab
