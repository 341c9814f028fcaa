#include <cmath>
#include <set>

#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"
#include "dtnlab/experiments.hpp"

namespace dtnlab {

namespace {

const std::set<std::string> kCommonKeys = {"seed",    "j_max",     "e_grid",
                                           "s",       "sigma",     "intervals",
                                           "threads", "r_points",  "coupled_method"};

// Reads typed keys from a JSON object and rejects keys nobody asked for.
class Reader {
 public:
  Reader(const json& j, std::set<std::string> allowed) : j_(j), allowed_(std::move(allowed)) {
    if (!j_.is_null() && !j_.is_object()) throw ConfigError("config must be a JSON object");
    allowed_.insert(kCommonKeys.begin(), kCommonKeys.end());
    if (j_.is_object()) {
      for (auto it = j_.begin(); it != j_.end(); ++it) {
        if (!allowed_.contains(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
      }
    }
  }
  bool has(const std::string& k) const { return j_.is_object() && j_.contains(k); }
  const json& raw(const std::string& k) const { return j_.at(k); }

  template <class T>
  void get(const std::string& k, T& out) const {
    if (!has(k)) return;
    try {
      out = j_.at(k).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + k + "': " + e.what());
    }
  }

 private:
  const json& j_;
  std::set<std::string> allowed_;
};

cplx complex_from_json(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(what + ": expected a number or [re, im]");
}

void read_common(const Reader& r, CommonConfig& c, const Overrides& o) {
  r.get("seed", c.seed);
  r.get("j_max", c.j_max);
  r.get("e_grid", c.e_grid);
  r.get("s", c.s);
  r.get("sigma", c.sigma);
  r.get("threads", c.threads);
  r.get("r_points", c.r_points);
  r.get("coupled_method", c.coupled_method);
  if (r.has("intervals")) {
    const json& iv = r.raw("intervals");
    if (!iv.is_array() || iv.empty()) throw ConfigError("intervals: expected [[a, b], ...]");
    c.intervals.clear();
    for (const json& p : iv) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw ConfigError("intervals: expected [[a, b], ...]");
      }
      c.intervals.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.j_max) c.j_max = *o.j_max;
  if (o.e_grid) c.e_grid = *o.e_grid;
  if (o.s) c.s = *o.s;
  if (o.sigma) c.sigma = *o.sigma;

  if (c.j_max < 1 || c.j_max > 200) throw ConfigError("j_max must lie in [1, 200]");
  if (c.e_grid < 1 || c.e_grid > 1000) throw ConfigError("e_grid must lie in [1, 1000]");
  if (!(c.s >= 0.0) || !std::isfinite(c.s)) throw ConfigError("s must be >= 0");
  if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) throw ConfigError("sigma must be > 0");
  if (c.r_points < 4) throw ConfigError("r_points must be >= 4");
  if (c.coupled_method != "log-derivative" && c.coupled_method != "collocation") {
    throw ConfigError("coupled_method must be 'log-derivative' or 'collocation'");
  }
  for (const Interval& I : c.intervals) {
    if (!(I.a <= I.b) || !std::isfinite(I.a) || !std::isfinite(I.b)) {
      throw ConfigError("intervals need finite a <= b");
    }
  }
}

struct ProfileSpec {
  RadialProfile g;
  double sup = 0.0;
  double inner = 0.0;
  double outer = 0.0;
  std::vector<double> breaks;
};

ProfileSpec profile_from_json(const json& p) {
  if (!p.is_object()) throw ConfigError("profile must be an object");
  const std::string type = p.value("type", "bump");
  ProfileSpec out;
  if (type == "bump") {
    const cplx amp = complex_from_json(p.at("amplitude"), "profile.amplitude");
    const double c = p.value("center", 0.0), h = p.value("half_width", 1.0 / 3.0);
    if (!(h > 0.0) || c < 0.0) throw ConfigError("bump profile needs half_width > 0, center >= 0");
    out.g = [amp, c, h](double r) { return amp * smooth_bump((r - c) / h); };
    out.sup = std::abs(amp);
    out.inner = std::max(c - h, 0.0);
    out.outer = std::min(c + h, 1.0);
    out.breaks = {out.inner, out.outer};
  } else if (type == "step") {
    const cplx val = complex_from_json(p.at("value"), "profile.value");
    const double r1 = p.at("r1").get<double>();
    if (!(r1 > 0.0 && r1 <= 1.0)) throw ConfigError("step profile needs r1 in (0, 1]");
    out.g = [val, r1](double r) { return r <= r1 ? val : cplx(0.0, 0.0); };
    out.sup = std::abs(val);
    out.outer = r1;
    out.breaks = {r1};
  } else {
    throw ConfigError("unknown profile type '" + type + "'");
  }
  return out;
}

EnergyIntervalSet checked_set(const CommonConfig& c) {
  try {
    return c.energy_set();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

EnergyIntervalSet CommonConfig::energy_set() const {
  return EnergyIntervalSet(intervals, sigma, e_grid);
}

Potential potential_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("kind")) {
      throw ConfigError("potential: object with 'kind' required");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return Potential::zero();
    if (kind == "constant") return Potential::constant(complex_from_json(j.at("c"), "c"));
    if (kind == "step") {
      return Potential::step(complex_from_json(j.at("c"), "c"), j.at("r1").get<double>());
    }
    if (kind == "radial_bump") {
      const json& p = j.contains("profile") ? j.at("profile") : j;
      return Potential::radial_bump(complex_from_json(p.at("amplitude"), "amplitude"),
                                    p.value("center", 0.0), p.value("half_width", 1.0 / 3.0));
    }
    if (kind == "counterexample") {
      return Potential::counterexample(j.at("n").get<int>(), j.value("m", 1.0),
                                       j.value("sigma", 0.3));
    }
    if (kind == "fourier") {
      const bool real = j.value("real", false);
      std::map<int, RadialProfile> modes;
      double sup = 0.0, inner = 1.0, outer = 0.0;
      std::vector<double> breaks;
      for (const json& m : j.at("modes")) {
        const int n = m.at("n").get<int>();
        if (modes.contains(n)) throw ConfigError("fourier: duplicate mode " + std::to_string(n));
        ProfileSpec ps = profile_from_json(m.at("profile"));
        modes[n] = ps.g;
        sup += ps.sup;
        inner = std::min(inner, ps.inner);
        outer = std::max(outer, ps.outer);
        breaks.insert(breaks.end(), ps.breaks.begin(), ps.breaks.end());
      }
      if (modes.empty()) return Potential::zero();
      if (real) {
        for (const auto& [n, g] : modes) {
          const auto it = modes.find(-n);
          if (it == modes.end()) throw ConfigError("real fourier potential needs mode " + std::to_string(-n));
          for (int i = 0; i <= 64; ++i) {
            const double r = i / 64.0;
            if (std::abs(g(r) - std::conj(it->second(r))) > 1e-14 * (1.0 + std::abs(g(r)))) {
              throw ConfigError("real fourier potential needs g_{-n} = conj(g_n)");
            }
          }
        }
      }
      return Potential::fourier(std::move(modes), outer, real, sup, breaks, "fourier")
          .with_inner_radius(inner);
    }
    if (kind == "eps_member") {
      const auto fam = EpsDiscreteFamily::build(2, j.value("m", 1.0), j.at("eps").get<double>(),
                                                j.at("beta").get<double>());
      const int n_cut = j.value("n_cut", 16);
      return fam.as_potential(fam.pattern(j.value("seed", std::uint64_t{1})), n_cut);
    }
    throw ConfigError("unknown potential kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
}

BesselCertConfig parse_bessel_config(const json& j, const Overrides& o) {
  BesselCertConfig c;
  Reader r(j, {"C_list", "d_list", "points", "n_count"});
  read_common(r, c.common, o);
  r.get("C_list", c.C_list);
  r.get("d_list", c.d_list);
  r.get("points", c.points);
  r.get("n_count", c.n_count);
  if (c.C_list.empty() || c.d_list.empty()) throw ConfigError("C_list and d_list must be nonempty");
  for (double C : c.C_list) {
    if (!(C > 0.0) || C > 40.0) throw ConfigError("C must lie in (0, 40]");
  }
  for (int d : c.d_list) {
    if (d < 2 || d > 3) throw ConfigError("d must be 2 or 3");
  }
  if (c.points < 1 || c.n_count < 1) throw ConfigError("points and n_count must be >= 1");
  return c;
}

CounterexampleConfig parse_counterexample_config(const json& j, const Overrides& o) {
  CounterexampleConfig c;
  Reader r(j, {"n_list", "m", "block_tolerance"});
  read_common(r, c.common, o);
  r.get("n_list", c.n_list);
  r.get("m", c.m);
  r.get("block_tolerance", c.block_tolerance);
  if (c.n_list.empty()) throw ConfigError("n_list must be nonempty");
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    if (c.n_list[i] < 1) throw ConfigError("n_list entries must be >= 1");
    if (i && c.n_list[i] <= c.n_list[i - 1]) throw ConfigError("n_list must be strictly increasing");
  }
  if (!(c.m > 0.0)) throw ConfigError("m must be > 0");
  if (c.common.j_max < c.n_list.back() + 2) {
    throw ConfigError("j_max must be at least max(n_list) + 2");
  }
  checked_set(c.common);
  return c;
}

DecayScanConfig parse_decay_config(const json& j, const Overrides& o) {
  DecayScanConfig c;
  Reader r(j, {"potential", "d", "j_max_check", "refine"});
  read_common(r, c.common, o);
  if (r.has("potential")) c.potential = r.raw("potential");
  r.get("d", c.d);
  r.get("j_max_check", c.j_max_check);
  r.get("refine", c.refine);
  if (c.d < 2 || c.d > 3) throw ConfigError("d must be 2 or 3");
  if (c.j_max_check < 0) c.j_max_check = c.common.j_max + 4;
  if (c.j_max_check < c.common.j_max) throw ConfigError("j_max_check must be >= j_max");
  potential_from_json(c.potential);
  checked_set(c.common);
  return c;
}

EntropyConfig parse_entropy_config(const json& j, const Overrides& o) {
  EntropyConfig c;
  Reader r(j, {"d", "m", "family_eps", "family_beta", "pair_count", "cm_samples", "net_C",
               "net_deltas", "test_delta", "function_count", "rho_hat", "image_deltas", "eps",
               "beta"});
  read_common(r, c.common, o);
  r.get("d", c.d);
  r.get("m", c.m);
  r.get("family_eps", c.family_eps);
  r.get("family_beta", c.family_beta);
  r.get("pair_count", c.pair_count);
  r.get("cm_samples", c.cm_samples);
  r.get("net_C", c.net_C);
  r.get("net_deltas", c.net_deltas);
  r.get("test_delta", c.test_delta);
  r.get("function_count", c.function_count);
  r.get("rho_hat", c.rho_hat);
  r.get("image_deltas", c.image_deltas);
  r.get("eps", c.eps);
  if (r.has("beta") && !r.raw("beta").is_null()) {
    double b = 0.0;
    r.get("beta", b);
    c.beta = b;
  }
  if (c.d < 2 || c.d > 3) throw ConfigError("d must be 2 or 3");
  if (!(c.m > 0.0)) throw ConfigError("m must be > 0");
  const auto delta_ok = [](double d) { return d > 0.0 && d < std::exp(-1.0); };
  for (double d : c.net_deltas) {
    if (!delta_ok(d)) throw ConfigError("net_deltas must lie in (0, 1/e)");
  }
  for (double d : c.image_deltas) {
    if (!delta_ok(d)) throw ConfigError("image_deltas must lie in (0, 1/e)");
  }
  if (!delta_ok(c.test_delta)) throw ConfigError("test_delta must lie in (0, 1/e)");
  if (!(c.eps > 0.0 && c.eps < c.common.sigma / 3.0)) {
    throw ConfigError("eps must lie in (0, sigma/3)");
  }
  if (!(c.rho_hat > 0.0) || !(c.net_C > 0.0)) throw ConfigError("rho_hat and net_C must be > 0");
  if (c.pair_count < 1 || c.function_count < 1 || c.cm_samples < 0) {
    throw ConfigError("pair_count and function_count must be >= 1");
  }
  checked_set(c.common);
  return c;
}

ScatterConfig ScatterConfig::defaults() {
  ScatterConfig c;
  c.common.j_max = 8;
  c.common.e_grid = 5;
  return c;
}

ScatterConfig parse_scatter_config(const json& j, const Overrides& o) {
  ScatterConfig c = ScatterConfig::defaults();
  Reader r(j, {"m", "eps", "beta", "pair_count", "n_cut", "residual_tolerance", "pairs",
               "overlay_n"});
  read_common(r, c.common, o);
  r.get("m", c.m);
  r.get("eps", c.eps);
  if (r.has("beta") && !r.raw("beta").is_null()) {
    double b = 0.0;
    r.get("beta", b);
    c.beta = b;
  }
  r.get("pair_count", c.pair_count);
  r.get("n_cut", c.n_cut);
  r.get("residual_tolerance", c.residual_tolerance);
  r.get("pairs", c.pairs);
  r.get("overlay_n", c.overlay_n);
  if (!(c.m > 0.0)) throw ConfigError("m must be > 0");
  if (!(c.eps > 0.0 && c.eps < c.common.sigma / 3.0)) throw ConfigError("eps must lie in (0, sigma/3)");
  if (c.pair_count < 1) throw ConfigError("pair_count must be >= 1");
  if (c.n_cut < 0) c.n_cut = 2 * c.common.j_max;
  for (int n : c.overlay_n) {
    if (n < 1 || n + 2 > std::max(c.common.j_max, 16)) {
      throw ConfigError("overlay_n entries must lie in [1, max(j_max, 16) - 2]");
    }
  }
  checked_set(c.common);
  return c;
}

DtnExportConfig parse_dtn_config(const json& j, const Overrides& o) {
  DtnExportConfig c;
  c.common.j_max = 12;
  Reader r(j, {"potential", "d", "energies", "symmetry_tolerance"});
  read_common(r, c.common, o);
  if (r.has("potential")) c.potential = r.raw("potential");
  r.get("d", c.d);
  r.get("symmetry_tolerance", c.symmetry_tolerance);
  if (r.has("energies")) {
    c.energies.clear();
    for (const json& e : r.raw("energies")) c.energies.push_back(complex_from_json(e, "energies"));
    if (c.energies.empty()) throw ConfigError("energies must be nonempty");
  }
  if (c.d < 2 || c.d > 3) throw ConfigError("d must be 2 or 3");
  potential_from_json(c.potential);
  return c;
}

}  // namespace dtnlab
