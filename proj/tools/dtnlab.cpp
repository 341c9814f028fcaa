#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dtnlab/errors.hpp"
#include "dtnlab/experiments.hpp"

namespace {

using namespace dtnlab;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

ExperimentReport run(const std::string& cmd, const json& cfg, const Overrides& o) {
  if (cmd == "bessel-cert") return run_bessel_certification(parse_bessel_config(cfg, o));
  if (cmd == "dtn") return run_dtn_export(parse_dtn_config(cfg, o));
  if (cmd == "counterexample") return run_counterexample(parse_counterexample_config(cfg, o));
  if (cmd == "decay-scan") return run_decay_scan(parse_decay_config(cfg, o));
  if (cmd == "entropy") return run_entropy_report(parse_entropy_config(cfg, o));
  if (cmd == "scatter") return run_instability_scatter(parse_scatter_config(cfg, o));
  throw ConfigError("unknown subcommand " + cmd);
}

void print_summary(const ExperimentReport& r, const std::string& out) {
  for (const Verdict& v : r.verdicts) {
    std::printf("%-8s %s  (margin %s)%s%s\n",
                v.skipped ? "SKIP" : (v.pass ? "PASS" : "FAIL"), v.name.c_str(),
                format_number(v.margin).c_str(), v.detail.empty() ? "" : "  ",
                v.detail.c_str());
  }
  for (const std::string& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("%s: %s in %.2f s, report in %s\n", r.experiment_id.c_str(),
              r.all_pass() ? "all verdicts pass" : "some verdicts fail", r.runtime_seconds,
              out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DtN-map instability experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  Overrides o;
  std::uint64_t seed = 0;
  int jmax = 0, egrid = 0;
  double s = 0.0, sigma = 0.0;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory (default out/<subcommand>)");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_jmax = app.add_option("--jmax", jmax, "harmonic degree cut-off")->check(CLI::PositiveNumber);
  auto* o_egrid = app.add_option("--egrid", egrid, "energy points per interval")->check(CLI::PositiveNumber);
  auto* o_s = app.add_option("--s", s, "Sobolev index s >= 0")->check(CLI::NonNegativeNumber);
  auto* o_sigma = app.add_option("--sigma", sigma, "regularity margin sigma > 0")->check(CLI::PositiveNumber);

  const char* cmds[][2] = {
      {"bessel-cert", "certify the Bessel bounds above the order threshold"},
      {"dtn", "export DtN matrices and DtN differences"},
      {"counterexample", "sweep the complex counterexample potentials"},
      {"decay-scan", "measure the decay of DtN-difference matrix elements"},
      {"entropy", "epsilon-discrete family, delta-nets and the counting check"},
      {"scatter", "DtN distances of sampled member pairs with the counterexample overlay"}};
  for (const auto& c : cmds) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }
  if (o_seed->count()) o.seed = seed;
  if (o_jmax->count()) o.j_max = jmax;
  if (o_egrid->count()) o.e_grid = egrid;
  if (o_s->count()) o.s = s;
  if (o_sigma->count()) o.sigma = sigma;

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (out_dir.empty()) out_dir = "out/" + cmd;
  try {
    const ExperimentReport rep = run(cmd, load_config(config_path), o);
    write_report(rep, out_dir);
    print_summary(rep, out_dir);
    return rep.all_pass() ? kPass : kFail;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfig;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return kConfig;
  } catch (const RegularityError& e) {
    std::fprintf(stderr, "regularity violation: %s\n", e.what());
    return kFail;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
}
