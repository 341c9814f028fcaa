#pragma once

// Experiment drivers behind the command-line tool. Each run_* returns an
// ExperimentReport (config echo, named tables, verdicts); write_report puts
// it on disk as report.json plus one CSV per table.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dtnlab/energy.hpp"
#include "dtnlab/potential.hpp"

namespace dtnlab {

using json = nlohmann::json;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  Table(std::string n, std::vector<std::string> cols)
      : name(std::move(n)), columns(std::move(cols)) {}
  void add(std::vector<json> row);
  std::string csv() const;
};

struct Verdict {
  std::string name;
  std::string invariant;  // the module invariant this verdict re-checks
  bool pass = true;
  double margin = 0.0;  // positive when passing with room
  bool skipped = false;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment_id;
  json config_echo = json::object();
  std::vector<Table> tables;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
  json plots = json::array();  // data-only plot specs referring to tables
  double runtime_seconds = 0.0;

  bool all_pass() const;
  Table& table(const std::string& name);
  const Table& table(const std::string& name) const;
  void verdict(std::string name, std::string invariant, bool pass, double margin,
               std::string detail = {});
  void skip(std::string name, std::string invariant, std::string detail);
  json to_json() const;
};

// %.17g; non-finite values as "inf", "-inf", "nan".
std::string format_number(double x);
// JSON text in which every floating-point number carries 17 significant
// digits.
std::string dump_json(const json& j, int indent = 2);
// Creates `dir` if needed; writes report.json and <table>.csv files.
void write_report(const ExperimentReport& r, const std::string& dir);

// ---- configuration ----

// Settings shared by all subcommands, with the desk-scale defaults.
struct CommonConfig {
  std::uint64_t seed = 1;
  int j_max = 24;
  int e_grid = 33;
  double s = 0.0;
  double sigma = 0.3;
  std::vector<Interval> intervals{{6.2, 7.0}, {10.5, 11.5}};
  unsigned threads = 0;
  int r_points = 128;
  std::string coupled_method = "log-derivative";

  EnergyIntervalSet energy_set() const;
};

// Command-line overrides; unset fields keep the config-file value.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> j_max;
  std::optional<int> e_grid;
  std::optional<double> s;
  std::optional<double> sigma;
};

// Thrown for malformed configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Potential from its JSON descriptor:
//   {"kind": "zero"}
//   {"kind": "constant", "c": x}
//   {"kind": "step", "c": x, "r1": r}
//   {"kind": "radial_bump", "profile": {"amplitude": x, "center": c, "half_width": h}}
//   {"kind": "counterexample", "n": n, "m": m, "sigma": s}
//   {"kind": "fourier", "real": b, "modes": [{"n": n, "profile": {...}}, ...]}
//   {"kind": "eps_member", "m": m, "eps": e, "beta": b, "seed": k, "n_cut": c}
// A complex x is written [re, im]. Fourier profiles are
//   {"type": "bump", "amplitude": x, "center": c, "half_width": h} or
//   {"type": "step", "value": x, "r1": r}.
Potential potential_from_json(const json& j);

struct BesselCertConfig {
  CommonConfig common;
  std::vector<double> C_list{1.0, 5.0, 10.0};
  std::vector<int> d_list{2, 3};
  int points = 1000;   // grid points per disk
  int n_count = 20;    // n in [N+1, N+n_count]
};

struct CounterexampleConfig {
  CommonConfig common;
  std::vector<int> n_list{4, 6, 8, 10, 12};
  double m = 1.0;
  double block_tolerance = 1e-5;
};

struct DecayScanConfig {
  CommonConfig common;
  json potential = {{"kind", "radial_bump"},
                    {"profile", {{"amplitude", 0.2}, {"center", 0.0}, {"half_width", 1.0 / 3.0}}}};
  int d = 2;
  int j_max_check = -1;  // -1: j_max + 4
  bool refine = false;   // also evaluate on the refined energy grid
};

struct EntropyConfig {
  CommonConfig common;
  int d = 2;
  double m = 1.0;
  // epsilon-discrete family test
  double family_eps = 1e-3;
  double family_beta = 1.0;
  int pair_count = 100;
  int cm_samples = 5;
  // holomorphic-function net test
  double net_C = 1.0;
  std::vector<double> net_deltas{1e-1, 1e-2, 1e-3};
  double test_delta = 1e-3;
  int function_count = 100;
  // image net and the |Z| > |Y| bookkeeping
  double rho_hat = 1.0;
  std::vector<double> image_deltas{1e-1, 1e-2, 1e-3, 1e-4};
  double eps = 0.01;
  std::optional<double> beta;  // default: just above the admissible bound
};

struct ScatterConfig {
  CommonConfig common;  // j_max and e_grid default smaller, see defaults()
  double m = 1.0;
  double eps = 0.02;
  std::optional<double> beta;  // default: two cells per axis
  int pair_count = 3;
  int n_cut = -1;  // -1: 2 j_max
  double residual_tolerance = 1e-2;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // explicit seeds
  std::vector<int> overlay_n{4, 6, 8};
  static ScatterConfig defaults();
};

struct DtnExportConfig {
  CommonConfig common;
  json potential = {{"kind", "counterexample"}, {"n", 6}, {"m", 1.0}, {"sigma", 0.3}};
  int d = 2;
  std::vector<cplx> energies{cplx(6.5, 0.0)};
  double symmetry_tolerance = 1e-7;
};

BesselCertConfig parse_bessel_config(const json& j, const Overrides& o);
CounterexampleConfig parse_counterexample_config(const json& j, const Overrides& o);
DecayScanConfig parse_decay_config(const json& j, const Overrides& o);
EntropyConfig parse_entropy_config(const json& j, const Overrides& o);
ScatterConfig parse_scatter_config(const json& j, const Overrides& o);
DtnExportConfig parse_dtn_config(const json& j, const Overrides& o);

// ---- experiments ----

ExperimentReport run_bessel_certification(const BesselCertConfig& cfg);
ExperimentReport run_counterexample(const CounterexampleConfig& cfg);
ExperimentReport run_decay_scan(const DecayScanConfig& cfg);
ExperimentReport run_entropy_report(const EntropyConfig& cfg);
ExperimentReport run_instability_scatter(const ScatterConfig& cfg);
ExperimentReport run_dtn_export(const DtnExportConfig& cfg);

// Largest c with norm_n <= exp(-c x_n) for all n (x = eps^{-1/m}), the
// least-squares c through the origin, and its residuals ln norm + c x.
struct InstabilityFit {
  double c_envelope = 0.0;
  double c_least_squares = 0.0;
  std::vector<double> residuals;
  bool exists = false;  // c_envelope > 0
};
InstabilityFit fit_instability(const std::vector<double>& eps,
                               const std::vector<double>& norms, double m);

}  // namespace dtnlab
