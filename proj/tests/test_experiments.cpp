#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "dtnlab/experiments.hpp"

using namespace dtnlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dtnlab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DTNLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Report, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  const std::string j = dump_json(json{{"x", 0.1}, {"n", 3}}, -1);
  EXPECT_NE(j.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(j.find("\"n\":3"), std::string::npos);
}

TEST(Report, TableCsvAndVerdicts) {
  Table t("demo", {"a", "b"});
  t.add({1, 0.25});
  t.add({2, "x"});
  EXPECT_EQ(t.csv(), "a,b\n1,0.25\n2,x\n");
  ExperimentReport r;
  r.experiment_id = "demo";
  r.verdict("ok", "inv", true, 1.0);
  EXPECT_TRUE(r.all_pass());
  r.skip("later", "inv", "not run");
  EXPECT_TRUE(r.all_pass());
  r.verdict("bad", "inv", false, -1.0);
  EXPECT_FALSE(r.all_pass());
  r.tables.push_back(t);
  const fs::path dir = scratch("report");
  write_report(r, dir.string());
  EXPECT_TRUE(fs::exists(dir / "report.json"));
  EXPECT_EQ(slurp(dir / "demo.csv"), t.csv());
  const json back = json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(back.at("experiment_id"), "demo");
}

TEST(Config, Defaults) {
  const auto c = parse_counterexample_config(json::object(), {});
  EXPECT_EQ(c.n_list, (std::vector<int>{4, 6, 8, 10, 12}));
  EXPECT_EQ(c.common.j_max, 24);
  EXPECT_EQ(c.common.e_grid, 33);
  EXPECT_DOUBLE_EQ(c.common.sigma, 0.3);
  Overrides o;
  o.j_max = 12;
  o.sigma = 0.2;
  const auto d = parse_decay_config(json{{"j_max", 30}}, o);
  EXPECT_EQ(d.common.j_max, 12);
  EXPECT_DOUBLE_EQ(d.common.sigma, 0.2);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_bessel_config(json{{"bogus", 1}}, {}), ConfigError);
  EXPECT_THROW(parse_bessel_config(json{{"points", "many"}}, {}), ConfigError);
  EXPECT_THROW(parse_counterexample_config(json{{"j_max", -1}}, {}), ConfigError);
  EXPECT_THROW(parse_entropy_config(json{{"coupled_method", "magic"}}, {}), ConfigError);
  EXPECT_THROW(potential_from_json(json{{"kind", "teapot"}}), ConfigError);
  EXPECT_NO_THROW(potential_from_json(json{{"kind", "step"}, {"c", json::array({0.1, 0.2})}, {"r1", 0.3}}));
}

TEST(InstabilityFit, SyntheticCurve) {
  std::vector<double> eps, norms;
  for (int n : {4, 6, 8, 10}) {
    const double e = 0.1 / n;
    eps.push_back(e);
    norms.push_back(std::exp(-0.5 / e) * (n == 6 ? 2.0 : 1.0));
  }
  const InstabilityFit f = fit_instability(eps, norms, 1.0);
  EXPECT_TRUE(f.exists);
  EXPECT_LE(f.c_envelope, 0.5);
  EXPECT_GT(f.c_envelope, 0.4);
  for (size_t k = 0; k < eps.size(); ++k) {
    EXPECT_LE(norms[k], std::exp(-f.c_envelope / eps[k]) * (1 + 1e-12));
  }
  EXPECT_EQ(f.residuals.size(), eps.size());
  EXPECT_FALSE(fit_instability({0.1, 0.2}, {2.0, 3.0}, 1.0).exists);
}

TEST(Cli, DtnExportIsDeterministic) {
  const fs::path a = scratch("cli_a"), b = scratch("cli_b");
  ASSERT_EQ(run_cli("dtn --jmax 6 --out " + a.string()), 0);
  ASSERT_EQ(run_cli("dtn --jmax 6 --out " + b.string()), 0);
  for (const char* f : {"norms.csv", "phi_0.csv", "lambda_0.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const json rep = json::parse(slurp(a / "report.json"));
  EXPECT_EQ(rep.at("config_echo").at("j_max"), 6);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli_codes");
  EXPECT_EQ(run_cli("--no-such-flag"), 2);
  EXPECT_EQ(run_cli("dtn --jmax -3 --out " + dir.string()), 2);
  {
    std::ofstream(dir / "bad.json") << R"({"unknown_key": 1})";
    EXPECT_EQ(run_cli("dtn --config " + (dir / "bad.json").string() + " --out " + dir.string()), 2);
  }
  {
    std::ofstream(dir / "broken.json") << "{not json";
    EXPECT_EQ(run_cli("entropy --config " + (dir / "broken.json").string() + " --out " + dir.string()), 2);
  }
  {
    // the free eigenvalue 5.783 lies inside the first interval
    std::ofstream(dir / "irregular.json") << R"({"intervals": [[5.5, 6.0]]})";
    EXPECT_EQ(run_cli("decay-scan --config " + (dir / "irregular.json").string() + " --out " + dir.string()), 1);
  }
}
