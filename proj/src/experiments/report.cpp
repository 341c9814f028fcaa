#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtnlab/errors.hpp"
#include "dtnlab/experiments.hpp"

namespace dtnlab {

namespace {

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_boolean()) return v.dump();
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : dump_json(v, -1);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void dump_rec(const json& j, int indent, int level, std::string& out) {
  const bool pretty = indent >= 0;
  const auto newline = [&](int lv) {
    if (pretty) {
      out += '\n';
      out.append(static_cast<std::size_t>(lv * indent), ' ');
    }
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : json(format_number(x)).dump();
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_rec(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Rows of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(level + 1);
        dump_rec(e, indent, level + 1, out);
      }
      if (!flat) newline(level);
      out += ']';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

void Table::add(std::vector<json> row) {
  if (row.size() != columns.size()) {
    throw InternalError("table " + name + ": row width does not match columns");
  }
  rows.push_back(std::move(row));
}

std::string Table::csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

bool ExperimentReport::all_pass() const {
  for (const Verdict& v : verdicts) {
    if (!v.skipped && !v.pass) return false;
  }
  return true;
}

Table& ExperimentReport::table(const std::string& name) {
  for (Table& t : tables) {
    if (t.name == name) return t;
  }
  throw InternalError("no table named " + name);
}

const Table& ExperimentReport::table(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name == name) return t;
  }
  throw InternalError("no table named " + name);
}

void ExperimentReport::verdict(std::string name, std::string invariant, bool pass,
                               double margin, std::string detail) {
  verdicts.push_back({std::move(name), std::move(invariant), pass, margin, false,
                      std::move(detail)});
}

void ExperimentReport::skip(std::string name, std::string invariant,
                            std::string detail) {
  verdicts.push_back({std::move(name), std::move(invariant), true, 0.0, true,
                      std::move(detail)});
}

json ExperimentReport::to_json() const {
  json j;
  j["experiment_id"] = experiment_id;
  j["config_echo"] = config_echo;
  json tabs = json::array();
  for (const Table& t : tables) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    tabs.push_back({{"name", t.name}, {"csv", t.name + ".csv"}, {"columns", t.columns},
                    {"rows", rows}});
  }
  j["tables"] = tabs;
  json vs = json::array();
  for (const Verdict& v : verdicts) {
    vs.push_back({{"name", v.name},
                  {"invariant", v.invariant},
                  {"status", v.skipped ? "skipped" : (v.pass ? "pass" : "fail")},
                  {"margin", v.margin},
                  {"detail", v.detail}});
  }
  j["verdicts"] = vs;
  j["all_pass"] = all_pass();
  j["notes"] = notes;
  j["warnings"] = warnings;
  j["plots"] = plots;
  j["runtime_seconds"] = runtime_seconds;
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

void write_report(const ExperimentReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream f(fs::path(dir) / "report.json");
    if (!f) throw Error("cannot write report.json in " + dir);
    f << dump_json(r.to_json()) << '\n';
  }
  for (const Table& t : r.tables) {
    std::ofstream f(fs::path(dir) / (t.name + ".csv"));
    if (!f) throw Error("cannot write " + t.name + ".csv");
    f << t.csv();
  }
}

}  // namespace dtnlab
