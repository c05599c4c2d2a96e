#pragma once

// Check reports: JSON (the contract) and a fixed-width text table.

#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "paraholo/metric.hpp"
#include "paraholo/paracomplex.hpp"

namespace paraholo {

using Json = nlohmann::json;

inline Json to_json(const ParaComplex& z) { return Json::array({z.re, z.im}); }

inline Json to_json(const PCMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

struct Check {
  std::string name;
  bool pass = false;
  double violation = 0.0;
  Json details = Json::object();
};

struct Report {
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  int passed() const {
    int k = 0;
    for (const auto& c : checks) k += c.pass;
    return k;
  }
  int failed() const { return int(checks.size()) - passed(); }
  bool all_pass() const { return failed() == 0; }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  Json json() const {
    Json out;
    out["version"] = 1;
    out["checks"] = Json::array();
    for (const auto& c : checks)
      out["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"violation", c.violation}, {"details", c.details}});
    out["summary"] = {{"passed", passed()}, {"failed", failed()}};
    return out;
  }

  std::string text() const {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-36s %-6s %14s\n", "check", "result", "violation");
    out += line;
    for (const auto& c : checks) {
      std::snprintf(line, sizeof line, "%-36s %-6s %14.6e\n", c.name.c_str(), c.pass ? "pass" : "FAIL", c.violation);
      out += line;
    }
    std::snprintf(line, sizeof line, "passed %d, failed %d\n", passed(), failed());
    out += line;
    return out;
  }
};

}  // namespace paraholo
