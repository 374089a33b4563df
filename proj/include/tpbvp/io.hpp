#pragma once

// Machine-readable inputs and outputs: JSON problem configs, JSON reports and
// the node CSV (header t,u,du,v,dv).

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tpbvp/grid_function.hpp"
#include "tpbvp/solver.hpp"
#include "tpbvp/verify.hpp"

namespace tpbvp::io {

struct ProblemConfig {
  double alpha = 1.5;
  double eta = 0.5;
  std::string f = "0";
  std::string h = "0";
  SolveConfig solver;
  std::string out_csv;
  std::string out_json;

  friend bool operator==(const ProblemConfig& a, const ProblemConfig& b);
};

/// Unknown keys and wrong types are InputErrors. Missing keys keep defaults.
ProblemConfig config_from_json(const nlohmann::json& j);
ProblemConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ProblemConfig& c);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const ConeReport& r);
nlohmann::json to_json(const CertificationReport& r);
nlohmann::json to_json(const GrowthScan& s);

/// 17 significant digits (%.17g).
std::string format_real(double x);

void write_csv(std::ostream& os, const CoupledState& s);
void write_scan_csv(std::ostream& os, const GrowthScan& f_scan, const GrowthScan& h_scan);

/// Writes text to `path`, throwing InputError if the file cannot be opened.
void write_file(const std::string& path, const std::string& text);

}  // namespace tpbvp::io
