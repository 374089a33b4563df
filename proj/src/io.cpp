#include "tpbvp/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "tpbvp/errors.hpp"

namespace tpbvp::io {

using nlohmann::json;

bool operator==(const ProblemConfig& a, const ProblemConfig& b) {
  const SolveConfig& x = a.solver;
  const SolveConfig& y = b.solver;
  return a.alpha == b.alpha && a.eta == b.eta && a.f == b.f && a.h == b.h && a.out_csv == b.out_csv &&
         a.out_json == b.out_json && x.max_iters == y.max_iters && x.tol == y.tol && x.damping == y.damping &&
         x.nodes == y.nodes && x.quad_points == y.quad_points && x.initial == y.initial &&
         x.initial_value == y.initial_value;
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.contains(key)) throw InputError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError("wrong type for '" + std::string(key) + "' in " + where);
  }
}

}  // namespace

ProblemConfig config_from_json(const json& j) {
  ProblemConfig c;
  reject_unknown(j, {"alpha", "eta", "f", "h", "solver", "outputs"}, "config");
  read(j, "alpha", c.alpha, "config");
  read(j, "eta", c.eta, "config");
  read(j, "f", c.f, "config");
  read(j, "h", c.h, "config");
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, {"max_iters", "tol", "damping", "nodes", "quad_points", "initial"}, "solver");
    read(s, "max_iters", c.solver.max_iters, "solver");
    read(s, "tol", c.solver.tol, "solver");
    read(s, "damping", c.solver.damping, "solver");
    read(s, "nodes", c.solver.nodes, "solver");
    read(s, "quad_points", c.solver.quad_points, "solver");
    if (s.contains("initial")) {
      const json& init = s.at("initial");
      if (init.is_string() && init.get<std::string>() == "zero") {
        c.solver.initial = InitialKind::zero;
      } else if (init.is_object() && init.size() == 1 && init.contains("constant") && init.at("constant").is_number()) {
        c.solver.initial = InitialKind::constant;
        c.solver.initial_value = init.at("constant").get<double>();
      } else {
        throw InputError("solver.initial must be \"zero\" or {\"constant\": c}");
      }
    }
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    reject_unknown(o, {"csv", "json"}, "outputs");
    read(o, "csv", c.out_csv, "outputs");
    read(o, "json", c.out_json, "outputs");
  }
  return c;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw InputError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

json config_to_json(const ProblemConfig& c) {
  json init = c.solver.initial == InitialKind::constant ? json{{"constant", c.solver.initial_value}} : json("zero");
  return json{
      {"alpha", c.alpha},
      {"eta", c.eta},
      {"f", c.f},
      {"h", c.h},
      {"solver",
       {{"max_iters", c.solver.max_iters},
        {"tol", c.solver.tol},
        {"damping", c.solver.damping},
        {"nodes", c.solver.nodes},
        {"quad_points", c.solver.quad_points},
        {"initial", init}}},
      {"outputs", {{"csv", c.out_csv}, {"json", c.out_json}}},
  };
}

json to_json(const ConeReport& r) {
  return json{{"member", r.member},
              {"nonnegative", r.nonnegative},
              {"min_value", r.min_value},
              {"min_value_t", r.min_value_t},
              {"value_ok", r.value_ok},
              {"cone_min_value", r.cone_min_value},
              {"value_bound", r.value_bound},
              {"deriv_ok", r.deriv_ok},
              {"cone_min_deriv", r.cone_min_deriv},
              {"cone_min_deriv_t", r.cone_min_deriv_t},
              {"deriv_bound", r.deriv_bound},
              {"slack", r.slack}};
}

json to_json(const SolveReport& r) {
  return json{{"converged", r.converged},
              {"diverged", r.diverged},
              {"iters", r.iters},
              {"final_step_norm", r.final_step_norm},
              {"final_damping", r.final_damping},
              {"history", r.history},
              {"residual_u", r.residual_u},
              {"residual_v", r.residual_v},
              {"residual_u_t", r.residual_u_t},
              {"residual_v_t", r.residual_v_t},
              {"bc_defect_u", r.bc_defect_u},
              {"bc_defect_v", r.bc_defect_v},
              {"fixed_point_defect_u", r.fixed_point_defect_u},
              {"fixed_point_defect_v", r.fixed_point_defect_v},
              {"positivity_ok", r.positivity_ok},
              {"monotone_ok", r.monotone_ok},
              {"cone_ok_u", r.cone_ok_u},
              {"cone_ok_v", r.cone_ok_v},
              {"cone_u", to_json(r.cone_u)},
              {"cone_v", to_json(r.cone_v)},
              {"clamped_samples", r.clamped_samples},
              {"node_count", r.node_count}};
}

json to_json(const CertificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(json{{"name", c.name},
                          {"statement", c.statement},
                          {"pass", c.passed},
                          {"worst_violation", c.worst_violation},
                          {"worst_t", c.worst_t},
                          {"worst_s", c.worst_s},
                          {"slack", c.slack},
                          {"empirical_ratio", c.empirical_ratio},
                          {"ratio_t", c.ratio_t},
                          {"ratio_s", c.ratio_s},
                          {"points", c.points}});
  }
  return json{{"alpha", r.alpha}, {"eta", r.eta},     {"k0", r.k0},         {"k1", r.k1},
              {"grid_n", r.grid_n}, {"slack", r.slack}, {"all_pass", r.all_passed()}, {"checks", checks}};
}

json to_json(const GrowthScan& s) {
  json curves = json::array();
  for (const auto& c : s.per_direction) curves.push_back(json{{"direction", c.label}, {"ratios", c.ratios}});
  return json{{"scales", s.scales}, {"ratios", s.ratios}, {"per_direction", curves}};
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const CoupledState& s) {
  os << "t,u,du,v,dv\n";
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    os << format_real(s.u.nodes()[i]) << ',' << format_real(s.u.values()[i]) << ',' << format_real(s.u.derivs()[i])
       << ',' << format_real(s.v.values()[i]) << ',' << format_real(s.v.derivs()[i]) << '\n';
  }
}

void write_scan_csv(std::ostream& os, const GrowthScan& f_scan, const GrowthScan& h_scan) {
  os << "scale,ratio_f,ratio_h\n";
  for (std::size_t k = 0; k < f_scan.scales.size(); ++k) {
    os << format_real(f_scan.scales[k]) << ',' << format_real(f_scan.ratios[k]) << ','
       << format_real(h_scan.ratios[k]) << '\n';
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace tpbvp::io
