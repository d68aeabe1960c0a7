#include "graphon/report.hpp"

#include <cmath>

namespace graphon::report {

bool Check::pass() const {
  if (!std::isfinite(value)) return false;
  return relation == Relation::AtMost ? value <= bound : value >= bound;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::add_check(std::string name, double value, double bound, Relation relation) {
  checks_.push_back(Check{std::move(name), value, bound, relation});
}

bool Report::all_pass() const {
  for (const auto& c : checks_)
    if (!c.pass()) return false;
  return true;
}

Json Report::to_json() const {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command_;
  out["inputs"] = inputs_;
  out["results"] = results_;
  Json checks = Json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"bound", c.bound},
                      {"relation", c.relation == Relation::AtMost ? "<=" : ">="},
                      {"pass", c.pass()}});
  }
  out["checks"] = std::move(checks);
  out["pass"] = all_pass();
  if (runtime_ >= 0.0) out["runtime_seconds"] = runtime_;
  return out;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

bool checks_consistent(const Json& report) {
  if (!report.contains("checks")) return false;
  for (const auto& c : report["checks"]) {
    if (!c.contains("value") || !c.contains("bound") || !c.contains("pass")) return false;
    if (c["value"].is_null()) {
      if (c["pass"].get<bool>()) return false;
      continue;
    }
    const double v = c["value"].get<double>(), b = c["bound"].get<double>();
    const bool expected = c["relation"] == "<=" ? v <= b : v >= b;
    if (expected != c["pass"].get<bool>()) return false;
  }
  return true;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Json to_json(const CutNormEstimate& e) {
  return {{"lower", e.lower},
          {"upper", e.upper},
          {"method", to_string(e.method)},
          {"witness_f", to_json(e.witness_f)},
          {"witness_g", to_json(e.witness_g)}};
}

Json to_json(const DensityEstimate& e) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"samples", e.samples},
          {"method", to_string(e.method)}};
}

Json to_json(const DistanceBracket& b) {
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"norm", to_string(b.norm)},
          {"regime", b.exact ? "exact" : "heuristic"},
          {"lower_is_heuristic_certificate", b.lower_is_heuristic_certificate},
          {"refinement_size", b.refinement_size},
          {"alignment", b.alignment}};
}

Json spectrum_json(const SpectralDecomposition& d) {
  Json clusters = Json::array();
  for (const auto& c : d.clusters) {
    clusters.push_back({{"begin", c.begin},
                        {"end", c.end},
                        {"value", c.value},
                        {"dimension", c.dimension()},
                        {"zero", d.is_zero_cluster(c)}});
  }
  return {{"eigenvalues", to_json(d.eigenvalues)},
          {"clusters", std::move(clusters)},
          {"eigenvector_sup_norms", to_json(d.eigenvector_sup_norms())},
          {"tolerance", d.tolerance}};
}

Json partition_json(const StepFunction& sf) {
  return {{"parts", sf.parts()},
          {"part_of", sf.part_of()},
          {"part_weights", to_json(sf.part_weights())},
          {"block", to_json(sf.block())}};
}

Json to_json(const RegularityDecomposition& r) {
  const auto& c = r.certificates;
  return {{"lambda", r.lambda},
          {"lambda_next", r.lambda_next},
          {"delta_floor", r.delta_floor},
          {"epsilon", r.epsilon},
          {"F_bound", r.F_bound},
          {"certificates",
           {{"E_l2", c.E_l2},
            {"R_cut", to_json(c.R_cut)},
            {"SE_linf", c.SE_linf},
            {"clamped", c.clamped},
            {"epsilon_violated", c.epsilon_violated}}}};
}

}  // namespace graphon::report
