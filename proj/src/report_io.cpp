#include "ome/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ome/error.hpp"

namespace ome {

using nlohmann::json;

namespace {

// JSON has no inf / nan; those travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw ConfigError("expected a number, got '" + s + "'");
}

CorrelationMethod method_from(const std::string& s) {
  if (s == "exact") return CorrelationMethod::exact;
  if (s == "closed_form") return CorrelationMethod::closed_form;
  throw ConfigError("unknown correlation method '" + s + "'");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out << cells[i];
        continue;
      }
      out << '"';
      for (char c : cells[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
      out << '"';
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

void to_json(json& j, const CorrelationResult& r) {
  j = {{"p_pp", num(r.p_pp)}, {"p_pm", num(r.p_pm)}, {"p_mp", num(r.p_mp)},
       {"p_mm", num(r.p_mm)}, {"correlation", num(r.correlation)},
       {"method", to_string(r.method)}};
}

void from_json(const json& j, CorrelationResult& r) {
  r.p_pp = num(j.at("p_pp"));
  r.p_pm = num(j.at("p_pm"));
  r.p_mp = num(j.at("p_mp"));
  r.p_mm = num(j.at("p_mm"));
  r.correlation = num(j.at("correlation"));
  r.method = method_from(j.at("method").get<std::string>());
}

void to_json(json& j, const InterferenceResult& r) {
  j = {{"visibility", num(r.visibility)},
       {"coherence_visibility", num(r.coherence_visibility)},
       {"p00", num(r.p00)}, {"p01", num(r.p01)}, {"p10", num(r.p10)}, {"p11", num(r.p11)},
       {"negativity_lb", num(r.negativity_lb)}};
}

void from_json(const json& j, InterferenceResult& r) {
  r.visibility = num(j.at("visibility"));
  r.coherence_visibility = num(j.at("coherence_visibility"));
  r.p00 = num(j.at("p00"));
  r.p01 = num(j.at("p01"));
  r.p10 = num(j.at("p10"));
  r.p11 = num(j.at("p11"));
  r.negativity_lb = num(j.at("negativity_lb"));
}

void to_json(json& j, const WitnessReport& r) {
  j = {{"negativity_lb", num(r.negativity_lb)},
       {"o_bm", num(r.o_bm)},
       {"refined_bound", num(r.refined_bound)},
       {"verdict", to_string(r.verdict)},
       {"correlations", r.correlations},
       {"interference", r.interference}};
}

void from_json(const json& j, WitnessReport& r) {
  r.negativity_lb = num(j.at("negativity_lb"));
  r.o_bm = num(j.at("o_bm"));
  r.refined_bound = num(j.at("refined_bound"));
  const std::string v = j.at("verdict").get<std::string>();
  if (v != "entangled" && v != "inconclusive") throw ConfigError("unknown verdict '" + v + "'");
  r.verdict = v == "entangled" ? Verdict::entangled : Verdict::inconclusive;
  r.correlations = j.at("correlations").get<CorrelationResult>();
  r.interference = j.at("interference").get<InterferenceResult>();
}

void to_json(json& j, const ConstraintFlag& f) {
  j = {{"name", f.name}, {"passed", f.passed}, {"detail", f.detail}};
}

void from_json(const json& j, ConstraintFlag& f) {
  f.name = j.at("name").get<std::string>();
  f.passed = j.at("passed").get<bool>();
  f.detail = j.at("detail").get<std::string>();
}

void to_json(json& j, const FeasibilityReport& r) {
  json ts = json::object();
  for (const auto& [kind, t] : r.timescales) ts[to_string(kind)] = num(t);
  j = {{"x0", num(r.x0)},
       {"p0", num(r.p0)},
       {"g0", num(r.g0)},
       {"tau", num(r.tau)},
       {"g0_over_omega_m", num(r.g0_over_omega_m)},
       {"macroscopicity", num(r.macroscopicity)},
       {"correlation_target", num(r.correlation_target)},
       {"epsilon_nl", num(r.epsilon_nl)},
       {"dx_over_x0", num(r.dx_over_x0)},
       {"phase_spread", num(r.phase_spread)},
       {"epsilon_bar", num(r.epsilon_bar)},
       {"epsilon_bar_rule", num(r.epsilon_bar_rule)},
       {"n_eff", num(r.n_eff)},
       {"Np_max", num(r.Np_max)},
       {"eid_condition_T_max", num(r.eid_condition_T_max)},
       {"timescales", ts},
       {"constraint_flags", r.constraint_flags}};
}

void from_json(const json& j, FeasibilityReport& r) {
  r.x0 = num(j.at("x0"));
  r.p0 = num(j.at("p0"));
  r.g0 = num(j.at("g0"));
  r.tau = num(j.at("tau"));
  r.g0_over_omega_m = num(j.at("g0_over_omega_m"));
  r.macroscopicity = num(j.at("macroscopicity"));
  r.correlation_target = num(j.at("correlation_target"));
  r.epsilon_nl = num(j.at("epsilon_nl"));
  r.dx_over_x0 = num(j.at("dx_over_x0"));
  r.phase_spread = num(j.at("phase_spread"));
  r.epsilon_bar = num(j.at("epsilon_bar"));
  r.epsilon_bar_rule = num(j.at("epsilon_bar_rule"));
  r.n_eff = num(j.at("n_eff"));
  r.Np_max = num(j.at("Np_max"));
  r.eid_condition_T_max = num(j.at("eid_condition_T_max"));
  r.timescales.clear();
  // Fixed model order, independent of JSON key order.
  for (ModelKind kind : {ModelKind::eid, ModelKind::qg, ModelKind::gic}) {
    const auto& ts = j.at("timescales");
    if (ts.contains(to_string(kind))) r.timescales.emplace_back(kind, num(ts.at(to_string(kind))));
  }
  r.constraint_flags = j.at("constraint_flags").get<std::vector<ConstraintFlag>>();
}

void to_json(json& j, const TestabilityEntry& e) {
  j = {{"model", to_string(e.model)}, {"timescale", num(e.timescale)}, {"rate", num(e.rate)},
       {"deficit_at_probe", num(e.deficit_at_probe)}, {"testable", e.testable}};
}

void from_json(const json& j, TestabilityEntry& e) {
  e.model = model_kind_from_string(j.at("model").get<std::string>());
  e.timescale = num(j.at("timescale"));
  e.rate = num(j.at("rate"));
  e.deficit_at_probe = num(j.at("deficit_at_probe"));
  e.testable = j.at("testable").get<bool>();
}

void to_json(json& j, const DecayRow& r) {
  j = {{"model", to_string(r.model)}, {"n", r.n}, {"deficit", num(r.deficit)}, {"valid", r.valid}};
}

void from_json(const json& j, DecayRow& r) {
  r.model = model_kind_from_string(j.at("model").get<std::string>());
  r.n = j.at("n").get<int>();
  r.deficit = num(j.at("deficit"));
  r.valid = j.at("valid").get<bool>();
}

}  // namespace ome
