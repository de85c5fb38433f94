#include "ome/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ome/error.hpp"
#include "ome/units.hpp"

namespace ome {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const ConfigEntry& e) {
  return e.line > 0 ? " (line " + std::to_string(e.line) + ")" : " (--set)";
}

bool is_param(const std::string& name) {
  const auto& f = PhysParams::field_names();
  return std::find(f.begin(), f.end(), name) != f.end();
}

bool is_constant(const std::string& name) {
  const auto& f = Constants::field_names();
  return std::find(f.begin(), f.end(), name) != f.end();
}

bool parse_bool(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError("'" + e.key + "' expects true or false" + where(e));
}

std::size_t parse_count(const ConfigEntry& e) {
  const double v = units::parse_quantity(e.value, units::Dimension::dimensionless);
  if (v < 0.0 || v != std::floor(v) || v > 1e15)
    throw ConfigError("'" + e.key + "' expects a non-negative integer" + where(e));
  return static_cast<std::size_t>(v);
}

SweepAxis parse_axis(const ConfigEntry& e) {
  std::istringstream in(e.value);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.size() != 4 && !(tok.size() == 5 && tok[4] == "log"))
    throw ConfigError("sweep axis expects '<name> <start> <stop> <steps> [log]'" + where(e));
  SweepAxis a;
  a.name = tok[0];
  if (!is_param(a.name) || a.name == "L" || a.name == "omega_c")
    throw ConfigError("sweep axis '" + a.name + "' is not a sweepable parameter" + where(e));
  const auto dim = units::dimension_of(a.name);
  a.start = units::parse_quantity(tok[1], dim);
  a.stop = units::parse_quantity(tok[2], dim);
  a.steps = parse_count({e.key, tok[3], e.line});
  a.log = tok.size() == 5;
  if (a.steps == 0) throw ConfigError("sweep axis needs at least one step" + where(e));
  if (a.log && !(a.start > 0.0 && a.stop > 0.0))
    throw ConfigError("log sweep axis needs positive bounds" + where(e));
  return a;
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    v[i] = log ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  return v;
}

std::vector<ConfigEntry> parse_config_text(const std::string& text) {
  std::vector<ConfigEntry> out;
  std::vector<std::string> blocks;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s == "}") {
      if (blocks.empty()) throw ConfigError("unmatched '}' (line " + std::to_string(line) + ")");
      blocks.pop_back();
      continue;
    }
    if (s.back() == '{') {
      const std::string name = trim(s.substr(0, s.size() - 1));
      if (name.empty() || name.find_first_of(" =.") != std::string::npos)
        throw ConfigError("bad block name (line " + std::to_string(line) + ")");
      blocks.push_back(name);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value' (line " + std::to_string(line) + ")");
    std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("empty key or value (line " + std::to_string(line) + ")");
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) key = *it + "." + key;
    out.push_back({key, value, line});
  }
  if (!blocks.empty()) throw ConfigError("unterminated block '" + blocks.back() + "'");
  return out;
}

RunConfig build_config(std::vector<ConfigEntry> entries, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects name=value, got '" + o + "'");
    std::string key = trim(o.substr(0, eq));
    const std::string value = trim(o.substr(eq + 1));
    if (key.find('.') == std::string::npos) {
      if (is_param(key) || key == "finesse") key = "params." + key;
      else if (is_constant(key)) key = "constants." + key;
    }
    std::erase_if(entries, [&](const ConfigEntry& e) { return e.key == key; });
    entries.push_back({key, value, 0});
  }

  RunConfig cfg;
  std::set<std::string> seen;
  std::map<std::string, double> given;  // physics parameters by name
  for (const auto& e : entries) {
    if (e.key != "sweep.axis" && !seen.insert(e.key).second)
      throw ConfigError("duplicate key '" + e.key + "'" + where(e));
    const auto dot = e.key.find('.');
    const std::string block = dot == std::string::npos ? "" : e.key.substr(0, dot);
    const std::string name = dot == std::string::npos ? e.key : e.key.substr(dot + 1);

    if (block == "params" && (is_param(name) || name == "finesse")) {
      given[name] = units::parse_quantity(e.value, units::dimension_of(name));
    } else if (block == "constants" && is_constant(name)) {
      cfg.params.constants.set(name, units::parse_quantity(e.value, units::dimension_of(name)));
    } else if (e.key == "models") {
      cfg.models.clear();
      std::istringstream in(e.value);
      for (std::string m; std::getline(in, m, ',');) cfg.models.push_back(model_kind_from_string(trim(m)));
    } else if (e.key == "seed") {
      cfg.seed = parse_count(e);
    } else if (e.key == "sweep.axis") {
      cfg.sweep.push_back(parse_axis(e));
    } else if (e.key == "sweep.subcommand") {
      cfg.sweep_subcommand = e.value;
    } else if (e.key == "sweep.workers") {
      cfg.workers = std::max<std::size_t>(1, parse_count(e));
    } else if (e.key == "output.format") {
      if (e.value != "csv" && e.value != "json")
        throw ConfigError("output.format must be csv or json" + where(e));
      cfg.format = e.value;
    } else if (e.key == "output.path") {
      cfg.output_path = e.value;
    } else if (e.key == "oracle.enabled") {
      cfg.oracle_enabled = parse_bool(e);
    } else if (e.key == "oracle.fock_cutoff") {
      cfg.fock_cutoff = parse_count(e);
    } else if (e.key == "oracle.samples") {
      cfg.mc_samples = parse_count(e);
    } else if (e.key == "feasibility.margin") {
      cfg.feasibility.margin = units::parse_quantity(e.value, units::Dimension::dimensionless);
    } else if (e.key == "feasibility.single_local_oscillator") {
      cfg.feasibility.single_local_oscillator = parse_bool(e);
    } else {
      throw ConfigError("unknown key '" + e.key + "'" + where(e));
    }
  }

  PhysParams& p = cfg.params;
  for (const auto& [name, v] : given)
    if (name == "finesse") cfg.finesse = v;
    else p.set(name, v);

  auto require = [&](const std::string& name) {
    if (!given.count(name)) throw ConfigError("missing required parameter '" + name + "'");
  };
  for (const char* name : {"omega_m", "M", "beta", "Qm", "T", "n_th", "dx", "Np"}) require(name);

  if (cfg.finesse) {
    if (!p.L) throw ConfigError("finesse needs the cavity length L");
    const double k = kappa_from_finesse(*p.L, *cfg.finesse, p.constants.c);
    if (given.count("kappa") && std::abs(p.kappa - k) > 0.01 * k)
      throw ConsistencyError("kappa disagrees with the value implied by finesse and L");
    p.kappa = k;
  } else {
    require("kappa");
  }

  if (!given.count("g0")) {
    if (!p.g0_from_cavity()) throw ConfigError("missing required parameter 'g0' (or omega_c and L)");
    p.g0 = *p.g0_from_cavity();
  }
  p = resolve_coupling(p);

  if (cfg.feasibility.single_local_oscillator) {
    if (given.count("tau")) throw ConfigError("tau is tied to kappa by single_local_oscillator");
    p.tau = std::log(2.0) / p.kappa;
  } else {
    require("tau");
  }

  p.validate();
  if (cfg.oracle_enabled && cfg.fock_cutoff < 16)
    throw ConfigError("oracle.fock_cutoff must be >= 16");
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return build_config(parse_config_text(text.str()), overrides);
}

}  // namespace ome
