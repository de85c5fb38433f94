#include "ome/constants.hpp"

#include <cmath>

#include "ome/error.hpp"

namespace ome {

double Constants::planck_mass() const { return std::sqrt(hbar * c / G); }

void Constants::validate() const {
  for (const auto& name : field_names()) {
    const double v = get(name);
    if (!std::isfinite(v) || v <= 0.0)
      throw ConfigError("constant '" + name + "' must be positive and finite");
  }
}

const std::vector<std::string>& Constants::field_names() {
  static const std::vector<std::string> names = {
      "hbar", "k_b", "G", "c", "nucleon_mass", "nucleus_mass", "nucleus_radius"};
  return names;
}

double Constants::get(const std::string& name) const {
  if (name == "hbar") return hbar;
  if (name == "k_b") return k_b;
  if (name == "G") return G;
  if (name == "c") return c;
  if (name == "nucleon_mass") return nucleon_mass;
  if (name == "nucleus_mass") return nucleus_mass;
  if (name == "nucleus_radius") return nucleus_radius;
  throw ConfigError("unknown constant '" + name + "'");
}

void Constants::set(const std::string& name, double value) {
  if (name == "hbar") hbar = value;
  else if (name == "k_b") k_b = value;
  else if (name == "G") G = value;
  else if (name == "c") c = value;
  else if (name == "nucleon_mass") nucleon_mass = value;
  else if (name == "nucleus_mass") nucleus_mass = value;
  else if (name == "nucleus_radius") nucleus_radius = value;
  else throw ConfigError("unknown constant '" + name + "'");
}

}  // namespace ome
