#pragma once

#include <string>
#include <vector>

namespace ome {

// CODATA 2018 values in SI base units. Every field can be overridden from a
// run config; the Planck mass is always derived.
struct Constants {
  double hbar = 1.054571817e-34;        // J s
  double k_b = 1.380649e-23;            // J / K
  double G = 6.67430e-11;               // m^3 / (kg s^2)
  double c = 299792458.0;               // m / s
  double nucleon_mass = 1.6726e-27;     // kg
  double nucleus_mass = 73.0 * 1.6726e-27;  // kg, Z of tantalum times nucleon mass
  double nucleus_radius = 1e-15;        // m

  double planck_mass() const;

  // Throws ConfigError if any constant is non-positive or non-finite.
  void validate() const;

  static const std::vector<std::string>& field_names();
  double get(const std::string& name) const;
  void set(const std::string& name, double value);

  friend bool operator==(const Constants&, const Constants&) = default;
};

}  // namespace ome
