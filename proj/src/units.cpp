#include "ome/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "ome/error.hpp"

namespace ome::units {

namespace {

struct Unit {
  std::string_view symbol;
  Dimension dim;
  double scale;
};

constexpr double kTwoPi = 6.283185307179586;

// Hz-family symbols are angular rates after the 2 pi conversion.
constexpr Unit kUnits[] = {
    {"Hz", Dimension::angular_rate, kTwoPi},     {"kHz", Dimension::angular_rate, kTwoPi * 1e3},
    {"MHz", Dimension::angular_rate, kTwoPi * 1e6}, {"GHz", Dimension::angular_rate, kTwoPi * 1e9},
    {"THz", Dimension::angular_rate, kTwoPi * 1e12}, {"rad/s", Dimension::angular_rate, 1.0},
    {"s", Dimension::time, 1.0},    {"ms", Dimension::time, 1e-3},  {"us", Dimension::time, 1e-6},
    {"ns", Dimension::time, 1e-9},  {"ps", Dimension::time, 1e-12},
    {"kg", Dimension::mass, 1.0},   {"g", Dimension::mass, 1e-3},   {"mg", Dimension::mass, 1e-6},
    {"ug", Dimension::mass, 1e-9},  {"ng", Dimension::mass, 1e-12}, {"pg", Dimension::mass, 1e-15},
    {"fg", Dimension::mass, 1e-18},
    {"m", Dimension::length, 1.0},  {"cm", Dimension::length, 1e-2}, {"mm", Dimension::length, 1e-3},
    {"um", Dimension::length, 1e-6}, {"nm", Dimension::length, 1e-9}, {"pm", Dimension::length, 1e-12},
    {"fm", Dimension::length, 1e-15},
    {"K", Dimension::temperature, 1.0},  {"mK", Dimension::temperature, 1e-3},
    {"uK", Dimension::temperature, 1e-6}, {"nK", Dimension::temperature, 1e-9},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::angular_rate: return "angular rate";
    case Dimension::time: return "time";
    case Dimension::mass: return "mass";
    case Dimension::length: return "length";
    case Dimension::temperature: return "temperature";
    case Dimension::other: return "SI";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension expected) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || !std::isfinite(value))
    throw ConfigError("not a number: '" + std::string(text) + "'");
  const std::string_view unit = trim(std::string_view(end, static_cast<std::size_t>(s.data() + s.size() - end)));
  if (unit.empty()) return value;
  for (const Unit& u : kUnits) {
    if (u.symbol != unit) continue;
    if (u.dim != expected)
      throw ConfigError("unit '" + std::string(unit) + "' is a " +
                        std::string(dimension_name(u.dim)) + ", expected " +
                        std::string(dimension_name(expected)));
    return value * u.scale;
  }
  throw ConfigError("unknown unit '" + std::string(unit) + "' in '" + std::string(text) + "'");
}

Dimension dimension_of(std::string_view name) {
  if (name == "g0" || name == "omega_m" || name == "kappa" || name == "omega_c")
    return Dimension::angular_rate;
  if (name == "tau") return Dimension::time;
  if (name == "M" || name == "nucleon_mass" || name == "nucleus_mass") return Dimension::mass;
  if (name == "L" || name == "dx" || name == "nucleus_radius") return Dimension::length;
  if (name == "T") return Dimension::temperature;
  if (name == "beta" || name == "Qm" || name == "n_th" || name == "Np" || name == "finesse")
    return Dimension::dimensionless;
  return Dimension::other;
}

}  // namespace ome::units
