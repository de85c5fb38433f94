#include "ome/params.hpp"

#include <cmath>
#include <sstream>

#include "ome/error.hpp"

namespace ome {

double PhysParams::x0() const { return std::sqrt(constants.hbar / (2.0 * M * omega_m)); }

double PhysParams::p0() const { return std::sqrt(constants.hbar * M * omega_m / 2.0); }

std::optional<double> PhysParams::g0_from_cavity() const {
  if (!omega_c || !L) return std::nullopt;
  return (*omega_c / *L) * x0();
}

std::vector<std::string> PhysParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid parameter: ") + what);
  };
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(g0) && g0 >= 0.0, "g0 must be >= 0");
  require(finite(omega_m) && omega_m > 0.0, "omega_m must be > 0");
  require(finite(tau) && tau > 0.0, "tau must be > 0");
  require(finite(beta) && beta >= 0.0, "beta must be >= 0");
  require(finite(kappa) && kappa > 0.0, "kappa must be > 0");
  require(finite(M) && M > 0.0, "M must be > 0");
  require(!L || (finite(*L) && *L > 0.0), "L must be > 0");
  require(!omega_c || (finite(*omega_c) && *omega_c > 0.0), "omega_c must be > 0");
  require(finite(Qm) && Qm > 0.0, "Qm must be > 0");
  require(finite(T) && T > 0.0, "T must be > 0");
  require(finite(n_th) && n_th >= 0.0, "n_th must be >= 0");
  require(finite(dx) && dx >= 0.0, "dx must be >= 0");
  require(finite(Np) && Np > 0.0, "Np must be > 0");
  constants.validate();

  std::vector<std::string> warnings;
  if (omega_m * tau > 0.1) {
    std::ostringstream msg;
    msg << "omega_m * tau = " << omega_m * tau << " > 0.1: outside the pulsed regime";
    warnings.push_back(msg.str());
  }
  return warnings;
}

const std::vector<std::string>& PhysParams::field_names() {
  static const std::vector<std::string> names = {
      "g0", "omega_m", "tau", "beta", "kappa", "M", "L",
      "omega_c", "Qm", "T", "n_th", "dx", "Np"};
  return names;
}

double PhysParams::get(const std::string& name) const {
  if (name == "g0") return g0;
  if (name == "omega_m") return omega_m;
  if (name == "tau") return tau;
  if (name == "beta") return beta;
  if (name == "kappa") return kappa;
  if (name == "M") return M;
  if (name == "L") return L.value_or(std::nan(""));
  if (name == "omega_c") return omega_c.value_or(std::nan(""));
  if (name == "Qm") return Qm;
  if (name == "T") return T;
  if (name == "n_th") return n_th;
  if (name == "dx") return dx;
  if (name == "Np") return Np;
  throw ConfigError("unknown parameter '" + name + "'");
}

void PhysParams::set(const std::string& name, double value) {
  if (name == "g0") g0 = value;
  else if (name == "omega_m") omega_m = value;
  else if (name == "tau") tau = value;
  else if (name == "beta") beta = value;
  else if (name == "kappa") kappa = value;
  else if (name == "M") M = value;
  else if (name == "L") L = value;
  else if (name == "omega_c") omega_c = value;
  else if (name == "Qm") Qm = value;
  else if (name == "T") T = value;
  else if (name == "n_th") n_th = value;
  else if (name == "dx") dx = value;
  else if (name == "Np") Np = value;
  else throw ConfigError("unknown parameter '" + name + "'");
}

double kappa_from_finesse(double length, double finesse, double c) {
  return M_PI * c / (2.0 * length * finesse);
}

PhysParams PhysParams::device() {
  PhysParams p;
  p.omega_m = 2.0 * M_PI * 20e3;
  p.M = 60e-12;
  p.L = 0.5e-2;
  // Optical frequency chosen so that g0 / omega_m = 5e-3 (lambda ~ 1.585 um).
  p.omega_c = 2.0 * M_PI * 189.1e12;
  p.g0 = *p.g0_from_cavity();
  p.kappa = kappa_from_finesse(*p.L, 8000.0, p.constants.c);
  p.tau = std::log(2.0) / p.kappa;
  p.beta = 1.5 / (p.g0 * p.tau);
  p.Np = 4e9;
  p.Qm = 1e6;
  p.T = 0.8;
  // Readout precision of a pulse of Np photons, expressed as a real-space std.
  p.dx = std::sqrt(2.0) * p.x0() * p.kappa / (std::sqrt(5.0) * p.g0 * std::sqrt(p.Np));
  // Occupation after two pulsed cooling steps with the same pulses.
  const double r = p.kappa * p.kappa / (p.g0 * p.g0 * p.Np);
  p.n_th = 0.5 * (std::sqrt(1.0 + r * r) - 1.0);
  return p;
}

}  // namespace ome
