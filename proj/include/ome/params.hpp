#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ome/constants.hpp"

namespace ome {

/// Device and protocol scalars, SI base units throughout (rates in rad/s).
struct PhysParams {
  double g0 = 0.0;        // single-photon coupling
  double omega_m = 0.0;   // mechanical angular frequency
  double tau = 0.0;       // pulse duration
  double beta = 0.0;      // displacement amplitude (real)
  double kappa = 0.0;     // cavity decay rate
  double M = 0.0;         // effective mass
  std::optional<double> L;        // cavity length
  std::optional<double> omega_c;  // optical angular frequency
  double Qm = 0.0;        // mechanical quality factor
  double T = 0.0;         // bath temperature
  double n_th = 0.0;      // initial thermal occupation
  double dx = 0.0;        // std of the position-readout noise
  double Np = 0.0;        // photons in the readout pulse
  Constants constants{};

  double x0() const;  // sqrt(hbar / (2 M omega_m))
  double p0() const;  // sqrt(hbar M omega_m / 2)
  double g0_tau() const noexcept { return g0 * tau; }
  double g0_tau_beta() const noexcept { return g0 * tau * beta; }

  // g0 = (omega_c / L) x0, available when both omega_c and L are set.
  std::optional<double> g0_from_cavity() const;

  // Throws ConfigError on violated invariants; returns soft warnings.
  std::vector<std::string> validate() const;

  static const std::vector<std::string>& field_names();
  double get(const std::string& name) const;
  void set(const std::string& name, double value);

  /// The reference device: 20 kHz, 60 ng mirror in a 0.5 cm cavity of
  /// finesse 8000, pulse tau = ln2/kappa, 4 g0 tau beta = 6.
  static PhysParams device();

  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

/// kappa = pi c / (2 L F), half-width convention.
double kappa_from_finesse(double length, double finesse, double c = Constants{}.c);

}  // namespace ome
