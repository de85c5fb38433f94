#pragma once

// Localization kernels of environmental decoherence and of two collapse
// models, the pointer they induce on the photon number of A, and the
// resulting loss of interference visibility.

#include <string>

#include "ome/params.hpp"
#include "ome/pointer.hpp"

namespace ome {

enum class ModelKind { eid, qg, gic };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct DecoherenceModel {
  ModelKind kind = ModelKind::eid;
  double T = 0.0;    // bath temperature (eid)
  double Qm = 0.0;   // mechanical quality factor (eid)
  double a = 0.0;    // nuclear radius (gic)
  double m_n = 0.0;  // nucleus mass (gic)
  Constants constants{};

  static DecoherenceModel eid(double T, double Qm, const Constants& c = {});
  static DecoherenceModel qg(const Constants& c = {});
  static DecoherenceModel gic(const Constants& c = {});
  /// Model parameters taken from params (T, Qm) and its constants.
  static DecoherenceModel from_params(ModelKind kind, const PhysParams& params);

  void validate() const;
};

/// Localization rate for a superposition of positions delta_x apart.
double gamma(const DecoherenceModel& model, double delta_x, const PhysParams& params);

/// gamma(dx) = c2 dx^2 for small dx; exact for eid and qg.
double gamma_curvature(const DecoherenceModel& model, const PhysParams& params);

/// (1/pi) int_0^pi gamma(amplitude sin(theta)) dtheta.
double gamma_orbit_average(const DecoherenceModel& model, double amplitude,
                           const PhysParams& params);

/// Pointer after n half periods of free evolution, t = n pi / omega_m.
PointerDistribution pointer_distribution(const DecoherenceModel& model, const PhysParams& params,
                                         int n_half_periods);

enum class NoiseRoute { x_space, phi_space };

struct PhaseNoiseResult {
  double visibility = 1.0;
  double lower = 1.0;  // interval estimate; equal to visibility when converged
  double upper = 1.0;
  bool converged = true;
  NoiseRoute route = NoiseRoute::x_space;
};

/// |sum_n c_n xi(n)|, c_n the Fourier coefficients of the displaced fringe.
/// Needs beta <= kFourierBetaLimit.
PhaseNoiseResult phase_noise_x_space(const PointerDistribution& pointer, double beta);

/// |int dphi xi~(phi) f(phi)| with xi~ from a numeric cosine transform.
PhaseNoiseResult phase_noise_phi_space(const PointerDistribution& pointer, double beta);

/// x-space route where available, phi-space above.
PhaseNoiseResult apply_phase_noise(const PointerDistribution& pointer, double beta);

struct DecayResult {
  double deficit = 0.0;  // 1 - V from the small-noise expansion
  bool valid = true;     // deficit < kDecayValidityLimit
};

inline constexpr double kDecayValidityLimit = 0.5;

DecayResult visibility_decay(const DecoherenceModel& model, const PhysParams& params,
                             int n_half_periods);

/// 1 / gamma(2 g0 tau beta x0).
double timescale(const DecoherenceModel& model, const PhysParams& params);

}  // namespace ome
