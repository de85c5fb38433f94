#pragma once

// Measurement statistics: homodyne sign on B, coarse-grained mirror position,
// the conditional optical state after a position readout and the
// feedback / undisplacement / interference pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ome/params.hpp"
#include "ome/pointer.hpp"
#include "ome/protocol.hpp"

namespace ome {

enum class CorrelationMethod { exact, closed_form };

std::string to_string(CorrelationMethod m);

/// Joint sign statistics. p_pm is P(B = +1, M = -1).
struct CorrelationResult {
  double p_pp = 0.25;
  double p_pm = 0.25;
  double p_mp = 0.25;
  double p_mm = 0.25;
  double correlation = 0.0;
  CorrelationMethod method = CorrelationMethod::exact;
  friend bool operator==(const CorrelationResult&, const CorrelationResult&) = default;
};

/// Largest beta for which the exact k-sum is used by `correlations`.
inline constexpr double kExactBetaLimit = 300.0;

/// Exact sum over photon number of homodyne-sign x position-sign
/// probabilities. The mirror position of branch k is Gaussian with variance
/// x0^2 (1 + 2 n_th) + dx^2, thresholded at the ensemble mean.
CorrelationResult joint_probabilities_exact(const HybridState& state, const PhysParams& params);

/// (2/pi) g / sqrt(1 + n_th + g^2 + dx^2 / (4 x0^2)), g = g0 tau beta.
/// Meant for beta >> 1.
double correlation_closed_form(const PhysParams& params);

/// Sign probabilities consistent with the closed-form correlation.
CorrelationResult closed_form_probabilities(const PhysParams& params);

/// Exact engine for beta <= kExactBetaLimit, closed form above.
CorrelationResult correlations(const PhysParams& params);

/// Output of a position readout y at t = n pi / omega_m.
struct ConditionalState {
  std::vector<Branch> branches;  // mechanical labels cleared
  double density = 0.0;          // probability density of y (1/m)
  double estimate = 0.0;         // posterior mean of the true position
  double residual_phase_std = 0.0;  // per unit photon number
};

ConditionalState project_position(const HybridState& state, double y, const PhysParams& params);

/// Std of the phase error per photon left after feedback on the readout.
double residual_phase_std(const PhysParams& params);

/// Same quantity estimated from `samples` simulated readouts.
double sample_residual_phase_std(const PhysParams& params, std::size_t samples,
                                 std::uint64_t seed);

struct InterferenceResult {
  double visibility = 1.0;            // pooled per-outcome fringe visibility
  double coherence_visibility = 1.0;  // 2|<01|rho|10>| of the outcome-averaged state
  double p00 = 0.0;
  double p01 = 0.5;
  double p10 = 0.5;
  double p11 = 0.0;
  double negativity_lb = 0.5;
  friend bool operator==(const InterferenceResult&, const InterferenceResult&) = default;
};

/// Populations restricted to the <= 1-photon subspace are renormalized.
/// Injected phase noise needs beta <= kFourierBetaLimit.
InterferenceResult visibility_pipeline(const PhysParams& params,
                                       const std::optional<PointerDistribution>& noise = {});

inline constexpr double kFourierBetaLimit = 1000.0;

/// 1/2 (sqrt((p00 - p11)^2 + (V (p01 + p10))^2) - (p00 + p11)), floored at 0.
double negativity_lower_bound(double p00, double p01, double p10, double p11, double visibility);

/// Cosine coefficients c_0..c_nmax of the even 2 pi-periodic function
/// g^m exp(-g), g = 2 beta^2 (1 - cos phi).
std::vector<double> displaced_fringe_coefficients(double beta, int m, std::size_t nmax);

std::size_t fringe_harmonics(double beta);

}  // namespace ome
