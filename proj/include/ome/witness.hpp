#pragma once

// Entanglement between the optical modes and the mirror, certified when the
// A-B negativity bound beats the separability ceiling set by B-M statistics.

#include <string>

#include "ome/measurement.hpp"
#include "ome/params.hpp"

namespace ome {

enum class Verdict { entangled, inconclusive };

std::string to_string(Verdict v);

struct WitnessReport {
  double negativity_lb = 0.0;
  double o_bm = 0.5;
  double refined_bound = 0.5;  // informational only
  Verdict verdict = Verdict::inconclusive;
  CorrelationResult correlations{};
  InterferenceResult interference{};
  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

/// sqrt(P_{+E+} P_{-E+}) + sqrt(P_{+E-} P_{-E-}).
double o_bm(const CorrelationResult& c);

/// 1 / (2 sqrt(1 + (g0 tau beta)^2 / 2)); valid for beta >> 1.
double refined_bound(const PhysParams& params);

/// Entangled iff negativity_lb > o_bm, strictly.
WitnessReport verdict(const InterferenceResult& interference, const CorrelationResult& correlations,
                      const PhysParams& params);

/// Correlations and interference computed from params, then judged.
WitnessReport evaluate_witness(const PhysParams& params);

}  // namespace ome
