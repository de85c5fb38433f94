#include "ome/witness.hpp"

#include <algorithm>
#include <cmath>

namespace ome {

std::string to_string(Verdict v) { return v == Verdict::entangled ? "entangled" : "inconclusive"; }

double o_bm(const CorrelationResult& c) {
  auto safe = [](double p) { return std::max(0.0, p); };
  return std::sqrt(safe(c.p_pp) * safe(c.p_mp)) + std::sqrt(safe(c.p_pm) * safe(c.p_mm));
}

double refined_bound(const PhysParams& params) {
  const double g = params.g0_tau_beta();
  return 1.0 / (2.0 * std::sqrt(1.0 + 0.5 * g * g));
}

WitnessReport verdict(const InterferenceResult& interference, const CorrelationResult& correlations,
                      const PhysParams& params) {
  WitnessReport r;
  r.negativity_lb = interference.negativity_lb;
  r.o_bm = o_bm(correlations);
  r.refined_bound = refined_bound(params);
  r.verdict = r.negativity_lb > r.o_bm ? Verdict::entangled : Verdict::inconclusive;
  r.correlations = correlations;
  r.interference = interference;
  return r;
}

WitnessReport evaluate_witness(const PhysParams& params) {
  return verdict(visibility_pipeline(params), correlations(params), params);
}

}  // namespace ome
