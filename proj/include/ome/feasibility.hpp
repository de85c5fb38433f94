#pragma once

// Device-design arithmetic: derived scales, error budgets, constraint flags
// and which collapse models the device could distinguish from the
// environment.

#include <string>
#include <utility>
#include <vector>

#include "ome/decoherence.hpp"
#include "ome/params.hpp"

namespace ome {

struct FeasibilityOptions {
  double margin = 10.0;                  // factor used for ">>" and "<<"
  bool single_local_oscillator = false;  // tie tau to the readout pulse, tau = ln2 / kappa
};

struct ConstraintFlag {
  std::string name;
  bool passed = false;
  std::string detail;
  friend bool operator==(const ConstraintFlag&, const ConstraintFlag&) = default;
};

struct FeasibilityReport {
  double x0 = 0.0;
  double p0 = 0.0;
  double g0 = 0.0;
  double tau = 0.0;
  double g0_over_omega_m = 0.0;
  double macroscopicity = 0.0;  // 4 g0 tau beta
  double correlation_target = 0.0;
  double epsilon_nl = 0.0;
  double dx_over_x0 = 0.0;
  double phase_spread = 0.0;    // residual phase std of the readout chain
  double epsilon_bar = 0.0;     // 1.5 (phase_spread beta)^4
  double epsilon_bar_rule = 0.0;  // 2e-35 kappa^2 beta^4
  double n_eff = 0.0;
  double Np_max = 0.0;
  double eid_condition_T_max = 0.0;  // for one half period
  std::vector<std::pair<ModelKind, double>> timescales;
  std::vector<ConstraintFlag> constraint_flags;
  friend bool operator==(const FeasibilityReport&, const FeasibilityReport&) = default;
};

/// Throws ConsistencyError when g0 and (omega_c, L) are both given and
/// disagree by more than 1%.
PhysParams resolve_coupling(const PhysParams& params);

FeasibilityReport derive(const PhysParams& params, const FeasibilityOptions& opts = {});

/// Photons per pulse allowed by a 10 mW saturation power.
double photon_budget(double kappa);

/// Occupation after pulsed cooling with Np-photon pulses.
double cooled_occupation(double g0, double kappa, double Np);

struct TestabilityEntry {
  ModelKind model = ModelKind::eid;
  double timescale = 0.0;
  double rate = 0.0;
  double deficit_at_probe = 0.0;
  bool testable = false;
  friend bool operator==(const TestabilityEntry&, const TestabilityEntry&) = default;
};

/// Sorted by decreasing rate.
std::vector<TestabilityEntry> testability(const PhysParams& params,
                                          const std::vector<DecoherenceModel>& models,
                                          double probe_time);

}  // namespace ome
