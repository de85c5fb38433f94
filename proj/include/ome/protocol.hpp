#pragma once

// Optical input state, impulsive optomechanical kick and free mechanical
// rotation. The mirror is never expanded in Fock space here: each branch
// carries the coherent label of its mechanical component.

#include <cstddef>
#include <utility>
#include <vector>

#include "ome/params.hpp"
#include "ome/qcore.hpp"

namespace ome {

/// One term |k>_A |b>_B |mech>_M of the hybrid state. `qubit` labels the
/// |+>/|-> basis state of mode B.
struct Branch {
  std::size_t k = 0;
  Sign qubit = Sign::plus;
  Complex amp{};
  CoherentLabel mech{};
};

struct HybridState {
  std::vector<Branch> branches;
  double time = 0.0;
  bool kicked = false;
  double g0_tau = 0.0;  // interaction strength of the kick, once applied
  std::size_t kmax = 0;
};

/// alpha(t) = -i g0 tau exp(-i omega_m t); photon number k carries k alpha(t).
Complex kick_amplitude(double g0_tau, double omega_m, double t) noexcept;

/// (D(beta)|+>_A |->_B - D(beta)|->_A |+>_B)/sqrt(2), mirror in |0>.
/// The |->_B branches carry +a_beta^(+)(k)/sqrt(2).
HybridState prepare_input(const PhysParams& params, std::size_t kmax);

/// Kick at t = 0 followed by free rotation up to t.
HybridState evolve(const HybridState& state, double t, const PhysParams& params);

Complex inner_product(const HybridState& lhs, const HybridState& rhs);
double norm(const HybridState& state);

/// <+ family | - family> on A (x) M, B stripped, each family unit normalized.
Complex family_overlap(const HybridState& state);

struct MechMarginal {
  std::vector<std::pair<std::size_t, double>> weights;
  std::vector<CoherentLabel> labels;
  double mean_position = 0.0;
  double variance = 0.0;
};

/// Position statistics of rho_M^(+) and rho_M^(-) at the state's time.
std::pair<MechMarginal, MechMarginal> mech_marginals(const HybridState& state,
                                                     const PhysParams& params);

/// Ensemble mean of the mirror position over both families.
double ensemble_mean_position(const HybridState& state, const PhysParams& params);

/// rho_AB with the mirror traced out; B in its Fock basis {|0>, |1>}.
/// Index = 2 k + n_B.
DensityMatrix reduced_optical_state(const HybridState& state);

}  // namespace ome
