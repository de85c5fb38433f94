#pragma once

// Brute-force reference engine. Every mode lives in a truncated Fock space;
// displacements and the optomechanical kick are matrix exponentials, and
// quadrature / position measurements are integrated over Hermite
// wavefunctions. Slow, small beta only; used to validate the label engine.

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "ome/measurement.hpp"
#include "ome/params.hpp"
#include "ome/pointer.hpp"
#include "ome/qcore.hpp"

namespace ome::oracle {

inline constexpr std::size_t kDefaultCutoff = 60;

Eigen::MatrixXcd annihilation(std::size_t cutoff);

/// exp(alpha a^dag - alpha^* a) in the truncated space.
Eigen::MatrixXcd displacement(Complex alpha, std::size_t cutoff);

/// Harmonic-oscillator eigenfunctions psi_0..psi_{n-1} at quadrature X.
Eigen::VectorXd hermite_functions(double x, std::size_t n);

/// Joint state of A (cutoff), B (2 levels) and M (cutoff) after the kick and
/// a free evolution t; index (k * 2 + b) * cutoff + m.
Eigen::VectorXcd hybrid_state(const PhysParams& params, double t,
                              std::size_t cutoff = kDefaultCutoff);

/// Same with the mirror starting in the coherent state |gamma>.
Eigen::VectorXcd hybrid_state(const PhysParams& params, double t, Complex gamma,
                              std::size_t cutoff);

/// rho_AB with the mirror traced out, index 2 k + n_B.
Eigen::MatrixXcd reduced_optical_state(const Eigen::VectorXcd& psi, std::size_t cutoff);

/// Homodyne-sign x position-sign statistics at t = pi / (2 omega_m).
/// Thermal mirrors are sampled from the P representation with `samples` draws.
CorrelationResult joint_probabilities(const PhysParams& params,
                                      std::size_t cutoff = kDefaultCutoff,
                                      std::size_t samples = 400, std::uint64_t seed = 1);

/// rho_AB after feedback with residual phase phi, dephasing by `noise` and
/// undisplacement; full truncated space.
Eigen::MatrixXcd conditional_state(double beta, double phi, const PointerDistribution& noise,
                                   std::size_t cutoff = kDefaultCutoff);

struct OracleInterference {
  InterferenceResult result;
  double mean_negativity = 0.0;  // outcome-averaged negativity of the conditional states
};

/// Interference statistics averaged over residual phases phi ~ N(0, sigma^2).
OracleInterference interference(double beta, double sigma,
                                const PointerDistribution& noise = PointerDistribution::identity(),
                                std::size_t cutoff = kDefaultCutoff);

}  // namespace ome::oracle
