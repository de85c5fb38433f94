#include <cmath>

#include "doctest.h"
#include "ome/decoherence.hpp"
#include "ome/oracle.hpp"
#include "ome/protocol.hpp"

using namespace ome;

namespace {

PhysParams point(double beta, double g0_tau, double n_th = 0.0, double dx_over_x0 = 0.0) {
  PhysParams p = PhysParams::device();
  p.beta = beta;
  p.tau = 1e-7;
  p.g0 = g0_tau / p.tau;
  p.n_th = n_th;
  p.dx = dx_over_x0 * p.x0();
  return p;
}

}  // namespace

TEST_CASE("truncated-space building blocks") {
  const std::size_t n = 50;
  const Eigen::MatrixXcd a = oracle::annihilation(n);
  CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(a(6, 7) - std::sqrt(7.0)) < 1e-14);
  const Eigen::MatrixXcd d = oracle::displacement(Complex(0.8, -0.3), n);
  // Unitary away from the truncation edge.
  const Eigen::MatrixXcd u = (d.adjoint() * d).topLeftCorner(20, 20);
  CHECK((u - Eigen::MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-12);
  const Complex alpha(0.8, -0.3);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(std::abs(d(k, 0) - amp) < 1e-12);
    amp *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
}

TEST_CASE("Hermite functions are orthonormal") {
  const std::size_t n = 12;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  const double h = 0.01;
  for (double x = -12.0; x <= 12.0; x += h) {
    const Eigen::VectorXd v = oracle::hermite_functions(x, n);
    gram += h * v * v.transpose();
  }
  CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("displaced input carries half a unit of negativity") {
  const PhysParams p = point(2.0, 0.0);
  const Eigen::VectorXcd psi = oracle::hybrid_state(p, 0.0, 40);
  CHECK(psi.squaredNorm() == doctest::Approx(1.0).epsilon(1e-9));
  const Eigen::MatrixXcd rho = oracle::reduced_optical_state(psi, 40);
  CHECK(negativity(DensityMatrix(rho), rho.rows() / 2, 2) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("label engine matches the brute-force states") {
  for (auto [beta, g0_tau] : {std::pair{0.5, 0.3}, std::pair{1.0, 0.2}, std::pair{3.0, 0.1}}) {
    const PhysParams p = point(beta, g0_tau);
    for (double frac : {0.25, 0.5, 0.9}) {
      const double t = frac * 2 * M_PI / p.omega_m;
      const HybridState s = evolve(prepare_input(p, default_kmax(beta)), t, p);
      const Eigen::VectorXcd o = oracle::hybrid_state(p, t, 60);
      CHECK(norm(s) == doctest::Approx(o.squaredNorm()).epsilon(1e-7));
      const DensityMatrix rho = reduced_optical_state(s);
      const Eigen::MatrixXcd rho_o = oracle::reduced_optical_state(o, 60);
      const Eigen::Index d = std::min<Eigen::Index>(rho.dim(), rho_o.rows());
      CHECK((rho.entries().topLeftCorner(d, d) - rho_o.topLeftCorner(d, d)).cwiseAbs().maxCoeff() <
            1e-7);
    }
  }
}

TEST_CASE("joint probabilities against the brute force") {
  for (auto [beta, g0_tau, r] : {std::tuple{0.5, 0.3, 0.0}, std::tuple{2.0, 0.2, 0.7},
                                 std::tuple{3.0, 0.05, 1.5}}) {
    const PhysParams p = point(beta, g0_tau, 0.0, r);
    const HybridState s = evolve(prepare_input(p, default_kmax(beta)), M_PI / (2 * p.omega_m), p);
    const CorrelationResult e = joint_probabilities_exact(s, p);
    const CorrelationResult o = oracle::joint_probabilities(p, 60);
    CHECK(std::abs(e.p_pp - o.p_pp) < 1e-6);
    CHECK(std::abs(e.p_pm - o.p_pm) < 1e-6);
    CHECK(std::abs(e.p_mp - o.p_mp) < 1e-6);
    CHECK(std::abs(e.p_mm - o.p_mm) < 1e-6);
  }
}

TEST_CASE("thermal mirror sampling agrees statistically") {
  const PhysParams p = point(1.0, 0.2, 0.5, 0.5);
  const HybridState s = evolve(prepare_input(p, default_kmax(1.0)), M_PI / (2 * p.omega_m), p);
  const CorrelationResult e = joint_probabilities_exact(s, p);
  const std::size_t samples = 1000;
  const CorrelationResult o = oracle::joint_probabilities(p, 30, samples, 3);
  CHECK(std::abs(e.correlation - o.correlation) < 5.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("interference statistics against the brute force") {
  for (auto [beta, g0_tau, r] : {std::tuple{1.0, 0.3, 1.0}, std::tuple{2.0, 0.2, 0.8},
                                 std::tuple{3.0, 0.1, 2.0}}) {
    const PhysParams p = point(beta, g0_tau, 0.0, r);
    const InterferenceResult e = visibility_pipeline(p);
    const auto o = oracle::interference(beta, residual_phase_std(p));
    CHECK(e.visibility < 0.999);
    CHECK(std::abs(e.visibility - o.result.visibility) < 1e-6);
    CHECK(std::abs(e.coherence_visibility - o.result.coherence_visibility) < 1e-6);
    CHECK(std::abs(e.p01 - o.result.p01) < 1e-6);
    CHECK(std::abs(e.p00 - o.result.p00) < 1e-6);
    CHECK(std::abs(e.negativity_lb - o.result.negativity_lb) < 1e-6);
    // The bound never exceeds the averaged negativity of the conditional states.
    CHECK(e.negativity_lb <= o.mean_negativity + 1e-9);
  }
}

TEST_CASE("dephasing channel against the brute force") {
  const auto noise = PointerDistribution::gaussian_phase(0.05);
  const double channel = oracle::interference(2.0, 0.0, noise).result.coherence_visibility;
  CHECK(std::abs(phase_noise_x_space(noise, 2.0).visibility - channel) < 1e-6);
  CHECK(std::abs(phase_noise_phi_space(noise, 2.0).visibility - channel) < 1e-6);
  CHECK(channel < 0.99);
}
