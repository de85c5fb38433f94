#include <cmath>

#include "doctest.h"
#include "ome/error.hpp"
#include "ome/protocol.hpp"

using namespace ome;

namespace {

PhysParams kicked(double beta, double g0_tau) {
  PhysParams p = PhysParams::device();
  p.beta = beta;
  p.tau = 1e-7;
  p.g0 = g0_tau / p.tau;
  return p;
}

HybridState at(const PhysParams& p, double t) {
  return evolve(prepare_input(p, default_kmax(p.beta)), t, p);
}

}  // namespace

TEST_CASE("undisplaced input is the singlet") {
  const PhysParams p = kicked(0.0, 0.1);
  const HybridState s = prepare_input(p, default_kmax(0.0));
  CHECK(norm(s) == doctest::Approx(1.0).epsilon(1e-12));
  const DensityMatrix rho = reduced_optical_state(s);
  // Index 2 k + n_B: |1,0> is 2 and |0,1> is 1.
  CHECK(std::abs(rho(2, 2) - 0.5) < 1e-12);
  CHECK(std::abs(rho(1, 1) - 0.5) < 1e-12);
  CHECK(std::abs(rho(1, 2) + 0.5) < 1e-12);
  CHECK(std::abs(rho(0, 0)) < 1e-12);
}

TEST_CASE("displaced input photon statistics and entanglement") {
  const PhysParams p = kicked(2.0, 0.1);
  const HybridState s = prepare_input(p, default_kmax(2.0));
  double mean = 0.0, total = 0.0;
  for (const auto& b : s.branches) {
    mean += static_cast<double>(b.k) * std::norm(b.amp);
    total += std::norm(b.amp);
  }
  CHECK(mean / total == doctest::Approx(4.5).epsilon(1e-9));
  const DensityMatrix rho = reduced_optical_state(s);
  CHECK(negativity(rho, rho.dim() / 2, 2) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("kick labels follow the mechanical rotation") {
  const double g = 0.07;
  const PhysParams p = kicked(1.5, g);
  const double w = p.omega_m;
  const HybridState quarter = at(p, M_PI / (2 * w));
  for (const auto& b : quarter.branches) {
    const double k = static_cast<double>(b.k);
    CHECK(std::abs(b.mech.alpha - Complex(-g * k, 0.0)) < 1e-14);
    CHECK(b.mech.position_mean(p.x0()) == doctest::Approx(-2 * g * k * p.x0()).epsilon(1e-12));
  }
  for (const auto& b : at(p, M_PI / w).branches) {
    const double k = static_cast<double>(b.k);
    CHECK(b.mech.momentum_mean(p.p0()) == doctest::Approx(-2 * g * k * p.p0()).epsilon(1e-12));
  }
  for (const auto& b : at(p, 2 * M_PI / w).branches)
    CHECK(std::abs(b.mech.alpha - Complex(0.0, -g * static_cast<double>(b.k))) < 1e-13);
}

TEST_CASE("norm and family orthogonality survive the evolution") {
  for (double beta : {0.5, 2.0, 6.0}) {
    const PhysParams p = kicked(beta, 0.2);
    for (double frac : {0.0, 0.13, 0.25, 0.5, 0.77, 1.0}) {
      const HybridState s = at(p, frac * 2 * M_PI / p.omega_m);
      CHECK(std::abs(norm(s) - 1.0) < 1e-10);
      CHECK(std::abs(family_overlap(s)) < 1e-9);
    }
  }
}

TEST_CASE("evolution is a single kick from t = 0") {
  const PhysParams p = kicked(1.0, 0.1);
  const HybridState s = at(p, 1e-6);
  CHECK_THROWS_AS(evolve(s, 2e-6, p), ProtocolError);
  CHECK_THROWS_AS(evolve(prepare_input(p, default_kmax(1.0)), -1.0, p), ProtocolError);
}

TEST_CASE("ensemble mean position") {
  for (double beta : {0.0, 1.0, 3.0, 20.0}) {
    const double g = 0.03;
    const PhysParams p = kicked(beta, g);
    const HybridState s = at(p, M_PI / (2 * p.omega_m));
    const double expected = -g * (1 + 2 * beta * beta);
    CHECK(std::abs(ensemble_mean_position(s, p) / p.x0() - expected) < 1e-9);
  }
}

TEST_CASE("mechanical marginals") {
  SUBCASE("separation and width from the formula") {
    const double g = 0.01, beta = 150.0;
    const PhysParams p = kicked(beta, g);
    const auto [plus, minus] = mech_marginals(at(p, M_PI / (2 * p.omega_m)), p);
    CHECK(std::abs((minus.mean_position - plus.mean_position) / p.x0() - 6.0) < 1e-9);
    const double var = (1 + g * g * (1 + 4 * beta * beta)) * p.x0() * p.x0();
    CHECK(plus.variance == doctest::Approx(var).epsilon(1e-9));
    CHECK(minus.variance == doctest::Approx(var).epsilon(1e-9));
  }
  SUBCASE("beta = 0") {
    const double g = 0.2;
    const PhysParams p = kicked(0.0, g);
    const auto [plus, minus] = mech_marginals(at(p, M_PI / (2 * p.omega_m)), p);
    const double var = (1 + g * g) * p.x0() * p.x0();
    CHECK(plus.variance == doctest::Approx(var).epsilon(1e-12));
    CHECK(minus.variance == doctest::Approx(var).epsilon(1e-12));
  }
  SUBCASE("moments of the explicit Gaussian mixture") {
    const double g = 0.05, beta = 10.0;
    const PhysParams p = kicked(beta, g);
    const auto [plus, minus] = mech_marginals(at(p, M_PI / (2 * p.omega_m)), p);
    for (auto [m, sign] : {std::pair{plus, Sign::plus}, std::pair{minus, Sign::minus}}) {
      const auto a = displaced_amplitudes(beta, sign, default_kmax(beta));
      double w = 0, mean = 0, second = 0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double x = -2 * g * static_cast<double>(k);  // in units of x0
        w += a[k] * a[k];
        mean += a[k] * a[k] * x;
        second += a[k] * a[k] * (1 + x * x);
      }
      double wsum = 0;
      for (const auto& [k, pk] : m.weights) wsum += pk;
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(m.mean_position / p.x0() == doctest::Approx(mean / w).epsilon(1e-10));
      CHECK(m.variance / (p.x0() * p.x0()) ==
            doctest::Approx(second / w - mean * mean / (w * w)).epsilon(1e-10));
      CHECK(m.variance >= p.x0() * p.x0());
    }
  }
}

TEST_CASE("branches carry the stored kick strength") {
  const PhysParams p = kicked(2.0, 0.12);
  const double t = 0.3 / p.omega_m;
  const HybridState s = at(p, t);
  CHECK(s.g0_tau == doctest::Approx(0.12));
  const Complex alpha = kick_amplitude(0.12, p.omega_m, t);
  for (const auto& b : s.branches)
    CHECK(std::abs(b.mech.alpha - static_cast<double>(b.k) * alpha) < 1e-14);
}
