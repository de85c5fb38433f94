#include <cmath>
#include <random>

#include "doctest.h"
#include "ome/qcore.hpp"
#include "ome/witness.hpp"

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

Eigen::MatrixXcd random_state(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  const int rank = 1 + static_cast<int>(rng() % d);
  Eigen::MatrixXcd a(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Homodyne sign on a mode restricted to {|0>, |1>}: E+ = 1/2 + (|0><1| + h.c.) / sqrt(2 pi).
double homodyne_plus(const Eigen::Matrix2cd& rho_b) {
  return 0.5 + 2.0 * rho_b(0, 1).real() / std::sqrt(2.0 * M_PI);
}

}  // namespace

TEST_CASE("o_bm reference values") {
  CHECK(o_bm({0.25, 0.25, 0.25, 0.25, 0.0, CorrelationMethod::exact}) == doctest::Approx(0.5));
  PhysParams far = point(1e5, 1e3 / 1e5);
  CHECK(o_bm(closed_form_probabilities(far)) ==
        doctest::Approx(0.5 * std::sqrt(1 - 4 / (M_PI * M_PI))).epsilon(1e-5));
  CHECK(0.5 * std::sqrt(1 - 4 / (M_PI * M_PI)) == doctest::Approx(0.3856).epsilon(1e-3));
}

TEST_CASE("o_bm label symmetry") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    double q[4];
    double s = 0;
    for (double& x : q) s += (x = u(rng));
    for (double& x : q) x /= s;
    const CorrelationResult c{q[0], q[1], q[2], q[3], 0.0, CorrelationMethod::exact};
    const CorrelationResult swapped{q[3], q[2], q[1], q[0], 0.0, CorrelationMethod::exact};
    CHECK(o_bm(c) == doctest::Approx(o_bm(swapped)).epsilon(1e-14));
    CHECK(o_bm(c) >= 0.0);
    CHECK(o_bm(c) <= 1.0);
  }
}

TEST_CASE("refined bound") {
  CHECK(refined_bound(point(0.0, 0.1)) == doctest::Approx(0.5));
  CHECK(refined_bound(point(100.0, 0.015)) == doctest::Approx(1 / (2 * std::sqrt(2.125))).epsilon(1e-12));
  CHECK(refined_bound(point(1e6, 1.0)) < 1e-5);
}

TEST_CASE("verdict is a strict comparison") {
  const PhysParams p = point(2.0, 0.1);
  InterferenceResult ideal;
  ideal.p00 = ideal.p11 = 0.0;
  ideal.p01 = ideal.p10 = 0.5;
  ideal.visibility = ideal.coherence_visibility = 1.0;
  ideal.negativity_lb = 0.5;
  CorrelationResult strong{0.4, 0.1, 0.1, 0.4, 0.6, CorrelationMethod::exact};
  const WitnessReport yes = verdict(ideal, strong, p);
  CHECK(yes.verdict == Verdict::entangled);
  CHECK(yes.o_bm == doctest::Approx(0.4));
  CHECK(yes.interference == ideal);
  CHECK(yes.correlations == strong);

  const CorrelationResult none{0.25, 0.25, 0.25, 0.25, 0.0, CorrelationMethod::exact};
  CHECK(verdict(ideal, none, p).verdict == Verdict::inconclusive);
  CHECK(to_string(Verdict::entangled) == "entangled");
  CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}

TEST_CASE("no interaction is inconclusive") {
  const WitnessReport r = evaluate_witness(point(2.0, 0.0));
  CHECK(r.negativity_lb == doctest::Approx(0.5));
  CHECK(r.o_bm == doctest::Approx(0.5));
  CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("device point") {
  const WitnessReport r = evaluate_witness(PhysParams::device());
  CHECK(r.o_bm >= 0.40);
  CHECK(r.o_bm <= 0.46);
  CHECK(r.verdict == Verdict::entangled);
  CHECK(r.correlations.method == CorrelationMethod::closed_form);
}

TEST_CASE("thermal occupation pushes o_bm toward one half") {
  for (auto [beta, g0_tau] : {std::pair{3.0, 0.3}, std::pair{50.0, 0.02}, std::pair{4e4, 3.75e-5}}) {
    double prev = 0.0;
    for (double n = 0.0; n <= 4.0; n += 0.5) {
      const double o = o_bm(correlations(point(beta, g0_tau, n, 0.3)));
      CHECK(o >= prev - 1e-12);
      CHECK(o <= 0.5 + 1e-12);
      prev = o;
    }
  }
}

TEST_CASE("separable AB|M models never pass the witness") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    // sum_i q_i rho_AB^i (x) rho_M^i; the mirror enters through P(M = +1 | i).
    const int terms = 1 + trial % 3;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    double pp = 0, pm = 0, mp = 0, mm = 0;
    double left = 1.0;
    for (int i = 0; i < terms; ++i) {
      const double q = i + 1 == terms ? left : left * u(rng);
      left -= q;
      const Eigen::MatrixXcd r = random_state(rng, 4);  // index 2 n_A + n_B
      rho += q * r;
      Eigen::Matrix2cd rb;
      rb << r(0, 0) + r(2, 2), r(0, 1) + r(2, 3), r(1, 0) + r(3, 2), r(1, 1) + r(3, 3);
      const double b = homodyne_plus(rb);
      const double m = u(rng);
      pp += q * b * m;
      pm += q * b * (1 - m);
      mp += q * (1 - b) * m;
      mm += q * (1 - b) * (1 - m);
    }
    const CorrelationResult c{pp, pm, mp, mm, pp + mm - pm - mp, CorrelationMethod::exact};
    const double p00 = rho(0, 0).real(), p01 = rho(1, 1).real();
    const double p10 = rho(2, 2).real(), p11 = rho(3, 3).real();
    if (p01 + p10 < 1e-12) continue;
    const double v = 2 * std::abs(rho(1, 2)) / (p01 + p10);
    const double lb = negativity_lower_bound(p00, p01, p10, p11, v);
    CHECK(lb <= negativity(DensityMatrix(0.5 * (rho + rho.adjoint())), 2, 2) + 1e-12);
    CHECK(lb <= o_bm(c) + 1e-12);
    ++tested;
  }
  CHECK(tested >= 1000);
}
