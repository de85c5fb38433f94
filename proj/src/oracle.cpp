#include "ome/oracle.hpp"

#include <cmath>
#include <map>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "ome/error.hpp"
#include "ome/quadrature.hpp"

namespace ome::oracle {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

// Integral of psi_m psi_n w over [a, b] for all m, n < size.
Eigen::MatrixXd hermite_gram(std::size_t size, double a, double b,
                             const std::function<double(double)>& w) {
  Eigen::MatrixXd out(idx(size), idx(size));
  const QuadOptions opts{.rel_tol = 1e-12, .abs_tol = 1e-16, .max_depth = 20};
  for (std::size_t m = 0; m < size; ++m)
    for (std::size_t n = m; n < size; ++n) {
      const double v = integrate(
          [&](double x) {
            const Eigen::VectorXd h = hermite_functions(x, n + 1);
            return h(idx(m)) * h(idx(n)) * w(x);
          },
          a, b, opts);
      out(idx(m), idx(n)) = out(idx(n), idx(m)) = v;
    }
  return out;
}

// Position quadrature X = (m + m^dag) / sqrt(2) in the truncated space.
Eigen::MatrixXd quadrature_x(std::size_t cutoff) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(idx(cutoff), idx(cutoff));
  for (std::size_t n = 1; n < cutoff; ++n)
    x(idx(n - 1), idx(n)) = x(idx(n), idx(n - 1)) = std::sqrt(0.5 * static_cast<double>(n));
  return x;
}

}  // namespace

Eigen::MatrixXcd annihilation(std::size_t cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(idx(cutoff), idx(cutoff));
  for (std::size_t n = 1; n < cutoff; ++n) a(idx(n - 1), idx(n)) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd displacement(Complex alpha, std::size_t cutoff) {
  const Eigen::MatrixXcd a = annihilation(cutoff);
  const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

Eigen::VectorXd hermite_functions(double x, std::size_t n) {
  Eigen::VectorXd h(idx(n));
  if (n == 0) return h;
  h(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n > 1) h(1) = std::sqrt(2.0) * x * h(0);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double kk = static_cast<double>(k);
    h(idx(k + 1)) = std::sqrt(2.0 / (kk + 1.0)) * x * h(idx(k)) -
                    std::sqrt(kk / (kk + 1.0)) * h(idx(k - 1));
  }
  return h;
}

Eigen::VectorXcd hybrid_state(const PhysParams& params, double t, std::size_t cutoff) {
  return hybrid_state(params, t, Complex{}, cutoff);
}

Eigen::VectorXcd hybrid_state(const PhysParams& params, double t, Complex gamma,
                              std::size_t cutoff) {
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::MatrixXcd d_beta = displacement(params.beta, cutoff);
  Eigen::VectorXcd plus_a = Eigen::VectorXcd::Zero(idx(cutoff));
  Eigen::VectorXcd minus_a = plus_a;
  plus_a(0) = minus_a(0) = r;
  plus_a(1) = r;
  minus_a(1) = -r;
  const Eigen::VectorXcd a_plus = d_beta * plus_a;
  const Eigen::VectorXcd a_minus = d_beta * minus_a;
  const Complex b_plus[2] = {r, r};
  const Complex b_minus[2] = {r, -r};

  // Kick exp(-i g0 tau k X_m sqrt(2)), diagonalized once.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(std::sqrt(2.0) * quadrature_x(cutoff));
  const Eigen::VectorXcd m0 = displacement(gamma, cutoff).col(0);
  const Eigen::VectorXcd m0_eig = eig.eigenvectors().transpose().cast<Complex>() * m0;

  Eigen::VectorXcd rot(idx(cutoff));
  for (std::size_t n = 0; n < cutoff; ++n)
    rot(idx(n)) = std::polar(1.0, -params.omega_m * t * static_cast<double>(n));

  Eigen::VectorXcd psi(idx(2 * cutoff * cutoff));
  for (std::size_t k = 0; k < cutoff; ++k) {
    Eigen::VectorXcd phased = m0_eig;
    for (Index j = 0; j < phased.size(); ++j)
      phased(j) *= std::polar(1.0, -params.g0_tau() * static_cast<double>(k) * eig.eigenvalues()(j));
    const Eigen::VectorXcd mk = rot.cwiseProduct(eig.eigenvectors().cast<Complex>() * phased);
    for (int b = 0; b < 2; ++b) {
      const Complex amp = r * (a_plus(idx(k)) * b_minus[b] - a_minus(idx(k)) * b_plus[b]);
      psi.segment(idx((k * 2 + b) * cutoff), idx(cutoff)) = amp * mk;
    }
  }
  return psi;
}

Eigen::MatrixXcd reduced_optical_state(const Eigen::VectorXcd& psi, std::size_t cutoff) {
  // Rows 2k + b, columns m.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      block(psi.data(), idx(2 * cutoff), idx(cutoff));
  return block * block.adjoint();
}

CorrelationResult joint_probabilities(const PhysParams& params, std::size_t cutoff,
                                      std::size_t samples, std::uint64_t seed) {
  const double t = M_PI / (2.0 * params.omega_m);
  const double x0 = params.x0();
  const bool thermal = params.n_th > 0.0;
  const std::size_t draws = thermal ? samples : 1;
  if (draws == 0) throw std::invalid_argument("oracle: samples must be > 0");

  std::vector<Complex> gammas(draws);
  if (thermal) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> quad(0.0, std::sqrt(0.5 * params.n_th));
    for (auto& g : gammas) {
      const double re = quad(rng);
      const double im = quad(rng);
      g = {re, im};
    }
  }

  const Eigen::MatrixXd xq = quadrature_x(cutoff);
  auto block_of = [&](const Eigen::VectorXcd& psi, std::size_t k) {
    Eigen::MatrixXcd blk(2, idx(cutoff));
    for (int b = 0; b < 2; ++b)
      blk.row(b) = psi.segment(idx((k * 2 + b) * cutoff), idx(cutoff)).transpose();
    return blk;
  };

  // Pass 1: ensemble mean position.
  double mean = 0.0, total = 0.0;
  for (const Complex& g : gammas) {
    const Eigen::VectorXcd psi = hybrid_state(params, t, g, cutoff);
    for (std::size_t k = 0; k < cutoff; ++k) {
      const Eigen::MatrixXcd blk = block_of(psi, k);
      for (int b = 0; b < 2; ++b) {
        const Eigen::VectorXcd row = blk.row(b).transpose();
        mean += (row.adjoint() * xq.cast<Complex>() * row)(0, 0).real();
        total += row.squaredNorm();
      }
    }
  }
  // In quadrature units: x = sqrt(2) x0 X.
  const double threshold = mean / total;

  const double noise = params.dx / (std::sqrt(2.0) * x0);
  const double reach = 16.0 + std::abs(threshold);
  Eigen::MatrixXd pi_m;
  if (noise == 0.0) {
    pi_m = hermite_gram(cutoff, threshold, reach, [](double) { return 1.0; });
  } else {
    pi_m = hermite_gram(cutoff, -reach - 10.0 * noise, reach + 10.0 * noise, [&](double x) {
      return 0.5 * std::erfc((threshold - x) / (noise * std::sqrt(2.0)));
    });
  }
  const Eigen::MatrixXd pi_b = hermite_gram(2, 0.0, 16.0, [](double) { return 1.0; });

  // Pass 2: joint probabilities.
  double pp = 0, pm = 0, mp = 0, mm = 0;
  for (const Complex& g : gammas) {
    const Eigen::VectorXcd psi = hybrid_state(params, t, g, cutoff);
    for (std::size_t k = 0; k < cutoff; ++k) {
      const Eigen::MatrixXcd blk = block_of(psi, k);
      const Eigen::MatrixXcd on_plus = blk.conjugate() * pi_m.cast<Complex>() * blk.transpose();
      const Eigen::MatrixXcd all = blk.conjugate() * blk.transpose();
      const Eigen::MatrixXcd on_minus = all - on_plus;
      double bp_ep = 0, bp_all = 0;
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          bp_ep += pi_b(b, c) * on_plus(b, c).real();
          bp_all += pi_b(b, c) * all(b, c).real();
        }
      const double ep = on_plus.trace().real();
      const double em = on_minus.trace().real();
      pp += bp_ep;
      pm += bp_all - bp_ep;
      mp += ep - bp_ep;
      mm += em - (bp_all - bp_ep);
    }
  }
  const double sum = pp + pm + mp + mm;
  CorrelationResult r{pp / sum, pm / sum, mp / sum, mm / sum, 0.0, CorrelationMethod::exact};
  r.correlation = r.p_pp + r.p_mm - r.p_pm - r.p_mp;
  return r;
}

namespace {

struct Setup {
  std::size_t cutoff;
  Eigen::VectorXcd singlet_displaced;  // D_A(beta) (|10> - |01>) / sqrt(2), index 2k + b
  Eigen::MatrixXcd undisplace;         // D_A(-beta) (x) 1_B
  Eigen::MatrixXd dephasing;           // xi(k - k') on A, lifted to AB
};

Setup make_setup(double beta, const PointerDistribution& noise, std::size_t cutoff) {
  Setup s;
  s.cutoff = cutoff;
  const Eigen::MatrixXcd dp = displacement(beta, cutoff);
  const Eigen::MatrixXcd dm = displacement(-beta, cutoff);
  const Index n = idx(2 * cutoff);
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(n);
  singlet(2) = 1.0 / std::sqrt(2.0);   // |1>_A |0>_B
  singlet(1) = -1.0 / std::sqrt(2.0);  // |0>_A |1>_B
  s.singlet_displaced = Eigen::VectorXcd::Zero(n);
  s.undisplace = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 0; k < idx(cutoff); ++k)
    for (Index j = 0; j < idx(cutoff); ++j)
      for (Index b = 0; b < 2; ++b) {
        s.singlet_displaced(2 * k + b) += dp(k, j) * singlet(2 * j + b);
        s.undisplace(2 * k + b, 2 * j + b) = dm(k, j);
      }
  s.dephasing.resize(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) s.dephasing(i, j) = noise.xi(static_cast<double>(i / 2 - j / 2));
  return s;
}

Eigen::MatrixXcd dephased(const Setup& s, double phi) {
  Eigen::VectorXcd v = s.singlet_displaced;
  for (Index i = 0; i < v.size(); ++i) v(i) *= std::polar(1.0, phi * static_cast<double>(i / 2));
  return (v * v.adjoint()).cwiseProduct(s.dephasing.cast<Complex>());
}

struct Entries {
  double p00, p01, p10, p11;
  Complex c;  // <01|rho|10>
};

Entries low_entries(const Setup& s, double phi) {
  const Eigen::MatrixXcd rho = dephased(s, phi);
  const Eigen::MatrixXcd rows = s.undisplace.topRows(4);
  const Eigen::MatrixXcd low = rows * rho * rows.adjoint();
  return {low(0, 0).real(), low(1, 1).real(), low(2, 2).real(), low(3, 3).real(), low(1, 2)};
}

}  // namespace

Eigen::MatrixXcd conditional_state(double beta, double phi, const PointerDistribution& noise,
                                   std::size_t cutoff) {
  const Setup s = make_setup(beta, noise, cutoff);
  return s.undisplace * dephased(s, phi) * s.undisplace.adjoint();
}

OracleInterference interference(double beta, double sigma, const PointerDistribution& noise,
                                std::size_t cutoff) {
  const Setup s = make_setup(beta, noise, cutoff);
  std::map<double, Entries> cache;
  auto at = [&](double phi) -> const Entries& {
    auto it = cache.find(phi);
    if (it == cache.end()) it = cache.emplace(phi, low_entries(s, phi)).first;
    return it->second;
  };
  auto avg = [&](auto field) {
    if (sigma == 0.0) return field(at(0.0));
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    return integrate(
        [&](double p) { return norm * std::exp(-0.5 * p * p / (sigma * sigma)) * field(at(p)); },
        -10.0 * sigma, 10.0 * sigma, {.rel_tol = 1e-12, .abs_tol = 1e-16, .max_depth = 22});
  };

  const double p00 = avg([](const Entries& e) { return e.p00; });
  const double p01 = avg([](const Entries& e) { return e.p01; });
  const double p10 = avg([](const Entries& e) { return e.p10; });
  const double p11 = avg([](const Entries& e) { return e.p11; });
  const double pooled = avg([](const Entries& e) { return 2.0 * std::abs(e.c); });
  const double re = avg([](const Entries& e) { return 2.0 * e.c.real(); });
  const double im = avg([](const Entries& e) { return 2.0 * e.c.imag(); });

  OracleInterference out;
  InterferenceResult& r = out.result;
  const double total = p00 + p01 + p10 + p11;
  r.visibility = pooled / (p01 + p10);
  r.coherence_visibility = std::hypot(re, im);
  r.p00 = p00 / total;
  r.p01 = p01 / total;
  r.p10 = p10 / total;
  r.p11 = p11 / total;
  r.negativity_lb = negativity_lower_bound(r.p00, r.p01, r.p10, r.p11, r.visibility);

  // Outcome-averaged negativity of the full conditional states.
  auto negativity_at = [&](double phi) {
    Eigen::MatrixXcd rho = s.undisplace * dephased(s, phi) * s.undisplace.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return negativity(DensityMatrix(rho), cutoff, 2);
  };
  if (sigma == 0.0) {
    out.mean_negativity = negativity_at(0.0);
  } else {
    static const HermiteRule rule = gauss_hermite(24);
    out.mean_negativity = gaussian_expectation(rule, sigma, negativity_at);
  }
  return out;
}

}  // namespace ome::oracle
