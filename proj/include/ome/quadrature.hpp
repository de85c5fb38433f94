#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace ome {

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  unsigned max_depth = 18;
  // Kronrod order; rounded up to one of 21, 31, 41, 51, 61.
  std::size_t npoints = 61;
};

/// Adaptive Gauss-Kronrod quadrature on [a, b]; either bound may be infinite.
/// Throws QuadratureError when the error estimate stays above tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadOptions& opts = {});

/// Gauss-Hermite rule for the weight exp(-x^2).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

HermiteRule gauss_hermite(std::size_t n);

/// E[f(X)] for X ~ N(0, sigma^2) using an n-point Hermite rule.
template <class F>
auto gaussian_expectation(const HermiteRule& rule, double sigma, F&& f) {
  using R = decltype(f(0.0));
  R acc{};
  const double scale = 1.4142135623730951 * sigma;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(scale * rule.nodes[i]);
  return acc * 0.56418958354775628;  // 1/sqrt(pi)
}

}  // namespace ome
