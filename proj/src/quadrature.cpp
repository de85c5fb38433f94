#include "ome/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ome/error.hpp"

namespace ome {

namespace {

struct Piece {
  double a, b, value, err, l1;
  unsigned depth;
  bool operator<(const Piece& o) const { return err < o.err; }
};

template <unsigned N>
Piece rule(const std::function<double(double)>& f, double a, double b, unsigned depth) {
  // Boost's fixed rule reports its error in the units of [-1, 1].
  const double half = 0.5 * (b - a);
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, N>::integrate(
      f, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, std::abs(half) * err, l1, depth};
}

Piece apply_rule(const std::function<double(double)>& f, double a, double b, unsigned depth,
                 std::size_t npoints) {
  if (npoints <= 21) return rule<21>(f, a, b, depth);
  if (npoints <= 31) return rule<31>(f, a, b, depth);
  if (npoints <= 41) return rule<41>(f, a, b, depth);
  if (npoints <= 51) return rule<51>(f, a, b, depth);
  return rule<61>(f, a, b, depth);
}

// Global adaptive bisection on a finite interval: always split the piece with
// the largest error.
double adaptive(const std::function<double(double)>& f, double a, double b,
                const QuadOptions& opts) {
  std::priority_queue<Piece> heap;
  Piece first = apply_rule(f, a, b, 0, opts.npoints);
  double value = first.value;
  double err = first.err;
  double l1 = first.l1;
  heap.push(first);
  const std::size_t max_pieces = std::size_t{1} << std::min(opts.max_depth, 16u);
  while (err > std::max(opts.abs_tol, opts.rel_tol * l1) && heap.size() < max_pieces) {
    const Piece worst = heap.top();
    if (worst.depth >= opts.max_depth) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Piece left = apply_rule(f, worst.a, mid, worst.depth + 1, opts.npoints);
    const Piece right = apply_rule(f, mid, worst.b, worst.depth + 1, opts.npoints);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = err = l1 = 0.0;
  for (; !heap.empty(); heap.pop()) {
    value += heap.top().value;
    err += heap.top().err;
    l1 += heap.top().l1;
  }
  if (!std::isfinite(value) || err > std::max(opts.abs_tol, opts.rel_tol * l1)) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate "
        << err << " vs L1 " << l1;
    throw QuadratureError(msg.str(), err);
  }
  return value;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts) {
  if (opts.npoints < 16)
    throw std::invalid_argument("integrate: npoints must be >= 16");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, opts);
  const bool lo = std::isinf(a);
  const bool hi = std::isinf(b);
  if (lo && hi) {
    return adaptive(
        [&](double t) {
          const double d = 1.0 - t * t;
          return f(t / d) * (1.0 + t * t) / (d * d);
        },
        -1.0, 1.0, opts);
  }
  if (hi) {
    return adaptive(
        [&](double t) { return f(a + t / (1.0 - t)) / ((1.0 - t) * (1.0 - t)); }, 0.0, 1.0, opts);
  }
  if (lo) {
    return adaptive(
        [&](double t) { return f(b - t / (1.0 - t)) / ((1.0 - t) * (1.0 - t)); }, 0.0, 1.0, opts);
  }
  return adaptive(f, a, b, opts);
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadOptions& opts) {
  const double re = integrate([&](double x) { return f(x).real(); }, a, b, opts);
  const double im = integrate([&](double x) { return f(x).imag(); }, a, b, opts);
  return {re, im};
}

HermiteRule gauss_hermite(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_hermite: n must be positive");
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix of the
  // physicists' Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    const double off = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = off;
    jacobi(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  HermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double sqrt_pi = std::sqrt(M_PI);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rule.nodes[i] = es.eigenvalues()(ii);
    const double v0 = es.eigenvectors()(0, ii);
    rule.weights[i] = sqrt_pi * v0 * v0;
  }
  // Symmetrize against eigen-solver rounding.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace ome
