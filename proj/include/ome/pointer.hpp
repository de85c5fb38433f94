#pragma once

#include <cmath>
#include <functional>

namespace ome {

/// Weak-measurement profile xi(X) acting on the photon number of mode A:
/// <k|rho|k'> is multiplied by xi(k - k'). Equivalently a random phase
/// rotation of A whose characteristic function is xi.
struct PointerDistribution {
  std::function<double(double)> xi = [](double) { return 1.0; };
  double second_derivative_at_zero = 0.0;  // <= 0
  double evolution_time = 0.0;
  int n_half_periods = 0;
  double xi_inf = 1.0;  // lim xi(X) for |X| -> inf

  static PointerDistribution identity() { return {}; }

  /// Gaussian phase noise of standard deviation `width` (radians).
  static PointerDistribution gaussian_phase(double width) {
    PointerDistribution p;
    const double w2 = width * width;
    p.xi = [w2](double x) { return std::exp(-0.5 * w2 * x * x); };
    p.second_derivative_at_zero = -w2;
    p.xi_inf = 0.0;
    return p;
  }
};

}  // namespace ome
