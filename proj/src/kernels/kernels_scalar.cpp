#include "ome/kernels.hpp"

#include <cassert>
#include <cmath>

namespace ome::kernels::scalar {

namespace {
// Rotor recurrence is re-seeded from cos/sin every kReseed steps so the
// accumulated rounding stays at a few ulp regardless of length.
constexpr std::size_t kReseed = 64;
}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc;
}

double weighted_sum_sq(std::span<const double> w, std::span<const double> x) {
  assert(w.size() == x.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * x[j] * x[j];
  return acc;
}

std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double phi,
                               long first) {
  assert(re.size() == im.size());
  const double step_c = std::cos(phi);
  const double step_s = std::sin(phi);
  double acc_re = 0.0;
  double acc_im = 0.0;
  double c = 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < re.size(); ++j) {
    if (j % kReseed == 0) {
      const double angle = static_cast<double>(static_cast<long>(j) + first) * phi;
      c = std::cos(angle);
      s = std::sin(angle);
    }
    acc_re += re[j] * c - im[j] * s;
    acc_im += re[j] * s + im[j] * c;
    const double nc = c * step_c - s * step_s;
    s = c * step_s + s * step_c;
    c = nc;
  }
  return {acc_re, acc_im};
}

}  // namespace ome::kernels::scalar
