#include "ome/kernels.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define OME_HAVE_AVX2 1
#else
#define OME_HAVE_AVX2 0
#endif

namespace ome::kernels::avx2 {

#if OME_HAVE_AVX2

namespace {

constexpr std::size_t kReseed = 64;  // multiple of the 4-lane stride

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[j]), _mm256_loadu_pd(&b[j]), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[j + 4]), _mm256_loadu_pd(&b[j + 4]), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

double weighted_sum_sq(std::span<const double> w, std::span<const double> x) {
  assert(w.size() == x.size());
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d xv = _mm256_loadu_pd(&x[j]);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(&w[j]), xv), xv, acc);
  }
  double total = hsum(acc);
  for (; j < n; ++j) total += w[j] * x[j] * x[j];
  return total;
}

std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double phi,
                               long first) {
  assert(re.size() == im.size());
  const std::size_t n = re.size();
  const __m256d step_c = _mm256_set1_pd(std::cos(4.0 * phi));
  const __m256d step_s = _mm256_set1_pd(std::sin(4.0 * phi));
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  __m256d s = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    if (j % kReseed == 0) {
      alignas(32) double cs[4];
      alignas(32) double sn[4];
      for (int lane = 0; lane < 4; ++lane) {
        const double angle =
            static_cast<double>(static_cast<long>(j) + lane + first) * phi;
        cs[lane] = std::cos(angle);
        sn[lane] = std::sin(angle);
      }
      c = _mm256_load_pd(cs);
      s = _mm256_load_pd(sn);
    }
    const __m256d r = _mm256_loadu_pd(&re[j]);
    const __m256d q = _mm256_loadu_pd(&im[j]);
    acc_re = _mm256_fmadd_pd(r, c, acc_re);
    acc_re = _mm256_fnmadd_pd(q, s, acc_re);
    acc_im = _mm256_fmadd_pd(r, s, acc_im);
    acc_im = _mm256_fmadd_pd(q, c, acc_im);
    const __m256d nc = _mm256_fmsub_pd(c, step_c, _mm256_mul_pd(s, step_s));
    s = _mm256_fmadd_pd(c, step_s, _mm256_mul_pd(s, step_c));
    c = nc;
  }
  double total_re = hsum(acc_re);
  double total_im = hsum(acc_im);
  for (; j < n; ++j) {
    const double angle = static_cast<double>(static_cast<long>(j) + first) * phi;
    const double cc = std::cos(angle);
    const double ss = std::sin(angle);
    total_re += re[j] * cc - im[j] * ss;
    total_im += re[j] * ss + im[j] * cc;
  }
  return {total_re, total_im};
}

#else

double dot(std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
double weighted_sum_sq(std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
std::complex<double> phase_sum(std::span<const double>, std::span<const double>,
                               double, long) {
  throw std::logic_error("AVX2 kernels not compiled in");
}

#endif

bool compiled() noexcept { return OME_HAVE_AVX2 != 0; }

}  // namespace ome::kernels::avx2
