#include "ome/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace ome::kernels {

namespace avx2 {
bool compiled() noexcept;
}

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  return (avx2::compiled() && cpu_has_avx2()) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool isa_supported(Isa isa) noexcept {
  return isa == Isa::scalar || (avx2::compiled() && cpu_has_avx2());
}

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("ISA not supported on this CPU");
  current().store(isa);
}

void reset_isa() noexcept { current().store(detect()); }

namespace {

void same_length(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel inputs differ in length");
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  same_length(a.size(), b.size());
  return active_isa() == Isa::avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

double weighted_sum_sq(std::span<const double> w, std::span<const double> x) {
  same_length(w.size(), x.size());
  return active_isa() == Isa::avx2 ? avx2::weighted_sum_sq(w, x)
                                   : scalar::weighted_sum_sq(w, x);
}

std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double phi,
                               long first) {
  same_length(re.size(), im.size());
  return active_isa() == Isa::avx2 ? avx2::phase_sum(re, im, phi, first)
                                   : scalar::phase_sum(re, im, phi, first);
}

}  // namespace ome::kernels
