#pragma once

// Data-parallel reductions used by the amplitude engines.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The variant is chosen once at startup from CPUID; force_isa() exists so the
// equivalence tests can run both paths on the same inputs.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ome::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa() noexcept;
bool isa_supported(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

// Overrides dispatch until reset_isa(). Throws if the ISA is not supported.
void force_isa(Isa isa);
void reset_isa() noexcept;

// sum_j a[j] * b[j]
double dot(std::span<const double> a, std::span<const double> b);

// sum_j w[j] * x[j]^2
double weighted_sum_sq(std::span<const double> w, std::span<const double> x);

// sum_j (re[j] + i im[j]) * exp(i * (j + first) * phi)
std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double phi,
                               long first = 0);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double weighted_sum_sq(std::span<const double> w, std::span<const double> x);
std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double phi,
                               long first);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double weighted_sum_sq(std::span<const double> w, std::span<const double> x);
std::complex<double> phase_sum(std::span<const double> re,
                               std::span<const double> im, double phi,
                               long first);
}  // namespace avx2

}  // namespace ome::kernels
