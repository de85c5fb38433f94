#pragma once

// Small-dimensional quantum math: displaced Fock amplitudes, coherent-state
// algebra, density matrices and the negativity.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ome {

using Complex = std::complex<double>;

enum class Sign { plus, minus };

inline double sign_value(Sign s) noexcept { return s == Sign::plus ? 1.0 : -1.0; }

/// Amplitude of a mechanical coherent state |alpha>.
///
/// Positions use x_m = x0 (m + m^dag): the mean is 2 x0 Re(alpha) and the
/// variance x0^2. Momentum is reported with the sign convention in which an
/// impulsive radiation-pressure kick is positive, i.e. -2 p0 Im(alpha).
struct CoherentLabel {
  Complex alpha{0.0, 0.0};

  double position_mean(double x0) const noexcept { return 2.0 * x0 * alpha.real(); }
  double momentum_mean(double p0) const noexcept { return -2.0 * p0 * alpha.imag(); }
  friend bool operator==(const CoherentLabel&, const CoherentLabel&) = default;
};

/// Smallest cutoff whose neglected Poisson tail is below ~1e-12.
std::size_t default_kmax(double beta);

/// Photon-number amplitudes of D(beta)|+> or D(beta)|->, k = 0..kmax.
///
/// Evaluated in log space so beta up to a few hundred is exact. Throws
/// TruncationError when the returned list carries less than 1 - 1e-8 of the
/// norm.
std::vector<double> displaced_amplitudes(double beta, Sign sign, std::size_t kmax);

/// <a|b> for two coherent states.
Complex coherent_overlap(const CoherentLabel& a, const CoherentLabel& b) noexcept;

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix from_pure(std::span<const Complex> amplitudes);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

  // Partial transpose over the second tensor factor.
  Eigen::MatrixXcd partial_transpose(std::size_t dim_a, std::size_t dim_b) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Sum of |negative eigenvalues| of the partial transpose over factor B.
double negativity(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b);

}  // namespace ome
