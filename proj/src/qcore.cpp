#include "ome/qcore.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ome/error.hpp"
#include "ome/kernels.hpp"

namespace ome {

std::size_t default_kmax(double beta) {
  const double b2 = beta * beta;
  return static_cast<std::size_t>(std::ceil(b2 + 10.0 * std::sqrt(b2 + 1.0)));
}

std::vector<double> displaced_amplitudes(double beta, Sign sign, std::size_t kmax) {
  if (!std::isfinite(beta) || beta < 0.0)
    throw std::invalid_argument("displaced_amplitudes: beta must be finite and >= 0");

  const double s = sign_value(sign);
  std::vector<double> amps(kmax + 1, 0.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  if (beta == 0.0) {
    // D(0) = 1: the amplitudes of |+-> themselves.
    amps[0] = inv_sqrt2;
    if (kmax >= 1) amps[1] = s * inv_sqrt2;
  } else {
    const double log_beta = std::log(beta);
    const double half_b2 = 0.5 * beta * beta;
    for (std::size_t k = 0; k <= kmax; ++k) {
      const double kd = static_cast<double>(k);
      const double log_poisson_amp =
          -half_b2 + kd * log_beta - 0.5 * std::lgamma(kd + 1.0);
      amps[k] = inv_sqrt2 * std::exp(log_poisson_amp) * (1.0 + s * (kd / beta - beta));
    }
  }

  const double norm = kernels::dot(amps, amps);
  if (norm < 1.0 - 1e-8) {
    std::ostringstream msg;
    msg << "displaced_amplitudes: kmax=" << kmax << " too small for beta=" << beta
        << " (norm " << norm << ", need kmax >= " << default_kmax(beta) << ")";
    throw TruncationError(msg.str(), norm);
  }
  return amps;
}

Complex coherent_overlap(const CoherentLabel& a, const CoherentLabel& b) noexcept {
  return std::exp(-0.5 * std::norm(a.alpha) - 0.5 * std::norm(b.alpha) +
                  std::conj(a.alpha) * b.alpha);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw InvalidStateError("density matrix must be square and non-empty");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double herm_err = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kHermitianTol * scale) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian (max deviation " << herm_err << ")";
    throw InvalidStateError(msg.str());
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr.real() << " != 1";
    throw InvalidStateError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenTol)
    throw InvalidStateError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> amplitudes) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes[i];
  const double n = v.squaredNorm();
  if (n <= 0.0) throw InvalidStateError("zero state vector");
  v /= std::sqrt(n);
  return DensityMatrix(v * v.adjoint());
}

Eigen::MatrixXcd DensityMatrix::partial_transpose(std::size_t dim_a, std::size_t dim_b) const {
  if (dim_a * dim_b != dim())
    throw std::invalid_argument("partial_transpose: dimensions do not factorize");
  Eigen::MatrixXcd pt(entries_.rows(), entries_.cols());
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index l = 0; l < db; ++l)
          pt(i * db + j, k * db + l) = entries_(i * db + l, k * db + j);
  return pt;
}

double negativity(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
  const Eigen::MatrixXcd pt = rho.partial_transpose(dim_a, dim_b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
  return neg;
}

}  // namespace ome
