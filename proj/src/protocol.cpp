#include "ome/protocol.hpp"

#include <cmath>
#include <map>

#include "ome/error.hpp"
#include "ome/kernels.hpp"

namespace ome {

namespace {

using Key = std::pair<std::size_t, Sign>;

std::map<Key, std::vector<std::size_t>> group_by_sector(const HybridState& s) {
  std::map<Key, std::vector<std::size_t>> sectors;
  for (std::size_t i = 0; i < s.branches.size(); ++i)
    sectors[{s.branches[i].k, s.branches[i].qubit}].push_back(i);
  return sectors;
}

}  // namespace

Complex kick_amplitude(double g0_tau, double omega_m, double t) noexcept {
  return Complex(0.0, -g0_tau) * std::exp(Complex(0.0, -omega_m * t));
}

HybridState prepare_input(const PhysParams& params, std::size_t kmax) {
  const auto plus = displaced_amplitudes(params.beta, Sign::plus, kmax);
  const auto minus = displaced_amplitudes(params.beta, Sign::minus, kmax);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  HybridState state;
  state.kmax = kmax;
  state.branches.reserve(2 * (kmax + 1));
  for (std::size_t k = 0; k <= kmax; ++k) {
    state.branches.push_back({k, Sign::minus, Complex(inv_sqrt2 * plus[k], 0.0), {}});
    state.branches.push_back({k, Sign::plus, Complex(-inv_sqrt2 * minus[k], 0.0), {}});
  }
  return state;
}

HybridState evolve(const HybridState& state, double t, const PhysParams& params) {
  if (state.kicked || state.time != 0.0)
    throw ProtocolError("evolve: the kick is applied once, to a state at t = 0");
  if (t < 0.0) throw ProtocolError("evolve: t must be >= 0");

  HybridState out = state;
  out.time = t;
  out.kicked = true;
  out.g0_tau = params.g0_tau();
  const Complex alpha = kick_amplitude(out.g0_tau, params.omega_m, t);
  for (auto& b : out.branches) b.mech.alpha = static_cast<double>(b.k) * alpha;
  return out;
}

Complex inner_product(const HybridState& lhs, const HybridState& rhs) {
  const auto rsec = group_by_sector(rhs);
  Complex acc{};
  for (const auto& bl : lhs.branches) {
    const auto it = rsec.find({bl.k, bl.qubit});
    if (it == rsec.end()) continue;
    for (std::size_t j : it->second) {
      const Branch& br = rhs.branches[j];
      acc += std::conj(bl.amp) * br.amp * coherent_overlap(bl.mech, br.mech);
    }
  }
  return acc;
}

double norm(const HybridState& state) { return inner_product(state, state).real(); }

Complex family_overlap(const HybridState& state) {
  // The + optical family sits on |->_B, the - family on |+>_B.
  std::map<std::size_t, const Branch*> fam_plus;
  double n_plus = 0.0;
  double n_minus = 0.0;
  for (const auto& b : state.branches)
    if (b.qubit == Sign::minus) {
      fam_plus[b.k] = &b;
      n_plus += std::norm(b.amp);
    } else {
      n_minus += std::norm(b.amp);
    }
  Complex acc{};
  for (const auto& b : state.branches) {
    if (b.qubit != Sign::plus) continue;
    const auto it = fam_plus.find(b.k);
    if (it == fam_plus.end()) continue;
    // Undo the relative minus sign of the - family.
    acc += std::conj(it->second->amp) * (-b.amp) * coherent_overlap(it->second->mech, b.mech);
  }
  return acc / std::sqrt(n_plus * n_minus);
}

std::pair<MechMarginal, MechMarginal> mech_marginals(const HybridState& state,
                                                     const PhysParams& params) {
  const double x0 = params.x0();
  auto build = [&](Sign qubit) {
    MechMarginal m;
    std::vector<double> w;
    std::vector<double> pos;
    for (const auto& b : state.branches) {
      if (b.qubit != qubit) continue;
      const double p = 2.0 * std::norm(b.amp);  // undo the 1/sqrt(2) of the pair
      m.weights.emplace_back(b.k, p);
      m.labels.push_back(b.mech);
      w.push_back(p);
      pos.push_back(b.mech.position_mean(x0));
    }
    const double total = kernels::dot(w, std::vector<double>(w.size(), 1.0));
    for (auto& [k, p] : m.weights) p /= total;
    for (auto& v : w) v /= total;
    m.mean_position = kernels::dot(w, pos);
    m.variance = x0 * x0 + kernels::weighted_sum_sq(w, pos) - m.mean_position * m.mean_position;
    return m;
  };
  // Family + (amplitudes a^(+)) is attached to |->_B.
  return {build(Sign::minus), build(Sign::plus)};
}

double ensemble_mean_position(const HybridState& state, const PhysParams& params) {
  const double x0 = params.x0();
  double mean = 0.0;
  double total = 0.0;
  for (const auto& b : state.branches) {
    const double p = std::norm(b.amp);
    mean += p * b.mech.position_mean(x0);
    total += p;
  }
  return mean / total;
}

DensityMatrix reduced_optical_state(const HybridState& state) {
  struct FockTerm {
    std::size_t index;
    Complex amp;
    CoherentLabel mech;
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<FockTerm> terms;
  terms.reserve(2 * state.branches.size());
  for (const auto& b : state.branches) {
    if (b.amp == Complex{}) continue;
    const double s = sign_value(b.qubit);
    terms.push_back({2 * b.k, b.amp * inv_sqrt2, b.mech});
    terms.push_back({2 * b.k + 1, b.amp * (s * inv_sqrt2), b.mech});
  }
  const auto dim = static_cast<Eigen::Index>(2 * (state.kmax + 1));
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& ti : terms)
    for (const auto& tj : terms)
      rho(static_cast<Eigen::Index>(ti.index), static_cast<Eigen::Index>(tj.index)) +=
          ti.amp * std::conj(tj.amp) * coherent_overlap(tj.mech, ti.mech);
  // Renormalize the truncation residue (< 1e-8) so the result is a valid state.
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace ome
