#include "ome/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ome/error.hpp"
#include "ome/measurement.hpp"
#include "ome/quadrature.hpp"

namespace ome {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::eid: return "eid";
    case ModelKind::qg: return "qg";
    case ModelKind::gic: return "gic";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "eid") return ModelKind::eid;
  if (name == "qg") return ModelKind::qg;
  if (name == "gic") return ModelKind::gic;
  throw ConfigError("unknown decoherence model '" + name + "' (expected eid, qg or gic)");
}

DecoherenceModel DecoherenceModel::eid(double T, double Qm, const Constants& c) {
  DecoherenceModel m;
  m.kind = ModelKind::eid;
  m.T = T;
  m.Qm = Qm;
  m.constants = c;
  return m;
}

DecoherenceModel DecoherenceModel::qg(const Constants& c) {
  DecoherenceModel m;
  m.kind = ModelKind::qg;
  m.constants = c;
  return m;
}

DecoherenceModel DecoherenceModel::gic(const Constants& c) {
  DecoherenceModel m;
  m.kind = ModelKind::gic;
  m.a = c.nucleus_radius;
  m.m_n = c.nucleus_mass;
  m.constants = c;
  return m;
}

DecoherenceModel DecoherenceModel::from_params(ModelKind kind, const PhysParams& params) {
  switch (kind) {
    case ModelKind::eid: return eid(params.T, params.Qm, params.constants);
    case ModelKind::qg: return qg(params.constants);
    case ModelKind::gic: return gic(params.constants);
  }
  throw ConfigError("unknown decoherence model");
}

void DecoherenceModel::validate() const {
  constants.validate();
  // A zero temperature is allowed: it switches the environment off.
  if (kind == ModelKind::eid && (!(T >= 0.0) || !(Qm > 0.0) || !std::isfinite(T)))
    throw ConfigError("eid model needs T >= 0 and Qm > 0");
  if (kind == ModelKind::gic && (!(a > 0.0) || !(m_n > 0.0)))
    throw ConfigError("gic model needs a > 0 and m_n > 0");
}

namespace {

double gic_prefactor(const DecoherenceModel& m, const PhysParams& p) {
  const Constants& c = m.constants;
  return 8.0 * M_PI * c.G * p.M * m.m_n / c.hbar;
}

double qg_coefficient(const DecoherenceModel& m, const PhysParams& p) {
  const Constants& c = m.constants;
  const double mp = c.planck_mass();
  return std::pow(c.c, 4) * p.M * p.M * std::pow(c.nucleon_mass, 4) /
         (std::pow(c.hbar, 3) * mp * mp * mp);
}

}  // namespace

double gamma(const DecoherenceModel& model, double delta_x, const PhysParams& params) {
  const double d = std::abs(delta_x);
  const Constants& c = model.constants;
  switch (model.kind) {
    case ModelKind::eid:
      return params.M * c.k_b * model.T * params.omega_m * d * d / (c.hbar * c.hbar * model.Qm);
    case ModelKind::qg:
      return qg_coefficient(model, params) * d * d;
    case ModelKind::gic: {
      const double a = model.a;
      const double k = gic_prefactor(model, params);
      if (d > 2.0 * a) return k * (6.0 / (5.0 * a) - 1.0 / d);
      // 6/(5a) - (12a^2 - 5d^2)/(10a^3) + (d^5 - 30a^2 d^3)/(160a^6), with the
      // constant terms cancelled by hand.
      const double u = d / a;
      return k / a * (0.5 * u * u + (u * u - 30.0) * u * u * u / 160.0);
    }
  }
  return 0.0;
}

double gamma_curvature(const DecoherenceModel& model, const PhysParams& params) {
  const Constants& c = model.constants;
  switch (model.kind) {
    case ModelKind::eid:
      return params.M * c.k_b * model.T * params.omega_m / (c.hbar * c.hbar * model.Qm);
    case ModelKind::qg:
      return qg_coefficient(model, params);
    case ModelKind::gic:
      return gic_prefactor(model, params) / (2.0 * model.a * model.a * model.a);
  }
  return 0.0;
}

double gamma_orbit_average(const DecoherenceModel& model, double amplitude,
                           const PhysParams& params) {
  const double amp = std::abs(amplitude);
  if (model.kind != ModelKind::gic) return 0.5 * gamma_curvature(model, params) * amp * amp;
  if (amp == 0.0) return 0.0;
  // The kernel has a kink where amp sin(theta) = 2a; split there. Symmetric about pi/2.
  auto f = [&](double th) { return gamma(model, amp * std::sin(th), params); };
  const QuadOptions opts{.rel_tol = 1e-12, .abs_tol = 0.0, .max_depth = 20};
  double half = 0.0;
  const double ratio = 2.0 * model.a / amp;
  if (ratio < 1.0) {
    // Outside the nucleus the kernel is K (6/(5a) - 1/(amp sin)), integrable
    // in closed form: int dtheta / sin(theta) = ln tan(theta / 2).
    const double th = std::asin(ratio);
    const double k = gic_prefactor(model, params);
    const double outer =
        k * (6.0 / (5.0 * model.a) * (0.5 * M_PI - th) + std::log(std::tan(0.5 * th)) / amp);
    half = integrate(f, 0.0, th, opts) + outer;
  } else {
    half = integrate(f, 0.0, 0.5 * M_PI, opts);
  }
  return 2.0 * half / M_PI;
}

PointerDistribution pointer_distribution(const DecoherenceModel& model, const PhysParams& params,
                                         int n_half_periods) {
  if (n_half_periods < 1) throw std::invalid_argument("pointer_distribution: n must be >= 1");
  model.validate();
  PointerDistribution p;
  p.n_half_periods = n_half_periods;
  p.evolution_time = n_half_periods * M_PI / params.omega_m;
  const double t = p.evolution_time;
  const double lever = 2.0 * params.g0_tau() * params.x0();  // displacement per photon

  // gamma(dx) ~ c2 dx^2 and <sin^2> = 1/2.
  p.second_derivative_at_zero = -t * gamma_curvature(model, params) * lever * lever;
  if (model.kind != ModelKind::gic) {
    const double c = p.second_derivative_at_zero;
    p.xi = [c](double x) { return std::exp(0.5 * c * x * x); };
    p.xi_inf = c == 0.0 ? 1.0 : 0.0;
    return p;
  }
  p.xi = [model, params, t, lever](double x) {
    return std::exp(-t * gamma_orbit_average(model, lever * x, params));
  };
  p.xi_inf = std::exp(-t * gic_prefactor(model, params) * 6.0 / (5.0 * model.a));
  return p;
}

PhaseNoiseResult phase_noise_x_space(const PointerDistribution& pointer, double beta) {
  if (beta > kFourierBetaLimit)
    throw ProtocolError("phase_noise_x_space: beta above the Fourier-series limit");
  const std::size_t nmax = fringe_harmonics(beta);
  const auto q0 = displaced_fringe_coefficients(beta, 0, nmax);
  const auto q1 = displaced_fringe_coefficients(beta, 1, nmax);
  // f(phi) = e^{i phi} (1 - g) e^{-g}: harmonic j carries h_{|j-1|}.
  double acc = 0.0;
  for (long j = 1 - static_cast<long>(nmax); j <= static_cast<long>(nmax) + 1; ++j) {
    const std::size_t h = static_cast<std::size_t>(std::abs(j - 1));
    acc += (q0[h] - q1[h]) * pointer.xi(static_cast<double>(j));
  }
  PhaseNoiseResult r;
  r.visibility = r.lower = r.upper = std::min(1.0, std::abs(acc));
  r.route = NoiseRoute::x_space;
  return r;
}

PhaseNoiseResult phase_noise_phi_space(const PointerDistribution& pointer, double beta) {
  const double xi_inf = pointer.xi_inf;

  // Support of the continuous part of xi. Harmonics far beyond the fringe's
  // own Fourier support do not contribute, so slowly decaying pointers are
  // cut there with a smooth taper over the last quarter.
  const double curv = -pointer.second_derivative_at_zero;
  const double x_max = std::max(64.0 * (beta + 1.0), curv > 0.0 ? 64.0 / std::sqrt(curv) : 0.0);
  double x_cut = 1.0;
  while (std::abs(pointer.xi(x_cut) - xi_inf) > 1e-13 && x_cut < x_max) x_cut *= 2.0;
  const bool tapered = x_cut >= x_max;
  if (tapered) x_cut = x_max;
  const double taper_start = 0.75 * x_cut;
  // Adaptive node sets repeat across phi; pointers may be costly to evaluate.
  std::unordered_map<double, double> memo;
  auto xi_at = [&](double x) {
    auto it = memo.find(x);
    if (it == memo.end()) it = memo.emplace(x, pointer.xi(x)).first;
    return it->second;
  };
  auto xi_c = [&](double x) {
    const double v = xi_at(x) - xi_inf;
    if (!tapered || x <= taper_start) return v;
    return v * 0.5 * (1.0 + std::cos(M_PI * (x - taper_start) / (x_cut - taper_start)));
  };

  const QuadOptions inner{.rel_tol = 1e-11, .abs_tol = 1e-15, .max_depth = 24};
  auto xi_tilde = [&](double phi) {
    return integrate([&](double x) { return xi_c(x) * std::cos(x * phi); }, 0.0, x_cut, inner) /
           M_PI;
  };
  auto fringe = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    const double g = 4.0 * beta * beta * s * s;
    return std::exp(-g) * (1.0 - g) * std::cos(phi);
  };

  // Phase window: several widths of xi~, never more than the fringe's own span.
  double window = curv > 0.0 ? 12.0 * std::sqrt(curv) : 0.0;
  if (!(window > 0.0)) window = 12.0 / x_cut;
  window = std::min(window, 64.0 * M_PI);

  PhaseNoiseResult r;
  r.route = NoiseRoute::phi_space;
  const QuadOptions outer{.rel_tol = 1e-10, .abs_tol = 1e-14, .max_depth = 20};
  try {
    const double body = 2.0 * integrate([&](double p) { return xi_tilde(p) * fringe(p); }, 0.0,
                                        window, outer);
    const double mass = 2.0 * integrate(xi_tilde, 0.0, window, outer);
    const double tail = std::abs((1.0 - xi_inf) - mass);
    r.visibility = std::min(1.0, std::abs(xi_inf + body));
    r.converged = tail < 1e-7;
    r.lower = r.converged ? r.visibility : std::max(0.0, r.visibility - tail);
    r.upper = r.converged ? r.visibility : std::min(1.0, r.visibility + tail);
  } catch (const QuadratureError&) {
    // The transform could not be resolved; only the trivial bracket is known.
    r.converged = false;
    r.lower = 0.0;
    r.upper = 1.0;
    r.visibility = 0.5;
  }
  return r;
}

PhaseNoiseResult apply_phase_noise(const PointerDistribution& pointer, double beta) {
  if (beta <= kFourierBetaLimit) return phase_noise_x_space(pointer, beta);
  return phase_noise_phi_space(pointer, beta);
}

DecayResult visibility_decay(const DecoherenceModel& model, const PhysParams& params,
                             int n_half_periods) {
  if (n_half_periods < 1) throw std::invalid_argument("visibility_decay: n must be >= 1");
  model.validate();
  const Constants& c = model.constants;
  const double n = n_half_periods;
  const double b2 = params.beta * params.beta;
  const double g2 = params.g0_tau() * params.g0_tau();
  const double x02 = params.x0() * params.x0();
  DecayResult r;
  switch (model.kind) {
    case ModelKind::eid:
      r.deficit = n * (1.0 + 4.0 * b2) * 2.0 * M_PI * g2 * x02 * params.M * c.k_b * model.T /
                  (c.hbar * c.hbar * model.Qm);
      break;
    case ModelKind::qg:
      r.deficit = n * (1.0 + 4.0 * b2) * 2.0 * M_PI * g2 * x02 * qg_coefficient(model, params) /
                  params.omega_m;
      break;
    case ModelKind::gic: {
      const double curv = n * (M_PI / params.omega_m) * 16.0 * M_PI * g2 * x02 * c.G * params.M *
                          model.m_n / (std::pow(model.a, 3) * c.hbar);
      r.deficit = (0.5 + 2.0 * b2) * curv;
      break;
    }
  }
  r.valid = r.deficit < kDecayValidityLimit;
  return r;
}

double timescale(const DecoherenceModel& model, const PhysParams& params) {
  model.validate();
  return 1.0 / gamma(model, 2.0 * params.g0_tau_beta() * params.x0(), params);
}

}  // namespace ome
