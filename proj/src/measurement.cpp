#include "ome/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "ome/error.hpp"
#include "ome/kernels.hpp"
#include "ome/quadrature.hpp"

namespace ome {

std::string to_string(CorrelationMethod m) {
  return m == CorrelationMethod::exact ? "exact" : "closed_form";
}

namespace {

// Integral over X > 0 of the product of the vacuum and one-photon
// quadrature wavefunctions.
double half_line_overlap_01() {
  static const double value = integrate(
      [](double x) {
        const double phi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
        return phi0 * std::sqrt(2.0) * x * phi0;
      },
      0.0, std::numeric_limits<double>::infinity(), {.rel_tol = 1e-14});
  return value;
}

void check_noise(const PhysParams& p) {
  if (!(p.n_th >= 0.0) || !(p.dx >= 0.0))
    throw ConfigError("measurement: n_th and dx must be >= 0");
}

CorrelationResult finish(double pp, double pm, double mp, double mm, CorrelationMethod m) {
  const double total = pp + pm + mp + mm;
  CorrelationResult r{pp / total, pm / total, mp / total, mm / total, 0.0, m};
  r.correlation = r.p_pp + r.p_mm - r.p_pm - r.p_mp;
  return r;
}

}  // namespace

CorrelationResult joint_probabilities_exact(const HybridState& state, const PhysParams& params) {
  check_noise(params);
  const double x0 = params.x0();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // Mode B of photon-number sector k, rewritten in its Fock basis.
  struct Sector {
    Complex u0{}, u1{};
    CoherentLabel mech{};
    bool seen = false;
  };
  std::map<std::size_t, Sector> sectors;
  for (const auto& b : state.branches) {
    Sector& s = sectors[b.k];
    if (s.seen && !(s.mech == b.mech))
      throw InvalidStateError("joint_probabilities_exact: branches of one sector disagree on the mirror");
    s.seen = true;
    s.mech = b.mech;
    s.u0 += b.amp * inv_sqrt2;
    s.u1 += b.amp * (sign_value(b.qubit) * inv_sqrt2);
  }

  const double overlap = half_line_overlap_01();
  std::vector<double> weight, b_plus, mean;
  weight.reserve(sectors.size());
  for (const auto& [k, s] : sectors) {
    const double w = std::norm(s.u0) + std::norm(s.u1);
    weight.push_back(w);
    b_plus.push_back(0.5 * w + 2.0 * std::real(std::conj(s.u0) * s.u1) * overlap);
    mean.push_back(s.mech.position_mean(x0));
  }
  const double total = kernels::dot(weight, std::vector<double>(weight.size(), 1.0));
  const double threshold = kernels::dot(weight, mean) / total;
  const double sigma =
      std::sqrt(x0 * x0 * (1.0 + 2.0 * params.n_th) + params.dx * params.dx);

  double pp = 0, pm = 0, mp = 0, mm = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    const double m_plus = 0.5 * std::erfc((threshold - mean[i]) / (sigma * std::sqrt(2.0)));
    const double b_minus = weight[i] - b_plus[i];
    pp += b_plus[i] * m_plus;
    pm += b_plus[i] * (1.0 - m_plus);
    mp += b_minus * m_plus;
    mm += b_minus * (1.0 - m_plus);
  }
  return finish(pp, pm, mp, mm, CorrelationMethod::exact);
}

double correlation_closed_form(const PhysParams& params) {
  const double g = params.g0_tau_beta();
  const double r = params.dx / params.x0();
  return (2.0 / M_PI) * g / std::sqrt(1.0 + params.n_th + g * g + 0.25 * r * r);
}

CorrelationResult closed_form_probabilities(const PhysParams& params) {
  check_noise(params);
  const double c = correlation_closed_form(params);
  const double same = 0.25 * (1.0 + c);
  const double diff = 0.25 * (1.0 - c);
  return finish(same, diff, diff, same, CorrelationMethod::closed_form);
}

CorrelationResult correlations(const PhysParams& params) {
  if (params.beta > kExactBetaLimit) return closed_form_probabilities(params);
  const HybridState input = prepare_input(params, default_kmax(params.beta));
  return joint_probabilities_exact(evolve(input, M_PI / (2.0 * params.omega_m), params), params);
}

double residual_phase_std(const PhysParams& params) {
  check_noise(params);
  const double prior = 0.5 * (2.0 * params.n_th + 1.0);  // quadrature units
  const double s = params.dx / (std::sqrt(2.0) * params.x0());
  const double post = prior * s * s / (prior + s * s);
  return std::sqrt(2.0) * params.g0_tau() * std::sqrt(post);
}

double sample_residual_phase_std(const PhysParams& params, std::size_t samples,
                                 std::uint64_t seed) {
  check_noise(params);
  if (samples == 0) throw std::invalid_argument("sample_residual_phase_std: samples must be > 0");
  const double x0 = params.x0();
  const double sx2 = x0 * x0 * (1.0 + 2.0 * params.n_th);
  const double gain = sx2 / (sx2 + params.dx * params.dx);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = std::sqrt(sx2) * unit(rng);
    const double y = x + params.dx * unit(rng);
    const double err = params.g0_tau() * (x - gain * y) / x0;
    acc += err * err;
  }
  return std::sqrt(acc / static_cast<double>(samples));
}

ConditionalState project_position(const HybridState& state, double y, const PhysParams& params) {
  check_noise(params);
  const double periods = params.omega_m * state.time / M_PI;
  if (std::abs(periods - std::round(periods)) > 1e-9 * std::max(1.0, std::abs(periods)))
    throw ProtocolError(
        "project_position: readout must happen at an integer multiple of pi/omega_m");

  const double x0 = params.x0();
  const double sx2 = x0 * x0 * (1.0 + 2.0 * params.n_th);
  const double var = sx2 + params.dx * params.dx;
  const double mean = ensemble_mean_position(state, params);

  ConditionalState out;
  out.density = std::exp(-0.5 * (y - mean) * (y - mean) / var) / std::sqrt(2.0 * M_PI * var);
  out.estimate = mean + (y - mean) * sx2 / var;
  out.residual_phase_std = residual_phase_std(params);
  out.branches.reserve(state.branches.size());
  for (const auto& b : state.branches) {
    const Complex a = b.mech.alpha;
    // Phase of <x|alpha> at the estimated position.
    const double phase = a.imag() * out.estimate / x0 - a.real() * a.imag();
    out.branches.push_back({b.k, b.qubit, b.amp * std::polar(1.0, phase), {}});
  }
  return out;
}

double negativity_lower_bound(double p00, double p01, double p10, double p11, double visibility) {
  const double a = p00 - p11;
  const double b = visibility * (p01 + p10);
  return std::max(0.0, 0.5 * (std::sqrt(a * a + b * b) - (p00 + p11)));
}

std::size_t fringe_harmonics(double beta) {
  return static_cast<std::size_t>(std::ceil(14.0 * beta + 32.0));
}

std::vector<double> displaced_fringe_coefficients(double beta, int m, std::size_t nmax) {
  const std::size_t n_grid = 2 * (nmax + fringe_harmonics(beta)) + 8;
  std::vector<double> samples(n_grid);
  const std::vector<double> zeros(n_grid, 0.0);
  for (std::size_t j = 0; j < n_grid; ++j) {
    const double s = std::sin(M_PI * static_cast<double>(j) / static_cast<double>(n_grid));
    const double g = 4.0 * beta * beta * s * s;
    samples[j] = std::pow(g, m) * std::exp(-g);
  }
  std::vector<double> coeffs(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    const double phi = 2.0 * M_PI * static_cast<double>(n) / static_cast<double>(n_grid);
    coeffs[n] = kernels::phase_sum(samples, zeros, phi).real() / static_cast<double>(n_grid);
  }
  return coeffs;
}

namespace {

// Per-outcome (unnormalized) statistics of the <= 1-photon subspace after
// feedback with residual phase phi.
struct Outcome {
  double p00 = 0.0;  // equals p11
  double p01 = 0.0;
  double p10 = 0.0;
  double two_c = 0.0;   // 2 |<01|rho|10>|
  double deficit = 0.0;  // p01 + p10 - two_c, when available without cancellation
};

Outcome closed_outcome(double beta, double phi) {
  const double s = std::sin(0.5 * phi);
  const double g = 4.0 * beta * beta * s * s;
  const double e = std::exp(-g);
  const double d = 1.0 - std::abs(1.0 - g);
  return {0.5 * e * g, 0.5 * e, 0.5 * e * (1.0 - g) * (1.0 - g), e * std::abs(1.0 - g),
          0.5 * e * d * d};
}

// E[f(phi)] for phi ~ N(0, sigma^2), wrapped onto the circle when wide.
// f must be even; `kinks` are phases > 0 where f is not smooth.
double phase_average(const std::function<double(double)>& f, double sigma,
                     const std::vector<double>& kinks = {}) {
  if (sigma == 0.0) return f(0.0);
  const QuadOptions opts{.rel_tol = 1e-11, .abs_tol = 1e-16, .max_depth = 30};  // outputs are probabilities
  const double norm = 2.0 / (sigma * std::sqrt(2.0 * M_PI));
  const bool wrapped = 10.0 * sigma > M_PI;
  const double end = wrapped ? M_PI : 10.0 * sigma;
  const int wraps = wrapped ? static_cast<int>(std::ceil(10.0 * sigma / (2.0 * M_PI))) + 1 : 0;
  auto weight = [&](double p) {
    double w = 0.0;
    for (int m = -wraps; m <= wraps; ++m) {
      const double q = p + 2.0 * M_PI * m;
      w += std::exp(-0.5 * q * q / (sigma * sigma));
    }
    return norm * w;
  };
  std::vector<double> cuts{0.0};
  for (double k : kinks)
    if (k > 0.0 && k < end) cuts.push_back(k);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(end);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    sum += integrate([&](double p) { return weight(p) * f(p); }, cuts[i], cuts[i + 1], opts);
  return sum;
}

// Phase at which 4 beta^2 sin^2(phi / 2) = 1.
std::vector<double> unit_fringe_phase(double beta) {
  if (2.0 * beta <= 1.0) return {};
  return {2.0 * std::asin(0.5 / beta)};
}

struct Pooled {
  double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
  double visibility = 1.0;
  double coherence = 1.0;
};

Pooled pool_closed(double beta, double sigma) {
  auto avg = [&](auto field) {
    return phase_average([&](double p) { return field(closed_outcome(beta, p)); }, sigma,
                         unit_fringe_phase(beta));
  };
  Pooled r;
  r.p00 = r.p11 = avg([](const Outcome& o) { return o.p00; });
  r.p01 = avg([](const Outcome& o) { return o.p01; });
  r.p10 = avg([](const Outcome& o) { return o.p10; });
  const double deficit = avg([](const Outcome& o) { return o.deficit; });
  r.visibility = 1.0 - deficit / (r.p01 + r.p10);
  // 2 <01|rho|10> of the averaged state: E[exp(-g) (1 - g) e^{i phi}].
  const double re = phase_average(
      [&](double p) {
        const double s = std::sin(0.5 * p);
        const double g = 4.0 * beta * beta * s * s;
        return std::exp(-g) * (1.0 - g) * std::cos(p);
      },
      sigma);
  r.coherence = std::abs(re);  // the sine part vanishes by symmetry
  return r;
}

Pooled pool_fourier(double beta, double sigma, const PointerDistribution& noise) {
  const std::size_t nmax = fringe_harmonics(beta);
  const auto q0 = displaced_fringe_coefficients(beta, 0, nmax);
  const auto q1 = displaced_fringe_coefficients(beta, 1, nmax);
  const auto q2 = displaced_fringe_coefficients(beta, 2, nmax);
  std::vector<double> xi(nmax + 2);
  for (std::size_t n = 0; n < xi.size(); ++n) xi[n] = noise.xi(static_cast<double>(n));

  // Cosine series a_n weighted by xi, and the coherence series b_j, j = 1 - nmax .. nmax + 1.
  std::vector<double> a0(nmax + 1), a1(nmax + 1), a2(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    a0[n] = q0[n] * xi[n];
    a1[n] = q1[n] * xi[n];
    a2[n] = q2[n] * xi[n];
  }
  const long first = 1 - static_cast<long>(nmax);
  std::vector<double> b(2 * nmax + 1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const long j = first + static_cast<long>(i);
    const std::size_t h = static_cast<std::size_t>(std::abs(j - 1));
    b[i] = (q0[h] - q1[h]) * xi[static_cast<std::size_t>(std::abs(j))];
  }
  const std::vector<double> zeros(b.size(), 0.0);
  const std::span<const double> zspan(zeros);

  auto cosine = [&](const std::vector<double>& a, double p) {
    return 2.0 * kernels::phase_sum(a, zspan.first(a.size()), p).real() - a[0];
  };
  auto outcome = [&](double p) {
    const double Q0 = cosine(a0, p), Q1 = cosine(a1, p), Q2 = cosine(a2, p);
    Outcome o;
    o.p00 = 0.5 * Q1;
    o.p01 = 0.5 * Q0;
    o.p10 = 0.5 * (Q0 - 2.0 * Q1 + Q2);
    o.two_c = std::abs(kernels::phase_sum(b, zeros, p, first));
    return o;
  };
  auto avg = [&](auto field) {
    return phase_average([&](double p) { return field(outcome(p)); }, sigma);
  };
  Pooled r;
  r.p00 = r.p11 = avg([](const Outcome& o) { return o.p00; });
  r.p01 = avg([](const Outcome& o) { return o.p01; });
  r.p10 = avg([](const Outcome& o) { return o.p10; });
  r.visibility = avg([](const Outcome& o) { return o.two_c; }) / (r.p01 + r.p10);
  Complex c{};
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double j = static_cast<double>(first + static_cast<long>(i));
    c += b[i] * std::exp(-0.5 * sigma * sigma * j * j);
  }
  r.coherence = std::abs(c);
  return r;
}

}  // namespace

InterferenceResult visibility_pipeline(const PhysParams& params,
                                       const std::optional<PointerDistribution>& noise) {
  const double sigma = residual_phase_std(params);
  const double beta = params.beta;
  Pooled pooled;
  if (noise) {
    if (beta > kFourierBetaLimit)
      throw ProtocolError(
          "visibility_pipeline: injected phase noise needs beta <= 1000; decay gives the closed-form deficit");
    pooled = pool_fourier(beta, sigma, *noise);
  } else {
    pooled = pool_closed(beta, sigma);
  }
  if (pooled.visibility > 1.0 + 1e-9 || pooled.coherence > 1.0 + 1e-9)
    throw ConsistencyError("visibility_pipeline: visibility exceeds 1");

  const double total = pooled.p00 + pooled.p01 + pooled.p10 + pooled.p11;
  InterferenceResult r;
  r.visibility = std::clamp(pooled.visibility, 0.0, 1.0);
  r.coherence_visibility = std::clamp(pooled.coherence, 0.0, 1.0);
  r.p00 = pooled.p00 / total;
  r.p01 = pooled.p01 / total;
  r.p10 = pooled.p10 / total;
  r.p11 = pooled.p11 / total;
  r.negativity_lb = negativity_lower_bound(r.p00, r.p01, r.p10, r.p11, r.visibility);
  return r;
}

}  // namespace ome
