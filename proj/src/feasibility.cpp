#include "ome/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ome/error.hpp"
#include "ome/measurement.hpp"

namespace ome {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

double photon_budget(double kappa) { return 5e16 / kappa; }

double cooled_occupation(double g0, double kappa, double Np) {
  const double r = kappa * kappa / (g0 * g0 * Np);
  return 0.5 * (std::sqrt(1.0 + r * r) - 1.0);
}

PhysParams resolve_coupling(const PhysParams& params) {
  PhysParams p = params;
  const auto cav = p.g0_from_cavity();
  if (!cav) return p;
  if (p.g0 == 0.0) {
    p.g0 = *cav;
  } else if (std::abs(p.g0 - *cav) > 0.01 * *cav) {
    throw ConsistencyError("g0 = " + fmt(p.g0) + " disagrees with (omega_c / L) x0 = " +
                           fmt(*cav) + " by more than 1%");
  }
  return p;
}

FeasibilityReport derive(const PhysParams& params, const FeasibilityOptions& opts) {
  PhysParams p = resolve_coupling(params);
  if (opts.single_local_oscillator) p.tau = std::log(2.0) / p.kappa;
  p.validate();

  FeasibilityReport r;
  r.x0 = p.x0();
  r.p0 = p.p0();
  r.g0 = p.g0;
  r.tau = p.tau;
  r.g0_over_omega_m = p.g0 / p.omega_m;
  const double g = p.g0_tau_beta();
  r.macroscopicity = 4.0 * g;
  r.correlation_target = correlation_closed_form(p);
  const double gb = p.g0 * p.beta;
  r.epsilon_nl = gb > 0.0 ? std::pow(g, 6) * p.omega_m * p.omega_m / (gb * gb) : 0.0;

  const double root = p.g0 * std::sqrt(p.Np);
  r.dx_over_x0 = p.kappa / (std::sqrt(5.0) * root);
  r.phase_spread = std::sqrt(2.0) * p.g0_tau() * r.dx_over_x0 /
                   std::sqrt(1.0 + 2.0 * r.dx_over_x0 * r.dx_over_x0);
  r.epsilon_bar = 1.5 * std::pow(r.phase_spread * p.beta, 4);
  r.epsilon_bar_rule = 2e-35 * p.kappa * p.kappa * std::pow(p.beta, 4);
  r.n_eff = cooled_occupation(p.g0, p.kappa, p.Np);
  r.Np_max = photon_budget(p.kappa);

  const Constants& c = p.constants;
  const double gt = p.g0_tau();
  r.eid_condition_T_max = gt > 0.0 && p.beta > 0.0
                              ? (c.hbar * p.omega_m * p.Qm / c.k_b) /
                                    (2.0 * gt * gt * p.beta * p.beta) / (2.0 * M_PI)
                              : std::numeric_limits<double>::infinity();

  for (ModelKind kind : {ModelKind::eid, ModelKind::qg, ModelKind::gic})
    r.timescales.emplace_back(kind, timescale(DecoherenceModel::from_params(kind, p), p));

  auto flag = [&](const std::string& name, bool ok, const std::string& detail) {
    r.constraint_flags.push_back({name, ok, detail});
  };
  flag("macroscopicity", r.macroscopicity >= 1.0, "4 g0 tau beta = " + fmt(r.macroscopicity));
  flag("linearity", gb >= opts.margin * p.omega_m && r.epsilon_nl < 1.0 / opts.margin,
       "g0 beta / omega_m = " + fmt(gb / p.omega_m) + ", epsilon = " + fmt(r.epsilon_nl));
  flag("readout", root > p.kappa, "g0 sqrt(Np) / kappa = " + fmt(root / p.kappa));
  flag("cooling", r.n_eff <= 1.0 / opts.margin, "n_eff = " + fmt(r.n_eff));
  flag("photon_budget", p.Np <= r.Np_max, "Np / Np_max = " + fmt(p.Np / r.Np_max));
  return r;
}

std::vector<TestabilityEntry> testability(const PhysParams& params,
                                          const std::vector<DecoherenceModel>& models,
                                          double probe_time) {
  if (!(probe_time > 0.0)) throw std::invalid_argument("testability: probe_time must be > 0");
  const PhysParams p = resolve_coupling(params);
  const double half_periods = probe_time * p.omega_m / M_PI;

  double eid_rate = 1.0 / timescale(DecoherenceModel::from_params(ModelKind::eid, p), p);
  for (const auto& m : models)
    if (m.kind == ModelKind::eid) eid_rate = 1.0 / timescale(m, p);

  std::vector<TestabilityEntry> out;
  for (const auto& m : models) {
    TestabilityEntry e;
    e.model = m.kind;
    e.timescale = timescale(m, p);
    e.rate = 1.0 / e.timescale;
    // Closed-form deficits are linear in the number of half periods.
    e.deficit_at_probe = visibility_decay(m, p, 1).deficit * half_periods;
    e.testable = m.kind != ModelKind::eid && e.rate > eid_rate;
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.rate > b.rate; });
  return out;
}

}  // namespace ome
