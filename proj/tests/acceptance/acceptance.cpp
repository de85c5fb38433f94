// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ome/config.hpp"
#include "ome/decoherence.hpp"
#include "ome/feasibility.hpp"
#include "ome/measurement.hpp"
#include "ome/oracle.hpp"
#include "ome/protocol.hpp"
#include "ome/witness.hpp"

using namespace ome;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

PhysParams point(double beta, double g0_tau, double n_th = 0.0, double dx_over_x0 = 0.0) {
  PhysParams p = PhysParams::device();
  p.beta = beta;
  p.tau = 1e-7;
  p.g0 = g0_tau / p.tau;
  p.n_th = n_th;
  p.dx = dx_over_x0 * p.x0();
  return p;
}

RunConfig device_config() { return load_config(std::string(OME_CONFIG_DIR) + "/device.conf"); }

HybridState evolved(const PhysParams& p, double t) {
  return evolve(prepare_input(p, default_kmax(p.beta)), t, p);
}

double exact_correlation(const PhysParams& p) {
  return joint_probabilities_exact(evolved(p, M_PI / (2 * p.omega_m)), p).correlation;
}

Outcome plateau() {
  const double g = 1e4;
  const double closed = correlation_closed_form(point(1e6, g / 1e6, 0.0, 2 * g));
  const auto t0 = Clock::now();
  const double exact = exact_correlation(point(200.0, 3.0 / 200.0, 0.0, 6.0));
  const double elapsed = seconds_since(t0);
  const double rel = std::abs(exact - closed) / closed;
  return {std::abs(closed - 0.4502) <= 0.005 && rel <= 0.02 && elapsed < 1.0,
          "closed " + fmt(closed) + ", exact(beta=200, g=3) " + fmt(exact) + " (" +
              fmt(100 * rel, 2) + "%), " + fmt(elapsed, 2) + " s"};
}

Outcome device_correlation() {
  const double closed = correlation_closed_form(point(1e4, 1.5e-4));
  const double exact = exact_correlation(point(200.0, 1.5 / 200.0));
  const double rel = std::abs(exact - closed) / closed;
  return {std::abs(closed - 0.530) <= 0.005 && rel <= 0.02,
          "closed " + fmt(closed) + ", exact(beta=200) " + fmt(exact) + " (" + fmt(100 * rel, 2) +
              "%)"};
}

Outcome witness_asymptote() {
  const double o = o_bm(correlations(point(1e6, 1e3 / 1e6)));
  return {std::abs(o - 0.3856) <= 0.003, "o_bm " + fmt(o)};
}

Outcome device_witness() {
  const PhysParams base = device_config().params;
  double lo = 1.0, hi = 0.0;
  for (double n_th : {0.0, 0.5}) {
    for (double r : {0.0, 1.0}) {
      PhysParams p = base;
      p.n_th = n_th;
      p.dx = r * p.x0();
      const double o = evaluate_witness(p).o_bm;
      lo = std::min(lo, o);
      hi = std::max(hi, o);
    }
  }
  return {lo >= 0.40 && hi <= 0.46, "o_bm in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome visibility_expansion() {
  bool ok = true;
  double worst_ratio = 0.0, worst_order = 1e9;
  for (double beta : {1.0, 2.0, 4.0}) {
    std::vector<double> xs, res;
    for (double x : {0.01, 0.02, 0.04, 0.1}) {
      PhysParams p = point(beta, 0.2);
      const double d = x / beta / (std::sqrt(2.0) * 0.2);
      p.dx = d / std::sqrt(1 - 2 * d * d) * std::sqrt(2.0) * p.x0();
      const double v = visibility_pipeline(p).visibility;
      xs.push_back(residual_phase_std(p) * beta);
      res.push_back(std::abs(v - (1 - 1.5 * std::pow(xs.back(), 4))));
    }
    const double ratio = res[0] / std::pow(xs[0], 4);
    worst_ratio = std::max(worst_ratio, ratio);
    ok = ok && ratio < 0.3;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double order = std::log(res[i] / res[i - 1]) / std::log(xs[i] / xs[i - 1]);
      worst_order = std::min(worst_order, order);
      ok = ok && order >= 4.0;
    }
  }
  return {ok, "residual/x^4 at x=0.01 <= " + fmt(worst_ratio, 3) + ", residual order >= " +
                  fmt(worst_order, 3)};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  struct Point {
    double beta, g0_tau, r;
  };
  for (const Point& q : {Point{1.0, 0.3, 0.8}, Point{2.0, 0.2, 1.0}, Point{3.0, 0.1, 2.0},
                         Point{0.5, 0.3, 0.5}, Point{3.0, 0.05, 3.0}}) {
    const PhysParams p = point(q.beta, q.g0_tau, 0.0, q.r);
    const double t1 = M_PI / (2 * p.omega_m), t2 = M_PI / p.omega_m;
    const HybridState s1 = evolved(p, t1), s2 = evolved(p, t2);
    const Eigen::VectorXcd o1 = oracle::hybrid_state(p, t1, 60);
    const Eigen::VectorXcd o2 = oracle::hybrid_state(p, t2, 60);
    worst = std::max(worst, std::abs(inner_product(s1, s2) - o1.dot(o2)));
    worst = std::max(worst, std::abs(norm(s1) - o1.squaredNorm()));

    const DensityMatrix rho = reduced_optical_state(s1);
    const Eigen::MatrixXcd rho_o = oracle::reduced_optical_state(o1, 60);
    worst = std::max(worst, std::abs(negativity(rho, rho.dim() / 2, 2) -
                                     negativity(DensityMatrix(rho_o), rho_o.rows() / 2, 2)));

    const CorrelationResult c = joint_probabilities_exact(s1, p);
    const CorrelationResult co = oracle::joint_probabilities(p, 60);
    for (auto [a, b] : {std::pair{c.p_pp, co.p_pp}, std::pair{c.p_pm, co.p_pm},
                        std::pair{c.p_mp, co.p_mp}, std::pair{c.p_mm, co.p_mm}})
      worst = std::max(worst, std::abs(a - b));

    const InterferenceResult v = visibility_pipeline(p);
    const auto vo = oracle::interference(q.beta, residual_phase_std(p));
    worst = std::max({worst, std::abs(v.visibility - vo.result.visibility),
                      std::abs(v.coherence_visibility - vo.result.coherence_visibility),
                      std::abs(v.negativity_lb - vo.result.negativity_lb)});
  }
  const double elapsed = seconds_since(t0);
  return {worst < 1e-6 && elapsed < 30.0,
          "max deviation " + fmt(worst, 3) + " over 5 points, " + fmt(elapsed, 3) + " s"};
}

Outcome timescales() {
  const PhysParams p = device_config().params;
  const double us = 1e-6;
  struct Row {
    DecoherenceModel model;
    double target;
    bool relative;  // within 30% instead of a factor of 3
  };
  const Row rows[] = {{DecoherenceModel::eid(0.8, 1e6), 1 * us, false},
                      {DecoherenceModel::eid(0.02, 1.5e7), 630 * us, false},
                      {DecoherenceModel::eid(0.3, 1e7), 30 * us, false},
                      {DecoherenceModel::qg(), 415 * us, false},
                      {DecoherenceModel::gic(), 10 * us, true}};
  bool ok = true;
  std::string detail;
  for (const Row& r : rows) {
    const double t = timescale(r.model, p);
    const bool within = r.relative ? std::abs(t - r.target) <= 0.3 * r.target
                                   : t <= 3 * r.target && t >= r.target / 3;
    ok = ok && within;
    detail += (detail.empty() ? "" : ", ") + to_string(r.model.kind) + " " + fmt(t / us, 3) + " us";
  }
  return {ok, detail};
}

Outcome pointer_duality() {
  double worst_route = 0.0;
  for (double beta : {0.5, 2.0, 8.0, 60.0}) {
    for (double w : {1e-3, 0.01, 0.05}) {
      const auto ptr = PointerDistribution::gaussian_phase(w);
      const auto f = phase_noise_phi_space(ptr, beta);
      worst_route = std::max(worst_route, f.converged ? std::abs(phase_noise_x_space(ptr, beta).visibility -
                                                                 f.visibility)
                                                      : 1.0);
    }
  }
  const PhysParams small = point(3.0, 0.2);
  for (const auto& m : {DecoherenceModel::eid(0.8, 1e6), DecoherenceModel::qg()}) {
    const auto ptr = pointer_distribution(m, small, 1);
    const auto f = phase_noise_phi_space(ptr, 3.0);
    worst_route = std::max(worst_route,
                           f.converged ? std::abs(phase_noise_x_space(ptr, 3.0).visibility - f.visibility)
                                       : 1.0);
  }

  double worst_closed = 0.0, max_deficit = 0.0;
  const PhysParams p = point(20.0, 0.05);
  for (const auto& m : {DecoherenceModel::eid(1e-5, 1e6), DecoherenceModel::eid(1e-4, 1e6),
                        DecoherenceModel::qg()}) {
    for (int n : {1, 2}) {
      const DecayResult d = visibility_decay(m, p, n);
      if (d.deficit >= 0.05) continue;
      const double v = apply_phase_noise(pointer_distribution(m, p, n), p.beta).visibility;
      if (1 - v >= 0.05) continue;
      max_deficit = std::max(max_deficit, 1 - v);
      worst_closed = std::max(worst_closed, std::abs((1 - d.deficit) - v) / v);
    }
  }
  return {worst_route < 1e-6 && worst_closed < 0.01 && max_deficit > 0.0,
          "phi vs x " + fmt(worst_route, 3) + ", closed vs channel " + fmt(100 * worst_closed, 3) +
              "% (1-V up to " + fmt(max_deficit, 3) + ")"};
}

Outcome mass_scaling() {
  PhysParams light = PhysParams::device();
  PhysParams heavy = light;
  heavy.M = 7.0 * light.M;
  const double dx = 1e-13;
  const auto eid = DecoherenceModel::eid(0.8, 1e6);
  const auto qg = DecoherenceModel::qg();
  const double r_eid = gamma(eid, dx, heavy) / gamma(eid, dx, light);
  const double r_qg = gamma(qg, dx, heavy) / gamma(qg, dx, light);
  const bool ok = std::abs(r_eid / 7.0 - 1) < 1e-12 && std::abs(r_qg / 49.0 - 1) < 1e-12;
  return {ok, "M x7: EID x" + fmt(r_eid, 15) + ", QG x" + fmt(r_qg, 15)};
}

Outcome feasibility_echo() {
  const RunConfig cfg = device_config();
  const FeasibilityReport r = derive(cfg.params, cfg.feasibility);
  const double np = cfg.params.Np;
  const bool ok = std::abs(r.g0_over_omega_m / 5e-3 - 1) <= 0.01 &&
                  std::abs(r.macroscopicity / 6.0 - 1) <= 0.05 &&
                  std::abs(r.epsilon_bar / 1e-2 - 1) <= 0.5 && std::abs(np / 4e9 - 1) <= 0.2;
  return {ok, "g0/omega_m " + fmt(r.g0_over_omega_m) + ", 4 g0 tau beta " + fmt(r.macroscopicity) +
                  ", epsilon_bar " + fmt(r.epsilon_bar) + ", Np " + fmt(np)};
}

std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string(OME_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + cmd);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome determinism() {
  const std::string dir = OME_CONFIG_DIR;
  const std::vector<std::string> runs = {
      "correlations --config " + dir + "/device.conf",
      "visibility --config " + dir + "/sweep.conf --model qg --n 2",
      "decay --config " + dir + "/device.conf",
      "witness --config " + dir + "/device.conf --format json",
      "feasibility --config " + dir + "/device.conf",
      "sweep --config " + dir + "/sweep.conf --seed 11",
      "validate --config " + dir + "/device.conf --beta 1 --fock-cutoff 30 --seed 5"};
  std::size_t identical = 0;
  for (const auto& args : runs) {
    int s1 = -1, s2 = -1;
    const std::string a = run_cli(args, s1);
    const std::string b = run_cli(args, s2);
    if (s1 == s2 && s1 != 1 && !a.empty() && a == b) ++identical;
  }
  return {identical == runs.size(),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " subcommands byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"correlation plateau", plateau},
      {"device correlation", device_correlation},
      {"witness asymptote", witness_asymptote},
      {"witness at the device point", device_witness},
      {"visibility expansion", visibility_expansion},
      {"oracle equivalence", oracle_equivalence},
      {"decoherence timescales", timescales},
      {"channel/pointer duality", pointer_duality},
      {"mass scaling", mass_scaling},
      {"feasibility echo", feasibility_echo},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << i + 1 << ". " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failed;
}
