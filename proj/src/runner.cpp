#include "ome/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "ome/error.hpp"
#include "ome/oracle.hpp"

namespace ome {

using nlohmann::json;

namespace {

std::string num(double v) { return format_number(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

RunOutput run_correlations(const RunConfig& cfg) {
  const PhysParams& p = cfg.params;
  RunOutput out;
  const CorrelationResult r = correlations(p);
  const double closed = correlation_closed_form(p);
  if (p.beta < 10.0) out.warnings.push_back("closed-form correlation assumes beta >> 1");
  out.table.header = {"method", "p_pp", "p_pm", "p_mp", "p_mm", "correlation", "closed_form"};
  out.table.rows.push_back({to_string(r.method), num(r.p_pp), num(r.p_pm), num(r.p_mp),
                            num(r.p_mm), num(r.correlation), num(closed)});
  out.json = {{"result", r}, {"closed_form", closed}};
  return out;
}

RunOutput run_visibility(const RunConfig& cfg, const RunOptions& opts) {
  const PhysParams& p = cfg.params;
  std::optional<PointerDistribution> noise;
  if (opts.model)
    noise = pointer_distribution(DecoherenceModel::from_params(*opts.model, p), p, opts.n);
  const InterferenceResult r = visibility_pipeline(p, noise);
  const double spread = residual_phase_std(p);
  RunOutput out;
  out.table.header = {"visibility", "coherence_visibility", "p00", "p01", "p10", "p11",
                      "negativity_lb", "phase_spread"};
  out.table.rows.push_back({num(r.visibility), num(r.coherence_visibility), num(r.p00),
                            num(r.p01), num(r.p10), num(r.p11), num(r.negativity_lb),
                            num(spread)});
  out.json = {{"result", r}, {"phase_spread", spread}};
  return out;
}

RunOutput run_decay(const RunConfig& cfg, const RunOptions& opts) {
  if (opts.n_max < 1) throw ConfigError("--n-max must be >= 1");
  std::vector<ModelKind> kinds = opts.model ? std::vector{*opts.model} : cfg.models;
  RunOutput out;
  out.table.header = {"model", "n", "deficit", "valid"};
  std::vector<DecayRow> rows;
  for (ModelKind kind : kinds) {
    const auto model = DecoherenceModel::from_params(kind, cfg.params);
    for (int n = 1; n <= opts.n_max; ++n) {
      const DecayResult d = visibility_decay(model, cfg.params, n);
      rows.push_back({kind, n, d.deficit, d.valid});
      out.table.rows.push_back({to_string(kind), std::to_string(n), num(d.deficit), flag(d.valid)});
      out.constraints_ok = out.constraints_ok && d.valid;
    }
  }
  out.json = {{"rows", rows}};
  return out;
}

RunOutput run_witness(const RunConfig& cfg) {
  const WitnessReport w = evaluate_witness(cfg.params);
  RunOutput out;
  out.table.header = {"verdict", "negativity_lb", "o_bm", "refined_bound", "correlation",
                      "p_pp", "p_pm", "p_mp", "p_mm", "visibility", "p00", "p01", "p10", "p11"};
  const auto& c = w.correlations;
  const auto& i = w.interference;
  out.table.rows.push_back({to_string(w.verdict), num(w.negativity_lb), num(w.o_bm),
                            num(w.refined_bound), num(c.correlation), num(c.p_pp), num(c.p_pm),
                            num(c.p_mp), num(c.p_mm), num(i.visibility), num(i.p00), num(i.p01),
                            num(i.p10), num(i.p11)});
  out.json = {{"result", w}};
  return out;
}

RunOutput run_feasibility(const RunConfig& cfg) {
  const FeasibilityReport r = derive(cfg.params, cfg.feasibility);
  std::vector<DecoherenceModel> models;
  for (ModelKind k : cfg.models) models.push_back(DecoherenceModel::from_params(k, cfg.params));
  const auto ranked = testability(cfg.params, models, M_PI / cfg.params.omega_m);

  RunOutput out;
  out.table.header = {"quantity", "value"};
  auto row = [&](const std::string& k, const std::string& v) { out.table.rows.push_back({k, v}); };
  row("x0", num(r.x0));
  row("p0", num(r.p0));
  row("g0", num(r.g0));
  row("tau", num(r.tau));
  row("g0_over_omega_m", num(r.g0_over_omega_m));
  row("macroscopicity", num(r.macroscopicity));
  row("correlation_target", num(r.correlation_target));
  row("epsilon_nl", num(r.epsilon_nl));
  row("dx_over_x0", num(r.dx_over_x0));
  row("phase_spread", num(r.phase_spread));
  row("epsilon_bar", num(r.epsilon_bar));
  row("epsilon_bar_rule", num(r.epsilon_bar_rule));
  row("n_eff", num(r.n_eff));
  row("Np_max", num(r.Np_max));
  row("eid_condition_T_max", num(r.eid_condition_T_max));
  for (const auto& [kind, t] : r.timescales) row("timescale." + to_string(kind), num(t));
  for (const auto& f : r.constraint_flags) {
    row("flag." + f.name, flag(f.passed));
    out.constraints_ok = out.constraints_ok && f.passed;
  }
  for (const auto& e : ranked) row("testable." + to_string(e.model), flag(e.testable));
  out.json = {{"result", r}, {"testability", ranked}};
  return out;
}

RunOutput run_sweep(const RunConfig& cfg, const RunOptions& opts) {
  const std::string& sub = cfg.sweep_subcommand;
  if (sub != "correlations" && sub != "visibility" && sub != "witness")
    throw ConfigError("sweep.subcommand must be correlations, visibility or witness");
  if (cfg.sweep.empty()) throw ConfigError("sweep needs at least one sweep.axis");

  std::vector<std::vector<double>> axes;
  std::size_t points = 1;
  for (const auto& a : cfg.sweep) {
    axes.push_back(a.values());
    points *= axes.back().size();
  }

  std::vector<RunOutput> results(points);
  std::vector<std::exception_ptr> errors(points);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points; i = next++) {
      try {
        RunConfig point = cfg;
        std::size_t rem = i;
        // Last axis varies fastest.
        for (std::size_t a = axes.size(); a-- > 0;) {
          point.params.set(cfg.sweep[a].name, axes[a][rem % axes[a].size()]);
          rem /= axes[a].size();
        }
        point.params.validate();
        results[i] = execute(sub, point, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers = std::min(cfg.workers, points);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunOutput out;
  for (const auto& a : cfg.sweep) out.table.header.push_back(a.name);
  const auto& sub_header = results.front().table.header;
  out.table.header.insert(out.table.header.end(), sub_header.begin(), sub_header.end());
  out.json = {{"axes", json::array()}, {"points", json::array()}};
  for (const auto& a : cfg.sweep) out.json["axes"].push_back(a.name);
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<std::string> coords(axes.size());
    json at = json::object();
    std::size_t rem = i;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const double v = axes[a][rem % axes[a].size()];
      coords[a] = num(v);
      at[cfg.sweep[a].name] = v;
      rem /= axes[a].size();
    }
    for (const auto& r : results[i].table.rows) {
      std::vector<std::string> row = coords;
      row.insert(row.end(), r.begin(), r.end());
      out.table.rows.push_back(std::move(row));
    }
    out.json["points"].push_back({{"at", at}, {"report", results[i].json}});
    out.constraints_ok = out.constraints_ok && results[i].constraints_ok;
    for (const auto& w : results[i].warnings)
      if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end())
        out.warnings.push_back(w);
  }
  return out;
}

RunOutput run_validate(const RunConfig& cfg, const RunOptions& opts) {
  PhysParams p = cfg.params;
  if (opts.beta) p.beta = *opts.beta;
  const std::size_t cutoff = opts.fock_cutoff.value_or(cfg.fock_cutoff);
  if (cutoff < 16) throw ConfigError("fock cutoff must be >= 16");
  p.validate();

  RunOutput out;
  if (p.beta > 3.0) out.warnings.push_back("oracle checks are calibrated for beta <= 3");
  out.table.header = {"check", "engine", "oracle", "deviation", "tolerance", "pass"};
  out.json = {{"checks", json::array()}};
  auto check = [&](const std::string& name, double engine, double reference, double dev,
                   double tol) {
    const bool ok = dev <= tol;
    out.table.rows.push_back({name, num(engine), num(reference), num(dev), num(tol), flag(ok)});
    out.json["checks"].push_back({{"check", name}, {"engine", engine}, {"oracle", reference},
                                  {"deviation", dev}, {"tolerance", tol}, {"pass", ok}});
    out.constraints_ok = out.constraints_ok && ok;
  };

  const double t1 = M_PI / (2.0 * p.omega_m);
  const double t2 = M_PI / p.omega_m;
  const HybridState input = prepare_input(p, default_kmax(p.beta));
  const HybridState s1 = evolve(input, t1, p);
  const HybridState s2 = evolve(input, t2, p);
  const Eigen::VectorXcd o1 = oracle::hybrid_state(p, t1, cutoff);
  const Eigen::VectorXcd o2 = oracle::hybrid_state(p, t2, cutoff);

  const double n_engine = norm(s1);
  const double n_oracle = o1.squaredNorm();
  check("norm", n_engine, n_oracle, std::abs(n_engine - n_oracle), 1e-6);
  const Complex ov_engine = inner_product(s1, s2);
  const Complex ov_oracle = o1.dot(o2);
  check("overlap", std::abs(ov_engine), std::abs(ov_oracle), std::abs(ov_engine - ov_oracle), 1e-6);

  const DensityMatrix rho = reduced_optical_state(s1);
  const Eigen::MatrixXcd rho_o = oracle::reduced_optical_state(o1, cutoff);
  const Eigen::Index dim = std::min<Eigen::Index>(rho.entries().rows(), rho_o.rows());
  const double rho_dev =
      (rho.entries().topLeftCorner(dim, dim) - rho_o.topLeftCorner(dim, dim)).cwiseAbs().maxCoeff();
  check("reduced_state", 0.0, 0.0, rho_dev, 1e-6);

  const CorrelationResult c_engine = joint_probabilities_exact(s1, p);
  const CorrelationResult c_oracle = oracle::joint_probabilities(p, cutoff, cfg.mc_samples, cfg.seed);
  const double c_tol = p.n_th > 0.0 ? 5.0 / std::sqrt(static_cast<double>(cfg.mc_samples)) : 1e-6;
  const double c_dev = std::max({std::abs(c_engine.p_pp - c_oracle.p_pp),
                                 std::abs(c_engine.p_pm - c_oracle.p_pm),
                                 std::abs(c_engine.p_mp - c_oracle.p_mp),
                                 std::abs(c_engine.p_mm - c_oracle.p_mm)});
  check("joint_probabilities", c_engine.correlation, c_oracle.correlation, c_dev, c_tol);

  const InterferenceResult v_engine = visibility_pipeline(p);
  const auto v_oracle = oracle::interference(p.beta, residual_phase_std(p),
                                             PointerDistribution::identity(), cutoff);
  const auto& vo = v_oracle.result;
  check("visibility", v_engine.visibility, vo.visibility,
        std::abs(v_engine.visibility - vo.visibility), 1e-6);
  check("coherence_visibility", v_engine.coherence_visibility, vo.coherence_visibility,
        std::abs(v_engine.coherence_visibility - vo.coherence_visibility), 1e-6);
  const double p_dev = std::max({std::abs(v_engine.p00 - vo.p00), std::abs(v_engine.p01 - vo.p01),
                                 std::abs(v_engine.p10 - vo.p10), std::abs(v_engine.p11 - vo.p11)});
  check("populations", v_engine.p01, vo.p01, p_dev, 1e-6);
  check("negativity_lb", v_engine.negativity_lb, vo.negativity_lb,
        std::abs(v_engine.negativity_lb - vo.negativity_lb), 1e-6);
  check("negativity_bound_sound", v_engine.negativity_lb, v_oracle.mean_negativity,
        std::max(0.0, v_engine.negativity_lb - v_oracle.mean_negativity), 1e-9);

  const PointerDistribution noise = PointerDistribution::gaussian_phase(0.05);
  const PhaseNoiseResult x_route = phase_noise_x_space(noise, p.beta);
  const PhaseNoiseResult phi_route = phase_noise_phi_space(noise, p.beta);
  const double channel = oracle::interference(p.beta, 0.0, noise, cutoff).result.coherence_visibility;
  check("phase_noise_x_space", x_route.visibility, channel,
        std::abs(x_route.visibility - channel), 1e-6);
  check("phase_noise_phi_space", phi_route.visibility, channel,
        std::abs(phi_route.visibility - channel), 1e-6);
  return out;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"correlations", "visibility", "decay", "witness",
                                                 "feasibility",  "sweep",      "validate"};
  return names;
}

RunOutput execute(const std::string& subcommand, const RunConfig& cfg, const RunOptions& opts) {
  if (subcommand == "correlations") return run_correlations(cfg);
  if (subcommand == "visibility") return run_visibility(cfg, opts);
  if (subcommand == "decay") return run_decay(cfg, opts);
  if (subcommand == "witness") return run_witness(cfg);
  if (subcommand == "feasibility") return run_feasibility(cfg);
  if (subcommand == "sweep") return run_sweep(cfg, opts);
  if (subcommand == "validate") return run_validate(cfg, opts);
  throw ConfigError("unknown subcommand '" + subcommand + "'");
}

int run(const std::string& subcommand, const RunConfig& cfg, const RunOptions& opts,
        std::ostream& out, std::ostream& err) {
  try {
    const RunOutput result = execute(subcommand, cfg, opts);
    for (const auto& w : cfg.params.validate()) err << "warning: " << w << '\n';
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';

    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path, std::ios::binary);
      if (!file) throw ConfigError("cannot write '" + cfg.output_path + "'");
    }
    std::ostream& sink = cfg.output_path.empty() ? out : file;
    if (cfg.format == "json") {
      sink << result.json.dump(2) << '\n';
    } else {
      write_csv(result.table, sink);
    }
    if (!result.constraints_ok) {
      err << (opts.strict ? "error" : "warning") << ": constraint check failed\n";
      if (opts.strict) return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ome
