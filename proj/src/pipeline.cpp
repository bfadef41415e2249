#include "burgers/pipeline.hpp"

#include <cmath>
#include <numeric>

namespace burgers::pipeline {

namespace fs = std::filesystem;

SnapshotSet run_truth(const config::ExperimentConfig& cfg) {
  cfg.validate();
  const fem::FemOperators ops = fem::assemble(cfg.grid, cfg.physical());
  const StateField ic = cfg.initial.build(cfg.grid);
  const std::vector<double> times = fem::equispaced_times(cfg.t_f, cfg.snapshot_count);
  Ode45Options opts;
  opts.rtol = cfg.rtol;
  opts.atol = cfg.atol;
  SnapshotSet truth = fem::integrate(ops, cfg.physical(), ic, cfg.t_f, times, opts);
  csv::write_fields(cfg.out_dir / "truth.csv", truth, cfg.grid.nodes());
  return truth;
}

Context prepare(const config::ExperimentConfig& cfg, bool reuse_cached_truth) {
  cfg.validate();
  Context ctx;
  ctx.cfg = cfg;
  ctx.ops = fem::assemble(cfg.grid, cfg.physical());
  ctx.times = fem::equispaced_times(cfg.t_f, cfg.snapshot_count);

  const fs::path truth_path = cfg.out_dir / "truth.csv";
  if (reuse_cached_truth && fs::exists(truth_path)) {
    ctx.truth = csv::load_fields(truth_path);
    if (ctx.truth.size() != std::size_t(cfg.snapshot_count) ||
        ctx.truth.states.front().w.size() != cfg.grid.n_nodes())
      throw ConfigError("cached truth.csv does not match the configuration");
  } else {
    ctx.truth = run_truth(cfg);
  }

  ctx.basis_w = pod::build_field_basis(ctx.truth, pod::FieldTag::velocity,
                                       cfg.r_w, ctx.ops.quad_weights);
  ctx.basis_T = pod::build_field_basis(ctx.truth, pod::FieldTag::temperature,
                                       cfg.r_T, ctx.ops.quad_weights);
  ctx.tensors = rom::project_tensors(ctx.ops, cfg.physical(), ctx.basis_w, ctx.basis_T);
  ctx.spectrum = rom::make_spectrum(ctx.basis_w, ctx.basis_T, ctx.tensors);
  ctx.q0 = rom::project_state(ctx.basis_w, ctx.basis_T, ctx.ops.quad_weights,
                              ctx.truth.states.front());
  return ctx;
}

void run_pod(const config::ExperimentConfig& cfg) {
  Context ctx = prepare(cfg);
  const VectorXd nodes = cfg.grid.nodes();
  csv::write_eigenvalues(cfg.out_dir / "pod_eigenvalues_w.csv", ctx.basis_w);
  csv::write_eigenvalues(cfg.out_dir / "pod_eigenvalues_T.csv", ctx.basis_T);
  csv::write_modes(cfg.out_dir / "pod_modes_w.csv", ctx.basis_w, nodes);
  csv::write_modes(cfg.out_dir / "pod_modes_T.csv", ctx.basis_T, nodes);
}

rom::RomTrajectory run_rom(const Context& ctx, const closures::ClosureSpec& closure,
                           const std::string& stem) {
  rom::RomState q0{ctx.q0, 0.0};
  rom::RomTrajectory traj = rom::integrate_rom(ctx.tensors, closure, ctx.spectrum,
                                               q0, ctx.cfg.t_f, ctx.times,
                                               ctx.ode_options());
  if (!traj.states.empty()) {
    const SnapshotSet fields = rom::reconstruct(ctx.basis_w, ctx.basis_T, traj);
    csv::write_fields(ctx.cfg.out_dir / (stem + ".csv"), fields,
                      ctx.cfg.grid.nodes());
    csv::write_coefficients(ctx.cfg.out_dir / (stem + "_coeffs.csv"), traj);
  }
  return traj;
}

double trajectory_cost(const Context& ctx, const rom::RomTrajectory& traj,
                       const es::CostWeights& weights) {
  if (traj.diverged || traj.size() != ctx.truth.size()) return es::kDivergedCost;
  const SnapshotSet fields = rom::reconstruct(ctx.basis_w, ctx.basis_T, traj);
  return es::learning_cost(ctx.truth, fields, ctx.ops.quad_weights, weights);
}

es::CostOracle make_cost_oracle(const Context& ctx) {
  return [&ctx](const std::vector<double>& mu) {
    closures::ClosureSpec spec = ctx.cfg.closure;
    spec.mu_e = mu.empty() ? 0.0 : mu[0];
    if (spec.has_nonlinear()) spec.mu_nl = mu.size() > 1 ? mu[1] : 0.0;
    rom::RomState q0{ctx.q0, 0.0};
    rom::RomTrajectory traj =
        rom::integrate_rom(ctx.tensors, spec, ctx.spectrum, q0, ctx.cfg.t_f,
                           ctx.times, ctx.ode_options());
    return trajectory_cost(ctx, traj, ctx.cfg.cost);
  };
}

TuneOutcome run_tune(const config::ExperimentConfig& cfg) {
  Context ctx = prepare(cfg);

  // Closure-off reference run; ES parameters play no role here.
  closures::ClosureSpec off;
  off.kind = closures::Kind::None;
  rom::RomTrajectory rom_g = run_rom(ctx, off, "rom_g");

  TuneOutcome out;
  out.cost_rom_g = trajectory_cost(ctx, rom_g, cfg.cost);

  const es::CostOracle oracle = make_cost_oracle(ctx);
  const std::size_t channels = cfg.closure.has_nonlinear() ? 2 : 1;
  es::EsParams params = cfg.es_params;
  if (params.channels() != channels)
    throw ConfigError("es channel count does not match the closure kind");
  out.state = es::tune(oracle, params, es::EsState::zero(channels));

  out.cost_initial = out.state.history.front().Q;
  out.cost_final = out.state.history.back().Q;
  out.tuned_gains = out.state.mu_hat;
  if (params.clamp)
    for (double& g : out.tuned_gains) g = std::max(g, 0.0);

  csv::write_history(cfg.out_dir / "history.csv", out.state.history);

  closures::ClosureSpec tuned = cfg.closure;
  tuned.mu_e = out.tuned_gains[0];
  if (tuned.has_nonlinear() && out.tuned_gains.size() > 1)
    tuned.mu_nl = out.tuned_gains[1];
  rom::RomTrajectory best = run_rom(ctx, tuned, "rom_tuned");

  if (!best.diverged && best.size() == ctx.truth.size()) {
    const SnapshotSet fields = rom::reconstruct(ctx.basis_w, ctx.basis_T, best);
    out.temp_error_tuned = es::learning_cost(ctx.truth, fields,
                                             ctx.ops.quad_weights, {1.0, 0.0});

    SnapshotSet errors;
    errors.times = ctx.truth.times;
    errors.states.resize(ctx.truth.size());
    for (std::size_t j = 0; j < ctx.truth.size(); ++j) {
      errors.states[j].t = ctx.truth.times[j];
      errors.states[j].w = ctx.truth.states[j].w - fields.states[j].w;
      errors.states[j].T = ctx.truth.states[j].T - fields.states[j].T;
    }
    errors.compute_means();
    csv::write_fields(cfg.out_dir / "errors.csv", errors, cfg.grid.nodes(),
                      "e_w", "e_T");
  } else {
    out.temp_error_tuned = es::kDivergedCost;
  }
  return out;
}

ReportSummary report(const fs::path& dir) {
  const std::vector<es::HistoryRow> rows = csv::load_history(dir / "history.csv");
  if (rows.empty()) throw IoError("history.csv is empty");

  ReportSummary s;
  s.iterations = rows.size() - 1;
  s.cost_initial = rows.front().Q;
  s.cost_final = rows.back().Q;
  s.cost_min = rows.front().Q;
  for (const auto& r : rows) s.cost_min = std::min(s.cost_min, r.Q);
  s.final_gains = rows.back().mu;

  const std::size_t tail = std::min<std::size_t>(100, rows.size());
  double mean = 0.0;
  for (std::size_t j = rows.size() - tail; j < rows.size(); ++j)
    mean += rows[j].mu[0];
  mean /= double(tail);
  double var = 0.0;
  for (std::size_t j = rows.size() - tail; j < rows.size(); ++j) {
    const double d = rows[j].mu[0] - mean;
    var += d * d;
  }
  s.plateau_mean = mean;
  s.plateau_std = std::sqrt(var / double(tail));
  return s;
}

}  // namespace burgers::pipeline
