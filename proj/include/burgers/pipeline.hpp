#pragma once

#include <filesystem>
#include <optional>

#include "burgers/config.hpp"
#include "burgers/csv.hpp"
#include "burgers/es.hpp"
#include "burgers/fem.hpp"
#include "burgers/pod.hpp"
#include "burgers/rom.hpp"

namespace burgers::pipeline {

/// Shared state of one experiment: operators, cached truth, bases, tensors.
struct Context {
  config::ExperimentConfig cfg;
  fem::FemOperators ops;
  SnapshotSet truth;
  pod::PodBasis basis_w;
  pod::PodBasis basis_T;
  rom::RomTensors tensors;
  closures::ModeSpectrum spectrum;
  VectorXd q0;
  std::vector<double> times;

  Ode45Options ode_options() const {
    Ode45Options o;
    o.rtol = cfg.rtol;
    o.atol = cfg.atol;
    return o;
  }
};

/// Solves the truth trajectory (or loads out_dir/truth.csv when present) and
/// builds POD bases and ROM tensors.
Context prepare(const config::ExperimentConfig& cfg, bool reuse_cached_truth = true);

/// FEM solve only; writes out_dir/truth.csv. Re-running overwrites.
SnapshotSet run_truth(const config::ExperimentConfig& cfg);

/// POD stage; writes eigenvalue and mode CSVs for both fields.
void run_pod(const config::ExperimentConfig& cfg);

/// Integrates the ROM with the given closure and writes the reconstructed
/// fields plus the coefficient trajectory under the given file stem.
rom::RomTrajectory run_rom(const Context& ctx, const closures::ClosureSpec& closure,
                           const std::string& stem);

/// Cost of a ROM trajectory against the cached truth; diverged or truncated
/// trajectories map to the finite sentinel.
double trajectory_cost(const Context& ctx, const rom::RomTrajectory& traj,
                       const es::CostWeights& weights);

/// Cost oracle over the closure amplitudes (mu_e, and mu_nl when the closure
/// has a nonlinear part).
es::CostOracle make_cost_oracle(const Context& ctx);

struct TuneOutcome {
  es::EsState state;
  double cost_initial = 0.0;
  double cost_final = 0.0;
  double cost_rom_g = 0.0;
  double temp_error_tuned = 0.0;   // int <e_T,e_T> dt of the tuned ROM
  std::vector<double> tuned_gains;  // clamped final estimates
};

/// Full experiment: truth -> POD -> ROM -> ES tuning. Writes truth.csv,
/// history.csv, rom_g.csv, rom_tuned.csv, errors.csv (plus coefficient files)
/// into cfg.out_dir.
TuneOutcome run_tune(const config::ExperimentConfig& cfg);

struct ReportSummary {
  std::size_t iterations = 0;
  double cost_initial = 0.0;
  double cost_final = 0.0;
  double cost_min = 0.0;
  std::vector<double> final_gains;
  double plateau_std = 0.0;
  double plateau_mean = 0.0;
};

/// Summarizes an experiment directory from its history.csv.
ReportSummary report(const std::filesystem::path& dir);

}  // namespace burgers::pipeline
