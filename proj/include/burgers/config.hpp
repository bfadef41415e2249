#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "burgers/closures.hpp"
#include "burgers/es.hpp"
#include "burgers/types.hpp"

namespace burgers::config {

struct InitialCondition {
  enum class Kind { PaperStep, Custom };
  Kind kind = Kind::PaperStep;
  // Custom nodal samples; must conform to the grid.
  std::vector<double> w;
  std::vector<double> T;

  StateField build(const GridSpec& grid) const;
};

/// Everything one experiment needs; mirrors the structure of the JSON config
/// files (see docs/config.md and the shipped presets).
struct ExperimentConfig {
  std::string name = "custom";
  GridSpec grid;
  double reynolds = 1000.0;
  double kappa = 5e-4;
  double heat_diffusion = 1e-2;
  double w_left = 0.0, w_right = 0.0, T_left = 0.0, T_right = 0.0;
  InitialCondition initial;
  double t_f = 1.0;
  int snapshot_count = 101;
  int r_w = 10;
  int r_T = 10;
  closures::ClosureSpec closure;
  es::EsParams es_params;
  es::CostWeights cost;
  double rtol = 1e-6;
  double atol = 1e-8;
  std::filesystem::path out_dir = "out";
  unsigned long seed = 0;  // randomized tests only; the pipeline is deterministic

  PhysicalParams physical() const;
  void validate() const;
};

ExperimentConfig preset_test1();
ExperimentConfig preset_test2();

/// Returns the named preset or throws ConfigError.
ExperimentConfig preset(const std::string& name);

ExperimentConfig load(const std::filesystem::path& json_path);
void save(const ExperimentConfig& cfg, const std::filesystem::path& json_path);

std::string to_json(const ExperimentConfig& cfg);
ExperimentConfig from_json(const std::string& text);

}  // namespace burgers::config
