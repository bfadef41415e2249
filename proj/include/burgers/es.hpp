#pragma once

#include <functional>
#include <vector>

#include "burgers/types.hpp"

namespace burgers::es {

// Finite sentinel cost assigned to diverged ROM trajectories.
constexpr double kDivergedCost = 1e12;

struct CostWeights {
  double Q1 = 1.0;  // temperature error weight
  double Q2 = 1.0;  // velocity error weight

  void validate() const {
    if (Q1 < 0.0 || Q2 < 0.0 || (Q1 == 0.0 && Q2 == 0.0))
      throw ConfigError("cost weights must be nonnegative and not both zero");
  }
};

/// Q = Q1 * int <e_T,e_T> dt + Q2 * int <e_w,e_w> dt, trapezoid in space and
/// time. Both sets must carry identical time stamps.
double learning_cost(const SnapshotSet& truth, const SnapshotSet& rom_fields,
                     const VectorXd& quad_weights, const CostWeights& weights);

/// Per-channel dither parameters of the discrete ES law. Two channels use
/// distinct frequencies; channel amplitudes may be zero (frozen channel).
struct EsParams {
  std::vector<double> a;      // dither amplitudes
  std::vector<double> omega;  // dither frequencies [rad/s]
  double t_f = 1.0;           // cost-evaluation horizon
  int max_iters = 500;
  bool clamp = true;  // clamp estimates at zero before they reach the closure
  // Literal reading of the published dual recurrence, whose second channel
  // dithers on y2 instead of the iteration phase (see es_step_dual).
  bool literal_dual_phase = false;

  std::size_t channels() const { return a.size(); }
  void validate() const;
};

struct HistoryRow {
  long k = 0;
  std::vector<double> mu;
  double Q = 0.0;
};

struct EsState {
  std::vector<double> y;
  std::vector<double> mu_hat;
  long k = 0;
  std::vector<HistoryRow> history;
  long clamp_events = 0;

  static EsState zero(std::size_t channels);
};

/// One step of y(k+1) = y(k) + a*t_f*sin(w*t_f*k + pi/2) * Q,
///             mu(k+1) = y(k+1) + a*sin(w*t_f*k - pi/2).
/// Appends (k, mu(k), Q) to the history before advancing.
EsState es_step_single(const EsState& state, double Q_value, const EsParams& params);

/// Two channels driven by the same cost sample.
EsState es_step_dual(const EsState& state, double Q_value, const EsParams& params);

using CostOracle = std::function<double(const std::vector<double>& mu)>;

/// Runs max_iters steps against the oracle (called with clamped estimates when
/// params.clamp is set) and appends a terminal history row for the final
/// estimate. Deterministic given the oracle.
EsState tune(const CostOracle& oracle, const EsParams& params,
             const EsState& initial);

}  // namespace burgers::es
