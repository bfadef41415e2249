#include "burgers/es.hpp"

#include <cmath>
#include <string>

#include "burgers/kernels.hpp"

namespace burgers::es {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_times(const SnapshotSet& a, const SnapshotSet& b) {
  if (a.times.size() != b.times.size())
    throw TimeGridMismatch("trajectories sampled at different time counts");
  for (std::size_t j = 0; j < a.times.size(); ++j) {
    const double tol = 1e-12 * std::max(1.0, std::abs(a.times[j]));
    if (std::abs(a.times[j] - b.times[j]) > tol)
      throw TimeGridMismatch("trajectory time stamps differ at index " +
                             std::to_string(j));
  }
}
}  // namespace

double learning_cost(const SnapshotSet& truth, const SnapshotSet& rom_fields,
                     const VectorXd& quad_weights, const CostWeights& weights) {
  weights.validate();
  truth.validate();
  rom_fields.validate();
  check_times(truth, rom_fields);

  const long s = long(truth.size());
  const long n = long(truth.states.front().w.size());
  if (rom_fields.states.front().w.size() != n)
    throw DimensionMismatch("learning_cost: field sizes differ");

  // Pack row-major for the error kernel.
  std::vector<double> Aw(std::size_t(s) * n), Bw(Aw.size()), At(Aw.size()),
      Bt(Aw.size());
  for (long j = 0; j < s; ++j) {
    for (long i = 0; i < n; ++i) {
      Aw[std::size_t(j) * n + i] = truth.states[j].w[i];
      Bw[std::size_t(j) * n + i] = rom_fields.states[j].w[i];
      At[std::size_t(j) * n + i] = truth.states[j].T[i];
      Bt[std::size_t(j) * n + i] = rom_fields.states[j].T[i];
    }
  }
  std::vector<double> ew(s), eT(s);
  kernels::error_energy(Aw.data(), Bw.data(), s, n, quad_weights.data(), ew.data());
  kernels::error_energy(At.data(), Bt.data(), s, n, quad_weights.data(), eT.data());

  double int_w = 0.0, int_T = 0.0;
  for (long j = 0; j + 1 < s; ++j) {
    const double dt = truth.times[j + 1] - truth.times[j];
    int_w += 0.5 * dt * (ew[j] + ew[j + 1]);
    int_T += 0.5 * dt * (eT[j] + eT[j + 1]);
  }
  return weights.Q1 * int_T + weights.Q2 * int_w;
}

void EsParams::validate() const {
  if (a.size() != omega.size() || a.empty() || a.size() > 2)
    throw ConfigError("es: expected one or two (a, omega) channels");
  for (double ai : a)
    if (!(ai >= 0.0)) throw ConfigError("es.a must be >= 0");
  for (double wi : omega)
    if (!(wi > 0.0)) throw ConfigError("es.omega must be > 0");
  if (!(t_f > 0.0)) throw ConfigError("es.t_f must be > 0");
  if (max_iters < 0) throw ConfigError("es.max_iters must be >= 0");
  if (a.size() == 2 && omega[0] == omega[1])
    throw EqualFrequencies("dual ES channels need distinct dither frequencies");
}

EsState EsState::zero(std::size_t channels) {
  EsState s;
  s.y.assign(channels, 0.0);
  s.mu_hat.assign(channels, 0.0);
  return s;
}

EsState es_step_single(const EsState& state, double Q_value,
                       const EsParams& params) {
  if (!std::isfinite(Q_value))
    throw NonFiniteCost("es_step: non-finite cost sample");
  if (state.y.size() != 1 || params.channels() != 1)
    throw DimensionMismatch("es_step_single: expected one channel");

  EsState next = state;
  next.history.push_back({state.k, state.mu_hat, Q_value});
  const double phase = params.omega[0] * params.t_f * double(state.k);
  next.y[0] = state.y[0] +
              params.a[0] * params.t_f * std::sin(phase + kPi / 2) * Q_value;
  next.mu_hat[0] = next.y[0] + params.a[0] * std::sin(phase - kPi / 2);
  next.k = state.k + 1;
  return next;
}

EsState es_step_dual(const EsState& state, double Q_value, const EsParams& params) {
  if (!std::isfinite(Q_value))
    throw NonFiniteCost("es_step: non-finite cost sample");
  if (state.y.size() != 2 || params.channels() != 2)
    throw DimensionMismatch("es_step_dual: expected two channels");
  if (params.omega[0] == params.omega[1])
    throw EqualFrequencies("dual ES channels need distinct dither frequencies");

  EsState next = state;
  next.history.push_back({state.k, state.mu_hat, Q_value});
  const double k = double(state.k);

  const double ph1 = params.omega[0] * params.t_f * k;
  next.y[0] =
      state.y[0] + params.a[0] * params.t_f * std::sin(ph1 + kPi / 2) * Q_value;
  next.mu_hat[0] = next.y[0] + params.a[0] * std::sin(ph1 - kPi / 2);

  // Symmetric reading: both channels dither on the iteration phase. The
  // literal published form feeds y2 back into its own dither argument; that
  // variant is kept reachable for comparison.
  const double ph2 = params.literal_dual_phase ? params.omega[1] * state.y[1]
                                               : params.omega[1] * params.t_f * k;
  next.y[1] =
      state.y[1] + params.a[1] * params.t_f * std::sin(ph2 + kPi / 2) * Q_value;
  next.mu_hat[1] = next.y[1] + params.a[1] * std::sin(params.omega[1] * params.t_f * k - kPi / 2);
  next.k = state.k + 1;
  return next;
}

EsState tune(const CostOracle& oracle, const EsParams& params,
             const EsState& initial) {
  params.validate();
  const std::size_t ch = params.channels();
  if (initial.y.size() != ch || initial.mu_hat.size() != ch)
    throw DimensionMismatch("tune: initial state channel count mismatch");

  EsState state = initial;
  std::vector<double> applied(ch);

  auto evaluate = [&](long k) {
    for (std::size_t c = 0; c < ch; ++c) {
      double v = state.mu_hat[c];
      if (params.clamp && v < 0.0) {
        v = 0.0;
        ++state.clamp_events;
      }
      applied[c] = v;
    }
    try {
      return oracle(applied);
    } catch (const Error& e) {
      throw Error("cost oracle failed at tuning iteration " + std::to_string(k) +
                  ": " + e.what());
    }
  };

  for (int it = 0; it < params.max_iters; ++it) {
    const double Q = evaluate(state.k);
    state = ch == 1 ? es_step_single(state, Q, params)
                    : es_step_dual(state, Q, params);
  }
  // Terminal record for the final estimate.
  const double Q_final = evaluate(state.k);
  state.history.push_back({state.k, state.mu_hat, Q_final});
  return state;
}

}  // namespace burgers::es
