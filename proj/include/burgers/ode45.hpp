#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace burgers {

// Adaptive embedded Runge-Kutta 4(5), Dormand-Prince pair, with the standard
// degree-4 dense-output polynomial evaluated at requested sample times.

enum class OdeStatus { Success, Diverged, StepUnderflow, NonFinite };

struct Ode45Options {
  double rtol = 1e-6;
  double atol = 1e-8;
  double initial_step = 0.0;  // 0 = choose automatically
  double max_step = std::numeric_limits<double>::infinity();
  // Abort (status Diverged) when the 2-norm of the state exceeds this.
  double divergence_norm = std::numeric_limits<double>::infinity();
  long max_steps = 50'000'000;
};

struct Ode45Result {
  OdeStatus status = OdeStatus::Success;
  double t_final = 0.0;                   // time reached (failure time on abort)
  Eigen::VectorXd y_final;
  std::vector<Eigen::VectorXd> samples;   // states at the sample times covered
  long n_accepted = 0;
  long n_rejected = 0;
};

namespace ode45_detail {

// Butcher tableau of the Dormand-Prince 5(4) pair.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights (error estimate).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

// Dense-output polynomial coefficients: y(t+th*h) = y + h*sum_i k_i*P_i(th),
// P_i(th) = th*(BI[i][0] + th*(BI[i][1] + th*(BI[i][2] + th*BI[i][3]))).
constexpr double BI[7][4] = {
    {1.0, -183.0 / 64, 37.0 / 12, -145.0 / 128},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 1500.0 / 371, -1000.0 / 159, 1000.0 / 371},
    {0.0, -125.0 / 32, 125.0 / 12, -375.0 / 64},
    {0.0, 9477.0 / 3392, -729.0 / 106, 25515.0 / 6784},
    {0.0, -11.0 / 7, 11.0 / 3, -55.0 / 28},
    {0.0, 3.0 / 2, -4.0, 5.0 / 2}};

}  // namespace ode45_detail

/// Integrates dy/dt = f(t, y, dy) from t0 to t1, filling result.samples with
/// the dense-output states at the (sorted, within [t0,t1]) sample_times.
template <class F>
Ode45Result ode45(F&& f, const Eigen::VectorXd& y0, double t0, double t1,
                  std::span<const double> sample_times,
                  const Ode45Options& opts = {}) {
  using namespace ode45_detail;
  using Eigen::VectorXd;

  Ode45Result res;
  const Eigen::Index n = y0.size();
  VectorXd y = y0;
  VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  VectorXd ytmp(n), ynew(n), yerr(n);

  double t = t0;
  const double span = t1 - t0;

  std::size_t next_sample = 0;
  // Samples at (or numerically before) t0 take the initial state.
  while (next_sample < sample_times.size() &&
         sample_times[next_sample] <= t0 + 1e-14 * std::max(1.0, std::abs(t0))) {
    res.samples.push_back(y);
    ++next_sample;
  }

  f(t, y, k1);
  if (!k1.allFinite()) {
    res.status = OdeStatus::NonFinite;
    res.t_final = t;
    res.y_final = y;
    return res;
  }

  double h = opts.initial_step;
  if (h <= 0.0) {
    // Scale-based guess, refined by the controller on the first steps.
    const double d0 = y.cwiseAbs().maxCoeff();
    const double d1 = k1.cwiseAbs().maxCoeff();
    h = (d1 > 1e-12 * std::max(d0, 1.0)) ? 0.01 * std::max(d0, opts.atol) / d1
                                         : span / 100.0;
    h = std::min(h, span / 10.0);
  }
  h = std::min(h, opts.max_step);

  const double hmin_floor = 16.0 * std::numeric_limits<double>::epsilon();

  for (long step = 0; step < opts.max_steps; ++step) {
    if (t >= t1) break;
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    if (h < hmin_floor * std::max(std::abs(t), 1.0)) {
      res.status = OdeStatus::StepUnderflow;
      res.t_final = t;
      res.y_final = y;
      return res;
    }

    ytmp = y + h * (a21 * k1);
    f(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, ynew, k7);

    if (!ynew.allFinite() || !k7.allFinite()) {
      res.status = OdeStatus::NonFinite;
      res.t_final = t;
      res.y_final = y;
      return res;
    }

    yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc =
          opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double q = yerr[i] / sc;
      err += q * q;
    }
    err = std::sqrt(err / double(n));

    if (err <= 1.0) {
      // Dense output for every sample time inside (t, t_next]; a sample at the
      // step end takes the step result itself.
      const double t_next = last ? t1 : t + h;
      while (next_sample < sample_times.size() &&
             sample_times[next_sample] <= t_next) {
        const double ts = sample_times[next_sample];
        const double th = (ts - t) / h;
        if (th >= 1.0) {
          res.samples.push_back(ynew);
        } else {
          VectorXd ys = y;
          const VectorXd* ks[7] = {&k1, &k2, &k3, &k4, &k5, &k6, &k7};
          for (int i = 0; i < 7; ++i) {
            const double p =
                th * (BI[i][0] + th * (BI[i][1] + th * (BI[i][2] + th * BI[i][3])));
            if (p != 0.0) ys += (h * p) * (*ks[i]);
          }
          res.samples.push_back(std::move(ys));
        }
        ++next_sample;
      }

      t = t_next;
      y.swap(ynew);
      k1.swap(k7);  // first-same-as-last
      ++res.n_accepted;

      if (y.norm() > opts.divergence_norm) {
        res.status = OdeStatus::Diverged;
        res.t_final = t;
        res.y_final = y;
        return res;
      }

      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h = std::min(h * std::clamp(fac, 0.2, 5.0), opts.max_step);
    } else {
      ++res.n_rejected;
      const double fac = std::max(0.9 * std::pow(err, -0.2), 0.2);
      h *= fac;
    }
  }

  // Sample times equal to t1 up to representation noise.
  while (next_sample < sample_times.size() &&
         sample_times[next_sample] <= t1 + 1e-12 * std::max(1.0, std::abs(t1))) {
    res.samples.push_back(y);
    ++next_sample;
  }

  res.status = OdeStatus::Success;
  res.t_final = t1;
  res.y_final = y;
  return res;
}

}  // namespace burgers
