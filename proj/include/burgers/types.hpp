#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Uniform 1-D grid on [0,1] with n_elements linear elements.
struct GridSpec {
  int n_elements = 100;

  double dx() const { return 1.0 / n_elements; }
  int n_nodes() const { return n_elements + 1; }

  VectorXd nodes() const {
    VectorXd x(n_nodes());
    const double h = dx();
    for (int i = 0; i < n_nodes(); ++i) x[i] = i * h;
    x[n_elements] = 1.0;
    return x;
  }

  void validate() const {
    if (n_elements < 2) throw InvalidGrid("grid.n_elements must be >= 2");
  }

  bool operator==(const GridSpec& o) const { return n_elements == o.n_elements; }
};

/// Coefficients and boundary data of the coupled Burgers system.
/// mu = 1/Re, kappa = thermal expansion, c = heat diffusion.
struct PhysicalParams {
  double mu = 1e-3;
  double kappa = 5e-4;
  double c = 1e-2;
  std::function<double(double, double)> forcing;  // f(t,x); empty means zero
  double w_left = 0.0;   // Dirichlet w(t,0)
  double w_right = 0.0;  // Neumann dw/dx(t,1)
  double T_left = 0.0;   // Dirichlet T(t,0)
  double T_right = 0.0;  // Dirichlet T(t,1)

  void validate() const {
    if (!(mu > 0.0)) throw ConfigError("physical.mu must be > 0");
    if (!(c > 0.0)) throw ConfigError("physical.c must be > 0");
  }
};

/// Nodal velocity/temperature pair at one time instant.
struct StateField {
  VectorXd w;
  VectorXd T;
  double t = 0.0;

  void require_size(Eigen::Index n_nodes) const {
    if (w.size() != n_nodes || T.size() != n_nodes)
      throw DimensionMismatch("state does not conform to grid");
  }

  bool all_finite() const { return w.allFinite() && T.allFinite(); }
};

/// Time-ordered collection of states plus their temporal means.
struct SnapshotSet {
  std::vector<StateField> states;
  std::vector<double> times;
  VectorXd w_mean;
  VectorXd T_mean;

  std::size_t size() const { return states.size(); }

  void compute_means() {
    if (states.empty()) throw EmptySnapshotSet("snapshot set is empty");
    const Eigen::Index n = states.front().w.size();
    w_mean = VectorXd::Zero(n);
    T_mean = VectorXd::Zero(n);
    for (const StateField& s : states) {
      w_mean += s.w;
      T_mean += s.T;
    }
    w_mean /= double(states.size());
    T_mean /= double(states.size());
  }

  void validate() const {
    if (states.empty()) throw EmptySnapshotSet("snapshot set is empty");
    if (times.size() != states.size())
      throw DimensionMismatch("times/states length mismatch");
    for (std::size_t j = 1; j < times.size(); ++j)
      if (!(times[j] > times[j - 1]))
        throw DimensionMismatch("snapshot times must be strictly increasing");
  }
};

/// Composite-trapezoid quadrature weights on the uniform grid; realizes the
/// discrete L2 inner product used throughout.
inline VectorXd trapezoid_weights(const GridSpec& grid) {
  const int n = grid.n_nodes();
  VectorXd w = VectorXd::Constant(n, grid.dx());
  w[0] *= 0.5;
  w[n - 1] *= 0.5;
  return w;
}

}  // namespace burgers
