#pragma once

#include <span>
#include <vector>

#include "burgers/ode45.hpp"
#include "burgers/types.hpp"

namespace burgers::fem {

/// Symmetric tridiagonal matrix (sub == super).
struct Tridiagonal {
  VectorXd diag;
  VectorXd off;  // off[i] couples nodes i and i+1

  Eigen::Index size() const { return diag.size(); }
  void multiply(const Eigen::Ref<const VectorXd>& x, VectorXd& out) const;
};

/// LU factorization of a tridiagonal system (Thomas algorithm, no pivoting;
/// the constrained mass matrices are diagonally dominant SPD).
struct TridiagonalSolver {
  TridiagonalSolver() = default;
  explicit TridiagonalSolver(const Tridiagonal& A);
  void solve(Eigen::Ref<VectorXd> b) const;  // in place

 private:
  VectorXd lower_, diag_, upper_;
};

/// Assembled piecewise-linear FEM operators on the uniform grid.
/// mass/stiffness carry no boundary treatment; mass_w and mass_T are the
/// mass matrix with identity rows/columns at the Dirichlet-constrained nodes
/// (velocity: left node; temperature: both end nodes).
struct FemOperators {
  GridSpec grid;
  Tridiagonal mass;
  Tridiagonal stiffness;
  TridiagonalSolver mass_w;
  TridiagonalSolver mass_T;
  VectorXd quad_weights;  // trapezoid weights of the discrete L2 product

  double inner_product(const VectorXd& a, const VectorXd& b) const;
};

FemOperators assemble(const GridSpec& grid, const PhysicalParams& params);

/// N(u,v)_i = integral of u * v' * phi_i, products of linears integrated
/// exactly element by element. Gather form: each node is written once.
void convection(const Eigen::Ref<const VectorXd>& u,
                const Eigen::Ref<const VectorXd>& v, VectorXd& out);

/// Preallocated buffers for the right-hand-side evaluation.
struct RhsWorkspace {
  VectorXd conv, sw, mt, load_w, load_T;
  void resize(Eigen::Index n);
};

/// Nodal rates of the coupled system at the given state. Dirichlet rows are
/// forced to zero rate; the Neumann flux mu*w_right enters the last velocity
/// equation.
StateField rhs(const FemOperators& ops, const PhysicalParams& params,
               const StateField& state);

void rhs_into(const FemOperators& ops, const PhysicalParams& params, double t,
              const Eigen::Ref<const VectorXd>& w,
              const Eigen::Ref<const VectorXd>& T, Eigen::Ref<VectorXd> dw,
              Eigen::Ref<VectorXd> dT, RhsWorkspace& ws);

/// Adaptive RK4(5) in time with dense interpolation at snapshot_times.
/// The initial state's Dirichlet nodes are overridden with the boundary data
/// before stepping. Throws IntegrationFailure / NonFiniteState.
SnapshotSet integrate(const FemOperators& ops, const PhysicalParams& params,
                      const StateField& initial, double t_f,
                      std::span<const double> snapshot_times,
                      const Ode45Options& opts = {});

/// s equispaced times on [0, t_f] (s >= 2).
std::vector<double> equispaced_times(double t_f, int s);

}  // namespace burgers::fem
