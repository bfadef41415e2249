#pragma once

#include <functional>
#include <span>
#include <vector>

#include "burgers/closures.hpp"
#include "burgers/fem.hpp"
#include "burgers/ode45.hpp"
#include "burgers/pod.hpp"
#include "burgers/types.hpp"

namespace burgers::rom {

// Trajectories whose coefficient norm exceeds this are flagged Diverged.
constexpr double kDivergenceNorm = 1e6;

/// Projected operators of the quadratic ROM
///   qdot = B1 + mu*B2 + diag(profile)*(D q) + Dtilde q + C[q,q]
/// with q = (q_w, q_T). D holds the velocity viscous block (the mu-multiplied
/// part, so its velocity diagonal is negative); Dtilde holds the thermal
/// coupling, the c-scaled heat diffusion and the mean-convection linear
/// terms. Dtheta is the temperature-diffusion block without its physical
/// coefficient, kept so a closure configured for both fields can rescale c.
struct RomTensors {
  int r_w = 0;
  int r_T = 0;
  double mu = 0.0;
  double c = 0.0;
  VectorXd B1;
  VectorXd B2;
  MatrixXd D;
  MatrixXd Dtilde;
  MatrixXd Dtheta;        // r_T x r_T
  std::vector<double> C;  // r*r*r, C[(i*r+j)*r+k]
  VectorXd d_diag;

  int r() const { return r_w + r_T; }
};

struct RomState {
  VectorXd q;
  double t = 0.0;
};

struct RomTrajectory {
  std::vector<double> times;
  std::vector<VectorXd> states;
  int r_w = 0;
  int r_T = 0;
  bool diverged = false;
  double divergence_time = 0.0;

  std::size_t size() const { return states.size(); }
};

/// Galerkin inner products of the FEM right-hand side against the modes,
/// including every mean-field contribution. B2 carries only the Neumann
/// boundary flux so that trivial boundary data gives B2 = 0.
RomTensors project_tensors(const fem::FemOperators& ops,
                           const PhysicalParams& params,
                           const pod::PodBasis& basis_w,
                           const pod::PodBasis& basis_T);

using PenaltyFn = std::function<void(const VectorXd& q, VectorXd& h)>;

struct RhsOptions {
  const VectorXd* viscosity_profile = nullptr;  // length r; null = physical mu
  const VectorXd* thermal_profile = nullptr;    // length r_T; null = physical c
  const PenaltyFn* penalty = nullptr;
  bool scale_boundary = false;  // apply the profile to mu*B2 per mode
};

struct RhsWorkspace {
  VectorXd dq, quad, pen;
};

void rom_rhs_into(const RomTensors& tensors, const RhsOptions& opts,
                  const Eigen::Ref<const VectorXd>& q, Eigen::Ref<VectorXd> rate,
                  RhsWorkspace& ws);

/// Convenience form; with profile identical to the physical viscosity and no
/// penalty this is exactly the ROM-G right-hand side.
VectorXd rom_rhs(const RomTensors& tensors, const VectorXd& viscosity_profile,
                 const PenaltyFn* penalty, const RomState& state);

/// Adaptive RK4(5) with dense sampling; the closure supplies the viscosity
/// profile and penalty term. Divergence is data, not an error: the returned
/// trajectory carries a sticky flag instead.
RomTrajectory integrate_rom(const RomTensors& tensors,
                            const closures::ClosureSpec& closure,
                            const closures::ModeSpectrum& spectrum,
                            const RomState& q0, double t_f,
                            std::span<const double> sample_times,
                            const Ode45Options& opts = {});

/// Expand a coefficient trajectory back to nodal fields.
SnapshotSet reconstruct(const pod::PodBasis& basis_w,
                        const pod::PodBasis& basis_T, const RomTrajectory& traj);

/// Concatenated projection (q_w, q_T) of one state.
VectorXd project_state(const pod::PodBasis& basis_w, const pod::PodBasis& basis_T,
                       const VectorXd& quad_weights, const StateField& state);

closures::ModeSpectrum make_spectrum(const pod::PodBasis& basis_w,
                                     const pod::PodBasis& basis_T,
                                     const RomTensors& tensors);

}  // namespace burgers::rom
