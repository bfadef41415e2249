#include "burgers/rom.hpp"

#include <cmath>

#include "burgers/kernels.hpp"

namespace burgers::rom {

namespace {

// Solve the constrained velocity mass system in place (Dirichlet row zeroed).
void solve_w(const fem::FemOperators& ops, VectorXd& b) {
  b[0] = 0.0;
  ops.mass_w.solve(b);
}

void solve_T(const fem::FemOperators& ops, VectorXd& b) {
  b[0] = 0.0;
  b[b.size() - 1] = 0.0;
  ops.mass_T.solve(b);
}

VectorXd project_onto(const pod::PodBasis& basis, const VectorXd& wts,
                      const VectorXd& field) {
  VectorXd out(basis.r);
  for (int i = 0; i < basis.r; ++i)
    out[i] = kernels::weighted_dot(field.data(), basis.modes.col(i).data(),
                                   wts.data(), long(field.size()));
  return out;
}

}  // namespace

RomTensors project_tensors(const fem::FemOperators& ops,
                           const PhysicalParams& params,
                           const pod::PodBasis& basis_w,
                           const pod::PodBasis& basis_T) {
  const Eigen::Index n = ops.grid.n_nodes();
  if ((basis_w.r > 0 && basis_w.n_nodes() != n) ||
      (basis_T.r > 0 && basis_T.n_nodes() != n) ||
      basis_w.mean.size() != n || basis_T.mean.size() != n)
    throw GridMismatch("project_tensors: basis built on a different grid");

  const int r_w = basis_w.r;
  const int r_T = basis_T.r;
  const int r = r_w + r_T;
  const VectorXd& wts = ops.quad_weights;
  const VectorXd& w_av = basis_w.mean;
  const VectorXd& T_av = basis_T.mean;

  RomTensors t;
  t.r_w = r_w;
  t.r_T = r_T;
  t.mu = params.mu;
  t.c = params.c;
  t.B1 = VectorXd::Zero(r);
  t.B2 = VectorXd::Zero(r);
  t.D = MatrixXd::Zero(r, r);
  t.Dtilde = MatrixXd::Zero(r, r);
  t.Dtheta = MatrixXd::Zero(r_T, r_T);
  t.C.assign(std::size_t(r) * r * r, 0.0);
  if (r == 0) {
    t.d_diag = VectorXd::Zero(0);
    return t;
  }

  VectorXd conv(n), sv(n), mv(n), buf(n);

  // Constant terms. The velocity block keeps the mean viscous and coupling
  // parts in B1 (with the physical coefficients baked in); B2 is the Neumann
  // flux projection alone, so trivial boundary data yields B2 = 0.
  {
    fem::convection(w_av, w_av, conv);
    ops.stiffness.multiply(w_av, sv);
    ops.mass.multiply(T_av, mv);
    buf = -conv - params.mu * sv - params.kappa * mv;
    solve_w(ops, buf);
    t.B1.head(r_w) = project_onto(basis_w, wts, buf);

    buf.setZero();
    buf[n - 1] = params.w_right;
    solve_w(ops, buf);
    t.B2.head(r_w) = project_onto(basis_w, wts, buf);

    fem::convection(w_av, T_av, conv);
    ops.stiffness.multiply(T_av, sv);
    buf = -conv - params.c * sv;
    if (params.forcing) {
      VectorXd f(n);
      const double h = ops.grid.dx();
      for (Eigen::Index i = 0; i < n; ++i) f[i] = params.forcing(0.0, i * h);
      ops.mass.multiply(f, mv);
      buf += mv;
    }
    solve_T(ops, buf);
    t.B1.tail(r_T) = project_onto(basis_T, wts, buf);
  }

  // Linear-in-q columns.
  for (int k = 0; k < r_w; ++k) {
    const VectorXd phi = basis_w.modes.col(k);

    ops.stiffness.multiply(phi, sv);
    buf = -sv;
    solve_w(ops, buf);
    t.D.col(k).head(r_w) = project_onto(basis_w, wts, buf);

    fem::convection(w_av, phi, conv);
    fem::convection(phi, w_av, sv);
    buf = -(conv + sv);
    solve_w(ops, buf);
    t.Dtilde.col(k).head(r_w) = project_onto(basis_w, wts, buf);

    fem::convection(phi, T_av, conv);
    buf = -conv;
    solve_T(ops, buf);
    t.Dtilde.col(k).tail(r_T) = project_onto(basis_T, wts, buf);
  }
  for (int k = 0; k < r_T; ++k) {
    const VectorXd phi = basis_T.modes.col(k);

    ops.mass.multiply(phi, mv);
    buf = -params.kappa * mv;
    solve_w(ops, buf);
    t.Dtilde.col(r_w + k).head(r_w) = project_onto(basis_w, wts, buf);

    ops.stiffness.multiply(phi, sv);
    buf = -sv;
    solve_T(ops, buf);
    t.Dtheta.col(k) = project_onto(basis_T, wts, buf);
    t.Dtilde.col(r_w + k).tail(r_T) += params.c * t.Dtheta.col(k);

    fem::convection(w_av, phi, conv);
    buf = -conv;
    solve_T(ops, buf);
    t.Dtilde.col(r_w + k).tail(r_T) += project_onto(basis_T, wts, buf);
  }

  // Quadratic tensor: velocity rows couple (w,w) modes, temperature rows
  // couple (w,T) modes. Each (j,k) pair owns a disjoint slice of C.
  const long pairs_w = long(r_w) * r_w;
  const long pairs_T = long(r_w) * r_T;
#pragma omp parallel for schedule(dynamic, 8)
  for (long p = 0; p < pairs_w + pairs_T; ++p) {
    VectorXd cv(n), cb(n);
    if (p < pairs_w) {
      const int j = int(p / r_w);
      const int k = int(p % r_w);
      fem::convection(basis_w.modes.col(j), basis_w.modes.col(k), cv);
      cb = -cv;
      solve_w(ops, cb);
      const VectorXd row = project_onto(basis_w, wts, cb);
      for (int i = 0; i < r_w; ++i)
        t.C[(std::size_t(i) * r + j) * r + k] = row[i];
    } else {
      const long q = p - pairs_w;
      const int j = int(q / r_T);
      const int k = int(q % r_T);
      fem::convection(basis_w.modes.col(j), basis_T.modes.col(k), cv);
      cb = -cv;
      solve_T(ops, cb);
      const VectorXd row = project_onto(basis_T, wts, cb);
      for (int i = 0; i < r_T; ++i)
        t.C[(std::size_t(r_w + i) * r + j) * r + (r_w + k)] = row[i];
    }
  }

  t.d_diag = t.D.diagonal();
  return t;
}

void rom_rhs_into(const RomTensors& tensors, const RhsOptions& opts,
                  const Eigen::Ref<const VectorXd>& q, Eigen::Ref<VectorXd> rate,
                  RhsWorkspace& ws) {
  const int r = tensors.r();
  if (q.size() != r) throw DimensionMismatch("rom_rhs: state length != r");
  if (opts.viscosity_profile && opts.viscosity_profile->size() != r)
    throw DimensionMismatch("rom_rhs: viscosity profile length != r");
  if (opts.thermal_profile && opts.thermal_profile->size() != tensors.r_T)
    throw DimensionMismatch("rom_rhs: thermal profile length != r_T");

  ws.dq.noalias() = tensors.D * q;
  if (opts.viscosity_profile)
    ws.dq.array() *= opts.viscosity_profile->array();
  else
    ws.dq *= tensors.mu;

  rate = ws.dq;
  rate.noalias() += tensors.Dtilde * q;
  rate += tensors.B1;
  if (opts.scale_boundary && opts.viscosity_profile)
    rate.array() += opts.viscosity_profile->array() * tensors.B2.array();
  else
    rate += tensors.mu * tensors.B2;

  ws.quad.resize(r);
  kernels::quadratic_contract(tensors.C.data(), q.data(), r, ws.quad.data());
  rate += ws.quad;

  // Extra temperature-row diffusion when the closure rescales c; exactly zero
  // with the physical profile.
  if (opts.thermal_profile && tensors.r_T > 0) {
    ws.dq.noalias() = tensors.Dtheta * q.tail(tensors.r_T);
    rate.tail(tensors.r_T).array() +=
        (opts.thermal_profile->array() - tensors.c) * ws.dq.array();
  }

  if (opts.penalty) {
    (*opts.penalty)(q, ws.pen);
    if (ws.pen.size() != r)
      throw DimensionMismatch("rom_rhs: penalty length != r");
    rate += ws.pen;
  }
}

VectorXd rom_rhs(const RomTensors& tensors, const VectorXd& viscosity_profile,
                 const PenaltyFn* penalty, const RomState& state) {
  RhsOptions opts;
  opts.viscosity_profile = &viscosity_profile;
  opts.penalty = penalty;
  RhsWorkspace ws;
  VectorXd rate(tensors.r());
  rom_rhs_into(tensors, opts, state.q, rate, ws);
  return rate;
}

RomTrajectory integrate_rom(const RomTensors& tensors,
                            const closures::ClosureSpec& closure,
                            const closures::ModeSpectrum& spectrum,
                            const RomState& q0, double t_f,
                            std::span<const double> sample_times,
                            const Ode45Options& opts) {
  const int r = tensors.r();
  if (q0.q.size() != r) throw DimensionMismatch("integrate_rom: q0 length != r");
  if (!(t_f > 0.0)) throw IntegrationFailure("integrate_rom: t_f must be > 0");
  closure.validate(tensors.r_w);

  // The linear closure acts on the velocity block; temperature rows of D are
  // zero so their profile entries are inert placeholders.
  VectorXd profile = VectorXd::Constant(r, tensors.mu);
  if (tensors.r_w > 0)
    profile.head(tensors.r_w) =
        closures::viscosity_profile(closure, tensors.mu, tensors.r_w);

  VectorXd thermal;
  RhsOptions ropts;
  ropts.viscosity_profile = &profile;
  ropts.scale_boundary = closure.scale_boundary;
  if (closure.scope == closures::Scope::BothFields && tensors.r_T > 0) {
    thermal = closures::viscosity_profile(closure, tensors.c, tensors.r_T);
    ropts.thermal_profile = &thermal;
  }

  PenaltyFn penalty;
  if (closure.has_nonlinear()) {
    penalty = [&closure, &spectrum](const VectorXd& q, VectorXd& h) {
      closures::nonlinear_penalty_into(closure.mu_nl, q, spectrum, h);
    };
    ropts.penalty = &penalty;
  }

  RhsWorkspace ws;
  auto f = [&](double, const VectorXd& q, VectorXd& dq) {
    dq.resize(r);
    rom_rhs_into(tensors, ropts, q, dq, ws);
  };

  Ode45Options oopts = opts;
  oopts.divergence_norm = kDivergenceNorm;
  Ode45Result res = ode45(f, q0.q, 0.0, t_f, sample_times, oopts);

  RomTrajectory traj;
  traj.r_w = tensors.r_w;
  traj.r_T = tensors.r_T;
  traj.times.assign(sample_times.begin(),
                    sample_times.begin() + long(res.samples.size()));
  traj.states = std::move(res.samples);
  // Any abnormal stop counts as divergence: an unstabilized ROM may blow up
  // and the caller maps that to a cost penalty rather than an error.
  traj.diverged = res.status != OdeStatus::Success;
  traj.divergence_time = res.t_final;
  return traj;
}

SnapshotSet reconstruct(const pod::PodBasis& basis_w,
                        const pod::PodBasis& basis_T, const RomTrajectory& traj) {
  const long s = long(traj.size());
  if (s == 0) throw EmptySnapshotSet("reconstruct: empty trajectory");
  const long n = long(basis_w.n_nodes());
  const int r_w = traj.r_w;
  const int r_T = traj.r_T;

  std::vector<double> coeff_w(std::size_t(s) * std::max(r_w, 1), 0.0);
  std::vector<double> coeff_T(std::size_t(s) * std::max(r_T, 1), 0.0);
  for (long j = 0; j < s; ++j) {
    const VectorXd& q = traj.states[j];
    for (int k = 0; k < r_w; ++k) coeff_w[std::size_t(j) * r_w + k] = q[k];
    for (int k = 0; k < r_T; ++k) coeff_T[std::size_t(j) * r_T + k] = q[r_w + k];
  }

  std::vector<double> Wf(std::size_t(s) * n), Tf(std::size_t(s) * n);
  kernels::reconstruct(basis_w.mean.data(), basis_w.modes.data(), coeff_w.data(),
                       s, n, r_w, Wf.data());
  kernels::reconstruct(basis_T.mean.data(), basis_T.modes.data(), coeff_T.data(),
                       s, n, r_T, Tf.data());

  SnapshotSet out;
  out.times = traj.times;
  out.states.resize(s);
  for (long j = 0; j < s; ++j) {
    out.states[j].t = traj.times[j];
    out.states[j].w = Eigen::Map<const VectorXd>(Wf.data() + j * n, n);
    out.states[j].T = Eigen::Map<const VectorXd>(Tf.data() + j * n, n);
  }
  out.compute_means();
  return out;
}

VectorXd project_state(const pod::PodBasis& basis_w, const pod::PodBasis& basis_T,
                       const VectorXd& quad_weights, const StateField& state) {
  VectorXd q(basis_w.r + basis_T.r);
  q.head(basis_w.r) = pod::project(basis_w, quad_weights, state.w);
  q.tail(basis_T.r) = pod::project(basis_T, quad_weights, state.T);
  return q;
}

closures::ModeSpectrum make_spectrum(const pod::PodBasis& basis_w,
                                     const pod::PodBasis& basis_T,
                                     const RomTensors& tensors) {
  closures::ModeSpectrum sp;
  sp.lambdas.resize(basis_w.r + basis_T.r);
  sp.lambdas.head(basis_w.r) = basis_w.eigenvalues;
  sp.lambdas.tail(basis_T.r) = basis_T.eigenvalues;
  sp.d_diag = tensors.d_diag;
  return sp;
}

}  // namespace burgers::rom
