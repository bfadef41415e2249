#include "burgers/fem.hpp"

#include <cmath>
#include <string>

namespace burgers::fem {

void Tridiagonal::multiply(const Eigen::Ref<const VectorXd>& x, VectorXd& out) const {
  const Eigen::Index n = diag.size();
  out.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += off[i - 1] * x[i - 1];
    if (i + 1 < n) acc += off[i] * x[i + 1];
    out[i] = acc;
  }
}

TridiagonalSolver::TridiagonalSolver(const Tridiagonal& A) {
  const Eigen::Index n = A.size();
  lower_.resize(n - 1);
  diag_.resize(n);
  upper_ = A.off;
  diag_[0] = A.diag[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    lower_[i - 1] = A.off[i - 1] / diag_[i - 1];
    diag_[i] = A.diag[i] - lower_[i - 1] * A.off[i - 1];
  }
}

void TridiagonalSolver::solve(Eigen::Ref<VectorXd> b) const {
  const Eigen::Index n = diag_.size();
  for (Eigen::Index i = 1; i < n; ++i) b[i] -= lower_[i - 1] * b[i - 1];
  b[n - 1] /= diag_[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i)
    b[i] = (b[i] - upper_[i] * b[i + 1]) / diag_[i];
}

double FemOperators::inner_product(const VectorXd& a, const VectorXd& b) const {
  if (a.size() != quad_weights.size() || b.size() != quad_weights.size())
    throw DimensionMismatch("inner_product: field does not conform to grid");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += quad_weights[i] * a[i] * b[i];
  return acc;
}

namespace {

// Identity row/column at a constrained node; keeps the matrix SPD so the
// Thomas factorization stays valid.
void constrain_node(Tridiagonal& A, Eigen::Index i) {
  A.diag[i] = 1.0;
  if (i > 0) A.off[i - 1] = 0.0;
  if (i + 1 < A.size()) A.off[i] = 0.0;
}

}  // namespace

FemOperators assemble(const GridSpec& grid, const PhysicalParams& params) {
  grid.validate();
  params.validate();

  const int n = grid.n_nodes();
  const double h = grid.dx();

  FemOperators ops;
  ops.grid = grid;
  ops.mass.diag = VectorXd::Constant(n, 2.0 * h / 3.0);
  ops.mass.diag[0] = ops.mass.diag[n - 1] = h / 3.0;
  ops.mass.off = VectorXd::Constant(n - 1, h / 6.0);
  ops.stiffness.diag = VectorXd::Constant(n, 2.0 / h);
  ops.stiffness.diag[0] = ops.stiffness.diag[n - 1] = 1.0 / h;
  ops.stiffness.off = VectorXd::Constant(n - 1, -1.0 / h);
  ops.quad_weights = trapezoid_weights(grid);

  Tridiagonal mw = ops.mass;
  constrain_node(mw, 0);
  ops.mass_w = TridiagonalSolver(mw);

  Tridiagonal mT = ops.mass;
  constrain_node(mT, 0);
  constrain_node(mT, n - 1);
  ops.mass_T = TridiagonalSolver(mT);

  return ops;
}

void convection(const Eigen::Ref<const VectorXd>& u,
                const Eigen::Ref<const VectorXd>& v, VectorXd& out) {
  const Eigen::Index n = u.size();
  out.resize(n);
  // Element e spans nodes (e, e+1); with du = v_{e+1}-v_e the exact element
  // integrals against the two hat functions are du*(u_e/3 + u_{e+1}/6) and
  // du*(u_e/6 + u_{e+1}/3).
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    if (i > 0) {
      const double du = v[i] - v[i - 1];
      acc += du * (u[i - 1] / 6.0 + u[i] / 3.0);
    }
    if (i + 1 < n) {
      const double du = v[i + 1] - v[i];
      acc += du * (u[i] / 3.0 + u[i + 1] / 6.0);
    }
    out[i] = acc;
  }
}

void RhsWorkspace::resize(Eigen::Index n) {
  conv.resize(n);
  sw.resize(n);
  mt.resize(n);
  load_w.resize(n);
  load_T.resize(n);
}

void rhs_into(const FemOperators& ops, const PhysicalParams& params, double t,
              const Eigen::Ref<const VectorXd>& w,
              const Eigen::Ref<const VectorXd>& T, Eigen::Ref<VectorXd> dw,
              Eigen::Ref<VectorXd> dT, RhsWorkspace& ws) {
  const Eigen::Index n = ops.grid.n_nodes();
  ws.resize(n);

  // velocity: M dw = -N(w,w) - mu*S*w - kappa*M*T + mu*w_R e_n
  convection(w, w, ws.conv);
  ops.stiffness.multiply(w, ws.sw);
  ops.mass.multiply(T, ws.mt);
  ws.load_w = -ws.conv - params.mu * ws.sw - params.kappa * ws.mt;
  ws.load_w[n - 1] += params.mu * params.w_right;
  ws.load_w[0] = 0.0;
  dw = ws.load_w;
  ops.mass_w.solve(dw);

  // temperature: M dT = -N(w,T) - c*S*T + M*f
  convection(w, T, ws.conv);
  ops.stiffness.multiply(T, ws.sw);
  ws.load_T = -ws.conv - params.c * ws.sw;
  if (params.forcing) {
    VectorXd& f = ws.mt;
    const double h = ops.grid.dx();
    for (Eigen::Index i = 0; i < n; ++i) f[i] = params.forcing(t, i * h);
    ops.mass.multiply(f, ws.conv);
    ws.load_T += ws.conv;
  }
  ws.load_T[0] = 0.0;
  ws.load_T[n - 1] = 0.0;
  dT = ws.load_T;
  ops.mass_T.solve(dT);
}

StateField rhs(const FemOperators& ops, const PhysicalParams& params,
               const StateField& state) {
  const Eigen::Index n = ops.grid.n_nodes();
  state.require_size(n);
  RhsWorkspace ws;
  StateField rate;
  rate.t = state.t;
  rate.w.resize(n);
  rate.T.resize(n);
  rhs_into(ops, params, state.t, state.w, state.T, rate.w, rate.T, ws);
  return rate;
}

std::vector<double> equispaced_times(double t_f, int s) {
  std::vector<double> times(s);
  for (int j = 0; j < s; ++j) times[j] = t_f * double(j) / double(s - 1);
  times.back() = t_f;
  return times;
}

SnapshotSet integrate(const FemOperators& ops, const PhysicalParams& params,
                      const StateField& initial, double t_f,
                      std::span<const double> snapshot_times,
                      const Ode45Options& opts) {
  const Eigen::Index n = ops.grid.n_nodes();
  initial.require_size(n);
  if (!(t_f > 0.0)) throw IntegrationFailure("integrate: t_f must be > 0");
  for (std::size_t j = 0; j < snapshot_times.size(); ++j) {
    if (snapshot_times[j] < 0.0 || snapshot_times[j] > t_f)
      throw IntegrationFailure("integrate: snapshot time outside [0, t_f]");
    if (j > 0 && !(snapshot_times[j] > snapshot_times[j - 1]))
      throw IntegrationFailure("integrate: snapshot times must be increasing");
  }

  // Dirichlet data wins over the supplied initial samples.
  VectorXd z0(2 * n);
  z0.head(n) = initial.w;
  z0.tail(n) = initial.T;
  z0[0] = params.w_left;
  z0[n] = params.T_left;
  z0[2 * n - 1] = params.T_right;

  RhsWorkspace ws;
  auto f = [&](double t, const VectorXd& z, VectorXd& dz) {
    dz.resize(2 * n);
    rhs_into(ops, params, t, z.head(n), z.tail(n), dz.head(n), dz.tail(n), ws);
  };

  Ode45Result r = ode45(f, z0, 0.0, t_f, snapshot_times, opts);
  if (r.status == OdeStatus::StepUnderflow)
    throw IntegrationFailure("step size underflow at t=" + std::to_string(r.t_final));
  if (r.status == OdeStatus::NonFinite || r.status == OdeStatus::Diverged)
    throw NonFiniteState("state became non-finite near t=" +
                         std::to_string(r.t_final));

  SnapshotSet set;
  set.times.assign(snapshot_times.begin(), snapshot_times.end());
  set.states.resize(r.samples.size());
  for (std::size_t j = 0; j < r.samples.size(); ++j) {
    set.states[j].t = set.times[j];
    set.states[j].w = r.samples[j].head(n);
    set.states[j].T = r.samples[j].tail(n);
  }
  if (set.states.size() != set.times.size())
    throw IntegrationFailure("integrator did not reach every snapshot time");
  set.compute_means();
  return set;
}

}  // namespace burgers::fem
