#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "burgers/rom.hpp"

using namespace burgers;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Full-rank fixture: random smooth fields spanning the whole constrained
// space of a small grid (velocity 12 dof, temperature 11 dof at n=12).
struct FullRankFixture {
  GridSpec grid{12};
  PhysicalParams params;
  fem::FemOperators ops;
  pod::PodBasis basis_w;
  pod::PodBasis basis_T;
  rom::RomTensors tensors;

  FullRankFixture() {
    ops = fem::assemble(grid, params);
    const VectorXd x = grid.nodes();
    const int n = grid.n_nodes();
    std::mt19937_64 rng(42);
    std::normal_distribution<double> dist;

    SnapshotSet set;
    for (int j = 0; j < 30; ++j) {
      StateField st;
      st.t = double(j);
      st.w = VectorXd::Zero(n);
      st.T = VectorXd::Zero(n);
      // Half-sines reach the Neumann end of the velocity field; full sines
      // respect the temperature Dirichlet pair.
      for (int k = 1; k <= 12; ++k) {
        const double aw = dist(rng) / k;
        for (int i = 0; i < n; ++i)
          st.w[i] += aw * std::sin((2 * k - 1) * kPi * x[i] / 2.0);
      }
      for (int k = 1; k <= 11; ++k) {
        const double aT = dist(rng) / k;
        for (int i = 0; i < n; ++i) st.T[i] += aT * std::sin(k * kPi * x[i]);
      }
      set.states.push_back(std::move(st));
      set.times.push_back(double(j));
    }
    set.compute_means();

    basis_w = pod::build_field_basis(set, pod::FieldTag::velocity, 12,
                                     ops.quad_weights);
    basis_T = pod::build_field_basis(set, pod::FieldTag::temperature, 11,
                                     ops.quad_weights);
    tensors = rom::project_tensors(ops, params, basis_w, basis_T);
  }

  VectorXd project_rate(const StateField& rate) const {
    VectorXd out(tensors.r());
    for (int i = 0; i < basis_w.r; ++i)
      out[i] = ops.inner_product(rate.w, basis_w.modes.col(i));
    for (int i = 0; i < basis_T.r; ++i)
      out[basis_w.r + i] = ops.inner_product(rate.T, basis_T.modes.col(i));
    return out;
  }

  StateField reconstruct_state(const VectorXd& q) const {
    StateField st;
    st.w = pod::reconstruct(basis_w, q.head(basis_w.r));
    st.T = pod::reconstruct(basis_T, q.tail(basis_T.r));
    return st;
  }
};

pod::PodBasis empty_basis(int n_nodes, pod::FieldTag tag) {
  pod::PodBasis b;
  b.field = tag;
  b.r = 0;
  b.modes = MatrixXd::Zero(n_nodes, 0);
  b.eigenvalues = VectorXd::Zero(0);
  b.mean = VectorXd::Zero(n_nodes);
  return b;
}

}  // namespace

TEST_SUITE("rom") {

TEST_CASE("zero modes and zero means give empty zero tensors") {
  GridSpec grid{10};
  PhysicalParams p;
  const fem::FemOperators ops = fem::assemble(grid, p);
  const auto bw = empty_basis(grid.n_nodes(), pod::FieldTag::velocity);
  const auto bT = empty_basis(grid.n_nodes(), pod::FieldTag::temperature);
  const rom::RomTensors t = rom::project_tensors(ops, p, bw, bT);
  CHECK(t.r() == 0);
  CHECK(t.B1.size() == 0);
  CHECK(t.C.empty());
}

TEST_CASE("trivial boundary data zeroes the boundary projection") {
  const FullRankFixture f;
  CHECK(f.tensors.B2.cwiseAbs().maxCoeff() == 0.0);

  PhysicalParams flux = f.params;
  flux.w_right = 0.3;
  const rom::RomTensors t = rom::project_tensors(f.ops, flux, f.basis_w, f.basis_T);
  CHECK(t.B2.head(t.r_w).cwiseAbs().maxCoeff() > 0.0);
  CHECK(t.B2.tail(t.r_T).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("viscous diagonal is strictly negative on velocity rows") {
  const FullRankFixture f;
  for (int i = 0; i < f.tensors.r_w; ++i) CHECK(f.tensors.d_diag[i] < 0.0);
  for (int i = f.tensors.r_w; i < f.tensors.r(); ++i)
    CHECK(f.tensors.d_diag[i] == 0.0);
}

TEST_CASE("mismatched grids are rejected") {
  const FullRankFixture f;
  GridSpec other{20};
  const fem::FemOperators ops2 = fem::assemble(other, f.params);
  CHECK_THROWS_AS(rom::project_tensors(ops2, f.params, f.basis_w, f.basis_T),
                  GridMismatch);
}

TEST_CASE("Galerkin consistency: ROM rhs equals the projected FEM rhs") {
  const FullRankFixture f;
  const VectorXd profile = VectorXd::Constant(f.tensors.r(), f.params.mu);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;

  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    VectorXd q(f.tensors.r());
    for (int i = 0; i < q.size(); ++i) q[i] = 0.3 * dist(rng);

    const VectorXd rom_rate = rom::rom_rhs(f.tensors, profile, nullptr, {q, 0.0});
    StateField st = f.reconstruct_state(q);
    st.t = 0.0;
    const VectorXd fem_rate = f.project_rate(fem::rhs(f.ops, f.params, st));
    const double scale = std::max(1.0, fem_rate.cwiseAbs().maxCoeff());
    worst = std::max(worst, (rom_rate - fem_rate).cwiseAbs().maxCoeff() / scale);
  }
  INFO("worst relative deviation ", worst);
  CHECK(worst <= 1e-8);
}

TEST_CASE("full-rank ROM trajectory tracks the FEM over a short horizon") {
  const FullRankFixture f;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist;
  VectorXd q0(f.tensors.r());
  for (int i = 0; i < q0.size(); ++i) q0[i] = 0.2 * dist(rng);

  StateField ic = f.reconstruct_state(q0);
  ic.t = 0.0;
  const std::vector<double> times = fem::equispaced_times(0.1, 21);
  Ode45Options tight;
  tight.rtol = 1e-9;
  tight.atol = 1e-11;
  const SnapshotSet fem_traj =
      fem::integrate(f.ops, f.params, ic, 0.1, times, tight);

  closures::ClosureSpec off;
  off.kind = closures::Kind::None;
  const auto spectrum = rom::make_spectrum(f.basis_w, f.basis_T, f.tensors);
  const rom::RomTrajectory rom_traj = rom::integrate_rom(
      f.tensors, off, spectrum, {q0, 0.0}, 0.1, times, tight);
  REQUIRE_FALSE(rom_traj.diverged);
  REQUIRE(rom_traj.size() == fem_traj.size());

  double scale = 0.0, dev = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const StateField rec = f.reconstruct_state(rom_traj.states[j]);
    const auto norm_of = [&](const VectorXd& v) {
      return std::sqrt(f.ops.inner_product(v, v));
    };
    scale = std::max({scale, norm_of(fem_traj.states[j].w),
                      norm_of(fem_traj.states[j].T)});
    dev = std::max({dev, norm_of(rec.w - fem_traj.states[j].w),
                    norm_of(rec.T - fem_traj.states[j].T)});
  }
  INFO("relative deviation ", dev / scale);
  CHECK(dev / scale <= 1e-4);
}

TEST_CASE("physical profile reproduces the closure-off path bitwise") {
  const FullRankFixture f;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  VectorXd q(f.tensors.r());
  for (int i = 0; i < q.size(); ++i) q[i] = dist(rng);

  const VectorXd profile = VectorXd::Constant(f.tensors.r(), f.params.mu);
  const VectorXd a = rom::rom_rhs(f.tensors, profile, nullptr, {q, 0.0});

  rom::RhsOptions opts;  // no profile: physical-mu path
  rom::RhsWorkspace ws;
  VectorXd b(f.tensors.r());
  rom::rom_rhs_into(f.tensors, opts, q, b, ws);
  CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
}

TEST_CASE("rhs splits into exactly linear and exactly quadratic parts") {
  // Raw (zero-mean) bases make the constant term vanish.
  GridSpec grid{12};
  PhysicalParams p;
  const fem::FemOperators ops = fem::assemble(grid, p);
  const VectorXd x = grid.nodes();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist;
  std::vector<VectorXd> w_snaps, T_snaps;
  for (int j = 0; j < 12; ++j) {
    VectorXd zw = VectorXd::Zero(grid.n_nodes());
    VectorXd zT = VectorXd::Zero(grid.n_nodes());
    for (int k = 1; k <= 12; ++k) {
      const double a = dist(rng) / k;
      for (int i = 0; i < grid.n_nodes(); ++i)
        zw[i] += a * std::sin((2 * k - 1) * kPi * x[i] / 2.0);
    }
    for (int k = 1; k <= 11; ++k) {
      const double a = dist(rng) / k;
      for (int i = 0; i < grid.n_nodes(); ++i)
        zT[i] += a * std::sin(k * kPi * x[i]);
    }
    w_snaps.push_back(zw);
    T_snaps.push_back(zT);
  }
  const auto bw = pod::build_basis(pod::correlation(w_snaps, ops.quad_weights),
                                   w_snaps, 8, pod::FieldTag::velocity);
  const auto bT = pod::build_basis(pod::correlation(T_snaps, ops.quad_weights),
                                   T_snaps, 7, pod::FieldTag::temperature);
  const rom::RomTensors t = rom::project_tensors(ops, p, bw, bT);

  const int r = t.r();
  const VectorXd profile = VectorXd::Constant(r, p.mu);
  const auto rhs_of = [&](const VectorXd& q) {
    return rom::rom_rhs(t, profile, nullptr, {q, 0.0});
  };
  CHECK(rhs_of(VectorXd::Zero(r)).cwiseAbs().maxCoeff() <= 1e-14);

  VectorXd q(r);
  for (int i = 0; i < r; ++i) q[i] = dist(rng);
  const VectorXd lin =
      p.mu * (t.D * q) + t.Dtilde * q;  // the degree-1 part by construction
  const VectorXd quad = rhs_of(q) - lin;
  const VectorXd twice = rhs_of((2.0 * q).eval());
  const VectorXd expect = 2.0 * lin + 4.0 * quad;
  const double scale = std::max(1.0, twice.cwiseAbs().maxCoeff());
  CHECK((twice - expect).cwiseAbs().maxCoeff() / scale <= 1e-12);
}

TEST_CASE("zero state with zero constants stays at rest") {
  GridSpec grid{10};
  PhysicalParams p;
  const fem::FemOperators ops = fem::assemble(grid, p);
  // Zero-mean bases: a single sine mode per field.
  const VectorXd x = grid.nodes();
  std::vector<VectorXd> w_snaps{VectorXd(grid.n_nodes())};
  std::vector<VectorXd> T_snaps{VectorXd(grid.n_nodes())};
  for (int i = 0; i < grid.n_nodes(); ++i) {
    w_snaps[0][i] = std::sin(kPi * x[i] / 2.0);
    T_snaps[0][i] = std::sin(kPi * x[i]);
  }
  const auto bw = pod::build_basis(pod::correlation(w_snaps, ops.quad_weights),
                                   w_snaps, 1, pod::FieldTag::velocity);
  const auto bT = pod::build_basis(pod::correlation(T_snaps, ops.quad_weights),
                                   T_snaps, 1, pod::FieldTag::temperature);
  const rom::RomTensors t = rom::project_tensors(ops, p, bw, bT);
  CHECK(t.B1.cwiseAbs().maxCoeff() <= 1e-15);

  closures::ClosureSpec off;
  const auto spectrum = rom::make_spectrum(bw, bT, t);
  const std::vector<double> times{0.5, 1.0};
  const rom::RomTrajectory traj = rom::integrate_rom(
      t, off, spectrum, {VectorXd::Zero(2), 0.0}, 1.0, times);
  REQUIRE_FALSE(traj.diverged);
  for (const VectorXd& q : traj.states)
    CHECK(q.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("anti-dissipative closure drives the ROM to the divergence flag") {
  const FullRankFixture f;
  closures::ClosureSpec bad;
  bad.kind = closures::Kind::H;
  bad.mu_e = -50.0;  // negative total viscosity: exponential blow-up
  const auto spectrum = rom::make_spectrum(f.basis_w, f.basis_T, f.tensors);
  VectorXd q0 = VectorXd::Constant(f.tensors.r(), 0.1);
  const std::vector<double> times = fem::equispaced_times(5.0, 51);
  const rom::RomTrajectory traj =
      rom::integrate_rom(f.tensors, bad, spectrum, {q0, 0.0}, 5.0, times);
  CHECK(traj.diverged);
  CHECK(traj.size() < times.size());
  CHECK(traj.divergence_time < 5.0);
}

TEST_CASE("reconstruct maps zero coefficients to the means") {
  const FullRankFixture f;
  rom::RomTrajectory traj;
  traj.r_w = f.basis_w.r;
  traj.r_T = f.basis_T.r;
  traj.times = {0.0, 1.0};
  traj.states = {VectorXd::Zero(f.tensors.r()), VectorXd::Zero(f.tensors.r())};
  const SnapshotSet fields = rom::reconstruct(f.basis_w, f.basis_T, traj);
  CHECK((fields.states[0].w - f.basis_w.mean).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((fields.states[1].T - f.basis_T.mean).cwiseAbs().maxCoeff() <= 1e-15);

  VectorXd one_hot = VectorXd::Zero(f.tensors.r());
  one_hot[0] = 1.0;
  traj.states[1] = one_hot;
  const SnapshotSet fields2 = rom::reconstruct(f.basis_w, f.basis_T, traj);
  CHECK((fields2.states[1].w - (f.basis_w.mean + f.basis_w.modes.col(0)))
            .cwiseAbs()
            .maxCoeff() <= 1e-15);
}

TEST_CASE("project then reconstruct reproduces the span component") {
  const FullRankFixture f;
  std::mt19937_64 rng(23);
  std::normal_distribution<double> dist;
  VectorXd q(f.tensors.r());
  for (int i = 0; i < q.size(); ++i) q[i] = dist(rng);
  StateField st = f.reconstruct_state(q);
  const VectorXd q2 =
      rom::project_state(f.basis_w, f.basis_T, f.ops.quad_weights, st);
  CHECK((q2 - q).cwiseAbs().maxCoeff() <= 1e-10);
}

}  // TEST_SUITE
