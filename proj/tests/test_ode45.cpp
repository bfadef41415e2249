#include <doctest.h>

#include <cmath>
#include <vector>

#include "burgers/ode45.hpp"

using namespace burgers;
using Eigen::VectorXd;

TEST_SUITE("ode45") {

TEST_CASE("exponential decay matches the closed form") {
  auto f = [](double, const VectorXd& y, VectorXd& dy) { dy = -y; };
  VectorXd y0(1);
  y0[0] = 1.0;
  const std::vector<double> samples{0.25, 0.5, 1.0, 2.0};
  Ode45Options opts;
  opts.rtol = 1e-9;
  opts.atol = 1e-12;
  const Ode45Result r = ode45(f, y0, 0.0, 2.0, samples, opts);
  REQUIRE(r.status == OdeStatus::Success);
  REQUIRE(r.samples.size() == samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j)
    CHECK(r.samples[j][0] == doctest::Approx(std::exp(-samples[j])).epsilon(1e-8));
  CHECK(r.y_final[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
}

TEST_CASE("dense output stays accurate between steps") {
  // Oscillator with known solution, sampled on a grid much finer than the
  // accepted steps.
  auto f = [](double, const VectorXd& y, VectorXd& dy) {
    dy.resize(2);
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  VectorXd y0(2);
  y0 << 1.0, 0.0;
  std::vector<double> samples;
  for (int i = 1; i <= 200; ++i) samples.push_back(5.0 * i / 200.0);
  Ode45Options opts;
  opts.rtol = 1e-8;
  opts.atol = 1e-10;
  const Ode45Result r = ode45(f, y0, 0.0, 5.0, samples, opts);
  REQUIRE(r.status == OdeStatus::Success);
  REQUIRE(r.samples.size() == samples.size());
  CHECK(r.n_accepted < 200);  // otherwise the dense output is never exercised
  for (std::size_t j = 0; j < samples.size(); ++j) {
    CHECK(r.samples[j][0] == doctest::Approx(std::cos(samples[j])).epsilon(1e-6));
    CHECK(r.samples[j][1] == doctest::Approx(-std::sin(samples[j])).epsilon(1e-6));
  }
}

TEST_CASE("tightening the tolerance reduces the error") {
  auto f = [](double t, const VectorXd& y, VectorXd& dy) {
    dy.resize(1);
    dy[0] = std::cos(t) * y[0];
  };
  VectorXd y0(1);
  y0[0] = 1.0;
  double prev_err = 1e300;
  for (double rtol : {1e-4, 1e-6, 1e-8}) {
    Ode45Options opts;
    opts.rtol = rtol;
    opts.atol = rtol * 1e-2;
    const Ode45Result r = ode45(f, y0, 0.0, 6.0, {}, opts);
    REQUIRE(r.status == OdeStatus::Success);
    const double err = std::abs(r.y_final[0] - std::exp(std::sin(6.0)));
    CHECK(err < prev_err * 2.0);  // allow noise, require the broad trend
    prev_err = err;
  }
  CHECK(prev_err < 1e-7);
}

TEST_CASE("finite-time blow-up ends in divergence or underflow") {
  auto f = [](double, const VectorXd& y, VectorXd& dy) { dy = y.array().square(); };
  VectorXd y0(1);
  y0[0] = 10.0;  // blows up at t = 0.1
  Ode45Options opts;
  opts.divergence_norm = 1e6;
  const Ode45Result r = ode45(f, y0, 0.0, 1.0, {}, opts);
  CHECK(r.status == OdeStatus::Diverged);
  CHECK(r.t_final < 0.11);
}

TEST_CASE("non-finite right-hand side is reported") {
  auto f = [](double t, const VectorXd& y, VectorXd& dy) {
    dy.resize(1);
    dy[0] = t < 0.5 ? -y[0] : std::numeric_limits<double>::quiet_NaN();
  };
  VectorXd y0(1);
  y0[0] = 1.0;
  const Ode45Result r = ode45(f, y0, 0.0, 1.0, {});
  CHECK(r.status == OdeStatus::NonFinite);
}

TEST_CASE("samples at both endpoints are honored") {
  auto f = [](double, const VectorXd& y, VectorXd& dy) { dy = -y; };
  VectorXd y0(1);
  y0[0] = 2.0;
  const std::vector<double> samples{0.0, 0.5, 1.0};
  const Ode45Result r = ode45(f, y0, 0.0, 1.0, samples);
  REQUIRE(r.samples.size() == 3);
  CHECK(r.samples[0][0] == 2.0);
  CHECK(r.samples[2][0] == r.y_final[0]);
}

}  // TEST_SUITE
