#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "burgers/config.hpp"
#include "burgers/csv.hpp"

using namespace burgers;
using Eigen::VectorXd;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "burgers_io_tests";
  fs::create_directories(dir);
  return dir;
}

SnapshotSet random_set(int n_nodes, int s, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  SnapshotSet out;
  for (int j = 0; j < s; ++j) {
    StateField st;
    st.t = j * 0.1;
    st.w = VectorXd(n_nodes);
    st.T = VectorXd(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
      st.w[i] = dist(rng) * std::pow(10.0, int(rng() % 7) - 3);
      st.T[i] = dist(rng);
    }
    out.states.push_back(std::move(st));
    out.times.push_back(j * 0.1);
  }
  out.compute_means();
  return out;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("doubles survive the 17-digit round trip") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> dist;
  std::vector<double> values{0.0,     -0.0,   0.1,    1.0 / 3.0, 1e-300,
                             1e308,   -1e-12, 2.5e-1, 1.401,     3.14159};
  for (int i = 0; i < 200; ++i)
    values.push_back(dist(rng) * std::pow(10.0, int(rng() % 40) - 20));
  for (double v : values) {
    const std::string s = csv::format_double(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(std::memcmp(&v, &back, sizeof v) == 0);
  }
}

TEST_CASE("field CSV round-trips bit-exactly") {
  std::mt19937_64 rng(2);
  const SnapshotSet set = random_set(13, 7, rng);
  GridSpec grid{12};
  const fs::path path = test_dir() / "fields.csv";
  csv::write_fields(path, set, grid.nodes());
  const SnapshotSet back = csv::load_fields(path);
  REQUIRE(back.size() == set.size());
  for (std::size_t j = 0; j < set.size(); ++j) {
    CHECK(back.times[j] == set.times[j]);
    CHECK(std::memcmp(back.states[j].w.data(), set.states[j].w.data(),
                      13 * sizeof(double)) == 0);
    CHECK(std::memcmp(back.states[j].T.data(), set.states[j].T.data(),
                      13 * sizeof(double)) == 0);
  }
  CHECK((back.w_mean - set.w_mean).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("history CSV round-trips for one and two channels") {
  std::vector<es::HistoryRow> single{{0, {0.0}, 1.5}, {1, {2e-4}, 1.25}};
  std::vector<es::HistoryRow> dual{{0, {0.0, 0.0}, 9.0}, {1, {1e-6, -2e-6}, 8.5}};
  const fs::path p1 = test_dir() / "hist1.csv";
  const fs::path p2 = test_dir() / "hist2.csv";
  csv::write_history(p1, single);
  csv::write_history(p2, dual);

  const auto b1 = csv::load_history(p1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[1].mu.size() == 1);
  CHECK(b1[1].mu[0] == 2e-4);
  CHECK(b1[1].Q == 1.25);

  const auto b2 = csv::load_history(p2);
  REQUIRE(b2.size() == 2);
  CHECK(b2[1].mu.size() == 2);
  CHECK(b2[1].mu[1] == -2e-6);
}

TEST_CASE("mode and eigenvalue exports carry the full basis") {
  GridSpec grid{16};
  pod::PodBasis b;
  b.r = 3;
  b.modes = Eigen::MatrixXd::Random(grid.n_nodes(), 3);
  b.eigenvalues = (VectorXd(3) << 3.0, 2.0, 1.0).finished();
  b.mean = VectorXd::Zero(grid.n_nodes());
  csv::write_eigenvalues(test_dir() / "eig.csv", b);
  csv::write_modes(test_dir() / "modes.csv", b, grid.nodes());
  // Spot-check the headers.
  std::ifstream eig(test_dir() / "eig.csv"), modes(test_dir() / "modes.csv");
  std::string line;
  std::getline(eig, line);
  CHECK(line == "i,lambda");
  std::getline(modes, line);
  CHECK(line == "x,phi_1,phi_2,phi_3");
}

TEST_CASE("presets validate and carry the published parameters") {
  const auto t1 = config::preset_test1();
  CHECK_NOTHROW(t1.validate());
  CHECK(t1.reynolds == 1000.0);
  CHECK(t1.kappa == 5e-4);
  CHECK(t1.heat_diffusion == 1e-2);
  CHECK(t1.r_w == 10);
  CHECK(t1.es_params.a == std::vector<double>{3e-4});
  CHECK(t1.es_params.omega == std::vector<double>{15.0});
  CHECK(t1.es_params.max_iters == 500);
  CHECK(t1.cost.Q1 == 1.0);
  CHECK(t1.cost.Q2 == 1.0);
  CHECK(t1.closure.kind == closures::Kind::H);

  const auto t2 = config::preset_test2();
  CHECK_NOTHROW(t2.validate());
  CHECK(t2.closure.kind == closures::Kind::Combined);
  CHECK(t2.es_params.a == (std::vector<double>{6e-6, 6e-6}));
  CHECK(t2.es_params.omega == (std::vector<double>{10.0, 15.0}));

  CHECK_THROWS_AS(config::preset("test3"), ConfigError);
}

TEST_CASE("config JSON round-trips") {
  config::ExperimentConfig a = config::preset_test2();
  a.closure.mu_e = 0.25;
  a.closure.scope = closures::Scope::BothFields;
  a.rtol = 1e-7;
  a.out_dir = "somewhere/else";
  const config::ExperimentConfig b = config::from_json(config::to_json(a));
  CHECK(b.name == a.name);
  CHECK(b.reynolds == a.reynolds);
  CHECK(b.closure.kind == a.closure.kind);
  CHECK(b.closure.mu_e == a.closure.mu_e);
  CHECK(b.closure.scope == a.closure.scope);
  CHECK(b.es_params.a == a.es_params.a);
  CHECK(b.es_params.omega == a.es_params.omega);
  CHECK(b.rtol == a.rtol);
  CHECK(b.out_dir == a.out_dir);
  CHECK(b.snapshot_count == a.snapshot_count);
}

TEST_CASE("validation errors name the offending field") {
  config::ExperimentConfig c = config::preset_test1();
  c.reynolds = -10.0;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("reynolds") != std::string::npos);
  }

  c = config::preset_test1();
  c.grid.n_elements = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = config::preset_test1();
  c.es_params.a = {1e-3, 1e-3};
  c.es_params.omega = {5.0, 9.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);  // one channel for a linear law

  CHECK_THROWS_AS(config::from_json("{ not json"), ConfigError);
  CHECK_THROWS_AS(
      config::from_json("{\"physical\": {\"mu\": 0.001, \"reynolds\": 1000}}"),
      ConfigError);
}

TEST_CASE("parsing accepts mu as an alternative to reynolds") {
  const auto c = config::from_json("{\"physical\": {\"mu\": 0.002}}");
  CHECK(c.reynolds == doctest::Approx(500.0).epsilon(1e-12));
}

}  // TEST_SUITE
