// Times the OpenMP kernels against their serial reference implementations and
// checks that both produce bitwise-identical output.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "burgers/kernels.hpp"

namespace {

using clk = std::chrono::steady_clock;

double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = clk::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

void row(const char* name, double serial_ms, double omp_ms, bool exact) {
  std::printf("%-22s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, omp_ms,
              serial_ms / omp_ms, exact ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  long s = 400, n = 4000, r = 64;
  if (argc > 1) s = std::atol(argv[1]);
  if (argc > 2) n = std::atol(argv[2]);
  if (argc > 3) r = std::atol(argv[3]);

  std::printf("kernel benchmark: s=%ld n=%ld r=%ld, OpenMP %s\n", s, n, r,
              burgers::kernels::openmp_enabled() ? "on" : "off");
  std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "omp", "speedup");

  std::mt19937_64 rng(12345);
  const auto Z = random_vec(std::size_t(s) * n, rng);
  const auto wts = random_vec(std::size_t(n), rng);
  std::vector<double> K1(std::size_t(s) * s), K2(K1.size());

  const double t_corr_s = time_best_of(3, [&] {
    burgers::kernels::serial::correlation(Z.data(), s, n, wts.data(), 1.0 / s,
                                          K1.data());
  });
  const double t_corr_p = time_best_of(3, [&] {
    burgers::kernels::correlation(Z.data(), s, n, wts.data(), 1.0 / s, K2.data());
  });
  row("correlation", t_corr_s, t_corr_p, bit_equal(K1, K2));

  const auto C = random_vec(std::size_t(r) * r * r, rng);
  const auto q = random_vec(std::size_t(r), rng);
  std::vector<double> o1(r), o2(r);
  const int contract_iters = 2000;
  const double t_con_s = time_best_of(3, [&] {
    for (int i = 0; i < contract_iters; ++i)
      burgers::kernels::serial::quadratic_contract(C.data(), q.data(), r, o1.data());
  });
  const double t_con_p = time_best_of(3, [&] {
    for (int i = 0; i < contract_iters; ++i)
      burgers::kernels::quadratic_contract(C.data(), q.data(), r, o2.data());
  });
  row("quadratic_contract", t_con_s, t_con_p, bit_equal(o1, o2));

  const auto mean = random_vec(std::size_t(n), rng);
  const auto modes = random_vec(std::size_t(r) * n, rng);
  const auto coeffs = random_vec(std::size_t(s) * r, rng);
  std::vector<double> F1(std::size_t(s) * n), F2(F1.size());
  const double t_rec_s = time_best_of(3, [&] {
    burgers::kernels::serial::reconstruct(mean.data(), modes.data(), coeffs.data(),
                                          s, n, r, F1.data());
  });
  const double t_rec_p = time_best_of(3, [&] {
    burgers::kernels::reconstruct(mean.data(), modes.data(), coeffs.data(), s, n,
                                  r, F2.data());
  });
  row("reconstruct", t_rec_s, t_rec_p, bit_equal(F1, F2));

  const auto A = random_vec(std::size_t(s) * n, rng);
  std::vector<double> e1(s), e2(s);
  const double t_err_s = time_best_of(5, [&] {
    burgers::kernels::serial::error_energy(A.data(), Z.data(), s, n, wts.data(),
                                           e1.data());
  });
  const double t_err_p = time_best_of(5, [&] {
    burgers::kernels::error_energy(A.data(), Z.data(), s, n, wts.data(), e2.data());
  });
  row("error_energy", t_err_s, t_err_p, bit_equal(e1, e2));

  return 0;
}
