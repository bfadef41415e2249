#include "burgers/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace burgers::kernels {

// Work thresholds below which the OpenMP variants stay on one thread; the
// ROM right-hand side calls quadratic_contract thousands of times on tiny
// tensors and must not pay fork/join overhead there.
namespace {
constexpr long kDotGrain = 1 << 16;
constexpr long kPairGrain = 1 << 18;
}  // namespace

namespace serial {

double weighted_dot(const double* a, const double* b, const double* wts, long n) {
  double acc = 0.0;
  for (long i = 0; i < n; ++i) acc += wts[i] * a[i] * b[i];
  return acc;
}

void correlation(const double* Z, long s, long n, const double* wts, double scale,
                 double* K) {
  for (long i = 0; i < s; ++i) {
    for (long j = i; j < s; ++j) {
      const double v = scale * weighted_dot(Z + i * n, Z + j * n, wts, n);
      K[i * s + j] = v;
      K[j * s + i] = v;
    }
  }
}

void quadratic_contract(const double* C, const double* q, long r, double* out) {
  for (long i = 0; i < r; ++i) {
    const double* Ci = C + i * r * r;
    double acc = 0.0;
    for (long j = 0; j < r; ++j) {
      const double* Cij = Ci + j * r;
      double row = 0.0;
      for (long k = 0; k < r; ++k) row += Cij[k] * q[k];
      acc += row * q[j];
    }
    out[i] = acc;
  }
}

void reconstruct(const double* mean, const double* modes, const double* coeffs,
                 long s, long n, long r, double* fields) {
  for (long j = 0; j < s; ++j) {
    double* f = fields + j * n;
    const double* qj = coeffs + j * r;
    for (long i = 0; i < n; ++i) {
      double acc = mean[i];
      for (long k = 0; k < r; ++k) acc += modes[k * n + i] * qj[k];
      f[i] = acc;
    }
  }
}

void error_energy(const double* A, const double* B, long s, long n,
                  const double* wts, double* out) {
  for (long j = 0; j < s; ++j) {
    const double* a = A + j * n;
    const double* b = B + j * n;
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      const double e = a[i] - b[i];
      acc += wts[i] * e * e;
    }
    out[j] = acc;
  }
}

}  // namespace serial

double weighted_dot(const double* a, const double* b, const double* wts, long n) {
  // A parallel reduction would reorder the sum; keep the serial order so the
  // result matches the reference bitwise.
  return serial::weighted_dot(a, b, wts, n);
}

void correlation(const double* Z, long s, long n, const double* wts, double scale,
                 double* K) {
  const bool par = s * s * n > kPairGrain;
  (void)par;
#pragma omp parallel for schedule(dynamic, 4) if (par)
  for (long i = 0; i < s; ++i) {
    for (long j = i; j < s; ++j) {
      const double v = scale * serial::weighted_dot(Z + i * n, Z + j * n, wts, n);
      K[i * s + j] = v;
      K[j * s + i] = v;
    }
  }
}

void quadratic_contract(const double* C, const double* q, long r, double* out) {
  const bool par = r * r * r > kDotGrain;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (long i = 0; i < r; ++i) {
    const double* Ci = C + i * r * r;
    double acc = 0.0;
    for (long j = 0; j < r; ++j) {
      const double* Cij = Ci + j * r;
      double row = 0.0;
      for (long k = 0; k < r; ++k) row += Cij[k] * q[k];
      acc += row * q[j];
    }
    out[i] = acc;
  }
}

void reconstruct(const double* mean, const double* modes, const double* coeffs,
                 long s, long n, long r, double* fields) {
  const bool par = s * n * r > kPairGrain;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (long j = 0; j < s; ++j) {
    double* f = fields + j * n;
    const double* qj = coeffs + j * r;
    for (long i = 0; i < n; ++i) {
      double acc = mean[i];
      for (long k = 0; k < r; ++k) acc += modes[k * n + i] * qj[k];
      f[i] = acc;
    }
  }
}

void error_energy(const double* A, const double* B, long s, long n,
                  const double* wts, double* out) {
  const bool par = s * n > kDotGrain;
  (void)par;
#pragma omp parallel for schedule(static) if (par)
  for (long j = 0; j < s; ++j) {
    const double* a = A + j * n;
    const double* b = B + j * n;
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      const double e = a[i] - b[i];
      acc += wts[i] * e * e;
    }
    out[j] = acc;
  }
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace burgers::kernels
