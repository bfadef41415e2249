#pragma once

#include <Eigen/Core>
#include <vector>

namespace burgers::kernels {

// Data-parallel inner loops shared by the solver modules. Each kernel exists
// twice: the plain loop in kernels::serial is the reference, the default
// entry points run the same loops under OpenMP. Parallelism is always over
// independent output elements and every output element is accumulated in the
// same fixed order, so the OpenMP variants are bit-identical to the serial
// reference for any thread count. The test suite asserts this; the benchmark
// tool compares their throughput.

namespace serial {

/// sum_i wts[i]*a[i]*b[i]
double weighted_dot(const double* a, const double* b, const double* wts, long n);

/// K[i*s+j] = scale * <Z_i, Z_j>_wts for the s row-vectors of Z (each length n).
/// K is symmetric; both triangles are filled.
void correlation(const double* Z, long s, long n, const double* wts, double scale,
                 double* K);

/// out[i] = sum_{j,k} C[(i*r+j)*r+k] q[j] q[k]
void quadratic_contract(const double* C, const double* q, long r, double* out);

/// fields[j*n+i] = mean[i] + sum_k modes[k*n+i] * coeffs[j*r+k]
/// (modes stored mode-major: mode k occupies modes[k*n .. k*n+n)).
void reconstruct(const double* mean, const double* modes, const double* coeffs,
                 long s, long n, long r, double* fields);

/// out[j] = <A_j - B_j, A_j - B_j>_wts for each of the s rows.
void error_energy(const double* A, const double* B, long s, long n,
                  const double* wts, double* out);

}  // namespace serial

double weighted_dot(const double* a, const double* b, const double* wts, long n);
void correlation(const double* Z, long s, long n, const double* wts, double scale,
                 double* K);
void quadratic_contract(const double* C, const double* q, long r, double* out);
void reconstruct(const double* mean, const double* modes, const double* coeffs,
                 long s, long n, long r, double* fields);
void error_energy(const double* A, const double* B, long s, long n,
                  const double* wts, double* out);

/// True when the library was built with OpenMP.
bool openmp_enabled();

}  // namespace burgers::kernels
