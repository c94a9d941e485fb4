#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the discretization and solvers.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2, a vectorized variant selected once at startup. All reductions use
// Neumaier-compensated accumulation in both variants: the Nehari/energy
// identity checks downstream need sums of ~1e13-magnitude stencil terms
// accurate to ~1e-12 relative.

namespace steepwell::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string_view backend_name();

// Testing hook; also honors the STEEPWELL_FORCE_SCALAR environment variable.
void force_backend(Backend b);

// sum_i a[i] * b[i]
double sum_prod2(const double* a, const double* b, std::size_t n);

// sum_i a[i] * b[i] * c[i]
double sum_prod3(const double* a, const double* b, const double* c, std::size_t n);

// sum_i w[i] * |u[i]|^p   (p >= 1; p in {2,3,4} take vectorized fast paths)
double sum_weighted_abs_pow(const double* w, const double* u, double p, std::size_t n);

// y += a * x
void axpy(double* y, double a, const double* x, std::size_t n);

// u *= a
void scale(double* u, double a, std::size_t n);

// out[i] = |u[i]|^q * u[i]   (q = p-2; q in {1,2} take fast paths)
void signed_pow(const double* u, double q, double* out, std::size_t n);

// Tridiagonal matvec, rows i: y[i] = lo[i]*x[i-1] + di[i]*x[i] + up[i]*x[i+1]
// with x[-1] = x[n] = 0 implied (lo[0] and up[n-1] are ignored).
void tridiag_matvec(const double* lo, const double* di, const double* up,
                    const double* x, double* y, std::size_t n);

// Symmetric pentadiagonal matvec: d0 diagonal, d1 first superdiagonal
// (length n-1), d2 second superdiagonal (length n-2).
void band5_matvec(const double* d0, const double* d1, const double* d2,
                  const double* x, double* y, std::size_t n);

// Radial Laplacian stencil in difference-of-differences form:
//   out[i] = a[i]*(u[i+1]-u[i]) + b[i]*(u[i]-u[i-1]),  u[-1] = u[n] = 0.
// Keeping the neighbor differences explicit avoids the large cancellations
// of the expanded three-term stencil.
void diff2_apply(const double* a, const double* b, const double* u,
                 double* out, std::size_t n);

}  // namespace steepwell::kernels
