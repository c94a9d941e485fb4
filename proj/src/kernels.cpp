#include "steepwell/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace steepwell::kernels {

namespace detail {

// Neumaier variant of Kahan summation.
struct Accum {
  double s = 0.0;
  double c = 0.0;
  inline void add(double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  inline double value() const { return s + c; }
};

double sum_prod2_scalar(const double* a, const double* b, std::size_t n) {
  Accum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

double sum_prod3_scalar(const double* a, const double* b, const double* c, std::size_t n) {
  Accum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i] * c[i]);
  return acc.value();
}

double sum_weighted_abs_pow_scalar(const double* w, const double* u, double p, std::size_t n) {
  Accum acc;
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * u[i] * u[i]);
  } else if (p == 3.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double au = std::abs(u[i]);
      acc.add(w[i] * au * au * au);
    }
  } else if (p == 4.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double u2 = u[i] * u[i];
      acc.add(w[i] * u2 * u2);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * std::pow(std::abs(u[i]), p));
  }
  return acc.value();
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double* u, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) u[i] *= a;
}

void signed_pow_scalar(const double* u, double q, double* out, std::size_t n) {
  if (q == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(u[i]) * u[i];
  } else if (q == 2.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = u[i] * u[i] * u[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::abs(u[i]), q) * u[i];
  }
}

void tridiag_matvec_scalar(const double* lo, const double* di, const double* up,
                           const double* x, double* y, std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = di[0] * x[0];
    return;
  }
  y[0] = di[0] * x[0] + up[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i)
    y[i] = lo[i] * x[i - 1] + di[i] * x[i] + up[i] * x[i + 1];
  y[n - 1] = lo[n - 1] * x[n - 2] + di[n - 1] * x[n - 1];
}

void band5_matvec_scalar(const double* d0, const double* d1, const double* d2,
                         const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = d0[i] * x[i];
    if (i >= 1) v += d1[i - 1] * x[i - 1];
    if (i >= 2) v += d2[i - 2] * x[i - 2];
    if (i + 1 < n) v += d1[i] * x[i + 1];
    if (i + 2 < n) v += d2[i] * x[i + 2];
    y[i] = v;
  }
}

void diff2_apply_scalar(const double* a, const double* b, const double* u,
                        double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double up = (i + 1 < n) ? u[i + 1] : 0.0;
    double um = (i >= 1) ? u[i - 1] : 0.0;
    out[i] = a[i] * (up - u[i]) + b[i] * (u[i] - um);
  }
}

}  // namespace detail

#if defined(__x86_64__) || defined(_M_X64)
#define STEEPWELL_X86 1
#else
#define STEEPWELL_X86 0
#endif

#if STEEPWELL_X86
namespace avx2 {
double sum_prod2(const double* a, const double* b, std::size_t n);
double sum_prod3(const double* a, const double* b, const double* c, std::size_t n);
double sum_weighted_abs_pow(const double* w, const double* u, double p, std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);
void scale(double* u, double a, std::size_t n);
void signed_pow(const double* u, double q, double* out, std::size_t n);
void tridiag_matvec(const double* lo, const double* di, const double* up,
                    const double* x, double* y, std::size_t n);
void band5_matvec(const double* d0, const double* d1, const double* d2,
                  const double* x, double* y, std::size_t n);
void diff2_apply(const double* a, const double* b, const double* u,
                 double* out, std::size_t n);
}  // namespace avx2
#endif

namespace {

Backend detect_backend() {
  if (std::getenv("STEEPWELL_FORCE_SCALAR")) return Backend::scalar;
#if STEEPWELL_X86
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

std::string_view backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

#if STEEPWELL_X86
#define STEEPWELL_DISPATCH(fn, ...)                        \
  (active_backend() == Backend::avx2 ? avx2::fn(__VA_ARGS__) \
                                     : detail::fn##_scalar(__VA_ARGS__))
#else
#define STEEPWELL_DISPATCH(fn, ...) detail::fn##_scalar(__VA_ARGS__)
#endif

double sum_prod2(const double* a, const double* b, std::size_t n) {
  return STEEPWELL_DISPATCH(sum_prod2, a, b, n);
}
double sum_prod3(const double* a, const double* b, const double* c, std::size_t n) {
  return STEEPWELL_DISPATCH(sum_prod3, a, b, c, n);
}
double sum_weighted_abs_pow(const double* w, const double* u, double p, std::size_t n) {
  return STEEPWELL_DISPATCH(sum_weighted_abs_pow, w, u, p, n);
}
void axpy(double* y, double a, const double* x, std::size_t n) {
  STEEPWELL_DISPATCH(axpy, y, a, x, n);
}
void scale(double* u, double a, std::size_t n) {
  STEEPWELL_DISPATCH(scale, u, a, n);
}
void signed_pow(const double* u, double q, double* out, std::size_t n) {
  STEEPWELL_DISPATCH(signed_pow, u, q, out, n);
}
void tridiag_matvec(const double* lo, const double* di, const double* up,
                    const double* x, double* y, std::size_t n) {
  STEEPWELL_DISPATCH(tridiag_matvec, lo, di, up, x, y, n);
}
void band5_matvec(const double* d0, const double* d1, const double* d2,
                  const double* x, double* y, std::size_t n) {
  STEEPWELL_DISPATCH(band5_matvec, d0, d1, d2, x, y, n);
}
void diff2_apply(const double* a, const double* b, const double* u,
                 double* out, std::size_t n) {
  STEEPWELL_DISPATCH(diff2_apply, a, b, u, out, n);
}

}  // namespace steepwell::kernels
