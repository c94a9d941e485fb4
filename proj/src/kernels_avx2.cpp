// AVX2 kernel variants. Compiled with -mavx2 -mfma for this translation unit
// only; callers reach these through the runtime dispatch in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace steepwell::kernels::avx2 {

namespace {

// Per-lane Neumaier accumulator on 4 doubles.
struct VAccum {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  inline void add(__m256d v) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d t = _mm256_add_pd(s, v);
    __m256d as = _mm256_andnot_pd(signmask, s);
    __m256d av = _mm256_andnot_pd(signmask, v);
    // branchless Neumaier: pick the larger-magnitude operand as the base
    __m256d big = _mm256_blendv_pd(v, s, _mm256_cmp_pd(as, av, _CMP_GE_OQ));
    __m256d small = _mm256_blendv_pd(s, v, _mm256_cmp_pd(as, av, _CMP_GE_OQ));
    c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
    s = t;
  }

  // Merge the four (sum, comp) lanes with a scalar Neumaier pass.
  double value() const {
    alignas(32) double sv[4], cv[4];
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    double sum = 0.0, comp = 0.0;
    for (int k = 0; k < 4; ++k) {
      double v = sv[k];
      double t = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
      comp += cv[k];
    }
    return sum + comp;
  }
};

inline double finish_tail_prod2(VAccum& acc, const double* a, const double* b,
                                std::size_t i, std::size_t n) {
  double sum = acc.value();
  double comp = 0.0;
  for (; i < n; ++i) {
    double v = a[i] * b[i];
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double sum_prod2(const double* a, const double* b, std::size_t n) {
  VAccum acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc.add(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  return finish_tail_prod2(acc, a, b, i, n);
}

double sum_prod3(const double* a, const double* b, const double* c, std::size_t n) {
  VAccum acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc.add(_mm256_mul_pd(v, _mm256_loadu_pd(c + i)));
  }
  double sum = acc.value(), comp = 0.0;
  for (; i < n; ++i) {
    double v = a[i] * b[i] * c[i];
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double sum_weighted_abs_pow(const double* w, const double* u, double p, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  VAccum acc;
  std::size_t i = 0;
  if (p == 2.0) {
    for (; i + 4 <= n; i += 4) {
      __m256d uu = _mm256_loadu_pd(u + i);
      acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(uu, uu)));
    }
  } else if (p == 3.0) {
    for (; i + 4 <= n; i += 4) {
      __m256d uu = _mm256_andnot_pd(signmask, _mm256_loadu_pd(u + i));
      __m256d u3 = _mm256_mul_pd(_mm256_mul_pd(uu, uu), uu);
      acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), u3));
    }
  } else if (p == 4.0) {
    for (; i + 4 <= n; i += 4) {
      __m256d uu = _mm256_loadu_pd(u + i);
      __m256d u2 = _mm256_mul_pd(uu, uu);
      acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(u2, u2)));
    }
  }
  // general p (and tails): scalar pow
  double sum = acc.value(), comp = 0.0;
  for (; i < n; ++i) {
    double au = std::abs(u[i]);
    double v;
    if (p == 2.0)
      v = w[i] * au * au;
    else if (p == 3.0)
      v = w[i] * au * au * au;
    else if (p == 4.0)
      v = w[i] * au * au * au * au;
    else
      v = w[i] * std::pow(au, p);
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scale(double* u, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(u + i, _mm256_mul_pd(va, _mm256_loadu_pd(u + i)));
  for (; i < n; ++i) u[i] *= a;
}

void signed_pow(const double* u, double q, double* out, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  if (q == 1.0) {
    for (; i + 4 <= n; i += 4) {
      __m256d uu = _mm256_loadu_pd(u + i);
      __m256d au = _mm256_andnot_pd(signmask, uu);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(au, uu));
    }
    for (; i < n; ++i) out[i] = std::abs(u[i]) * u[i];
  } else if (q == 2.0) {
    for (; i + 4 <= n; i += 4) {
      __m256d uu = _mm256_loadu_pd(u + i);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(uu, uu), uu));
    }
    for (; i < n; ++i) out[i] = u[i] * u[i] * u[i];
  } else {
    for (; i < n; ++i) out[i] = std::pow(std::abs(u[i]), q) * u[i];
  }
}

void tridiag_matvec(const double* lo, const double* di, const double* up,
                    const double* x, double* y, std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = di[0] * x[0];
    return;
  }
  y[0] = di[0] * x[0] + up[0] * x[1];
  std::size_t i = 1;
  for (; i + 5 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_loadu_pd(lo + i), _mm256_loadu_pd(x + i - 1));
    v = _mm256_fmadd_pd(_mm256_loadu_pd(di + i), _mm256_loadu_pd(x + i), v);
    v = _mm256_fmadd_pd(_mm256_loadu_pd(up + i), _mm256_loadu_pd(x + i + 1), v);
    _mm256_storeu_pd(y + i, v);
  }
  for (; i + 1 < n; ++i)
    y[i] = std::fma(lo[i], x[i - 1], std::fma(di[i], x[i], up[i] * x[i + 1]));
  y[n - 1] = std::fma(lo[n - 1], x[n - 2], di[n - 1] * x[n - 1]);
}

void band5_matvec(const double* d0, const double* d1, const double* d2,
                  const double* x, double* y, std::size_t n) {
  if (n < 8) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = d0[i] * x[i];
      if (i >= 1) v += d1[i - 1] * x[i - 1];
      if (i >= 2) v += d2[i - 2] * x[i - 2];
      if (i + 1 < n) v += d1[i] * x[i + 1];
      if (i + 2 < n) v += d2[i] * x[i + 2];
      y[i] = v;
    }
    return;
  }
  y[0] = d0[0] * x[0] + d1[0] * x[1] + d2[0] * x[2];
  y[1] = d1[0] * x[0] + d0[1] * x[1] + d1[1] * x[2] + d2[1] * x[3];
  std::size_t i = 2;
  for (; i + 6 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_loadu_pd(d2 + i - 2), _mm256_loadu_pd(x + i - 2));
    v = _mm256_fmadd_pd(_mm256_loadu_pd(d1 + i - 1), _mm256_loadu_pd(x + i - 1), v);
    v = _mm256_fmadd_pd(_mm256_loadu_pd(d0 + i), _mm256_loadu_pd(x + i), v);
    v = _mm256_fmadd_pd(_mm256_loadu_pd(d1 + i), _mm256_loadu_pd(x + i + 1), v);
    v = _mm256_fmadd_pd(_mm256_loadu_pd(d2 + i), _mm256_loadu_pd(x + i + 2), v);
    _mm256_storeu_pd(y + i, v);
  }
  for (; i < n; ++i) {
    double v = d2[i - 2] * x[i - 2] + d1[i - 1] * x[i - 1] + d0[i] * x[i];
    if (i + 1 < n) v += d1[i] * x[i + 1];
    if (i + 2 < n) v += d2[i] * x[i + 2];
    y[i] = v;
  }
}

void diff2_apply(const double* a, const double* b, const double* u,
                 double* out, std::size_t n) {
  if (n < 6) {
    for (std::size_t i = 0; i < n; ++i) {
      double up = (i + 1 < n) ? u[i + 1] : 0.0;
      double um = (i >= 1) ? u[i - 1] : 0.0;
      out[i] = a[i] * (up - u[i]) + b[i] * (u[i] - um);
    }
    return;
  }
  out[0] = a[0] * (u[1] - u[0]) + b[0] * u[0];
  std::size_t i = 1;
  for (; i + 5 <= n; i += 4) {
    __m256d ui = _mm256_loadu_pd(u + i);
    __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), ui);
    __m256d d2 = _mm256_sub_pd(ui, _mm256_loadu_pd(u + i - 1));
    __m256d v = _mm256_mul_pd(_mm256_loadu_pd(a + i), d1);
    v = _mm256_fmadd_pd(_mm256_loadu_pd(b + i), d2, v);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) {
    double up = (i + 1 < n) ? u[i + 1] : 0.0;
    out[i] = a[i] * (up - u[i]) + b[i] * (u[i] - u[i - 1]);
  }
}

}  // namespace steepwell::kernels::avx2

#endif  // x86-64
