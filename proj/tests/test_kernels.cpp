#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "steepwell/kernels.hpp"
#include "steepwell/rng.hpp"

using namespace steepwell;
namespace k = steepwell::kernels;

namespace {

std::vector<double> randvec(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = scale * rng.next_normal();
  return v;
}

long double naive_prod2(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += static_cast<long double>(a[i]) * b[i];
  return s;
}

struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::force_backend(saved); }
};

}  // namespace

TEST_CASE("reduction kernels match a long double reference") {
  const auto a = randvec(1003, 1), b = randvec(1003, 2), c = randvec(1003, 3);
  const double ref2 = static_cast<double>(naive_prod2(a, b));
  CHECK(k::sum_prod2(a.data(), b.data(), a.size()) ==
        doctest::Approx(ref2).epsilon(1e-14));
  long double r3 = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    r3 += static_cast<long double>(a[i]) * b[i] * c[i];
  CHECK(k::sum_prod3(a.data(), b.data(), c.data(), a.size()) ==
        doctest::Approx(static_cast<double>(r3)).epsilon(1e-14));
}

TEST_CASE("compensated sums survive catastrophic cancellation") {
  // pairs (x, -x) plus a tiny tail; a naive sum loses the tail entirely
  std::vector<double> a, ones;
  for (int i = 0; i < 500; ++i) {
    a.push_back(1e12 + i);
    a.push_back(-(1e12 + i));
  }
  a.push_back(3.25e-7);
  ones.assign(a.size(), 1.0);
  CHECK(k::sum_prod2(a.data(), ones.data(), a.size()) == doctest::Approx(3.25e-7).epsilon(1e-12));
}

TEST_CASE("weighted p-mass fast paths agree with pow") {
  const auto w = randvec(777, 4), u = randvec(777, 5);
  std::vector<double> wpos(w);
  for (auto& x : wpos) x = std::abs(x);
  for (double p : {2.0, 3.0, 4.0, 2.5, 3.3}) {
    long double ref = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      ref += static_cast<long double>(wpos[i]) * std::pow(std::abs(u[i]), p);
    CHECK(k::sum_weighted_abs_pow(wpos.data(), u.data(), p, u.size()) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
  }
}

TEST_CASE("signed_pow fast paths") {
  const auto u = randvec(97, 6);
  std::vector<double> out(u.size());
  for (double q : {1.0, 2.0, 1.7}) {
    k::signed_pow(u.data(), q, out.data(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      CHECK(out[i] == doctest::Approx(std::pow(std::abs(u[i]), q) * u[i]).epsilon(1e-14));
  }
}

TEST_CASE("matvec kernels against index-wise reference") {
  const std::size_t n = 233;
  const auto d0 = randvec(n, 7), x = randvec(n, 8);
  const auto d1 = randvec(n - 1, 9), d2 = randvec(n - 2, 10);
  std::vector<double> y(n);
  k::band5_matvec(d0.data(), d1.data(), d2.data(), x.data(), y.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = d0[i] * x[i];
    if (i >= 1) v += d1[i - 1] * x[i - 1];
    if (i >= 2) v += d2[i - 2] * x[i - 2];
    if (i + 1 < n) v += d1[i] * x[i + 1];
    if (i + 2 < n) v += d2[i] * x[i + 2];
    CHECK(y[i] == doctest::Approx(v).epsilon(1e-13));
  }

  const auto lo = randvec(n, 11), di = randvec(n, 12), up = randvec(n, 13);
  k::tridiag_matvec(lo.data(), di.data(), up.data(), x.data(), y.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = di[i] * x[i];
    if (i >= 1) v += lo[i] * x[i - 1];
    if (i + 1 < n) v += up[i] * x[i + 1];
    CHECK(y[i] == doctest::Approx(v).epsilon(1e-13));
  }

  const auto a = randvec(n, 14), b = randvec(n, 15);
  k::diff2_apply(a.data(), b.data(), x.data(), y.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const double upv = i + 1 < n ? x[i + 1] : 0.0;
    const double umv = i >= 1 ? x[i - 1] : 0.0;
    CHECK(y[i] == doctest::Approx(a[i] * (upv - x[i]) + b[i] * (x[i] - umv)).epsilon(1e-13));
  }
}

TEST_CASE("axpy and scale") {
  auto y = randvec(131, 16);
  const auto x = randvec(131, 17);
  auto y0 = y;
  k::axpy(y.data(), 2.5, x.data(), y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(y[i] == doctest::Approx(y0[i] + 2.5 * x[i]).epsilon(1e-14));
  k::scale(y.data(), -0.5, y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(y[i] == doctest::Approx(-0.5 * (y0[i] + 2.5 * x[i])).epsilon(1e-14));
}

TEST_CASE("scalar and vectorized backends agree") {
  BackendGuard guard;
  if (guard.saved != k::Backend::avx2) {
    MESSAGE("AVX2 backend not active on this machine; equivalence test skipped");
    return;
  }
  // odd length exercises the tail paths
  const std::size_t n = 1021;
  const auto a = randvec(n, 20), b = randvec(n, 21), c = randvec(n, 22);
  std::vector<double> wpos(a);
  for (auto& x : wpos) x = std::abs(x);

  struct Snap {
    double s2, s3, mass25;
    std::vector<double> band, tri, diff, sp, ax;
  };
  auto run = [&](k::Backend be) {
    k::force_backend(be);
    Snap s;
    s.s2 = k::sum_prod2(a.data(), b.data(), n);
    s.s3 = k::sum_prod3(a.data(), b.data(), c.data(), n);
    s.mass25 = k::sum_weighted_abs_pow(wpos.data(), b.data(), 2.5, n);
    s.band.resize(n);
    k::band5_matvec(a.data(), b.data(), c.data(), b.data(), s.band.data(), n);
    s.tri.resize(n);
    k::tridiag_matvec(a.data(), b.data(), c.data(), b.data(), s.tri.data(), n);
    s.diff.resize(n);
    k::diff2_apply(a.data(), b.data(), c.data(), s.diff.data(), n);
    s.sp.resize(n);
    k::signed_pow(a.data(), 2.0, s.sp.data(), n);
    s.ax = c;
    k::axpy(s.ax.data(), 1.75, a.data(), n);
    return s;
  };
  const Snap sc = run(k::Backend::scalar);
  const Snap vx = run(k::Backend::avx2);
  CHECK(sc.s2 == doctest::Approx(vx.s2).epsilon(1e-14));
  CHECK(sc.s3 == doctest::Approx(vx.s3).epsilon(1e-14));
  CHECK(sc.mass25 == doctest::Approx(vx.mass25).epsilon(1e-14));
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(sc.band[i] == doctest::Approx(vx.band[i]).epsilon(1e-13));
    CHECK(sc.tri[i] == doctest::Approx(vx.tri[i]).epsilon(1e-13));
    CHECK(sc.diff[i] == doctest::Approx(vx.diff[i]).epsilon(1e-13));
    CHECK(sc.sp[i] == vx.sp[i]);
    CHECK(sc.ax[i] == doctest::Approx(vx.ax[i]).epsilon(1e-13));
  }
}

TEST_CASE("force_backend switches the reported backend") {
  BackendGuard guard;
  k::force_backend(k::Backend::scalar);
  CHECK(k::backend_name() == "scalar");
}
