#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "steepwell/banded.hpp"
#include "steepwell/rng.hpp"

using namespace steepwell;

namespace {

SymBand5 random_spd_band(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SymBand5 a(n);
  for (std::size_t i = 0; i < n - 1; ++i) a.d1[i] = rng.next_normal();
  for (std::size_t i = 0; i + 2 < n; ++i) a.d2[i] = rng.next_normal();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    if (i >= 1) row += std::abs(a.d1[i - 1]);
    if (i >= 2) row += std::abs(a.d2[i - 2]);
    if (i + 1 < n) row += std::abs(a.d1[i]);
    if (i + 2 < n) row += std::abs(a.d2[i]);
    a.d0[i] = row + 1.0 + rng.next_uniform();  // strict diagonal dominance
  }
  return a;
}

}  // namespace

TEST_CASE("LDLT factor/solve round trip on an SPD band") {
  const std::size_t n = 301;
  auto a = random_spd_band(n, 42);
  SplitMix64 rng(7);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.next_normal();
  auto b = a.matvec(x);

  BandLDLT f;
  REQUIRE(f.factor(a));
  CHECK(f.positive_definite());
  f.solve(b);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-10));
}

TEST_CASE("shifted factorization matches explicit subtraction") {
  const std::size_t n = 64;
  auto a = random_spd_band(n, 3);
  std::vector<double> mdiag(n, 2.0);
  SymBand5 shifted = a;
  for (std::size_t i = 0; i < n; ++i) shifted.d0[i] -= 0.5 * mdiag[i];

  SplitMix64 rng(8);
  std::vector<double> rhs(n), r1, r2;
  for (auto& v : rhs) v = rng.next_normal();
  BandLDLT f1, f2;
  REQUIRE(f1.factor_shifted(a, 0.5, mdiag));
  REQUIRE(f2.factor(shifted));
  r1 = rhs;
  r2 = rhs;
  f1.solve(r1);
  f2.solve(r2);
  for (std::size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-12));
}

TEST_CASE("indefinite pencil: LDLT still solves when pivots stay nonzero") {
  // shift beyond the smallest eigenvalue makes the matrix indefinite
  auto a = random_spd_band(50, 11);
  std::vector<double> mdiag(50, 1.0);
  BandLDLT f;
  if (f.factor_shifted(a, 100.0, mdiag)) {
    CHECK(!f.positive_definite());
    SymBand5 shifted = a;
    for (std::size_t i = 0; i < 50; ++i) shifted.d0[i] -= 100.0;
    SplitMix64 rng(5);
    std::vector<double> x(50);
    for (auto& v : x) v = rng.next_normal();
    auto b = shifted.matvec(x);
    f.solve(b);
    for (std::size_t i = 0; i < 50; ++i)
      CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-8));
  }
}

TEST_CASE("zero pivot reported") {
  SymBand5 a(8);
  // first pivot zero with a nonzero column below it
  a.d1[0] = 1.0;
  BandLDLT f;
  CHECK(!f.factor(a));
}

TEST_CASE("tridiagonal solve") {
  const std::size_t n = 97;
  SplitMix64 rng(19);
  std::vector<double> lo(n), di(n), up(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = rng.next_normal();
    up[i] = rng.next_normal();
    di[i] = std::abs(lo[i]) + std::abs(up[i]) + 1.0 + rng.next_uniform();
    x[i] = rng.next_normal();
  }
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = di[i] * x[i];
    if (i >= 1) b[i] += lo[i] * x[i - 1];
    if (i + 1 < n) b[i] += up[i] * x[i + 1];
  }
  REQUIRE(tridiag_solve(lo, di, up, b));
  for (std::size_t i = 0; i < n; ++i)
    CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-10));
}
