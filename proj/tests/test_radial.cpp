#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "steepwell/radial.hpp"
#include "steepwell/rng.hpp"

using namespace steepwell;

TEST_CASE("grid construction and invariants") {
  auto g = build_grid(5, 2.0, 16);
  CHECK(g.h == doctest::Approx(2.0 / 17));
  CHECK(g.nodes[0] == doctest::Approx(2.0 / 17));
  CHECK(g.nodes.back() < g.r_max);
  for (int i = 0; i < g.m; ++i) {
    CHECK(g.weights[i] > 0.0);
    if (i > 0) CHECK(g.nodes[i] > g.nodes[i - 1]);
  }
  CHECK_THROWS(build_grid(4, 1.0, 64));
  CHECK_THROWS(build_grid(5, -1.0, 64));
  CHECK_THROWS(build_grid(5, 1.0, 7));
}

TEST_CASE("quadrature weights sum to the ball volume") {
  // The boundary half-cell is not represented (fields vanish at r_max), so
  // the constant-1 sum carries an O(h) deficit; check at a resolution where
  // that deficit is visibly small and shrinking.
  const double vol5 = std::pow(std::numbers::pi, 2.5) / std::tgamma(3.5);
  CHECK(ball_volume(5, 1.0) == doctest::Approx(vol5).epsilon(1e-14));
  CHECK(ball_volume(8, 1.0) == doctest::Approx(std::pow(std::numbers::pi, 4.0) / 24).epsilon(1e-14));
  double prev_err = 0.0;
  for (int m : {512, 1024, 2048}) {
    auto g = build_grid(5, 1.0, m);
    double s = 0.0;
    for (double w : g.weights) s += w;
    const double err = std::abs(s - vol5) / vol5;
    if (prev_err > 0.0) CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 2e-3);
}

TEST_CASE("quadrature order at least 2 on vanishing smooth fields") {
  // f = (1-r^2)^4 on the unit ball in dimension 5;
  // integral = omega/2 * B(5/2, 5)
  const double exact = unit_sphere_area(5) * 0.5 * std::tgamma(2.5) *
                       std::tgamma(5.0) / std::tgamma(7.5);
  double errs[3];
  int idx = 0;
  for (int m : {128, 256, 512}) {
    auto g = build_grid(5, 1.0, m);
    RadialField f(g);
    for (int i = 0; i < m; ++i) {
      const double t = 1.0 - g.nodes[i] * g.nodes[i];
      f.values[i] = t * t * t * t;
    }
    RadialField one(g);
    for (auto& v : one.values) v = 1.0;
    errs[idx++] = std::abs(inner_l2(g, f, one) - exact);
  }
  CHECK(std::log2(errs[0] / errs[1]) > 1.9);
  CHECK(std::log2(errs[1] / errs[2]) > 1.9);
}

TEST_CASE("laplacian exact on const and r^2, O(h^2) on r^4") {
  auto g = build_grid(5, 1.0, 256);
  const int m = g.m;

  RadialField c(g);
  for (auto& v : c.values) v = 1.0;
  auto lc = apply_laplacian(g, c);
  for (int i = 0; i + 1 < m; ++i)  // last row sees the Dirichlet closure
    CHECK(std::abs(lc.values[i]) < 1e-9);

  // r^2 - r_max^2 vanishes at the boundary: exact at every row
  RadialField q(g);
  for (int i = 0; i < m; ++i) q.values[i] = g.nodes[i] * g.nodes[i] - 1.0;
  auto lq = apply_laplacian(g, q);
  for (int i = 0; i < m; ++i)
    CHECK(lq.values[i] == doctest::Approx(2.0 * g.dim_N).epsilon(1e-8));

  RadialField r4(g);
  for (int i = 0; i < m; ++i) r4.values[i] = std::pow(g.nodes[i], 4);
  auto lr4 = apply_laplacian(g, r4);
  for (int i = 1; i < m - 2; ++i) {
    if (g.nodes[i] > 0.9) break;
    const double expect = (4.0 * g.dim_N + 8.0) * g.nodes[i] * g.nodes[i];
    CHECK(lr4.values[i] == doctest::Approx(expect).epsilon(5e-4));
  }
}

TEST_CASE("inner products and norms") {
  auto g = build_grid(5, 1.0, 512);
  RadialField one(g);
  for (auto& v : one.values) v = 1.0;
  const double vol5 = ball_volume(5, 1.0);
  CHECK(inner_l2(g, one, one) == doctest::Approx(vol5).epsilon(6e-3));

  SplitMix64 rng(99);
  RadialField u(g);
  for (auto& v : u.values) v = rng.next_normal();
  CHECK(lp_norm(g, u, 2.0) * lp_norm(g, u, 2.0) ==
        doctest::Approx(inner_l2(g, u, u)).epsilon(1e-13));

  RadialField cu(g);
  for (int i = 0; i < g.m; ++i) cu.values[i] = -3.5 * u.values[i];
  CHECK(lp_norm(g, cu, 3.0) == doctest::Approx(3.5 * lp_norm(g, u, 3.0)).epsilon(1e-13));

  auto g2 = build_grid(5, 1.0, 64);
  RadialField w(g2);
  CHECK_THROWS(inner_l2(g, u, w));
}
