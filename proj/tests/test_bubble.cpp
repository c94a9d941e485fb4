#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "steepwell/bubble.hpp"

using namespace steepwell;

TEST_CASE("profile normalization and value at the origin") {
  for (int n : {8, 9, 10}) {
    const double cn = bubble_normalization(n);
    CHECK(cn == doctest::Approx(std::pow(n * (n - 4.0) * (n * n - 4.0),
                                         (n - 4.0) / 8.0)).epsilon(1e-14));
    BubbleSpec s;
    s.dim_N = n;
    s.epsilon = 0.25;
    CHECK(bubble_profile(s, 0.0) ==
          doctest::Approx(cn * std::pow(0.25, -(n - 4.0) / 2.0)).epsilon(1e-13));
  }
}

TEST_CASE("profile scaling U_eps(r) = eps^-a U_1(r/eps)") {
  BubbleSpec s1{8, 1.0};
  BubbleSpec se{8, 0.3};
  const double a = (8.0 - 4.0) / 2.0;
  for (double r : {0.0, 0.1, 0.7, 2.0, 9.0}) {
    CHECK(bubble_profile(se, r) ==
          doctest::Approx(std::pow(0.3, -a) * bubble_profile(s1, r / 0.3)).epsilon(1e-13));
  }
}

TEST_CASE("closed-form derivative and laplacian match finite differences") {
  BubbleSpec s{9, 0.8};
  const double h = 1e-5;
  for (double r : {0.05, 0.3, 1.1, 4.0}) {
    const double fd1 = (bubble_profile(s, r + h) - bubble_profile(s, r - h)) / (2 * h);
    CHECK(bubble_profile_deriv(s, r) == doctest::Approx(fd1).epsilon(1e-8));
    const double fd2 = (bubble_profile(s, r + h) - 2 * bubble_profile(s, r) +
                        bubble_profile(s, r - h)) / (h * h);
    const double lap = fd2 + (s.dim_N - 1) / r * fd1;
    CHECK(bubble_profile_laplacian(s, r) == doctest::Approx(lap).epsilon(1e-5));
  }
}

TEST_CASE("profile solves the critical equation") {
  // Delta^2 U = U^{2**-1}: second radial pass over the analytic laplacian
  BubbleSpec s{8, 1.0};
  const double h = 1e-4;
  const double q = 2.0 * 8 / (8 - 4.0) - 1.0;  // 2** - 1 = 3
  for (double r : {0.2, 0.6, 1.3, 3.0}) {
    const double l = bubble_profile_laplacian(s, r);
    const double lp = bubble_profile_laplacian(s, r + h);
    const double lm = bubble_profile_laplacian(s, r - h);
    const double bilap = (lp - 2 * l + lm) / (h * h) + (s.dim_N - 1) / r * (lp - lm) / (2 * h);
    CHECK(bilap == doctest::Approx(std::pow(bubble_profile(s, r), q)).epsilon(1e-5));
  }
}

TEST_CASE("cutoff blend: plateau, decay, junction smoothness") {
  const double r0 = 0.5, r1 = 0.9;
  CHECK(smooth_cutoff(0.0, r0, r1) == 1.0);
  CHECK(smooth_cutoff(0.5, r0, r1) == 1.0);
  CHECK(smooth_cutoff(0.9, r0, r1) == 0.0);
  CHECK(smooth_cutoff(5.0, r0, r1) == 0.0);
  CHECK(smooth_cutoff(0.7, r0, r1) == doctest::Approx(0.5).epsilon(1e-14));

  for (double r : {r0, r1}) {
    CHECK(std::abs(smooth_cutoff_deriv(r, r0, r1)) < 1e-12);
    CHECK(std::abs(smooth_cutoff_second_deriv(r, r0, r1)) < 1e-9);
  }
  const double h = 1e-6;
  for (double r : {0.55, 0.7, 0.85}) {
    const double fd = (smooth_cutoff(r + h, r0, r1) - smooth_cutoff(r - h, r0, r1)) / (2 * h);
    CHECK(smooth_cutoff_deriv(r, r0, r1) == doctest::Approx(fd).epsilon(1e-7));
    const double fd2 = (smooth_cutoff_deriv(r + h, r0, r1) -
                        smooth_cutoff_deriv(r - h, r0, r1)) / (2 * h);
    CHECK(smooth_cutoff_second_deriv(r, r0, r1) == doctest::Approx(fd2).epsilon(1e-6));
  }
}

TEST_CASE("cutoff-product laplacian via the product rule") {
  BubbleSpec s{8, 0.2};
  const double h = 1e-5;
  auto eta_u = [&](double r) {
    return smooth_cutoff(r, s.cutoff_inner, s.cutoff_outer) * bubble_profile(s, r);
  };
  for (double r : {0.3, 0.6, 0.75, 0.85}) {
    const double fd2 = (eta_u(r + h) - 2 * eta_u(r) + eta_u(r - h)) / (h * h);
    const double fd1 = (eta_u(r + h) - eta_u(r - h)) / (2 * h);
    const double lap = fd2 + (s.dim_N - 1) / r * fd1;
    CHECK(cutoff_bubble_laplacian(s, r) == doctest::Approx(lap).epsilon(1e-4));
  }
}

TEST_CASE("sharp constant fixtures") {
  CHECK(sobolev_constant(8) == doctest::Approx(653.8247118267387).epsilon(1e-8));
  CHECK(sobolev_constant(9) == doctest::Approx(913.5338447800104).epsilon(1e-8));
}

TEST_CASE("energy bound structure") {
  auto grid = default_epsilon_grid();
  CHECK(grid.size() == 25);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(0.5));

  auto b = bubble_energy_bound(8, 4.0, grid);
  CHECK(b.threshold == doctest::Approx(0.25 * std::pow(sobolev_constant(8), 2.0)).epsilon(1e-8));
  CHECK(b.min_energy > 0.0);
  CHECK(b.margin == doctest::Approx(b.threshold - b.min_energy));
  CHECK(!b.energies.empty());
  CHECK(*std::min_element(b.energies.begin(), b.energies.end()) ==
        doctest::Approx(b.min_energy));
  // the largest-eps entry sits far from the minimum
  CHECK(b.energies.back() > b.min_energy);
}

TEST_CASE("zero mass shift keeps the energy at or above the threshold") {
  auto b = bubble_energy_bound(8, 0.0, default_epsilon_grid());
  for (double e : b.energies) CHECK(e >= b.threshold * (1.0 - 1e-8));
  CHECK(b.margin <= 1e-8 * b.threshold);
}

TEST_CASE("small-eps mass scaling exponent") {
  std::vector<double> eps;
  for (int k = 0; k < 21; ++k)
    eps.push_back(1e-4 * std::pow(100.0, k / 20.0));
  auto f9 = l2_mass_scaling_fit(9, eps);
  CHECK(f9.fitted_exponent == doctest::Approx(4.0).epsilon(0.04));
  auto f8 = l2_mass_scaling_fit(8, eps);
  CHECK(f8.fitted_exponent == doctest::Approx(4.0).epsilon(0.04));
  CHECK(f8.masses.size() == eps.size());
  for (std::size_t i = 1; i < f8.masses.size(); ++i)
    CHECK(f8.masses[i] > f8.masses[i - 1]);
}
