#pragma once

#include <vector>

// Extremal profiles for the second-order Sobolev inequality
// ||Delta u||_2^2 >= S ||u||_{2**}^2, their cutoff to the unit ball, the
// constant S by radial quadrature, and the critical-case energy bound.

namespace steepwell {

struct BubbleSpec {
  int dim_N = 8;
  double epsilon = 1.0;
  double c_N = 0.0;          // 0 means: use the normalization below
  double cutoff_inner = 0.5;  // r0, profile untouched inside
  double cutoff_outer = 0.9;  // r1 < 1, support inside the unit ball
};

// [N(N-4)(N^2-4)]^{(N-4)/8}; with this normalization the profile solves
// Delta^2 U = U^{2**-1}.
double bubble_normalization(int dim_N);

// U_eps(r) = c_N (eps/(eps^2+r^2))^{(N-4)/2}.
double bubble_profile(const BubbleSpec& spec, double r);

// Closed-form radial derivative and Laplacian of the profile.
double bubble_profile_deriv(const BubbleSpec& spec, double r);
double bubble_profile_laplacian(const BubbleSpec& spec, double r);

// C^2 quintic blend: 1 on [0, r0], 0 on [r1, inf); value and first two
// derivatives vanish at both junctions.
double smooth_cutoff(double r, double r0, double r1);
double smooth_cutoff_deriv(double r, double r0, double r1);
double smooth_cutoff_second_deriv(double r, double r0, double r1);

// Delta(eta * U) at radius r via the product rule.
double cutoff_bubble_laplacian(const BubbleSpec& spec, double r);

struct SobolevOpts {
  double r_quad = 1e3;    // analytic power-law tail beyond this radius
  double quad_tol = 1e-12;
};

// S = int|Delta U_1|^2 / (int U_1^{2**})^{2/2**}. Recomputed internally at
// eps = 1/2 and eps = 2; throws if the three values disagree beyond 1e-8
// relative or the analytic tail exceeds 1e-10 of the integral.
double sobolev_constant(int dim_N, const SobolevOpts& opts = {});

struct BubbleBoundResult {
  double min_energy = 0.0;
  double threshold = 0.0;  // (2/N) S^{N/4}
  double margin = 0.0;     // threshold - min_energy
  double argmin_eps = 0.0;
  std::vector<double> epsilons;  // entries actually evaluated
  std::vector<double> energies;  // J_Omega(t_eps u_eps) per entry
};

// For each eps forms u_eps = eta * U_eps, projects onto the Nehari manifold
// by the closed-form scale, and evaluates the critical energy
// (2/N) (int(|Delta u|^2 - delta u^2))^{N/4} / (int |u|^{2**})^{(N-4)/4}.
// Entries with nonpositive numerator are skipped.
BubbleBoundResult bubble_energy_bound(int dim_N, double delta,
                                      const std::vector<double>& epsilon_grid,
                                      double cutoff_inner = 0.5,
                                      double cutoff_outer = 0.9,
                                      const SobolevOpts& opts = {});

// 20 log-spaced epsilons between lo and hi.
std::vector<double> default_epsilon_grid(double lo = 1e-3, double hi = 0.5,
                                         int count = 25);

struct MassScalingResult {
  double fitted_exponent = 0.0;
  std::vector<double> epsilons;
  std::vector<double> masses;  // int_Omega u_eps^2
};

// Fits the small-eps scaling of the L^2 mass of the cutoff bubble:
// slope of log(mass) vs log(eps), with the mass divided by |ln eps| first
// when N = 8.
MassScalingResult l2_mass_scaling_fit(int dim_N,
                                      const std::vector<double>& epsilon_grid,
                                      double cutoff_inner = 0.5,
                                      double cutoff_outer = 0.9,
                                      const SobolevOpts& opts = {});

}  // namespace steepwell
