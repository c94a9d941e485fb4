#pragma once

#include <cstdint>
#include <vector>

// Radial discretization of R^N restricted to radially symmetric functions.
// A grid covers (0, r_max) with m interior nodes r_i = i*h, h = r_max/(m+1).
// Fields store interior values only; the boundary conditions (even symmetry
// at the origin, homogeneous Dirichlet at r_max) are baked into the stencils.

namespace steepwell {

struct RadialGrid {
  int dim_N = 0;
  double r_max = 0.0;
  int m = 0;
  double h = 0.0;
  std::vector<double> nodes;    // r_i, i = 1..m
  std::vector<double> weights;  // w_i = omega_{N-1} r_i^{N-1} h

  // Laplacian stencil in difference form:
  //   (L u)_i = lap_a[i]*(u_{i+1}-u_i) + lap_b[i]*(u_i-u_{i-1})
  // with u_0 eliminated through the origin closure and u_{m+1} = 0.
  std::vector<double> lap_a;
  std::vector<double> lap_b;
};

struct RadialField {
  const RadialGrid* grid = nullptr;
  std::vector<double> values;

  RadialField() = default;
  explicit RadialField(const RadialGrid& g) : grid(&g), values(g.m, 0.0) {}
  RadialField(const RadialGrid& g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }
};

// Surface area of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dim_N);

// Volume of the ball of radius R in dimension N.
double ball_volume(int dim_N, double r);

// Rejects dim_N < 5, r_max <= 0, m < 8.
RadialGrid build_grid(int dim_N, double r_max, int m);

// Discrete radial Laplacian u'' + (N-1)/r u' with even closure at the
// origin and Dirichlet zero at r_max. Exact on u = const and u = r^2.
RadialField apply_laplacian(const RadialGrid& grid, const RadialField& u);
void apply_laplacian(const RadialGrid& grid, const double* u, double* out);

// Weighted inner product sum_i w_i u_i v_i  (discrete integral over R^N).
double inner_l2(const RadialGrid& grid, const RadialField& u, const RadialField& v);

// (sum_i w_i |u_i|^p)^{1/p}, p >= 1.
double lp_norm(const RadialGrid& grid, const RadialField& u, double p);

// sum_i w_i |u_i|^p  (used directly by the energy functional).
double lp_mass(const RadialGrid& grid, const RadialField& u, double p);

}  // namespace steepwell
