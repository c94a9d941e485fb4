#include "steepwell/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "steepwell/kernels.hpp"

namespace steepwell {

RadialField::RadialField(const RadialGrid& g, std::vector<double> v)
    : grid(&g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != g.m)
    throw std::invalid_argument("field length does not match grid");
}

double unit_sphere_area(int dim_N) {
  const double nh = 0.5 * dim_N;
  return 2.0 * std::pow(std::numbers::pi, nh) / std::tgamma(nh);
}

double ball_volume(int dim_N, double r) {
  return unit_sphere_area(dim_N) / dim_N * std::pow(r, dim_N);
}

RadialGrid build_grid(int dim_N, double r_max, int m) {
  if (dim_N < 5) throw std::invalid_argument("dim_N must be >= 5");
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  if (m < 8) throw std::invalid_argument("m must be >= 8");

  RadialGrid g;
  g.dim_N = dim_N;
  g.r_max = r_max;
  g.m = m;
  g.h = r_max / (m + 1);
  g.nodes.resize(m);
  g.weights.resize(m);
  g.lap_a.resize(m);
  g.lap_b.resize(m);

  const double omega = unit_sphere_area(dim_N);
  const double h2 = g.h * g.h;
  for (int i = 0; i < m; ++i) {
    const double r = (i + 1) * g.h;
    g.nodes[i] = r;
    g.weights[i] = omega * std::pow(r, dim_N - 1) * g.h;
    if (i == 0) {
      // Origin closure: fit an even quadratic through u(0), u(r_1), u(r_2)
      // with u'(0) = 0, which gives u(0) = (4u_1 - u_2)/3 and collapses the
      // first row to (2N/3)(u_2 - u_1)/h^2. Exact on const and r^2.
      g.lap_a[i] = 2.0 * dim_N / (3.0 * h2);
      g.lap_b[i] = 0.0;
    } else {
      const double c = (dim_N - 1) / (2.0 * g.h * r);
      g.lap_a[i] = 1.0 / h2 + c;
      g.lap_b[i] = -1.0 / h2 + c;
    }
  }
  return g;
}

void apply_laplacian(const RadialGrid& grid, const double* u, double* out) {
  kernels::diff2_apply(grid.lap_a.data(), grid.lap_b.data(), u, out, grid.m);
}

RadialField apply_laplacian(const RadialGrid& grid, const RadialField& u) {
  if (u.grid != &grid) throw std::invalid_argument("field/grid mismatch");
  RadialField out(grid);
  apply_laplacian(grid, u.data(), out.data());
  return out;
}

double inner_l2(const RadialGrid& grid, const RadialField& u, const RadialField& v) {
  if (u.grid != &grid || v.grid != &grid)
    throw std::invalid_argument("field/grid mismatch");
  return kernels::sum_prod3(grid.weights.data(), u.data(), v.data(), grid.m);
}

double lp_mass(const RadialGrid& grid, const RadialField& u, double p) {
  if (u.grid != &grid) throw std::invalid_argument("field/grid mismatch");
  if (p < 1.0) throw std::invalid_argument("p must be >= 1");
  return kernels::sum_weighted_abs_pow(grid.weights.data(), u.data(), p, grid.m);
}

double lp_norm(const RadialGrid& grid, const RadialField& u, double p) {
  return std::pow(lp_mass(grid, u, p), 1.0 / p);
}

}  // namespace steepwell
