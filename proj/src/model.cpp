#include "steepwell/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "steepwell/kernels.hpp"
#include "steepwell/rng.hpp"

namespace steepwell {

double evaluate_potential(const PotentialSpec& spec, double r) {
  if (r < 0.0) throw std::invalid_argument("negative radius");
  if (r <= spec.well_radius) return 0.0;
  if (r >= spec.well_radius + spec.ramp_width) return spec.v_inf;
  return spec.v_inf * (r - spec.well_radius) / spec.ramp_width;
}

double lambda_threshold(const ProblemSpec& spec) {
  const double m0 = 0.5 * spec.potential.v_inf;
  return (m0 + spec.delta) / m0;
}

DerivedConstants derived_constants(const ProblemSpec& spec, double mu_L0,
                                   double lambda_hat) {
  DerivedConstants c;
  c.m0 = 0.5 * spec.potential.v_inf;
  c.big_r = spec.potential.well_radius + 0.5 * spec.potential.ramp_width;
  c.lambda0 = (c.m0 + spec.delta) / c.m0;
  c.c1 = std::sqrt(mu_L0 / (mu_L0 + 2.0 * spec.delta));
  c.c2 = 1.0;
  c.sigma = std::pow(lambda_hat, spec.p / (spec.p - 2.0));
  return c;
}

std::vector<double> potential_weight(const ProblemSpec& spec, const RadialGrid& grid) {
  std::vector<double> w(grid.m);
  for (int i = 0; i < grid.m; ++i)
    w[i] = spec.lambda * evaluate_potential(spec.potential, grid.nodes[i]) - spec.delta;
  return w;
}

QuadraticForm assemble_problem_form(const RadialGrid& grid, const ProblemSpec& spec) {
  return assemble_bilaplacian_form(grid, potential_weight(spec, grid),
                                   "lambda*V - delta");
}

QuadraticForm assemble_positive_part_form(const RadialGrid& grid,
                                          const ProblemSpec& spec) {
  auto w = potential_weight(spec, grid);
  for (double& v : w) v = std::max(v, 0.0);
  return assemble_bilaplacian_form(grid, std::move(w), "max(lambda*V - delta, 0)");
}

double energy(const QuadraticForm& form, double p, const RadialField& u) {
  const double q = form.quad(u);
  bool zero = true;
  for (double v : u.values)
    if (v != 0.0) { zero = false; break; }
  if (q < 0.0 && !zero)
    throw std::domain_error("indefinite quadratic part: lambda below the positivity threshold");
  const double s = lp_mass(*form.grid, u, p);
  return 0.5 * q - s / p;
}

RadialField energy_gradient(const QuadraticForm& form, double p, const RadialField& u) {
  if (u.grid != form.grid) throw std::invalid_argument("field/grid mismatch");
  const auto dual = dual_gradient(form, p, u.data());
  RadialField g(*form.grid);
  for (int i = 0; i < form.grid->m; ++i) g.values[i] = dual[i] / form.grid->weights[i];
  return g;
}

std::vector<double> dual_gradient(const QuadraticForm& form, double p,
                                  const double* u) {
  const std::size_t m = form.band.n;
  std::vector<double> g(m), f(m);
  form.apply(u, g.data());
  kernels::signed_pow(u, p - 2.0, f.data(), m);
  for (std::size_t i = 0; i < m; ++i) g[i] -= form.grid->weights[i] * f[i];
  return g;
}

double nehari_scale(const QuadraticForm& form, double p, const RadialField& u) {
  const double q = form.quad(u);
  const double s = lp_mass(*form.grid, u, p);
  if (s == 0.0) throw std::invalid_argument("nehari_scale of the zero field");
  if (q <= 0.0) throw std::domain_error("nehari_scale: form value not positive");
  return std::pow(q / s, 1.0 / (p - 2.0));
}

EmbeddingEstimate estimate_embedding_constant(
    const RadialGrid& grid, const ProblemSpec& spec, const QuadraticForm& form,
    int trials, std::uint64_t seed,
    const std::vector<const RadialField*>& extra) {
  if (trials < 100) throw std::invalid_argument("trials must be >= 100");
  SplitMix64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  auto ratio = [&](const RadialField& u) {
    const double q = form.quad(u);
    const double np = lp_norm(grid, u, spec.p);
    if (np == 0.0 || q <= 0.0) return std::numeric_limits<double>::infinity();
    return q / (np * np);
  };
  constexpr int modes = 6;
  for (int t = 0; t < trials; ++t) {
    double c[modes];
    for (double& v : c) v = rng.next_normal();
    RadialField u(grid);
    for (int i = 0; i < grid.m; ++i) {
      const double x = grid.nodes[i] / grid.r_max;
      double v = 0.0;
      for (int k = 0; k < modes; ++k)
        v += c[k] * std::sin((k + 1) * std::numbers::pi * x);
      u.values[i] = v;
    }
    best = std::min(best, ratio(u));
  }
  for (const RadialField* u : extra)
    if (u && u->grid == &grid) best = std::min(best, ratio(*u));
  EmbeddingEstimate e;
  e.lambda_hat = best;
  e.sigma_hat = std::pow(best, spec.p / (spec.p - 2.0));
  return e;
}

}  // namespace steepwell
