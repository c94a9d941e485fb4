#include "steepwell/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "steepwell/banded.hpp"
#include "steepwell/kernels.hpp"
#include "steepwell/rng.hpp"
#include "steepwell/spectral.hpp"

namespace steepwell {

namespace {

struct Eval {
  double q;  // Q(u,u)
  double s;  // int |u|^p
  double e;  // J(u)
};

Eval evaluate(const QuadraticForm& form, double p, const std::vector<double>& u) {
  Eval ev;
  ev.q = form.quad(u.data());
  ev.s = kernels::sum_weighted_abs_pow(form.grid->weights.data(), u.data(), p,
                                       u.size());
  ev.e = 0.5 * ev.q - ev.s / p;
  return ev;
}

// Projects u onto the Nehari manifold in place; false when Q(u,u) <= 0.
bool project(const QuadraticForm& form, double p, std::vector<double>& u, Eval& ev) {
  ev = evaluate(form, p, u);
  if (!(ev.q > 0.0) || !(ev.s > 0.0)) return false;
  const double t = std::pow(ev.q / ev.s, 1.0 / (p - 2.0));
  if (!std::isfinite(t) || t <= 0.0) return false;
  kernels::scale(u.data(), t, u.size());
  ev = evaluate(form, p, u);
  return true;
}

SymBand5 preconditioner(const QuadraticForm& form) {
  SymBand5 p = form.band;
  for (std::size_t i = 0; i < p.n; ++i) p.d0[i] += form.grid->weights[i];
  return p;
}

}  // namespace

GroundStateResult minimize_on_nehari(const QuadraticForm& form, double p,
                                     const RadialField* init, const SolverOpts& opts) {
  const RadialGrid& grid = *form.grid;
  const int m = grid.m;

  GroundStateResult out;
  out.field = RadialField(grid);

  BandLDLT pre;
  if (!pre.factor(preconditioner(form)))
    throw std::runtime_error("preconditioner factorization failed (form too indefinite)");

  std::vector<double> u;
  Eval ev{};
  int restarts = 0;
  auto restart_field = [&]() -> std::vector<double> {
    EigenPair e = principal_eigen(form, grid);
    return e.field.values;
  };
  if (init != nullptr) {
    if (init->grid != &grid) throw std::invalid_argument("init field/grid mismatch");
    u = init->values;
  } else {
    u = restart_field();
  }
  while (!project(form, p, u, ev)) {
    if (++restarts > 3)
      throw std::domain_error("Nehari projection failed: form value not positive");
    u = restart_field();
  }

  std::vector<double> g(m), d(m), v(m);
  double stale_energy = ev.e;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    g = dual_gradient(form, p, u.data());
    d = g;
    pre.solve(d);
    const double gd = kernels::sum_prod2(g.data(), d.data(), m);
    out.residual = std::sqrt(std::max(gd, 0.0));
    if (out.residual <= opts.tol * std::max(1.0, std::sqrt(std::max(ev.q, 0.0)))) {
      out.converged = true;
      break;
    }
    if (it > 0 && it % 5 == 0) {
      if (std::abs(ev.e - stale_energy) <= 1e-12 * std::abs(ev.e)) {
        // flat to roundoff over 5 iterations: accept as converged
        out.converged = true;
        break;
      }
      stale_energy = ev.e;
    }

    // Armijo backtracking on the projected energy. The slack term absorbs
    // evaluation roundoff of Q near the minimum (stiffness ~ h^-4 makes the
    // energy difference smaller than the noise floor of its evaluation).
    const double slack = 1e-13 * (std::abs(ev.e) + 1.0);
    double step = 1.0;
    bool accepted = false;
    Eval ev2{};
    while (step > 1e-14) {
      v = u;
      kernels::axpy(v.data(), -step, d.data(), m);
      if (project(form, p, v, ev2)) {
        if (ev2.e <= ev.e - 1e-4 * step * gd + slack) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted; diagnostics stand
    u.swap(v);
    ev = ev2;
  }
  out.iterations = it;

  // Final re-projection pins the Nehari defect to evaluation roundoff.
  project(form, p, u, ev);
  if (u[0] < 0.0) kernels::scale(u.data(), -1.0, m);
  g = dual_gradient(form, p, u.data());
  d = g;
  pre.solve(d);
  out.residual = std::sqrt(std::max(kernels::sum_prod2(g.data(), d.data(), m), 0.0));
  out.energy = ev.e;
  out.nehari_defect = ev.q != 0.0 ? std::abs(ev.q - ev.s) / ev.q : 0.0;
  out.field.values = std::move(u);
  return out;
}

GroundStateResult solve_ground_state(const RadialGrid& grid, const ProblemSpec& spec,
                                     const RadialField* init, const SolverOpts& opts) {
  const double pcrit = spec.critical_exponent();
  if (!(spec.p > 2.0) || spec.p > pcrit + 1e-12)
    throw std::invalid_argument("exponent p out of range (2, 2N/(N-4)]");
  auto form = assemble_problem_form(grid, spec);
  return minimize_on_nehari(form, spec.p, init, opts);
}

GroundStateResult solve_limit_problem(const RadialGrid& grid_on_ball, double delta,
                                      double p, const SolverOpts& opts) {
  const int N = grid_on_ball.dim_N;
  const double pcrit = 2.0 * N / (N - 4.0);
  if (!(p > 2.0) || p > pcrit + 1e-12)
    throw std::invalid_argument("exponent p out of range (2, 2N/(N-4)]");
  if (std::abs(p - pcrit) <= 1e-12 && N < 8)
    throw std::invalid_argument("critical exponent requires dimension >= 8");
  // mu_L0 validates delta < mu0 and provides a good starting field.
  EigenPair e = mu_L0(grid_on_ball, delta);
  auto form = assemble_bilaplacian_form(grid_on_ball, -delta, "-delta");
  return minimize_on_nehari(form, p, &e.field, opts);
}

double residual_norm(const QuadraticForm& form, double p, const RadialField& u) {
  if (u.grid != form.grid) throw std::invalid_argument("field/grid mismatch");
  BandLDLT pre;
  if (!pre.factor(preconditioner(form)))
    throw std::runtime_error("preconditioner factorization failed");
  auto g = dual_gradient(form, p, u.data());
  auto d = g;
  pre.solve(d);
  return std::sqrt(std::max(kernels::sum_prod2(g.data(), d.data(), g.size()), 0.0));
}

double brute_force_oracle(const RadialGrid& grid_small, const ProblemSpec& spec,
                          int starts, std::uint64_t seed) {
  if (grid_small.m > 48)
    throw std::invalid_argument("oracle restricted to grids with m <= 48");
  const int m = grid_small.m;
  const double p = spec.p;
  auto form = assemble_problem_form(grid_small, spec);
  const auto& w = grid_small.weights;
  SplitMix64 rng(seed);

  // Fixed step 0.9 / lambda_max(W^-1 B) estimated by power iteration.
  std::vector<double> x(m), y(m);
  for (int i = 0; i < m; ++i) x[i] = rng.next_normal();
  double lmax = 0.0;
  for (int k = 0; k < 200; ++k) {
    form.apply(x.data(), y.data());
    for (int i = 0; i < m; ++i) y[i] /= w[i];
    double nrm = std::sqrt(kernels::sum_prod2(y.data(), y.data(), m));
    for (int i = 0; i < m; ++i) x[i] = y[i] / nrm;
  }
  form.apply(x.data(), y.data());
  for (int i = 0; i < m; ++i) y[i] /= w[i];
  lmax = std::abs(kernels::sum_prod2(x.data(), y.data(), m));
  const double step = 0.9 / lmax;

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> v(m), f(m);
  for (int s = 0; s < starts; ++s) {
    for (int i = 0; i < m; ++i) v[i] = rng.next_normal();
    Eval ev{};
    if (!project(form, p, v, ev)) continue;
    for (int k = 0; k < 30000; ++k) {
      // W-metric gradient: W^-1 B v - |v|^{p-2} v
      form.apply(v.data(), y.data());
      kernels::signed_pow(v.data(), p - 2.0, f.data(), m);
      for (int i = 0; i < m; ++i) v[i] -= step * (y[i] / w[i] - f[i]);
      Eval ev2{};
      if (!project(form, p, v, ev2)) break;
      const bool settled = std::abs(ev2.e - ev.e) < 1e-14 * std::abs(ev.e) && k > 100;
      ev = ev2;
      if (settled) break;
    }
    best = std::min(best, ev.e);
  }
  return best;
}

}  // namespace steepwell
