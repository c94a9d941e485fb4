#pragma once

#include <cstdint>

#include "steepwell/forms.hpp"
#include "steepwell/model.hpp"
#include "steepwell/radial.hpp"

// Least-energy solutions by Nehari-projected preconditioned descent. Each
// step maps the energy gradient through (B + M)^{-1} (a banded solve, the
// Sobolev-gradient preconditioner), backtracks on the projected energy, and
// re-projects onto the Nehari manifold.

namespace steepwell {

struct SolverOpts {
  double tol = 1e-8;
  int max_iter = 3000;
};

struct GroundStateResult {
  RadialField field;
  double energy = 0.0;     // c_lambda or c(Omega)
  double residual = 0.0;   // preconditioned dual norm of the gradient
  int iterations = 0;
  double nehari_defect = 0.0;  // |Q(u,u) - int|u|^p| / Q(u,u)
  bool converged = false;
};

// init = nullptr starts from the principal eigenfunction of the form.
GroundStateResult solve_ground_state(const RadialGrid& grid, const ProblemSpec& spec,
                                     const RadialField* init = nullptr,
                                     const SolverOpts& opts = {});

// Minimizes the form with constant weight -delta on the well (ball) grid.
// Throws when delta >= mu0 or the exponent is out of range.
GroundStateResult solve_limit_problem(const RadialGrid& grid_on_ball, double delta,
                                      double p, const SolverOpts& opts = {});

// Shared driver for an arbitrary assembled form (used by both entry points
// and by tests).
GroundStateResult minimize_on_nehari(const QuadraticForm& form, double p,
                                     const RadialField* init, const SolverOpts& opts);

// Preconditioned dual norm <g, (B+M)^{-1} g>^{1/2} of the energy gradient.
double residual_norm(const QuadraticForm& form, double p, const RadialField& u);

// Multi-start unpreconditioned projected descent with a tiny fixed step,
// run to tight tolerance; deterministic in the seed. Grids with m <= 48.
double brute_force_oracle(const RadialGrid& grid_small, const ProblemSpec& spec,
                          int starts, std::uint64_t seed);

}  // namespace steepwell
