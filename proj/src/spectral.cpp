#include "steepwell/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "steepwell/banded.hpp"
#include "steepwell/kernels.hpp"

namespace steepwell {

namespace {

// M-norm with M = diag(w).
double m_norm(const RadialGrid& g, const std::vector<double>& x) {
  return std::sqrt(kernels::sum_prod3(g.weights.data(), x.data(), x.data(), g.m));
}

}  // namespace

EigenPair principal_eigen(const QuadraticForm& form, const RadialGrid& grid,
                          const EigenOpts& opts) {
  const int m = grid.m;
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) {
    const double t = 1.0 - grid.nodes[i] * grid.nodes[i];
    x[i] = t > 0.0 ? t * t : 0.0;
  }
  if (m_norm(grid, x) == 0.0)
    for (int i = 0; i < m; ++i) x[i] = std::exp(-grid.nodes[i] * grid.nodes[i]);
  {
    const double nrm = m_norm(grid, x);
    kernels::scale(x.data(), 1.0 / nrm, m);
  }

  EigenPair out;
  out.field = RadialField(grid);
  double shift = 0.0;
  double mu = form.quad(x.data());
  std::vector<double> bx(m), rhs(m);
  BandLDLT fac;

  // Gershgorin estimate of ||M^-1 B|| for the backward-error normalization.
  double op_norm = 0.0;
  for (int i = 0; i < m; ++i) {
    double row = std::abs(form.band.d0[i]);
    if (i >= 1) row += std::abs(form.band.d1[i - 1]);
    if (i >= 2) row += std::abs(form.band.d2[i - 2]);
    if (i + 1 < m) row += std::abs(form.band.d1[i]);
    if (i + 2 < m) row += std::abs(form.band.d2[i]);
    op_norm = std::max(op_norm, row / grid.weights[i]);
  }

  double mu_prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iter; ++it) {
    // residual of the current iterate
    form.apply_accurate(x.data(), bx.data());
    double res2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const double r = bx[i] - mu * grid.weights[i] * x[i];
      res2 += r * r / grid.weights[i];
    }
    out.value = mu;
    out.residual = std::sqrt(res2) / op_norm;
    out.iterations = it;
    // The backward error alone is met long before the Rayleigh quotient
    // settles (op_norm is ~h^-4), so require both.
    if (out.residual <= opts.tol &&
        std::abs(mu - mu_prev) <= opts.tol * std::max(1.0, std::abs(mu))) {
      out.converged = true;
      break;
    }
    mu_prev = mu;

    // Rayleigh shift once the iterate is roughly aligned.
    if (it >= 3) shift = mu;
    double s = shift;
    bool ok = false;
    for (int attempt = 0; attempt < 5 && !ok; ++attempt) {
      ok = fac.factor_shifted(form.band, s, grid.weights);
      if (!ok) s = s * (1.0 + 1e-10) - 1e-10 * std::max(1.0, std::abs(s));
    }
    if (!ok) break;  // give up; diagnostics already populated

    for (int i = 0; i < m; ++i) rhs[i] = grid.weights[i] * x[i];
    fac.solve(rhs);
    const double nrm = m_norm(grid, rhs);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
    kernels::scale(rhs.data(), 1.0 / nrm, m);
    x = rhs;
    mu = form.quad(x.data());
  }

  // sign convention: positive near the origin
  if (x[0] < 0.0) kernels::scale(x.data(), -1.0, m);
  out.field.values = x;
  return out;
}

EigenPair mu_L0(const RadialGrid& grid_on_ball, double delta, const EigenOpts& opts) {
  auto form = assemble_bilaplacian_form(grid_on_ball, -delta, "-delta");
  EigenPair e = principal_eigen(form, grid_on_ball, opts);
  const double mu0 = e.value + delta;
  if (delta >= mu0)
    throw std::invalid_argument("delta >= mu0: the well form is indefinite");
  return e;
}

EigenPair mu_L_lambda(const RadialGrid& grid, const ProblemSpec& spec,
                      const EigenOpts& opts) {
  auto form = assemble_problem_form(grid, spec);
  return principal_eigen(form, grid, opts);
}

double ess_spectrum_lower_bound(const ProblemSpec& spec) {
  return spec.lambda * 0.5 * spec.potential.v_inf - spec.delta;
}

}  // namespace steepwell
