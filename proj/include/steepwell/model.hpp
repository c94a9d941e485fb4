#pragma once

#include <cstdint>
#include <vector>

#include "steepwell/forms.hpp"
#include "steepwell/radial.hpp"

// Problem data: the well potential V (zero on the unit ball, linear ramp up
// to V_inf over a width-w shell, constant outside), the shifted weight
// V_lambda = lambda*V - delta, the energy functional
//   J(u) = 1/2 Q(u,u) - 1/p int |u|^p
// and the Nehari projection scale.

namespace steepwell {

struct PotentialSpec {
  double v_inf = 1.0;
  double well_radius = 1.0;
  double ramp_width = 0.5;
};

struct ProblemSpec {
  PotentialSpec potential;
  double lambda = 0.0;
  double delta = 50.0;
  double p = 3.0;
  int dim_N = 5;

  double critical_exponent() const {  // 2** = 2N/(N-4)
    return 2.0 * dim_N / (dim_N - 4.0);
  }
};

struct DerivedConstants {
  double m0;       // V_inf / 2
  double big_r;    // radius with {V <= M0} inside B_R: 1 + w/2
  double lambda0;  // (M0 + delta)/M0, the lambda threshold
  double c1;       // sqrt(mu(L0)/(mu(L0)+2 delta)), lower norm-equivalence constant
  double c2 = 1.0;
  double sigma;    // Lambda_hat^{p/(p-2)} from the sampled embedding constant
};

double evaluate_potential(const PotentialSpec& spec, double r);

// Lambda_0 = (M0 + delta)/M0 with M0 = V_inf/2.
double lambda_threshold(const ProblemSpec& spec);

DerivedConstants derived_constants(const ProblemSpec& spec, double mu_L0,
                                   double lambda_hat);

// V_lambda = lambda*V - delta sampled at the grid nodes.
std::vector<double> potential_weight(const ProblemSpec& spec, const RadialGrid& grid);

// Form with weight V_lambda (the squared lambda-norm).
QuadraticForm assemble_problem_form(const RadialGrid& grid, const ProblemSpec& spec);

// Form with weight max(V_lambda, 0) (the squared (lambda,0)-norm).
QuadraticForm assemble_positive_part_form(const RadialGrid& grid,
                                          const ProblemSpec& spec);

// J(u). Throws std::domain_error when Q(u,u) < 0 (lambda below the
// positivity threshold: the quadratic part is not a norm on this field).
double energy(const QuadraticForm& form, double p, const RadialField& u);

// Gradient as a field g with <g, v>_{weighted l2} = dJ(u)[v]:
// g_i = (B u)_i / w_i - |u_i|^{p-2} u_i.
RadialField energy_gradient(const QuadraticForm& form, double p, const RadialField& u);

// dJ(u) as a dual vector: (B u) - w .* |u|^{p-2} u. Solver internal.
std::vector<double> dual_gradient(const QuadraticForm& form, double p,
                                  const double* u);

// The unique t > 0 with t*u on the Nehari manifold:
// t = (Q(u,u) / int |u|^p)^{1/(p-2)}. Throws on u = 0 or Q(u,u) <= 0.
double nehari_scale(const QuadraticForm& form, double p, const RadialField& u);

struct EmbeddingEstimate {
  double lambda_hat;  // min over trials of Q(u,u)/||u||_p^2 (upper estimate)
  double sigma_hat;   // lambda_hat^{p/(p-2)}
};

// Samples the embedding constant over `trials` random smooth fields plus
// any supplied extra fields (ground state, eigenfunction).
EmbeddingEstimate estimate_embedding_constant(
    const RadialGrid& grid, const ProblemSpec& spec, const QuadraticForm& form,
    int trials, std::uint64_t seed,
    const std::vector<const RadialField*>& extra = {});

}  // namespace steepwell
