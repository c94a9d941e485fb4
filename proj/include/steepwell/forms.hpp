#pragma once

#include <string>
#include <vector>

#include "steepwell/banded.hpp"
#include "steepwell/radial.hpp"

namespace steepwell {

enum class BcTag { navier_outer, symmetric_origin };

// Q(u,v) = sum_i w_i (L u)_i (L v)_i + sum_i w_i W_i u_i v_i, the discrete
// realization of int |Delta u|^2 + int W u^2 with Navier conditions at
// r_max (Dirichlet closure of both Laplacian applications) and the even
// closure at the origin.
struct QuadraticForm {
  const RadialGrid* grid = nullptr;
  std::vector<double> weight;  // W_i
  std::vector<double> wW;      // w_i * W_i
  SymBand5 band;               // L^T diag(w) L + diag(w*W)
  BcTag bc_tag = BcTag::navier_outer;
  std::string weight_description;

  // y = B u with the assembled band matrix.
  void apply(const double* u, double* y) const;
  std::vector<double> apply(const std::vector<double>& u) const;

  // y = B u evaluated in two stages (L, then weights, then L^T in grouped
  // difference form). Algebraically identical to apply() but with a much
  // lower cancellation noise floor; used where residuals near the
  // tolerance matter (eigensolver convergence checks).
  void apply_accurate(const double* u, double* y) const;

  // Q(u,u) evaluated through the Laplacian stencil with compensated sums.
  // This is algebraically u^T B u but loses far less to cancellation; the
  // Nehari and energy identities are checked against this evaluation.
  double quad(const double* u) const;
  double quad(const RadialField& u) const;
};

QuadraticForm assemble_bilaplacian_form(const RadialGrid& grid, double weight,
                                        std::string description = {});
QuadraticForm assemble_bilaplacian_form(const RadialGrid& grid,
                                        const std::vector<double>& weight,
                                        std::string description = {});

}  // namespace steepwell
