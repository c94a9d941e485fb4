#include "steepwell/forms.hpp"

#include <cmath>
#include <stdexcept>

#include "steepwell/kernels.hpp"

namespace steepwell {

void QuadraticForm::apply(const double* u, double* y) const {
  band.matvec(u, y);
}

std::vector<double> QuadraticForm::apply(const std::vector<double>& u) const {
  return band.matvec(u);
}

void QuadraticForm::apply_accurate(const double* u, double* y) const {
  const int m = static_cast<int>(band.n);
  const auto& a = grid->lap_a;
  const auto& b = grid->lap_b;
  std::vector<double> z(m);
  kernels::diff2_apply(a.data(), b.data(), u, z.data(), m);
  for (int i = 0; i < m; ++i) z[i] *= grid->weights[i];
  // (L^T z)_i = a_{i-1} z_{i-1} + (b_i - a_i) z_i - b_{i+1} z_{i+1},
  // grouped as two neighbor differences to limit cancellation.
  for (int i = 0; i < m; ++i) {
    const double am = i >= 1 ? a[i - 1] * z[i - 1] : 0.0;
    const double bp = i + 1 < m ? b[i + 1] * z[i + 1] : 0.0;
    y[i] = (am - a[i] * z[i]) + (b[i] * z[i] - bp) + wW[i] * u[i];
  }
}

double QuadraticForm::quad(const double* u) const {
  const std::size_t m = band.n;
  std::vector<double> lu(m);
  kernels::diff2_apply(grid->lap_a.data(), grid->lap_b.data(), u, lu.data(), m);
  return kernels::sum_prod3(grid->weights.data(), lu.data(), lu.data(), m) +
         kernels::sum_prod3(wW.data(), u, u, m);
}

double QuadraticForm::quad(const RadialField& u) const {
  if (u.grid != grid) throw std::invalid_argument("field/grid mismatch");
  return quad(u.data());
}

QuadraticForm assemble_bilaplacian_form(const RadialGrid& grid, double weight,
                                        std::string description) {
  return assemble_bilaplacian_form(grid, std::vector<double>(grid.m, weight),
                                   std::move(description));
}

QuadraticForm assemble_bilaplacian_form(const RadialGrid& grid,
                                        const std::vector<double>& weight,
                                        std::string description) {
  const int m = grid.m;
  if (static_cast<int>(weight.size()) != m)
    throw std::invalid_argument("weight length does not match grid");
  for (double v : weight)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite weight entry");

  QuadraticForm f;
  f.grid = &grid;
  f.weight = weight;
  f.weight_description = std::move(description);
  f.wW.resize(m);
  for (int i = 0; i < m; ++i) f.wW[i] = grid.weights[i] * weight[i];

  // Laplacian row i couples u_{i-1}, u_i, u_{i+1} with coefficients
  // (-b_i, b_i - a_i, a_i); the form matrix is L^T diag(w) L + diag(w*W).
  const auto& a = grid.lap_a;
  const auto& b = grid.lap_b;
  const auto& w = grid.weights;
  auto Lm = [&](int i) { return -b[i]; };
  auto Ld = [&](int i) { return b[i] - a[i]; };
  auto Lp = [&](int i) { return a[i]; };

  f.band = SymBand5(m);
  for (int i = 0; i < m; ++i) {
    double d = w[i] * Ld(i) * Ld(i) + f.wW[i];
    if (i >= 1) d += w[i - 1] * Lp(i - 1) * Lp(i - 1);
    if (i + 1 < m) d += w[i + 1] * Lm(i + 1) * Lm(i + 1);
    f.band.d0[i] = d;
    if (i + 1 < m)
      f.band.d1[i] = w[i] * Ld(i) * Lp(i) + w[i + 1] * Lm(i + 1) * Ld(i + 1);
    if (i + 2 < m) f.band.d2[i] = w[i + 1] * Lm(i + 1) * Lp(i + 1);
  }
  return f;
}

}  // namespace steepwell
