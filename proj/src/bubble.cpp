#include "steepwell/bubble.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "steepwell/radial.hpp"

namespace steepwell {

namespace {

double resolve_cn(const BubbleSpec& spec) {
  return spec.c_N > 0.0 ? spec.c_N : bubble_normalization(spec.dim_N);
}

using Fn = std::function<double(double)>;

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const Fn& f, double a, double fa, double b, double fb, double m,
             double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const Fn& f, double a, double b, double tol_abs) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adapt(f, a, fa, b, fb, m, fm, simpson(a, fa, fm, b, fb), tol_abs, 40);
}

// Fixed-mesh composite Simpson; only used to estimate the magnitude of an
// integral so the adaptive pass can be given a proportional tolerance.
double rough_scale(const Fn& f, double a, double b) {
  constexpr int n = 128;  // even
  const double h = (b - a) / n;
  double s = std::abs(f(a)) + std::abs(f(b));
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * std::abs(f(a + i * h));
  return s * h / 3.0;
}

double integrate_rel(const Fn& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  const double tol_abs = rel_tol * std::max(rough_scale(f, a, b), 1e-300);
  return integrate(f, a, b, tol_abs);
}

// Integrates over [0, b] with geometric refinement near the bubble core
// scale eps (the integrands peak at r ~ eps).
double integrate_graded(const Fn& f, double eps, double b, double rel_tol) {
  std::vector<double> pts{0.0};
  for (double x = std::min(eps, b); x < b; x *= 4.0) pts.push_back(x);
  pts.push_back(b);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    total += integrate_rel(f, pts[k], pts[k + 1], rel_tol);
  return total;
}

// Quintic blend s(t) = 10t^3 - 15t^4 + 6t^5 and derivatives.
double blend(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double blend1(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double blend2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

struct SobolevParts {
  double num;  // int |Delta U_eps|^2
  double den;  // int U_eps^{2**}
};

SobolevParts sobolev_parts(int dim_N, double eps, const SobolevOpts& opts) {
  BubbleSpec spec;
  spec.dim_N = dim_N;
  spec.epsilon = eps;
  const double c = resolve_cn(spec);
  const double omega = unit_sphere_area(dim_N);
  const double pstar = 2.0 * dim_N / (dim_N - 4.0);
  const double R = opts.r_quad;

  auto fnum = [&](double r) {
    const double du = bubble_profile_laplacian(spec, r);
    return omega * std::pow(r, dim_N - 1) * du * du;
  };
  auto fden = [&](double r) {
    const double u = bubble_profile(spec, r);
    return omega * std::pow(r, dim_N - 1) * std::pow(u, pstar);
  };

  SobolevParts p;
  p.num = integrate_graded(fnum, eps, R, opts.quad_tol);
  p.den = integrate_graded(fden, eps, R, opts.quad_tol);

  // Power-law tails: |Delta U_eps|^2 ~ 4(N-4)^2 c^2 eps^{N-4} r^{4-2N} and
  // U_eps^{2**} ~ c^{2**} eps^N r^{-2N} for r >> eps.
  const double tail_num = 4.0 * (dim_N - 4) * c * c * omega *
                          std::pow(eps, dim_N - 4) * std::pow(R, 4.0 - dim_N);
  const double tail_den = std::pow(c, pstar) * omega * std::pow(eps, dim_N) *
                          std::pow(R, -static_cast<double>(dim_N)) / dim_N;
  if (tail_num > 1e-10 * p.num || tail_den > 1e-10 * p.den)
    throw std::runtime_error("quadrature tail truncation exceeds tolerance");
  p.num += tail_num;
  p.den += tail_den;
  return p;
}

double sobolev_from_parts(int dim_N, const SobolevParts& p) {
  const double expo = (dim_N - 4.0) / dim_N;  // 2/2**
  return p.num / std::pow(p.den, expo);
}

}  // namespace

double bubble_normalization(int dim_N) {
  const double n = dim_N;
  return std::pow(n * (n - 4.0) * (n * n - 4.0), (n - 4.0) / 8.0);
}

double bubble_profile(const BubbleSpec& spec, double r) {
  const double a = 0.5 * (spec.dim_N - 4);
  const double eps = spec.epsilon;
  return resolve_cn(spec) * std::pow(eps / (eps * eps + r * r), a);
}

double bubble_profile_deriv(const BubbleSpec& spec, double r) {
  const double a = 0.5 * (spec.dim_N - 4);
  const double eps = spec.epsilon;
  const double g = eps * eps + r * r;
  return -2.0 * a * resolve_cn(spec) * std::pow(eps, a) * r * std::pow(g, -a - 1.0);
}

double bubble_profile_laplacian(const BubbleSpec& spec, double r) {
  const int N = spec.dim_N;
  const double a = 0.5 * (N - 4);
  const double eps = spec.epsilon;
  const double g = eps * eps + r * r;
  return -(N - 4.0) * resolve_cn(spec) * std::pow(eps, a) * std::pow(g, -a - 2.0) *
         (N * eps * eps + 2.0 * r * r);
}

double smooth_cutoff(double r, double r0, double r1) {
  if (!(0.0 < r0 && r0 < r1)) throw std::invalid_argument("need 0 < r0 < r1");
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  return 1.0 - blend((r - r0) / (r1 - r0));
}

double smooth_cutoff_deriv(double r, double r0, double r1) {
  if (r <= r0 || r >= r1) return 0.0;
  const double d = r1 - r0;
  return -blend1((r - r0) / d) / d;
}

double smooth_cutoff_second_deriv(double r, double r0, double r1) {
  if (r <= r0 || r >= r1) return 0.0;
  const double d = r1 - r0;
  return -blend2((r - r0) / d) / (d * d);
}

double cutoff_bubble_laplacian(const BubbleSpec& spec, double r) {
  const double r0 = spec.cutoff_inner, r1 = spec.cutoff_outer;
  const double eta = smooth_cutoff(r, r0, r1);
  if (eta == 0.0) return 0.0;
  const double du = bubble_profile_laplacian(spec, r);
  if (r <= r0) return du;
  const double e1 = smooth_cutoff_deriv(r, r0, r1);
  const double e2 = smooth_cutoff_second_deriv(r, r0, r1);
  const double u = bubble_profile(spec, r);
  const double u1 = bubble_profile_deriv(spec, r);
  return eta * du + 2.0 * e1 * u1 + u * (e2 + (spec.dim_N - 1) / r * e1);
}

double sobolev_constant(int dim_N, const SobolevOpts& opts) {
  if (dim_N < 5) throw std::invalid_argument("dim_N must be >= 5");
  const double s1 = sobolev_from_parts(dim_N, sobolev_parts(dim_N, 1.0, opts));
  const double sh = sobolev_from_parts(dim_N, sobolev_parts(dim_N, 0.5, opts));
  const double s2 = sobolev_from_parts(dim_N, sobolev_parts(dim_N, 2.0, opts));
  if (std::abs(sh - s1) > 1e-8 * s1 || std::abs(s2 - s1) > 1e-8 * s1)
    throw std::runtime_error("Sobolev constant not scale-invariant to 1e-8");
  return s1;
}

BubbleBoundResult bubble_energy_bound(int dim_N, double delta,
                                      const std::vector<double>& epsilon_grid,
                                      double cutoff_inner, double cutoff_outer,
                                      const SobolevOpts& opts) {
  if (dim_N < 8) throw std::invalid_argument("bound test requires dim_N >= 8");
  if (epsilon_grid.size() < 20)
    throw std::invalid_argument("need at least 20 epsilon samples");
  if (!(cutoff_outer < 1.0)) throw std::invalid_argument("cutoff must close inside the ball");

  const double omega = unit_sphere_area(dim_N);
  const double pstar = 2.0 * dim_N / (dim_N - 4.0);
  const double S = sobolev_constant(dim_N, opts);

  BubbleBoundResult out;
  out.threshold = 2.0 / dim_N * std::pow(S, dim_N / 4.0);
  out.min_energy = std::numeric_limits<double>::infinity();

  for (double eps : epsilon_grid) {
    BubbleSpec spec;
    spec.dim_N = dim_N;
    spec.epsilon = eps;
    spec.cutoff_inner = cutoff_inner;
    spec.cutoff_outer = cutoff_outer;

    auto measure = [&](double r) { return omega * std::pow(r, dim_N - 1); };
    auto f2 = [&](double r) {
      const double v = cutoff_bubble_laplacian(spec, r);
      return measure(r) * v * v;
    };
    auto fm = [&](double r) {
      const double u = smooth_cutoff(r, cutoff_inner, cutoff_outer) *
                       bubble_profile(spec, r);
      return measure(r) * u * u;
    };
    auto fp = [&](double r) {
      const double u = smooth_cutoff(r, cutoff_inner, cutoff_outer) *
                       bubble_profile(spec, r);
      return measure(r) * std::pow(u, pstar);
    };
    const double i2 = integrate_graded(f2, eps, cutoff_inner, opts.quad_tol) +
                      integrate_rel(f2, cutoff_inner, cutoff_outer, opts.quad_tol);
    const double m2 = integrate_graded(fm, eps, cutoff_inner, opts.quad_tol) +
                      integrate_rel(fm, cutoff_inner, cutoff_outer, opts.quad_tol);
    const double ip = integrate_graded(fp, eps, cutoff_inner, opts.quad_tol) +
                      integrate_rel(fp, cutoff_inner, cutoff_outer, opts.quad_tol);
    const double numerator = i2 - delta * m2;
    if (!(numerator > 0.0)) continue;  // delta too large at this eps

    const double energy = 2.0 / dim_N * std::pow(numerator, dim_N / 4.0) /
                          std::pow(ip, (dim_N - 4.0) / 4.0);
    out.epsilons.push_back(eps);
    out.energies.push_back(energy);
    if (energy < out.min_energy) {
      out.min_energy = energy;
      out.argmin_eps = eps;
    }
  }
  if (out.energies.empty())
    throw std::runtime_error("no epsilon with positive quadratic part");
  out.margin = out.threshold - out.min_energy;
  return out;
}

std::vector<double> default_epsilon_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return g;
}

MassScalingResult l2_mass_scaling_fit(int dim_N,
                                      const std::vector<double>& epsilon_grid,
                                      double cutoff_inner, double cutoff_outer,
                                      const SobolevOpts& opts) {
  if (dim_N < 8) throw std::invalid_argument("scaling fit requires dim_N >= 8");
  const double span = epsilon_grid.back() / epsilon_grid.front();
  if (!(span >= 100.0 || span <= 0.01))
    throw std::invalid_argument("epsilon grid must span at least 2 decades");

  const double omega = unit_sphere_area(dim_N);
  MassScalingResult out;
  for (double eps : epsilon_grid) {
    BubbleSpec spec;
    spec.dim_N = dim_N;
    spec.epsilon = eps;
    auto fm = [&](double r) {
      const double u = smooth_cutoff(r, cutoff_inner, cutoff_outer) *
                       bubble_profile(spec, r);
      return omega * std::pow(r, dim_N - 1) * u * u;
    };
    const double mass = integrate_graded(fm, eps, cutoff_inner, opts.quad_tol) +
                        integrate_rel(fm, cutoff_inner, cutoff_outer, opts.quad_tol);
    out.epsilons.push_back(eps);
    out.masses.push_back(mass);
  }

  // least-squares slope of log(mass) vs log(eps)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(out.epsilons.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(out.epsilons[i]);
    double y = std::log(out.masses[i]);
    if (dim_N == 8) y -= std::log(std::abs(std::log(out.epsilons[i])));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace steepwell
