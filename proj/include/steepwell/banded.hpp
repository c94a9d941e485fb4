#pragma once

#include <cstddef>
#include <vector>

// Symmetric banded matrices with half-bandwidth 2 and their LDL^T
// factorization. The factorization is done without pivoting: the matrices
// here are either positive definite (preconditioners, forms with
// nonnegative weight) or mildly indefinite shifted pencils, for which the
// eigensolver retries with a perturbed shift on pivot breakdown.

namespace steepwell {

struct SymBand5 {
  std::size_t n = 0;
  std::vector<double> d0;  // diagonal, length n
  std::vector<double> d1;  // first superdiagonal, length n-1
  std::vector<double> d2;  // second superdiagonal, length n-2

  explicit SymBand5(std::size_t n_ = 0)
      : n(n_), d0(n_, 0.0), d1(n_ ? n_ - 1 : 0, 0.0), d2(n_ > 1 ? n_ - 2 : 0, 0.0) {}

  void matvec(const double* x, double* y) const;
  std::vector<double> matvec(const std::vector<double>& x) const;
};

class BandLDLT {
 public:
  // Factors A (optionally A - shift*diag(mdiag)). Returns false on a zero
  // pivot; the partially written factors must then be discarded.
  bool factor(const SymBand5& a);
  bool factor_shifted(const SymBand5& a, double shift, const std::vector<double>& mdiag);

  // Solves L D L^T x = b in place.
  void solve(std::vector<double>& b) const;

  // True when all pivots are positive (matrix positive definite).
  bool positive_definite() const;

 private:
  bool finish(std::size_t n);
  std::vector<double> d_, l1_, l2_;
};

// Unsymmetric tridiagonal solve (Thomas algorithm with the given bands);
// used by the eigensolver tests on the first-order Laplacian factor.
// lo[i] multiplies x[i-1], up[i] multiplies x[i+1]; lo[0], up[n-1] unused.
// Returns false on a zero pivot.
bool tridiag_solve(std::vector<double> lo, std::vector<double> di,
                   std::vector<double> up, std::vector<double>& b);

}  // namespace steepwell
