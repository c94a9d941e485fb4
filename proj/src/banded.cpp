#include "steepwell/banded.hpp"

#include <cmath>
#include <stdexcept>

#include "steepwell/kernels.hpp"

namespace steepwell {

void SymBand5::matvec(const double* x, double* y) const {
  kernels::band5_matvec(d0.data(), d1.data(), d2.data(), x, y, n);
}

std::vector<double> SymBand5::matvec(const std::vector<double>& x) const {
  if (x.size() != n) throw std::invalid_argument("matvec size mismatch");
  std::vector<double> y(n);
  matvec(x.data(), y.data());
  return y;
}

bool BandLDLT::factor(const SymBand5& a) {
  const std::size_t n = a.n;
  d_ = a.d0;
  l1_.assign(n ? n - 1 : 0, 0.0);
  l2_.assign(n > 1 ? n - 2 : 0, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j >= 1) d_[j] -= l1_[j - 1] * l1_[j - 1] * d_[j - 1];
    if (j >= 2) d_[j] -= l2_[j - 2] * l2_[j - 2] * d_[j - 2];
    const bool need_l1 = j + 1 < n;
    const bool need_l2 = j + 2 < n;
    if ((need_l1 || need_l2) && d_[j] == 0.0) return false;
    if (need_l1) {
      double v = a.d1[j];
      if (j >= 1) v -= l2_[j - 1] * l1_[j - 1] * d_[j - 1];
      l1_[j] = v / d_[j];
    }
    if (need_l2) l2_[j] = a.d2[j] / d_[j];
  }
  return true;
}

bool BandLDLT::factor_shifted(const SymBand5& a, double shift,
                              const std::vector<double>& mdiag) {
  SymBand5 s = a;
  for (std::size_t i = 0; i < s.n; ++i) s.d0[i] -= shift * mdiag[i];
  return factor(s);
}

void BandLDLT::solve(std::vector<double>& b) const {
  const std::size_t n = d_.size();
  if (b.size() != n) throw std::invalid_argument("solve size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 1) b[i] -= l1_[i - 1] * b[i - 1];
    if (i >= 2) b[i] -= l2_[i - 2] * b[i - 2];
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= d_[i];
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) b[i] -= l1_[i] * b[i + 1];
    if (i + 2 < n) b[i] -= l2_[i] * b[i + 2];
  }
}

bool BandLDLT::positive_definite() const {
  for (double d : d_)
    if (!(d > 0.0)) return false;
  return true;
}

bool tridiag_solve(std::vector<double> lo, std::vector<double> di,
                   std::vector<double> up, std::vector<double>& b) {
  const std::size_t n = di.size();
  if (n == 0) return true;
  for (std::size_t i = 1; i < n; ++i) {
    if (di[i - 1] == 0.0) return false;
    const double w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    b[i] -= w * b[i - 1];
  }
  if (di[n - 1] == 0.0) return false;
  b[n - 1] /= di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) b[i] = (b[i] - up[i] * b[i + 1]) / di[i];
  return true;
}

}  // namespace steepwell
