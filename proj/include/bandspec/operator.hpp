#pragma once

/*
 * Periodic two-band lower-triangular operator.
 *
 * The operator acts on null sequences x = (x_0, x_1, ...) by
 *
 *     y_k = s(k-1) x_{k-1} + r(k) x_k,     x_{-1} = 0,
 *
 * where the diagonal r cycles through r_1..r_l and the subdiagonal s cycles
 * through s_1..s_l'. Sequences are always handled as finite prefixes; by
 * lower-triangularity every prefix of the image depends only on the same
 * prefix of the input.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bandspec/error.hpp"

namespace bandspec {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Longest admissible cycle length for either band.
inline constexpr std::size_t kMaxCycleLength = 64;

template <typename Real>
bool is_finite(const std::complex<Real>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// 1-based positions of the diagonal and subdiagonal values used by column k.
struct BandIndex {
  std::size_t diag;
  std::size_t subdiag;
  friend bool operator==(const BandIndex&, const BandIndex&) = default;
};

/// Validated band parameters. Immutable once constructed.
template <typename Real>
class PeriodicBand {
 public:
  using Scalar = std::complex<Real>;

  /// Validates the two cycles and computes the joint period lcm(l, l').
  static PeriodicBand create(std::vector<Scalar> r, std::vector<Scalar> s) {
    if (r.empty() || s.empty()) {
      throw SpectralError(ErrorCode::EmptyCycle, "both cycles need at least one value");
    }
    if (r.size() > kMaxCycleLength || s.size() > kMaxCycleLength) {
      throw SpectralError(ErrorCode::CycleTooLong,
                          "cycle lengths are capped at " + std::to_string(kMaxCycleLength));
    }
    for (const auto& v : r) {
      if (!is_finite(v)) throw SpectralError(ErrorCode::NonFiniteEntry, "diagonal value is not finite");
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!is_finite(s[j])) throw SpectralError(ErrorCode::NonFiniteEntry, "subdiagonal value is not finite");
      if (std::abs(s[j]) == Real(0)) {
        throw SpectralError(ErrorCode::ZeroSubdiagonal, "s_" + std::to_string(j + 1) + " is zero");
      }
    }
    return PeriodicBand(std::move(r), std::move(s));
  }

  std::span<const Scalar> diagonal() const { return r_; }
  std::span<const Scalar> subdiagonal() const { return s_; }

  std::size_t diag_period() const { return r_.size(); }
  std::size_t subdiag_period() const { return s_.size(); }
  std::size_t joint_period() const { return joint_; }

  BandIndex band_indices(std::size_t k) const {
    return {k % r_.size() + 1, k % s_.size() + 1};
  }

  /// r value on column k of the diagonal.
  const Scalar& diag_at(std::size_t k) const { return r_[k % r_.size()]; }
  /// s value on column k of the subdiagonal (row k+1).
  const Scalar& subdiag_at(std::size_t k) const { return s_[k % s_.size()]; }

 private:
  PeriodicBand(std::vector<Scalar> r, std::vector<Scalar> s)
      : r_(std::move(r)), s_(std::move(s)), joint_(std::lcm(r_.size(), s_.size())) {}

  std::vector<Scalar> r_;
  std::vector<Scalar> s_;
  std::size_t joint_;
};

template <typename Real>
PeriodicBand<Real> validate_params(std::vector<std::complex<Real>> r, std::vector<std::complex<Real>> s) {
  return PeriodicBand<Real>::create(std::move(r), std::move(s));
}

/// Matrix entry b_ij (0-based row i, column j).
template <typename Real>
std::complex<Real> entry(const PeriodicBand<Real>& band, std::size_t i, std::size_t j) {
  if (i == j) return band.diag_at(j);
  if (i == j + 1) return band.subdiag_at(j);
  return {};
}

/// Image of the prefix x under the operator.
template <typename Real, typename Derived>
ComplexVector<Real> apply(const PeriodicBand<Real>& band, const Eigen::MatrixBase<Derived>& x) {
  const Eigen::Index n = x.size();
  ComplexVector<Real> y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    y(k) = band.diag_at(static_cast<std::size_t>(k)) * x(k);
    if (k > 0) y(k) += band.subdiag_at(static_cast<std::size_t>(k - 1)) * x(k - 1);
  }
  return y;
}

/// Leading N x N section as a dense matrix.
template <typename Real>
ComplexMatrix<Real> truncation(const PeriodicBand<Real>& band, std::size_t n) {
  if (n == 0) throw SpectralError(ErrorCode::InvalidArgument, "section size must be positive");
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = band.diag_at(j);
    if (j + 1 < n) m(j + 1, j) = band.subdiag_at(j);
  }
  return m;
}

/// max_{i,j} |r_i| + |s_j|, an upper bound for the sup-norm operator norm.
template <typename Real>
Real norm_bound(const PeriodicBand<Real>& band) {
  Real r_max = 0, s_max = 0;
  for (const auto& r : band.diagonal()) r_max = std::max(r_max, std::abs(r));
  for (const auto& s : band.subdiagonal()) s_max = std::max(s_max, std::abs(s));
  return r_max + s_max;
}

/// Operator norm on l-infinity: maximal absolute row sum.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real inf_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Real best = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Real row = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

/// Row sums of the band over one joint period, |s(k-1)| + |r(k)| for k = 1..L.
/// Every row of every section with at least L+1 rows takes one of these values.
template <typename Real>
Real periodic_row_sum_max(const PeriodicBand<Real>& band) {
  Real best = std::abs(band.diag_at(0));
  for (std::size_t k = 1; k <= band.joint_period(); ++k) {
    best = std::max(best, std::abs(band.subdiag_at(k - 1)) + std::abs(band.diag_at(k)));
  }
  return best;
}

/// Index and distance of the diagonal value closest to lambda.
template <typename Real>
std::pair<std::size_t, Real> nearest_diagonal(const PeriodicBand<Real>& band, const std::complex<Real>& lambda) {
  std::size_t best = 0;
  Real dist = std::abs(band.diagonal()[0] - lambda);
  for (std::size_t i = 1; i < band.diag_period(); ++i) {
    const Real d = std::abs(band.diagonal()[i] - lambda);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return {best, dist};
}

}  // namespace bandspec
