#pragma once

/*
 * Finite-section laboratory: inverses of the leading N x N block of
 * B - lambda I by forward substitution, their sup norms (maximal absolute row
 * sums) and comparisons against the closed-form resolvent.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bandspec/operator.hpp"
#include "bandspec/region.hpp"
#include "bandspec/resolvent.hpp"

namespace bandspec {

inline constexpr double kDefaultNormCap = 1e12;

namespace detail {

template <typename Real>
void require_off_diagonal(const PeriodicBand<Real>& band, const std::complex<Real>& lambda) {
  const auto [idx, dist] = nearest_diagonal(band, lambda);
  if (dist == Real(0)) {
    throw SpectralError(ErrorCode::LambdaOnDiagonal, "lambda equals r_" + std::to_string(idx + 1));
  }
}

/// Calls visit(n, k, z_nk) for every n >= k in the N x N section, column by column.
template <typename Real, typename Visit>
void for_each_inverse_entry(const PeriodicBand<Real>& band, const std::complex<Real>& lambda, std::size_t n,
                            Visit&& visit) {
  std::vector<std::complex<Real>> pivot(n);
  for (std::size_t k = 0; k < n; ++k) pivot[k] = band.diag_at(k) - lambda;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<Real> z = std::complex<Real>(1) / pivot[k];
    visit(k, k, z);
    for (std::size_t row = k + 1; row < n; ++row) {
      z = -band.subdiag_at(row - 1) * z / pivot[row];
      visit(row, k, z);
    }
  }
}

/// Absolute row sums of the inverse section; row n only sees columns k <= n.
template <typename Real>
std::vector<Real> inverse_row_sums(const PeriodicBand<Real>& band, const std::complex<Real>& lambda, std::size_t n) {
  require_off_diagonal(band, lambda);
  std::vector<Real> sums(n, Real(0));
  for_each_inverse_entry(band, lambda, n,
                         [&](std::size_t row, std::size_t, const std::complex<Real>& z) { sums[row] += std::abs(z); });
  return sums;
}

}  // namespace detail

/// Dense inverse of the N x N section of B - lambda I.
template <typename Real>
ComplexMatrix<Real> finite_section_inverse(const PeriodicBand<Real>& band, const std::complex<Real>& lambda,
                                          std::size_t n) {
  detail::require_off_diagonal(band, lambda);
  ComplexMatrix<Real> z = ComplexMatrix<Real>::Zero(n, n);
  detail::for_each_inverse_entry(band, lambda, n, [&](std::size_t row, std::size_t col, const std::complex<Real>& v) {
    z(row, col) = v;
  });
  return z;
}

template <typename Real>
Real finite_section_inverse_norm(const PeriodicBand<Real>& band, const std::complex<Real>& lambda, std::size_t n) {
  if (n == 0) throw SpectralError(ErrorCode::InvalidArgument, "section size must be positive");
  const auto sums = detail::inverse_row_sums(band, lambda, n);
  return *std::max_element(sums.begin(), sums.end());
}

template <typename Real>
struct GrowthProfile {
  std::vector<std::size_t> sizes;
  std::vector<Real> norms;
  std::complex<Real> lambda;
};

template <typename Real>
GrowthProfile<Real> growth_profile(const PeriodicBand<Real>& band, const std::complex<Real>& lambda,
                                   std::vector<std::size_t> sizes) {
  if (sizes.empty() || sizes.front() == 0 || !std::is_sorted(sizes.begin(), sizes.end())) {
    throw SpectralError(ErrorCode::InvalidArgument, "sizes must be positive and ascending");
  }
  // one pass at the largest size; smaller sections share its leading rows
  const auto sums = detail::inverse_row_sums(band, lambda, sizes.back());
  GrowthProfile<Real> out{std::move(sizes), {}, lambda};
  Real running = 0;
  std::size_t row = 0;
  for (std::size_t size : out.sizes) {
    for (; row < size; ++row) running = std::max(running, sums[row]);
    out.norms.push_back(running);
  }
  return out;
}

/// Sup norm of the N x N inverse section over the window, one value per cell.
/// Cells within `tol` of a diagonal value, and norms beyond `cap`, report `cap`.
template <typename Real>
RegionGrid<Real> pseudospectrum_grid(const PeriodicBand<Real>& band, const Window<Real>& window, std::size_t res,
                                     std::size_t n, Real cap = static_cast<Real>(kDefaultNormCap),
                                     Real tol = static_cast<Real>(1e-9)) {
  if (res < 2) throw SpectralError(ErrorCode::InvalidArgument, "pseudospectrum resolution must be at least 2");
  if (n == 0) throw SpectralError(ErrorCode::InvalidArgument, "section size must be positive");
  return sample_grid(window, res, res, [&](const std::complex<Real>& z) {
    if (nearest_diagonal(band, z).second <= tol) return cap;
    const Real norm = finite_section_inverse_norm(band, z, n);
    return (std::isfinite(norm) && norm < cap) ? norm : cap;
  });
}

/// Largest relative deviation between closed-form entries and the
/// forward-substitution inverse over the N x N section.
template <typename Real>
Real oracle_compare(const PeriodicBand<Real>& band, const std::complex<Real>& lambda, std::size_t n) {
  const Resolvent<Real> q(band, lambda);
  Real worst = 0;
  detail::for_each_inverse_entry(band, lambda, n, [&](std::size_t row, std::size_t col, const std::complex<Real>& ref) {
    const auto value = q.entry(row, col);
    const Real scale = std::max(std::abs(ref), std::numeric_limits<Real>::min());
    worst = std::max(worst, std::abs(value - ref) / scale);
  });
  return worst;
}

}  // namespace bandspec
