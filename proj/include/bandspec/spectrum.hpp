#pragma once

/*
 * Spectral sets of the periodic two-band operator on c0.
 *
 * With g_r(lambda) = (prod |lambda - r_i|)^(1/l) and g_s = (prod |s_j|)^(1/l'):
 *   spectrum            g_r <= g_s
 *   residual spectrum   g_r <  g_s   (adjoint eigenvalues in l1)
 *   continuous spectrum g_r == g_s
 *   point spectrum      empty
 * The diagonal values r_i fall in Goldberg class III_1, the rest of the
 * residual spectrum in III_2.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bandspec/operator.hpp"
#include "bandspec/resolvent.hpp"

namespace bandspec {

inline constexpr double kDefaultTolerance = 1e-9;

enum class Region { Regular, Interior, Boundary, DiagonalValue };
enum class FineSpectrum { None, Residual, Continuous };
enum class Goldberg { NotApplicable, III1, III2, Undetermined };

constexpr std::string_view to_string(Region r) {
  switch (r) {
    case Region::Regular: return "Regular";
    case Region::Interior: return "Interior";
    case Region::Boundary: return "Boundary";
    case Region::DiagonalValue: return "DiagonalValue";
  }
  return "";
}

constexpr std::string_view to_string(FineSpectrum f) {
  switch (f) {
    case FineSpectrum::None: return "None";
    case FineSpectrum::Residual: return "Residual";
    case FineSpectrum::Continuous: return "Continuous";
  }
  return "";
}

constexpr std::string_view to_string(Goldberg g) {
  switch (g) {
    case Goldberg::NotApplicable: return "NotApplicable";
    case Goldberg::III1: return "III1";
    case Goldberg::III2: return "III2";
    case Goldberg::Undetermined: return "Undetermined";
  }
  return "";
}

struct SpectrumClassification {
  Region region = Region::Regular;
  FineSpectrum fine = FineSpectrum::None;
  Goldberg goldberg = Goldberg::NotApplicable;
  friend bool operator==(const SpectrumClassification&, const SpectrumClassification&) = default;

  static SpectrumClassification from_region(Region region) {
    switch (region) {
      case Region::Regular: return {region, FineSpectrum::None, Goldberg::NotApplicable};
      case Region::DiagonalValue: return {region, FineSpectrum::Residual, Goldberg::III1};
      case Region::Interior: return {region, FineSpectrum::Residual, Goldberg::III2};
      case Region::Boundary: return {region, FineSpectrum::Continuous, Goldberg::Undetermined};
    }
    return {};
  }
};

namespace detail {

// Sorted before summation so the result does not depend on the cycle order.
template <typename Real>
Real sorted_sum(std::vector<Real> terms) {
  std::sort(terms.begin(), terms.end());
  Real sum = 0;
  for (Real t : terms) sum += t;
  return sum;
}

template <typename Real>
Real mean_log_distance(const PeriodicBand<Real>& band, const std::complex<Real>& lambda) {
  std::vector<Real> logs;
  logs.reserve(band.diag_period());
  for (const auto& r : band.diagonal()) logs.push_back(std::log(std::abs(lambda - r)));
  return sorted_sum(std::move(logs)) / static_cast<Real>(band.diag_period());
}

template <typename Real>
Real mean_log_subdiag(const PeriodicBand<Real>& band) {
  std::vector<Real> logs;
  logs.reserve(band.subdiag_period());
  for (const auto& s : band.subdiagonal()) logs.push_back(std::log(std::abs(s)));
  return sorted_sum(std::move(logs)) / static_cast<Real>(band.subdiag_period());
}

}  // namespace detail

/// Geometric-mean radius of the subdiagonal, (prod |s_j|)^(1/l').
template <typename Real>
Real spectral_radius_threshold(const PeriodicBand<Real>& band) {
  return std::exp(detail::mean_log_subdiag(band));
}

/// f(lambda) = g_r(lambda) - g_s. Negative inside the spectrum, zero on its boundary.
template <typename Real>
Real spectral_indicator(const PeriodicBand<Real>& band, const std::complex<Real>& lambda) {
  return std::exp(detail::mean_log_distance(band, lambda)) - std::exp(detail::mean_log_subdiag(band));
}

template <typename Real>
SpectrumClassification classify(const PeriodicBand<Real>& band, const std::complex<Real>& lambda,
                                Real tol = static_cast<Real>(kDefaultTolerance)) {
  if (!(tol > 0)) throw SpectralError(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (nearest_diagonal(band, lambda).second <= tol) return SpectrumClassification::from_region(Region::DiagonalValue);
  const Real f = spectral_indicator(band, lambda);
  if (std::abs(f) <= tol) return SpectrumClassification::from_region(Region::Boundary);
  if (f < -tol) return SpectrumClassification::from_region(Region::Interior);
  return SpectrumClassification::from_region(Region::Regular);
}

/// Prefix of a solution of B* x = lambda x with x_0 = 1.
template <typename Real>
struct AdjointEigenPrefix {
  ComplexVector<Real> values;
  /// x_{(k+1)L} / x_{kL}.
  std::complex<Real> ratio;
  Real l1_partial = 0;
};

/// Multiplier of one joint period of the adjoint eigen-recursion, in log-polar form.
template <typename Real>
std::complex<Real> adjoint_period_ratio(const PeriodicBand<Real>& band, const std::complex<Real>& lambda) {
  const std::size_t L = band.joint_period();
  std::vector<Real> logs;
  Real arg = 0;
  for (std::size_t t = 0; t < L; ++t) {
    const auto num = lambda - band.diag_at(t);
    const auto den = band.subdiag_at(t);
    logs.push_back(std::log(std::abs(num)));
    logs.push_back(-std::log(std::abs(den)));
    arg += std::arg(num) - std::arg(den);
  }
  const Real log_mod = detail::sorted_sum(std::move(logs));
  return std::polar(std::exp(log_mod), std::remainder(arg, 2 * std::numbers::pi_v<Real>));
}

/// log |rho|, computed from per-cycle log sums (the sign matches the indicator's).
template <typename Real>
Real adjoint_log_ratio_modulus(const PeriodicBand<Real>& band, const std::complex<Real>& lambda) {
  const auto L = static_cast<Real>(band.joint_period());
  return L * (detail::mean_log_distance(band, lambda) - detail::mean_log_subdiag(band));
}

template <typename Real>
AdjointEigenPrefix<Real> adjoint_eigenvector(const PeriodicBand<Real>& band, const std::complex<Real>& lambda,
                                             std::size_t length) {
  if (length < band.joint_period()) {
    throw SpectralError(ErrorCode::InvalidArgument, "prefix must cover one joint period");
  }
  AdjointEigenPrefix<Real> out;
  out.values.resize(static_cast<Eigen::Index>(length));
  out.values(0) = 1;
  for (std::size_t k = 0; k + 1 < length; ++k) {
    out.values(k + 1) = (lambda - band.diag_at(k)) * out.values(k) / band.subdiag_at(k);
  }
  out.ratio = adjoint_period_ratio(band, lambda);
  for (Eigen::Index k = 0; k < out.values.size(); ++k) out.l1_partial += std::abs(out.values(k));
  return out;
}

/// Tries to build a nonzero prefix x with (B - lambda I) x = 0 whose first
/// nonzero entry sits at k0 < L. Returns true only if some attempt survives
/// all `length` rows; the eigen-equation forces a contradiction at the next
/// row with a vanishing diagonal, so the expected answer is always false.
template <typename Real>
bool point_spectrum_witness(const PeriodicBand<Real>& band, const std::complex<Real>& lambda, std::size_t length) {
  const std::size_t L = band.joint_period();
  if (length < 2 * L) throw SpectralError(ErrorCode::InvalidArgument, "prefix must cover two joint periods");
  for (std::size_t k0 = 0; k0 < L; ++k0) {
    // row k0: (r(k0) - lambda) x_k0 = 0 with x_k0 != 0
    if (band.diag_at(k0) != lambda) continue;
    std::complex<Real> prev(1);
    bool consistent = true;
    for (std::size_t k = k0 + 1; k < length && consistent; ++k) {
      const auto pivot = band.diag_at(k) - lambda;
      const auto forced = -band.subdiag_at(k - 1) * prev;
      if (pivot == std::complex<Real>(0)) {
        // s x_{k-1} = 0 must hold, but s != 0 and x_{k-1} != 0
        consistent = (forced == std::complex<Real>(0));
        prev = 0;
      } else {
        prev = forced / pivot;
      }
    }
    if (consistent) return true;
  }
  return false;
}

/// Solution of (B* - r_i I) x = y on a finite prefix.
template <typename Real>
struct BlockSolve {
  ComplexVector<Real> x;
  /// x_K, the first coordinate beyond the prefix, needed by the last row.
  std::complex<Real> next;
  /// max_j sum_p |k_pj| over the recursion coefficients, so ||x||_1 <= C ||y||_1.
  Real coefficient_bound = 0;
  /// ||x||_1 / ||y||_1 for this right-hand side.
  Real realized_ratio = 0;
  /// max_k |((B* - r_i I) x - y)_k|.
  Real residual = 0;
};

/// Solves the upper-bidiagonal adjoint system at lambda = r_i.
///
/// Row k reads (r(k) - lambda) x_k + s(k) x_{k+1} = y_k. Wherever the diagonal
/// vanishes the recursion restarts, so every x coordinate is a fixed linear
/// combination of the y coordinates since the last restart. x_0 spans the
/// kernel and is set to zero.
template <typename Real, typename Derived>
BlockSolve<Real> surjectivity_block_solve(const PeriodicBand<Real>& band, std::size_t i,
                                          const Eigen::MatrixBase<Derived>& y) {
  using C = std::complex<Real>;
  if (i < 1 || i > band.diag_period()) {
    throw SpectralError(ErrorCode::IndexOutOfRange,
                        "diagonal index " + std::to_string(i) + " outside 1.." + std::to_string(band.diag_period()));
  }
  const auto length = static_cast<std::size_t>(y.size());
  if (length == 0 || length % band.joint_period() != 0) {
    throw SpectralError(ErrorCode::LengthNotMultipleOfL,
                        "length " + std::to_string(length) + " is not a multiple of " +
                            std::to_string(band.joint_period()));
  }
  const C lambda = band.diagonal()[i - 1];

  struct Term {
    std::size_t index;
    C coeff;
  };
  std::vector<Term> combo;  // x_k as sum of coeff * y_index
  std::vector<Real> column_mass(length, Real(0));

  BlockSolve<Real> out;
  out.x = ComplexVector<Real>::Zero(static_cast<Eigen::Index>(length));
  for (std::size_t k = 0; k < length; ++k) {
    const C pivot = band.diag_at(k) - lambda;
    const C inv_s = C(1) / band.subdiag_at(k);
    std::vector<Term> next_combo;
    if (pivot != C(0)) {
      next_combo.reserve(combo.size() + 1);
      for (const auto& t : combo) next_combo.push_back({t.index, -pivot * inv_s * t.coeff});
    }
    next_combo.push_back({k, inv_s});
    combo = std::move(next_combo);

    C value(0);
    for (const auto& t : combo) value += t.coeff * y(static_cast<Eigen::Index>(t.index));
    if (k + 1 < length) {
      out.x(static_cast<Eigen::Index>(k + 1)) = value;
      for (const auto& t : combo) column_mass[t.index] += std::abs(t.coeff);
    } else {
      out.next = value;
    }
  }
  out.coefficient_bound = *std::max_element(column_mass.begin(), column_mass.end());

  Real x_l1 = 0, y_l1 = 0;
  for (std::size_t k = 0; k < length; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    x_l1 += std::abs(out.x(ki));
    y_l1 += std::abs(y(ki));
    const C succ = (k + 1 < length) ? out.x(ki + 1) : out.next;
    const C lhs = (band.diag_at(k) - lambda) * out.x(ki) + band.subdiag_at(k) * succ;
    out.residual = std::max(out.residual, std::abs(lhs - C(y(ki))));
  }
  out.realized_ratio = y_l1 > 0 ? x_l1 / y_l1 : Real(0);
  return out;
}

}  // namespace bandspec
