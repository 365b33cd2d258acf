#pragma once

/*
 * Closed-form resolvent of the periodic two-band operator.
 *
 * For lambda off the diagonal set, B - lambda I is a triangle and its inverse
 * Z = (z_nk) is lower-triangular. With d = n - k decomposed as
 *
 *     d = m L + zeta,   zeta = m' l + zeta' = m'' l' + zeta'',
 *
 * the entry for n > k is
 *
 *     z_nk = (-1)^d  s(k)..s(k+zeta''-1) / [(r(k)-lambda)..(r(k+zeta')-lambda)]
 *                  * P_s^m'' / P_r^m' * (P_s^(L/l') / P_r^(L/l))^m
 *
 * with P_s = s_1..s_l' and P_r = (r_1-lambda)..(r_l-lambda). Products with
 * many factors are evaluated in log-polar form.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bandspec/operator.hpp"

namespace bandspec {

/// Offsets beyond this are evaluated in log-polar form.
inline constexpr std::size_t kLogPolarThreshold = 64;

struct OffsetDecomposition {
  std::size_t blocks = 0;          // m
  std::size_t block_rem = 0;       // zeta, in [0, L)
  std::size_t diag_cycles = 0;     // m'
  std::size_t diag_rem = 0;        // zeta', in [0, l)
  std::size_t subdiag_cycles = 0;  // m''
  std::size_t subdiag_rem = 0;     // zeta'', in [0, l')
  friend bool operator==(const OffsetDecomposition&, const OffsetDecomposition&) = default;
};

template <typename Real>
OffsetDecomposition decompose_offset(const PeriodicBand<Real>& band, std::size_t n, std::size_t k) {
  if (n < k) {
    throw SpectralError(ErrorCode::NegativeOffset,
                        "row " + std::to_string(n) + " precedes column " + std::to_string(k));
  }
  const std::size_t d = n - k;
  const std::size_t L = band.joint_period();
  OffsetDecomposition out;
  out.blocks = d / L;
  out.block_rem = d % L;
  out.diag_cycles = out.block_rem / band.diag_period();
  out.diag_rem = out.block_rem % band.diag_period();
  out.subdiag_cycles = out.block_rem / band.subdiag_period();
  out.subdiag_rem = out.block_rem % band.subdiag_period();
  return out;
}

namespace detail {

/// Complex number stored as log-modulus and unreduced argument.
template <typename Real>
struct LogPolar {
  Real log_mod = 0;
  Real arg = 0;

  LogPolar& operator*=(const std::complex<Real>& z) {
    log_mod += std::log(std::abs(z));
    arg += std::arg(z);
    return *this;
  }
  LogPolar& operator/=(const std::complex<Real>& z) {
    log_mod -= std::log(std::abs(z));
    arg -= std::arg(z);
    return *this;
  }
  LogPolar& operator*=(const LogPolar& o) {
    log_mod += o.log_mod;
    arg += o.arg;
    return *this;
  }
  LogPolar& operator/=(const LogPolar& o) {
    log_mod -= o.log_mod;
    arg -= o.arg;
    return *this;
  }
  LogPolar pow(std::size_t e) const {
    return {log_mod * static_cast<Real>(e), arg * static_cast<Real>(e)};
  }
  std::complex<Real> value() const {
    return std::polar(std::exp(log_mod), std::remainder(arg, 2 * std::numbers::pi_v<Real>));
  }
};

template <typename Real>
std::complex<Real> ipow(std::complex<Real> base, std::size_t e) {
  std::complex<Real> acc(1);
  while (e > 0) {
    if (e & 1U) acc *= base;
    base *= base;
    e >>= 1U;
  }
  return acc;
}

}  // namespace detail

/// Outcome of the analytic sup-norm evaluation.
template <typename Real>
struct SupNorm {
  /// (prod |s_j|)^(L/l') / (prod |r_i - lambda|)^(L/l); row sums converge iff < 1.
  Real block_ratio = 0;
  /// Supremum of the absolute row sums; empty when the series diverge.
  std::optional<Real> value;

  bool divergent() const { return !value.has_value(); }
};

/// (B - lambda I)^{-1} for lambda off the diagonal set.
template <typename Real>
class Resolvent {
 public:
  using Scalar = std::complex<Real>;

  Resolvent(PeriodicBand<Real> band, Scalar lambda) : band_(std::move(band)), lambda_(lambda) {
    if (!is_finite(lambda_)) throw SpectralError(ErrorCode::NonFiniteEntry, "lambda is not finite");
    for (std::size_t i = 0; i < band_.diag_period(); ++i) {
      if (std::abs(band_.diagonal()[i] - lambda_) == Real(0)) {
        throw SpectralError(ErrorCode::LambdaOnDiagonal, "lambda equals r_" + std::to_string(i + 1));
      }
    }
    for (const auto& s : band_.subdiagonal()) {
      s_prod_ *= s;
      s_log_ *= s;
    }
    for (const auto& r : band_.diagonal()) {
      r_prod_ *= (r - lambda_);
      r_log_ *= (r - lambda_);
    }
    const std::size_t L = band_.joint_period();
    block_log_ = s_log_.pow(L / band_.subdiag_period());
    block_log_ /= r_log_.pow(L / band_.diag_period());
    block_ = detail::ipow(s_prod_, L / band_.subdiag_period()) / detail::ipow(r_prod_, L / band_.diag_period());
  }

  const PeriodicBand<Real>& band() const { return band_; }
  const Scalar& lambda() const { return lambda_; }

  /// Entry z_nk of the inverse.
  Scalar entry(std::size_t n, std::size_t k) const {
    if (n < k) return {};
    if (n == k) return Scalar(1) / (band_.diag_at(k) - lambda_);
    const auto dec = decompose_offset(band_, n, k);
    const std::size_t d = n - k;
    if (d <= kLogPolarThreshold) {
      Scalar head(1);
      for (std::size_t t = 0; t < dec.subdiag_rem; ++t) head *= band_.subdiag_at(k + t);
      for (std::size_t t = 0; t <= dec.diag_rem; ++t) head /= (band_.diag_at(k + t) - lambda_);
      Scalar z = head * detail::ipow(s_prod_, dec.subdiag_cycles) / detail::ipow(r_prod_, dec.diag_cycles) *
                 detail::ipow(block_, dec.blocks);
      return (d % 2 == 1) ? -z : z;
    }
    detail::LogPolar<Real> acc;
    for (std::size_t t = 0; t < dec.subdiag_rem; ++t) acc *= band_.subdiag_at(k + t);
    for (std::size_t t = 0; t <= dec.diag_rem; ++t) acc /= (band_.diag_at(k + t) - lambda_);
    acc *= s_log_.pow(dec.subdiag_cycles);
    acc /= r_log_.pow(dec.diag_cycles);
    acc *= block_log_.pow(dec.blocks);
    if (d % 2 == 1) acc.arg += std::numbers::pi_v<Real>;
    return acc.value();
  }

  /// sum_k |z_nk| over the (finite) row n, accumulated in increasing offset n - k.
  Real row_sum(std::size_t n) const {
    Real sum = 0;
    for (std::size_t d = 0; d <= n; ++d) sum += std::abs(entry(n, n - d));
    return sum;
  }

  Real log_block_ratio() const {
    const std::size_t L = band_.joint_period();
    return static_cast<Real>(L / band_.subdiag_period()) * s_log_.log_mod -
           static_cast<Real>(L / band_.diag_period()) * r_log_.log_mod;
  }

  /// Exact supremum of the row sums.
  ///
  /// Row n with n = p (mod L) collects, for every offset class zeta, the terms
  /// A(p, zeta) * rho^m, m = 0, 1, ...; along each residue class the row sums
  /// increase to sum_zeta A(p, zeta) / (1 - rho).
  SupNorm<Real> sup_norm() const {
    SupNorm<Real> out;
    const Real log_ratio = log_block_ratio();
    out.block_ratio = std::exp(log_ratio);
    if (!(log_ratio < 0)) return out;
    const std::size_t L = band_.joint_period();
    const Real denom = -std::expm1(log_ratio);
    Real best = 0;
    for (std::size_t p = 0; p < L; ++p) {
      Real head = 0;
      for (std::size_t zeta = 0; zeta < L; ++zeta) {
        // column k = p - zeta (mod L), row k + zeta: one block-free representative
        const std::size_t k = (p + L - zeta) % L;
        head += std::abs(entry(k + zeta, k));
      }
      best = std::max(best, head / denom);
    }
    out.value = best;
    return out;
  }

 private:
  PeriodicBand<Real> band_;
  Scalar lambda_;
  Scalar s_prod_{1};
  Scalar r_prod_{1};
  Scalar block_{1};
  detail::LogPolar<Real> s_log_;
  detail::LogPolar<Real> r_log_;
  detail::LogPolar<Real> block_log_;
};

template <typename Real>
std::complex<Real> resolvent_entry(const Resolvent<Real>& q, std::size_t n, std::size_t k) {
  return q.entry(n, k);
}

template <typename Real>
Real resolvent_row_sum(const Resolvent<Real>& q, std::size_t n) {
  return q.row_sum(n);
}

template <typename Real>
SupNorm<Real> resolvent_sup_norm(const Resolvent<Real>& q) {
  return q.sup_norm();
}

/// Solves (B_N - lambda I) x = y by forward substitution.
template <typename Real, typename Derived>
ComplexVector<Real> resolvent_apply_oracle(const Resolvent<Real>& q, const Eigen::MatrixBase<Derived>& y) {
  const auto& band = q.band();
  const Eigen::Index n = y.size();
  ComplexVector<Real> x(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<Real> rhs = y(k);
    if (k > 0) rhs -= band.subdiag_at(static_cast<std::size_t>(k - 1)) * x(k - 1);
    x(k) = rhs / (band.diag_at(static_cast<std::size_t>(k)) - q.lambda());
  }
  return x;
}

/// N x N matrix of closed-form entries z_nk.
template <typename Real>
ComplexMatrix<Real> resolvent_matrix(const Resolvent<Real>& q, std::size_t n) {
  ComplexMatrix<Real> z = ComplexMatrix<Real>::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k; i < n; ++i) z(i, k) = q.entry(i, k);
  }
  return z;
}

}  // namespace bandspec
