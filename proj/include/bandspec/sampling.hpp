#pragma once

// Seeded generators for randomized verification.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "bandspec/operator.hpp"
#include "bandspec/spectrum.hpp"

namespace bandspec {

using Rng = std::mt19937_64;

inline std::complex<double> random_in_box(Rng& rng, double half_width = 1.0) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double re = u(rng);
  return {re, u(rng)};
}

/// Cycles of length 1..max_period with entries in the unit box and |s_j| >= min_s.
inline PeriodicBand<double> random_band(Rng& rng, std::size_t max_period = 5, double min_s = 0.1) {
  std::uniform_int_distribution<std::size_t> len(1, max_period);
  const std::size_t l = len(rng);
  const std::size_t lp = len(rng);
  std::vector<std::complex<double>> r, s;
  for (std::size_t i = 0; i < l; ++i) r.push_back(random_in_box(rng));
  while (s.size() < lp) {
    const auto z = random_in_box(rng);
    if (std::abs(z) >= min_s) s.push_back(z);
  }
  return PeriodicBand<double>::create(std::move(r), std::move(s));
}

/// Rejection-samples lambda in [-half_width, half_width]^2 with indicator > margin.
inline std::complex<double> random_regular_point(Rng& rng, const PeriodicBand<double>& band, double margin,
                                                 double half_width = 3.0) {
  while (true) {
    const auto z = random_in_box(rng, half_width);
    if (spectral_indicator(band, z) > margin) return z;
  }
}

}  // namespace bandspec
