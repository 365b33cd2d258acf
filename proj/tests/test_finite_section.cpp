#include <gtest/gtest.h>

#include <cmath>

#include "bandspec/finite_section.hpp"
#include "bandspec/sampling.hpp"
#include "oracles.hpp"

using namespace bandspec;
using bandspec::testing::C;

TEST(FiniteSectionInverseNorm, Examples) {
  const auto shift = bandspec::testing::shift_band();
  // row sums 1 - 2^-(n+1); the largest of the first six rows
  EXPECT_DOUBLE_EQ(finite_section_inverse_norm(shift, C(2, 0), 6), 0.984375);

  const auto band = bandspec::testing::figure_band();
  EXPECT_DOUBLE_EQ(finite_section_inverse_norm(band, C(3, 1), 1), 1.0 / std::abs(C(1, -1) - C(3, 1)));

  const double n60 = finite_section_inverse_norm(band, C(0, 0), 60);
  const double n120 = finite_section_inverse_norm(band, C(0, 0), 120);
  EXPECT_GT(n120 / n60, 10);

  try {
    finite_section_inverse_norm(band, C(-1.5, 0), 10);
    FAIL();
  } catch (const SpectralError& e) {
    EXPECT_EQ(e.code(), ErrorCode::LambdaOnDiagonal);
  }
}

TEST(FiniteSectionInverseNorm, MatchesDenseInverse) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto band = random_band(rng, 4);
    const C lambda = random_regular_point(rng, band, 0.2);
    const auto inv = bandspec::testing::dense_inverse(bandspec::testing::cycle(band.diagonal()),
                                                      bandspec::testing::cycle(band.subdiagonal()), 40, lambda);
    const double dense = inv.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_NEAR(finite_section_inverse_norm(band, lambda, 40), dense, 1e-12 * dense);
  }
}

TEST(FiniteSectionInverseNorm, MonotoneAndBoundedBySupNorm) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto band = random_band(rng, 5);
    const C lambda = random_regular_point(rng, band, 0.05);
    const auto sup = Resolvent<double>(band, lambda).sup_norm();
    ASSERT_FALSE(sup.divergent());
    double prev = 0;
    for (std::size_t n = 1; n <= 512; n += (n < 16 ? 1 : 37)) {
      const double norm = finite_section_inverse_norm(band, lambda, n);
      EXPECT_GE(norm, prev);
      // both sides are sums of the same terms along different routes
      EXPECT_LE(norm, *sup.value * (1 + 1e-12));
      prev = norm;
    }
  }
}

TEST(GrowthProfile, ConvergesOutsideDivergesInside) {
  const auto band = bandspec::testing::figure_band();
  const C outside(3, -1);
  const auto prof = growth_profile(band, outside, {50, 100, 200, 400});
  const double sup = *Resolvent<double>(band, outside).sup_norm().value;
  ASSERT_EQ(prof.norms.size(), 4u);
  EXPECT_TRUE(std::is_sorted(prof.norms.begin(), prof.norms.end()));
  EXPECT_LE(std::abs(prof.norms.back() - sup), 0.01 * sup);
  for (std::size_t i = 0; i < prof.sizes.size(); ++i)
    EXPECT_EQ(prof.norms[i], finite_section_inverse_norm(band, outside, prof.sizes[i]));

  const auto inside = growth_profile(band, C(0, 0), {60, 120, 240});
  EXPECT_GT(inside.norms[1] / inside.norms[0], 10);
  EXPECT_GT(inside.norms[2] / inside.norms[1], 10);

  EXPECT_THROW(growth_profile(band, C(1, -1), {10, 20}), SpectralError);
  EXPECT_THROW(growth_profile(band, outside, {20, 10}), SpectralError);
}

TEST(PseudospectrumGrid, FigureDichotomy) {
  const auto band = bandspec::testing::figure_band();
  const auto grid = pseudospectrum_grid(band, figure_window<double>(), 60, 120);
  std::size_t disagreements = 0;
  for (std::size_t row = 0; row < 60; ++row) {
    for (std::size_t col = 0; col < 60; ++col) {
      const C z = grid.cell_center(row, col);
      const double f = spectral_indicator(band, z);
      const double v = grid.at(row, col);
      if (f < -0.1) EXPECT_GE(v, 1e3) << z;
      if (f > 0.1) {
        const double sup = *Resolvent<double>(band, z).sup_norm().value;
        EXPECT_LE(v, sup * 1.01) << z;
      }
      if ((v >= 1e3) != (f < 0)) ++disagreements;
    }
  }
  EXPECT_LT(static_cast<double>(disagreements) / 3600.0, 0.03) << disagreements;
}

TEST(PseudospectrumGrid, DiscApproximation) {
  const auto shift = bandspec::testing::shift_band();
  const auto grid = pseudospectrum_grid(shift, Window<double>{-2, 2, -2, 2}, 60, 200);
  std::size_t agree = 0;
  for (std::size_t row = 0; row < 60; ++row)
    for (std::size_t col = 0; col < 60; ++col)
      agree += ((grid.at(row, col) >= 1e2) == (std::abs(grid.cell_center(row, col)) < 1.0));
  EXPECT_GE(static_cast<double>(agree) / 3600.0, 0.95);
}

TEST(PseudospectrumGrid, SmallAndDiagonalCells) {
  const auto band = bandspec::testing::figure_band();
  const auto grid = pseudospectrum_grid(band, figure_window<double>(), 2, 30);
  EXPECT_EQ(grid.values.size(), 4);
  EXPECT_TRUE(grid.values.allFinite());
  EXPECT_THROW(pseudospectrum_grid(band, figure_window<double>(), 1, 30), SpectralError);

  // window whose only cell centre is r_3 = -1.5
  const auto on_diag = pseudospectrum_grid(band, Window<double>{-2, -1, -0.5, 0.5}, 3, 30);
  EXPECT_EQ(on_diag.at(1, 1), kDefaultNormCap);
}

TEST(OracleCompare, Examples) {
  const auto band = bandspec::testing::figure_band();
  EXPECT_LE(oracle_compare(band, C(3, -1), 100), 1e-9);
  EXPECT_LE(oracle_compare(bandspec::testing::shift_band(), C(2, 0), 50), 1e-12);
  EXPECT_EQ(oracle_compare(band, C(3, -1), 1), 0.0);
  EXPECT_THROW(oracle_compare(band, C(0, -1), 5), SpectralError);
}
