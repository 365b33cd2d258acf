#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bandspec/resolvent.hpp"
#include "bandspec/sampling.hpp"
#include "bandspec/spectrum.hpp"
#include "oracles.hpp"

using namespace bandspec;
using bandspec::testing::C;

namespace {

const double kThreshold = std::pow(6.0, 1.0 / 6.0);

}  // namespace

TEST(SpectralIndicator, FigureExamples) {
  const auto band = bandspec::testing::figure_band();
  EXPECT_NEAR(spectral_indicator(band, C(-1.5, 0)), -kThreshold, 1e-15);

  // direct modulus arithmetic: |0-(1-i)| |0+i| |0+1.5| |0+i|
  const double at_zero = std::pow(std::sqrt(2.0) * 1.0 * 1.5 * 1.0, 0.25) - kThreshold;
  EXPECT_NEAR(spectral_indicator(band, C(0, 0)), at_zero, 1e-14);
  EXPECT_LT(at_zero, 0);

  // |1+3i| |2+3i|^2 |3.5+2i|
  const double at_2_2 = std::pow(std::sqrt(10.0) * 13.0 * std::sqrt(16.25), 0.25) - kThreshold;
  EXPECT_NEAR(spectral_indicator(band, C(2, 2)), at_2_2, 1e-14);
  EXPECT_NEAR(at_2_2 + kThreshold, 3.59, 0.01);
}

TEST(SpectralIndicator, PermutationInvariant) {
  Rng rng(31);
  for (int set = 0; set < 10; ++set) {
    const auto band = random_band(rng, 6);
    auto r = bandspec::testing::cycle(band.diagonal());
    auto s = bandspec::testing::cycle(band.subdiagonal());
    const C z = random_in_box(rng, 2);
    for (int perm = 0; perm < 10; ++perm) {
      std::shuffle(r.begin(), r.end(), rng);
      std::shuffle(s.begin(), s.end(), rng);
      EXPECT_EQ(spectral_indicator(validate_params<double>(r, s), z), spectral_indicator(band, z));
    }
  }
}

TEST(Classify, FigureExamples) {
  const auto band = bandspec::testing::figure_band();
  EXPECT_EQ(classify(band, C(1, -1)), (SpectrumClassification{Region::DiagonalValue, FineSpectrum::Residual,
                                                               Goldberg::III1}));
  EXPECT_EQ(classify(band, C(0, 0)), (SpectrumClassification{Region::Interior, FineSpectrum::Residual,
                                                              Goldberg::III2}));
  EXPECT_EQ(classify(band, C(10, 0)), (SpectrumClassification{Region::Regular, FineSpectrum::None,
                                                               Goldberg::NotApplicable}));
}

TEST(Classify, BoundaryPoint) {
  // on the circle |lambda - r| = |s|
  const auto band = validate_params<double>({C(0.5, 0)}, {C(0, 2)});
  const auto c = classify(band, C(0.5, 2));
  EXPECT_EQ(c, (SpectrumClassification{Region::Boundary, FineSpectrum::Continuous, Goldberg::Undetermined}));
  EXPECT_THROW(classify(band, C(0, 0), 0.0), SpectralError);
}

TEST(Classify, LabelInvariants) {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const auto band = random_band(rng, 4);
    const auto c = classify(band, random_in_box(rng, 2.5));
    switch (c.region) {
      case Region::Regular:
        EXPECT_EQ(c.fine, FineSpectrum::None);
        EXPECT_EQ(c.goldberg, Goldberg::NotApplicable);
        break;
      case Region::DiagonalValue:
        EXPECT_EQ(c.goldberg, Goldberg::III1);
        break;
      case Region::Interior:
        EXPECT_EQ(c.fine, FineSpectrum::Residual);
        EXPECT_EQ(c.goldberg, Goldberg::III2);
        break;
      case Region::Boundary:
        EXPECT_EQ(c.fine, FineSpectrum::Continuous);
        break;
    }
  }
}

TEST(Classify, DiscReduction) {
  Rng rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const C r = random_in_box(rng);
    const C s = random_in_box(rng) + C(0.3, 0);
    const auto band = validate_params<double>({r}, {s});
    const double radius = std::abs(s);
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const C z = r + C(-2 * radius + 4 * radius * (i + 0.5) / 100, -2 * radius + 4 * radius * (j + 0.5) / 100);
        const double dist = std::abs(z - r);
        if (std::abs(dist - radius) <= 2e-9) continue;
        const auto region = classify(band, z).region;
        EXPECT_EQ(region == Region::Regular, dist > radius);
        EXPECT_NE(region, Region::Boundary);
      }
    }
  }
}

TEST(Classify, ConsistentWithResolvent) {
  Rng rng(13);
  int regular = 0, interior = 0;
  for (int i = 0; i < 300; ++i) {
    const auto band = random_band(rng, 4);
    const C z = random_in_box(rng, 2.5);
    const auto region = classify(band, z).region;
    if (region == Region::Regular) {
      ++regular;
      EXPECT_FALSE(Resolvent<double>(band, z).sup_norm().divergent());
    } else if (region == Region::Interior) {
      ++interior;
      EXPECT_TRUE(Resolvent<double>(band, z).sup_norm().divergent());
    }
  }
  EXPECT_GT(regular, 20);
  EXPECT_GT(interior, 10);
}

TEST(AdjointEigenvector, ScalarRecursion) {
  const auto band = bandspec::testing::shift_band();
  const auto prefix = adjoint_eigenvector(band, C(0.5, 0), 10);
  for (int k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(prefix.values(k).real(), std::ldexp(1.0, -k));
  EXPECT_NEAR(std::abs(prefix.ratio - C(0.5, 0)), 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(prefix.l1_partial, 2 - std::ldexp(1.0, -9));
}

TEST(AdjointEigenvector, FigureRatioInside) {
  const auto band = bandspec::testing::figure_band();
  const auto prefix = adjoint_eigenvector(band, C(0, 0), 600);
  // L/l = 3, L/l' = 2
  const double expected = std::pow(std::sqrt(2.0) * 1.5, 3) / 36.0;
  EXPECT_NEAR(std::abs(prefix.ratio), expected, 1e-12);
  EXPECT_NEAR(expected, 9.5459 / 36, 1e-5);
  for (std::size_t k = 0; k + 12 < 600; k += 12) {
    const C next = prefix.values(static_cast<Eigen::Index>(k + 12));
    const C scaled = prefix.ratio * prefix.values(static_cast<Eigen::Index>(k));
    EXPECT_LE(std::abs(next - scaled), 1e-12 * std::abs(next));
  }
}

TEST(AdjointEigenvector, OutsideGrows) {
  const auto band = bandspec::testing::figure_band();
  const auto prefix = adjoint_eigenvector(band, C(2, 2), 120);
  EXPECT_GT(std::abs(prefix.ratio), 1);
  EXPECT_GT(prefix.l1_partial, 1e6);
  EXPECT_THROW(adjoint_eigenvector(band, C(2, 2), 11), SpectralError);
}

TEST(AdjointEigenvector, RecursionIdentity) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto band = random_band(rng, 5);
    const C lambda = random_in_box(rng, 2);
    const auto prefix = adjoint_eigenvector(band, lambda, 5 * band.joint_period());
    for (Eigen::Index k = 0; k + 1 < prefix.values.size(); ++k) {
      const C lhs = prefix.values(k + 1) * band.subdiag_at(static_cast<std::size_t>(k));
      const C rhs = (lambda - band.diag_at(static_cast<std::size_t>(k))) * prefix.values(k);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(std::abs(lhs), std::abs(rhs)));
    }
  }
}

TEST(AdjointEigenvector, L1Dichotomy) {
  Rng rng(77);
  int checked = 0;
  while (checked < 50) {
    const auto band = random_band(rng, 5);
    const C lambda = random_in_box(rng, 2);
    const double f = spectral_indicator(band, lambda);
    if (std::abs(f) < 1e-6) continue;
    ++checked;
    const double log_rho = adjoint_log_ratio_modulus(band, lambda);
    EXPECT_EQ(log_rho < 0, f < 0);
    EXPECT_EQ(std::abs(adjoint_period_ratio(band, lambda)) < 1, f < 0);
  }
}

TEST(PointSpectrumWitness, Examples) {
  const auto band = bandspec::testing::figure_band();
  EXPECT_FALSE(point_spectrum_witness(band, C(1, -1), 48));
  EXPECT_FALSE(point_spectrum_witness(bandspec::testing::shift_band(), C(0, 0), 8));
  EXPECT_FALSE(point_spectrum_witness(band, C(0.3, 0.1), 48));
  EXPECT_THROW(point_spectrum_witness(band, C(0, 0), 23), SpectralError);

  // cross-check: the K x K section of B - lambda I is triangular with nonzero diagonal
  const Eigen::MatrixXcd a = truncation(band, 48) - C(0.3, 0.1) * Eigen::MatrixXcd::Identity(48, 48);
  EXPECT_EQ(a.fullPivLu().rank(), 48);
}

TEST(PointSpectrumWitness, EmptyOnGridAndDiagonal) {
  const auto band = bandspec::testing::figure_band();
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const C z(-4 + 6.5 * (i + 0.5) / 10, -3 + 5.0 * (j + 0.5) / 10);
      EXPECT_FALSE(point_spectrum_witness(band, z, 200));
    }
  for (const auto& r : band.diagonal()) EXPECT_FALSE(point_spectrum_witness(band, r, 200));
  // repeated diagonal values and zero diagonals
  const auto repeated = validate_params<double>({C(0, 0), C(0, 0), C(1, 0)}, {C(1, 0), C(-1, 0)});
  EXPECT_FALSE(point_spectrum_witness(repeated, C(0, 0), 12));
}

TEST(SurjectivityBlockSolve, ShiftExample) {
  const auto sol = surjectivity_block_solve(bandspec::testing::shift_band(), 1, Eigen::VectorXcd::Unit(4, 0));
  EXPECT_EQ(sol.x, (Eigen::VectorXcd(4) << 0, 1, 0, 0).finished());
  EXPECT_EQ(sol.next, C(0, 0));
  EXPECT_EQ(sol.residual, 0.0);
}

TEST(SurjectivityBlockSolve, FigureFirstCoefficient) {
  const auto band = bandspec::testing::figure_band();
  const auto sol = surjectivity_block_solve(band, 1, Eigen::VectorXcd::Unit(12, 0));
  // x_1 = y_0 / s_1 = 1 / i
  EXPECT_NEAR(std::abs(sol.x(1) - C(0, -1)), 0.0, 1e-15);
  EXPECT_EQ(sol.x(0), C(0, 0));
  EXPECT_LE(sol.residual, 1e-12);

  // second coefficient k22 = -(r2 - r1) / (s1 s2)
  const auto sol2 = surjectivity_block_solve(band, 1, Eigen::VectorXcd::Unit(12, 0));
  const C k22 = -(band.diagonal()[1] - band.diagonal()[0]) / (band.subdiagonal()[0] * band.subdiagonal()[1]);
  EXPECT_NEAR(std::abs(sol2.x(2) - k22), 0.0, 1e-15);
}

TEST(SurjectivityBlockSolve, RandomRightHandSides) {
  const auto band = bandspec::testing::figure_band();
  Rng rng(10);
  for (std::size_t i = 1; i <= 4; ++i) {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXcd y(24);
      for (int k = 0; k < 24; ++k) y(k) = random_in_box(rng);
      const auto sol = surjectivity_block_solve(band, i, y);
      EXPECT_LE(sol.residual, 1e-10 * y.cwiseAbs().maxCoeff());
      // independent residual with the dense adjoint section
      Eigen::MatrixXcd adj = truncation(band, 25).transpose() - band.diagonal()[i - 1] * Eigen::MatrixXcd::Identity(25, 25);
      Eigen::VectorXcd full(25);
      full << sol.x, sol.next;
      const Eigen::VectorXcd lhs = (adj * full).head(24);
      EXPECT_LE((lhs - y).cwiseAbs().maxCoeff(), 1e-10 * y.cwiseAbs().maxCoeff());
      EXPECT_LE(sol.x.cwiseAbs().sum(), sol.coefficient_bound * y.cwiseAbs().sum() * (1 + 1e-12));
    }
  }
}

TEST(SurjectivityBlockSolve, Errors) {
  const auto band = bandspec::testing::figure_band();
  auto code_of = [&](std::size_t i, int len) {
    try {
      surjectivity_block_solve(band, i, Eigen::VectorXcd::Zero(len));
    } catch (const SpectralError& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of(0, 12), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of(5, 12), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of(1, 13), ErrorCode::LengthNotMultipleOfL);
  EXPECT_EQ(code_of(1, 0), ErrorCode::LengthNotMultipleOfL);
}
