#include "bandspec/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "bandspec/finite_section.hpp"
#include "bandspec/io.hpp"
#include "bandspec/operator.hpp"
#include "bandspec/region.hpp"
#include "bandspec/render.hpp"
#include "bandspec/resolvent.hpp"
#include "bandspec/sampling.hpp"
#include "bandspec/spectrum.hpp"

namespace bandspec {

namespace {

using C = std::complex<double>;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      passed = false;
      detail << " FAIL[" << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool inside(Region r) { return r == Region::Interior || r == Region::DiagonalValue; }

void figure_reproduction(Rng&, Outcome& out) {
  const auto band = figure_params();
  const auto window = figure_window<double>();
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = sample_indicator(band, window, 600, 600);
  const auto contours = extract_contour(grid, 0.0);
  const auto image = render(grid, contours, ImageFormat::Pgm);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(elapsed < 10.0, "600x600 region under 10 s");

  const std::string header = "P5 600 600 255\n";
  out.require(image.size() == header.size() + 600 * 600 && image.compare(0, header.size(), header) == 0,
              "PGM header and size");
  std::size_t mismatches = 0;
  for (std::size_t row = 0; row < 600 && image.size() == header.size() + 360000; ++row) {
    for (std::size_t col = 0; col < 600; ++col) {
      const double f = spectral_indicator(band, grid.cell_center(row, col));
      if (f != grid.at(row, col)) ++mismatches;
      const auto shade = static_cast<unsigned char>(image[header.size() + (599 - row) * 600 + col]);
      if (shade == kShadeContour) continue;
      if ((shade == kShadeInside) != (f < 0)) ++mismatches;
    }
  }
  out.require(mismatches == 0, "rendered shading matches indicator sign");

  const double threshold = std::pow(6.0, 1.0 / 6.0);
  const double at_r3 = spectral_indicator(band, C(-1.5, 0));
  out.require(std::abs(at_r3 + threshold) <= 1e-12, "indicator(-1.5) = -6^(1/6)");
  out.require(inside(classify(band, C(-1.5, 0)).region), "-1.5 inside");
  out.require(classify(band, C(0, 0)).region == Region::Interior, "0 inside");
  out.require(classify(band, C(2, 2)).region == Region::Regular, "2+2i outside");
  out.detail << "elapsed=" << sci(elapsed) << "s contours=" << contours.polylines.size()
             << " f(-1.5)=" << at_r3;
}

void resolvent_vs_oracle(Rng& rng, Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto band = random_band(rng, 5, 0.1);
    const auto lambda = random_regular_point(rng, band, 0.1);
    worst = std::max(worst, oracle_compare(band, lambda, 200));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(worst <= 1e-9, "max relative deviation <= 1e-9");
  out.require(elapsed < 5.0, "runtime < 5 s");
  out.detail << "max_rel_dev=" << sci(worst) << " elapsed=" << sci(elapsed) << "s";
}

void defining_identity(Rng&, Outcome& out) {
  const auto band = figure_params();
  const C lambda(3, -1);
  const Resolvent<double> q(band, lambda);
  const std::size_t n = 150;
  const ComplexMatrix<double> shifted = truncation(band, n) - lambda * ComplexMatrix<double>::Identity(n, n);
  const ComplexMatrix<double> residual = shifted * resolvent_matrix(q, n) - ComplexMatrix<double>::Identity(n, n);
  const double worst = residual.cwiseAbs().maxCoeff();
  out.require(worst <= 1e-10, "max |(B_N - lambda I) Z_N - I| <= 1e-10");
  out.detail << "max_entry=" << sci(worst);
}

void spectrum_dichotomy(Rng& rng, Outcome& out) {
  const std::vector<std::size_t> sizes{50, 100, 200, 400};
  std::vector<std::pair<PeriodicBand<double>, C>> cases{{figure_params(), C(3, -1)}};
  for (int trial = 0; trial < 5; ++trial) {
    auto band = random_band(rng, 5, 0.1);
    const auto lambda = random_regular_point(rng, band, 0.1);
    cases.emplace_back(std::move(band), lambda);
  }
  double worst_gap = 0;
  for (const auto& [band, lambda] : cases) {
    const auto profile = growth_profile(band, lambda, sizes);
    const auto sup = Resolvent<double>(band, lambda).sup_norm();
    out.require(!sup.divergent(), "sup norm finite outside S");
    if (sup.divergent()) continue;
    out.require(std::is_sorted(profile.norms.begin(), profile.norms.end()), "profile nondecreasing");
    const double gap = std::abs(profile.norms.back() - *sup.value) / *sup.value;
    worst_gap = std::max(worst_gap, gap);
  }
  out.require(worst_gap <= 0.01, "final norm within 1% of sup norm");

  const auto band = figure_params();
  const double n60 = finite_section_inverse_norm(band, C(0, 0), 60);
  const double n120 = finite_section_inverse_norm(band, C(0, 0), 120);
  out.require(n120 / n60 > 10, "norm(120)/norm(60) > 10 at lambda = 0");
  out.require(Resolvent<double>(band, C(0, 0)).sup_norm().divergent(), "divergent at lambda = 0");
  out.detail << "worst_gap=" << sci(worst_gap) << " ratio_inside=" << sci(n120 / n60);
}

void empty_point_spectrum(Rng&, Outcome& out) {
  const auto band = figure_params();
  const auto window = figure_window<double>();
  const RegionGrid<double> grid(window, 10, 10);
  std::size_t witnesses = 0, checked = 0;
  for (std::size_t row = 0; row < 10; ++row) {
    for (std::size_t col = 0; col < 10; ++col) {
      witnesses += point_spectrum_witness(band, grid.cell_center(row, col), 200) ? 1 : 0;
      ++checked;
    }
  }
  for (const auto& r : band.diagonal()) {
    witnesses += point_spectrum_witness(band, r, 200) ? 1 : 0;
    ++checked;
  }
  out.require(witnesses == 0, "no eigenvector prefix found");
  out.detail << "points=" << checked << " witnesses=" << witnesses;
}

void adjoint_point_spectrum(Rng&, Outcome& out) {
  const auto band = figure_params();
  const std::size_t L = band.joint_period();
  const auto prefix = adjoint_eigenvector(band, C(0, 0), 600);
  const C lambda(0, 0);
  double worst = 0;
  for (std::size_t k = 0; k + 1 < 600; ++k) {
    const C lhs = prefix.values(k + 1) * band.subdiag_at(k);
    const C rhs = (lambda - band.diag_at(k)) * prefix.values(k);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300}));
  }
  out.require(worst <= 1e-12, "per-step relative residual <= 1e-12");

  // (prod |lambda - r_i|)^(L/l) / (prod |s_j|)^(L/l') at lambda = 0, L/l = 3, L/l' = 2
  const double expected = std::pow(std::sqrt(2.0) * 1.0 * 1.5 * 1.0, 3) / std::pow(1.0 * std::sqrt(2.0) * 2.0 * 1.5 * std::sqrt(2.0) * 1.0, 2);
  const double rho = std::abs(prefix.ratio);
  out.require(std::abs(rho - expected) <= 1e-6, "|rho| = 0.2652 +- 1e-6");

  auto block_mass = [&](std::size_t b) {
    double m = 0;
    for (std::size_t k = b * L; k < (b + 1) * L; ++k) m += std::abs(prefix.values(k));
    return m;
  };
  const std::size_t blocks = 600 / L;
  const double tail_ratio = block_mass(blocks - 1) / block_mass(blocks - 2);
  out.require(std::abs(tail_ratio - expected) <= 1e-6, "tail ratio = |rho|");
  const double limit = block_mass(0) / (1.0 - rho);
  out.require(std::abs(prefix.l1_partial - limit) <= 1e-12 * limit, "partial l1 sums converge");

  const auto outside = adjoint_eigenvector(band, C(2, 2), 120);
  out.require(outside.l1_partial > 1e6, "partial sums exceed 1e6 at 2+2i");
  out.detail << "residual=" << sci(worst) << " |rho|=" << rho << " tail=" << tail_ratio
             << " l1_outside=" << sci(outside.l1_partial);
}

void goldberg_iii1(Rng& rng, Outcome& out) {
  const auto band = figure_params();
  double worst_residual = 0;
  for (std::size_t i = 1; i <= band.diag_period(); ++i) {
    double bound = 0, worst_ratio = 0;
    for (int trial = 0; trial < 10; ++trial) {
      ComplexVector<double> y(24);
      for (Eigen::Index k = 0; k < y.size(); ++k) y(k) = random_in_box(rng);
      const auto sol = surjectivity_block_solve(band, i, y);
      const double y_inf = y.cwiseAbs().maxCoeff();
      worst_residual = std::max(worst_residual, sol.residual / y_inf);
      out.require(sol.residual <= 1e-10 * y_inf, "residual <= 1e-10 ||y||_inf");
      out.require(std::isfinite(sol.coefficient_bound), "C finite");
      out.require(sol.realized_ratio <= sol.coefficient_bound * (1 + 1e-12), "||x||_1 <= C ||y||_1");
      bound = sol.coefficient_bound;
      worst_ratio = std::max(worst_ratio, sol.realized_ratio);
    }
    out.detail << "C(r" << i << ")=" << sci(bound) << " max_ratio=" << sci(worst_ratio) << ' ';
  }
  out.detail << "worst_rel_residual=" << sci(worst_residual);
}

void norm_bound_check(Rng& rng, Outcome& out) {
  std::size_t failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto band = random_band(rng, 5, 0.1);
    const double norm = inf_norm(truncation(band, 4 * band.joint_period()));
    if (!(norm <= norm_bound(band)) || norm != periodic_row_sum_max(band)) ++failures;
  }
  out.require(failures == 0, "truncated norm <= bound and equal to periodic row max");
  out.detail << "sets=50 failures=" << failures;
}

void disc_reduction(Rng& rng, Outcome& out) {
  constexpr double tol = kDefaultTolerance;
  std::size_t disagreements = 0, points = 0, skipped = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const C r = random_in_box(rng);
    C s = random_in_box(rng);
    while (std::abs(s) < 0.1) s = random_in_box(rng);
    const auto band = PeriodicBand<double>::create({r}, {s});
    const double radius = std::abs(s);
    const Window<double> window{r.real() - 2 * radius, r.real() + 2 * radius, r.imag() - 2 * radius,
                                r.imag() + 2 * radius};
    const RegionGrid<double> grid(window, 50, 50);
    for (std::size_t row = 0; row < 50; ++row) {
      for (std::size_t col = 0; col < 50; ++col) {
        const C z = grid.cell_center(row, col);
        const double dist = std::abs(z - r);
        ++points;
        if (std::abs(dist - radius) <= 2 * tol) {
          ++skipped;
          continue;
        }
        const Region region = classify(band, z, tol).region;
        const bool regular = region == Region::Regular;
        if (regular != (dist > radius)) ++disagreements;
      }
    }
  }
  out.require(points == 10000, "10,000 grid points");
  out.require(disagreements == 0, "zero disagreements outside tol band");
  out.detail << "points=" << points << " in_band=" << skipped << " disagreements=" << disagreements;
}

void permutation_invariance(Rng& rng, Outcome& out) {
  double worst = 0;
  for (int set = 0; set < 10; ++set) {
    const auto band = random_band(rng, 5, 0.1);
    std::vector<C> r(band.diagonal().begin(), band.diagonal().end());
    std::vector<C> s(band.subdiagonal().begin(), band.subdiagonal().end());
    std::vector<C> probes;
    for (int p = 0; p < 5; ++p) probes.push_back(random_in_box(rng, 2.0));
    for (int perm = 0; perm < 10; ++perm) {
      std::shuffle(r.begin(), r.end(), rng);
      std::shuffle(s.begin(), s.end(), rng);
      const auto permuted = PeriodicBand<double>::create(r, s);
      for (const auto& z : probes) {
        worst = std::max(worst, std::abs(spectral_indicator(permuted, z) - spectral_indicator(band, z)));
      }
    }
  }
  out.require(worst <= 1e-14, "indicator unchanged under permutation");
  out.detail << "max_abs_diff=" << sci(worst);
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Rng&, Outcome&);
};

constexpr Criterion kCriteria[] = {
    {1, "figure reproduction", figure_reproduction},
    {2, "resolvent formula vs oracle", resolvent_vs_oracle},
    {3, "defining identity", defining_identity},
    {4, "spectrum dichotomy", spectrum_dichotomy},
    {5, "empty point spectrum", empty_point_spectrum},
    {6, "adjoint point spectrum", adjoint_point_spectrum},
    {7, "Goldberg III1 surjectivity", goldberg_iii1},
    {8, "norm bound", norm_bound_check},
    {9, "disc reduction", disc_reduction},
    {10, "permutation invariance", permutation_invariance},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  for (const auto& c : kCriteria) {
    Rng rng(seed + static_cast<std::uint64_t>(c.id));
    Outcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(rng, outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.passed = outcome.passed;
    r.detail = outcome.detail.str();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-28s (%.2fs) ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace bandspec
