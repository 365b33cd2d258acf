#pragma once

// Complex-plane sampling of the spectral indicator and iso-level contouring.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "bandspec/error.hpp"
#include "bandspec/operator.hpp"
#include "bandspec/spectrum.hpp"

namespace bandspec {

template <typename Real>
struct Window {
  Real re_min = -4;
  Real re_max = 2.5;
  Real im_min = -3;
  Real im_max = 2;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max) || !std::isfinite(re_min) || !std::isfinite(re_max) ||
        !std::isfinite(im_min) || !std::isfinite(im_max)) {
      throw SpectralError(ErrorCode::InvalidWindow, "window must satisfy re_min < re_max and im_min < im_max");
    }
  }
};

/// Default window for the worked example with r = (1-i, -i, -1.5, -i).
template <typename Real>
constexpr Window<Real> figure_window() {
  return {Real(-4), Real(2.5), Real(-3), Real(2)};
}

/// Cell-centred samples over a window; row 0 is the bottom (im_min) row.
template <typename Real>
struct RegionGrid {
  using Values = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Window<Real> window;
  std::size_t res_x = 0;
  std::size_t res_y = 0;
  Values values;

  RegionGrid() = default;
  RegionGrid(const Window<Real>& w, std::size_t nx, std::size_t ny) : window(w), res_x(nx), res_y(ny) {
    window.validate();
    if (nx == 0 || ny == 0) throw SpectralError(ErrorCode::InvalidArgument, "grid resolution must be positive");
    values = Values::Zero(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
  }

  Real dx() const { return (window.re_max - window.re_min) / static_cast<Real>(res_x); }
  Real dy() const { return (window.im_max - window.im_min) / static_cast<Real>(res_y); }
  Real cell_diagonal() const { return std::hypot(dx(), dy()); }

  std::complex<Real> cell_center(std::size_t row, std::size_t col) const {
    return {window.re_min + (static_cast<Real>(col) + Real(0.5)) * dx(),
            window.im_min + (static_cast<Real>(row) + Real(0.5)) * dy()};
  }

  Real& at(std::size_t row, std::size_t col) {
    return values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  Real at(std::size_t row, std::size_t col) const {
    return values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
};

template <typename Real, typename Fn>
RegionGrid<Real> sample_grid(const Window<Real>& window, std::size_t res_x, std::size_t res_y, Fn&& fn) {
  RegionGrid<Real> grid(window, res_x, res_y);
  for (std::size_t row = 0; row < res_y; ++row) {
    for (std::size_t col = 0; col < res_x; ++col) grid.at(row, col) = fn(grid.cell_center(row, col));
  }
  return grid;
}

template <typename Real>
RegionGrid<Real> sample_indicator(const PeriodicBand<Real>& band, const Window<Real>& window, std::size_t res_x,
                                  std::size_t res_y) {
  return sample_grid(window, res_x, res_y,
                     [&](const std::complex<Real>& z) { return spectral_indicator(band, z); });
}

template <typename Real>
struct Polyline {
  std::vector<std::complex<Real>> points;
  bool closed = false;
};

template <typename Real>
struct ContourSet {
  std::vector<Polyline<Real>> polylines;

  bool empty() const { return polylines.empty(); }
  std::size_t vertex_count() const {
    std::size_t n = 0;
    for (const auto& p : polylines) n += p.points.size();
    return n;
  }
};

namespace detail {

/// Edge bookkeeping for marching squares over the sample lattice.
///
/// Horizontal edges join (row, col)-(row, col+1); vertical edges join
/// (row, col)-(row+1, col).
class LatticeEdges {
 public:
  LatticeEdges(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {}

  std::size_t horizontal(std::size_t row, std::size_t col) const { return row * (nx_ - 1) + col; }
  std::size_t vertical(std::size_t row, std::size_t col) const { return ny_ * (nx_ - 1) + row * nx_ + col; }
  std::size_t count() const { return ny_ * (nx_ - 1) + (ny_ - 1) * nx_; }

  /// Endpoints (row, col) of an edge.
  std::array<std::array<std::size_t, 2>, 2> endpoints(std::size_t id) const {
    const std::size_t h = ny_ * (nx_ - 1);
    if (id < h) {
      const std::size_t row = id / (nx_ - 1), col = id % (nx_ - 1);
      return {{{row, col}, {row, col + 1}}};
    }
    id -= h;
    const std::size_t row = id / nx_, col = id % nx_;
    return {{{row, col}, {row + 1, col}}};
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
};

}  // namespace detail

/// Marching squares over the cell-centre samples at the given level.
///
/// Samples below `level` are inside. Crossing points are linearly
/// interpolated along lattice edges; saddle cells are resolved by the mean of
/// the four corners. Segments are chained into polylines through shared edges.
template <typename Real>
ContourSet<Real> extract_contour(const RegionGrid<Real>& grid, Real level) {
  ContourSet<Real> out;
  const std::size_t nx = grid.res_x, ny = grid.res_y;
  if (nx < 2 || ny < 2) return out;

  const detail::LatticeEdges edges(nx, ny);
  auto inside = [&](std::size_t row, std::size_t col) { return grid.at(row, col) < level; };

  std::vector<std::array<std::size_t, 2>> segments;
  for (std::size_t row = 0; row + 1 < ny; ++row) {
    for (std::size_t col = 0; col + 1 < nx; ++col) {
      const bool a = inside(row, col);           // bottom-left
      const bool b = inside(row, col + 1);       // bottom-right
      const bool c = inside(row + 1, col + 1);   // top-right
      const bool d = inside(row + 1, col);       // top-left
      const std::size_t bottom = edges.horizontal(row, col);
      const std::size_t top = edges.horizontal(row + 1, col);
      const std::size_t left = edges.vertical(row, col);
      const std::size_t right = edges.vertical(row, col + 1);

      std::vector<std::size_t> crossed;
      if (a != b) crossed.push_back(bottom);
      if (b != c) crossed.push_back(right);
      if (c != d) crossed.push_back(top);
      if (d != a) crossed.push_back(left);

      if (crossed.size() == 2) {
        segments.push_back({crossed[0], crossed[1]});
      } else if (crossed.size() == 4) {
        const Real center = (grid.at(row, col) + grid.at(row, col + 1) + grid.at(row + 1, col + 1) +
                             grid.at(row + 1, col)) / Real(4);
        if ((center < level) == a) {
          // a and c joined through the centre: cut off b and d
          segments.push_back({bottom, right});
          segments.push_back({top, left});
        } else {
          segments.push_back({bottom, left});
          segments.push_back({top, right});
        }
      }
    }
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::array<std::size_t, 2>> attached(edges.count(), {kNone, kNone});
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::size_t e : segments[s]) {
      auto& slot = attached[e];
      (slot[0] == kNone ? slot[0] : slot[1]) = s;
    }
  }

  auto crossing = [&](std::size_t id) {
    const auto ends = edges.endpoints(id);
    const Real va = grid.at(ends[0][0], ends[0][1]);
    const Real vb = grid.at(ends[1][0], ends[1][1]);
    const Real t = (level - va) / (vb - va);
    const auto pa = grid.cell_center(ends[0][0], ends[0][1]);
    const auto pb = grid.cell_center(ends[1][0], ends[1][1]);
    return pa + t * (pb - pa);
  };

  // Walks from `edge` away from segment `from`, appending edge ids.
  std::vector<bool> used(segments.size(), false);
  auto walk = [&](std::size_t from, std::size_t edge, std::vector<std::size_t>& chain) {
    std::size_t seg = from;
    while (true) {
      const auto& slot = attached[edge];
      const std::size_t next = (slot[0] == seg) ? slot[1] : slot[0];
      if (next == kNone || used[next]) return;
      used[next] = true;
      edge = (segments[next][0] == edge) ? segments[next][1] : segments[next][0];
      chain.push_back(edge);
      seg = next;
    }
  };

  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    std::vector<std::size_t> forward{segments[s][0], segments[s][1]};
    walk(s, segments[s][1], forward);
    Polyline<Real> line;
    if (forward.size() > 2 && forward.back() == forward.front()) {
      forward.pop_back();
      line.closed = true;
    } else {
      std::vector<std::size_t> backward;
      walk(s, segments[s][0], backward);
      forward.insert(forward.begin(), backward.rbegin(), backward.rend());
    }
    line.points.reserve(forward.size());
    for (std::size_t e : forward) line.points.push_back(crossing(e));
    out.polylines.push_back(std::move(line));
  }
  return out;
}

}  // namespace bandspec
