#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "bandspec/region.hpp"

namespace bandspec {

enum class ImageFormat { Pgm, Svg };

/// "pgm" or "svg" (case-sensitive); anything else is UnsupportedFormat.
ImageFormat parse_image_format(std::string_view name);

struct RenderOptions {
  /// Cells with value below this are drawn as the region.
  double level = 0.0;
  /// Points marked with a cross in SVG output (the diagonal values).
  std::vector<std::complex<double>> markers;
};

inline constexpr unsigned char kShadeInside = 64;
inline constexpr unsigned char kShadeOutside = 230;
inline constexpr unsigned char kShadeContour = 0;

/// PGM: binary P5 graymap, one pixel per cell, top row = im_max.
/// SVG: region fill, contour paths in data coordinates, integer ticks, markers.
std::string render(const RegionGrid<double>& grid, const ContourSet<double>& contours, ImageFormat format,
                   const RenderOptions& options = {});

}  // namespace bandspec
