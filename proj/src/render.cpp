#include "bandspec/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bandspec/error.hpp"

namespace bandspec {

namespace {

std::string pgm(const RegionGrid<double>& grid, const ContourSet<double>& contours, const RenderOptions& options) {
  const std::size_t w = grid.res_x, h = grid.res_y;
  // pixel rows run top (im_max) to bottom
  std::vector<unsigned char> pixels(w * h);
  for (std::size_t row = 0; row < h; ++row) {
    for (std::size_t col = 0; col < w; ++col) {
      pixels[(h - 1 - row) * w + col] = grid.at(row, col) < options.level ? kShadeInside : kShadeOutside;
    }
  }
  for (const auto& line : contours.polylines) {
    for (const auto& p : line.points) {
      const auto col = static_cast<long>(std::floor((p.real() - grid.window.re_min) / grid.dx()));
      const auto row = static_cast<long>(std::floor((p.imag() - grid.window.im_min) / grid.dy()));
      if (col < 0 || row < 0 || col >= static_cast<long>(w) || row >= static_cast<long>(h)) continue;
      pixels[(h - 1 - static_cast<std::size_t>(row)) * w + static_cast<std::size_t>(col)] = kShadeContour;
    }
  }
  std::string out = "P5 " + std::to_string(w) + " " + std::to_string(h) + " 255\n";
  out.append(pixels.begin(), pixels.end());
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string svg(const RegionGrid<double>& grid, const ContourSet<double>& contours, const RenderOptions& options) {
  const auto& win = grid.window;
  constexpr double kPlotWidth = 600.0;
  constexpr double kMargin = 40.0;
  const double scale = kPlotWidth / (win.re_max - win.re_min);
  const double plot_h = scale * (win.im_max - win.im_min);
  const double width = kPlotWidth + 2 * kMargin, height = plot_h + 2 * kMargin;
  auto px = [&](double re) { return kMargin + scale * (re - win.re_min); };
  auto py = [&](double im) { return kMargin + scale * (win.im_max - im); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n";

  // data-space group: x = re, y = im
  out << "<g transform=\"matrix(" << num(scale) << " 0 0 " << num(-scale) << ' ' << num(px(0)) << ' ' << num(py(0))
      << ")\">\n";

  out << "<path class=\"region\" fill=\"#b0b0b0\" stroke=\"none\" d=\"";
  for (std::size_t row = 0; row < grid.res_y; ++row) {
    std::size_t col = 0;
    while (col < grid.res_x) {
      if (!(grid.at(row, col) < options.level)) {
        ++col;
        continue;
      }
      const std::size_t start = col;
      while (col < grid.res_x && grid.at(row, col) < options.level) ++col;
      const double x0 = win.re_min + grid.dx() * static_cast<double>(start);
      const double x1 = win.re_min + grid.dx() * static_cast<double>(col);
      const double y0 = win.im_min + grid.dy() * static_cast<double>(row);
      const double y1 = y0 + grid.dy();
      out << 'M' << num(x0) << ' ' << num(y0) << 'H' << num(x1) << 'V' << num(y1) << 'H' << num(x0) << 'Z';
    }
  }
  out << "\"/>\n";

  for (const auto& line : contours.polylines) {
    if (line.points.empty()) continue;
    out << "<path class=\"contour\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
           "vector-effect=\"non-scaling-stroke\" d=\"";
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      out << (i == 0 ? 'M' : 'L') << num(line.points[i].real()) << ' ' << num(line.points[i].imag());
    }
    if (line.closed) out << 'Z';
    out << "\"/>\n";
  }
  out << "</g>\n";

  // frame, axes and integer ticks in pixel space
  out << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kPlotWidth)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (win.im_min < 0 && win.im_max > 0) {
    out << "<line class=\"axis\" x1=\"" << num(px(win.re_min)) << "\" y1=\"" << num(py(0)) << "\" x2=\""
        << num(px(win.re_max)) << "\" y2=\"" << num(py(0)) << "\" stroke=\"#808080\"/>\n";
  }
  if (win.re_min < 0 && win.re_max > 0) {
    out << "<line class=\"axis\" x1=\"" << num(px(0)) << "\" y1=\"" << num(py(win.im_min)) << "\" x2=\"" << num(px(0))
        << "\" y2=\"" << num(py(win.im_max)) << "\" stroke=\"#808080\"/>\n";
  }
  const double bottom = kMargin + plot_h;
  for (double t = std::ceil(win.re_min); t <= win.re_max; t += 1.0) {
    out << "<line class=\"tick\" x1=\"" << num(px(t)) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << num(bottom + 6) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << num(bottom + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t = std::ceil(win.im_min); t <= win.im_max; t += 1.0) {
    out << "<line class=\"tick\" x1=\"" << num(kMargin - 6) << "\" y1=\"" << num(py(t)) << "\" x2=\""
        << num(kMargin) << "\" y2=\"" << num(py(t)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(kMargin - 10) << "\" y=\"" << num(py(t) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  for (const auto& m : options.markers) {
    const double x = px(m.real()), y = py(m.imag());
    constexpr double a = 5.0;
    out << "<path class=\"marker\" stroke=\"red\" stroke-width=\"1.5\" d=\"M" << num(x - a) << ' ' << num(y - a) << 'L'
        << num(x + a) << ' ' << num(y + a) << 'M' << num(x - a) << ' ' << num(y + a) << 'L' << num(x + a) << ' '
        << num(y - a) << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

ImageFormat parse_image_format(std::string_view name) {
  if (name == "pgm") return ImageFormat::Pgm;
  if (name == "svg") return ImageFormat::Svg;
  throw SpectralError(ErrorCode::UnsupportedFormat, "unknown image format '" + std::string(name) + "'");
}

std::string render(const RegionGrid<double>& grid, const ContourSet<double>& contours, ImageFormat format,
                   const RenderOptions& options) {
  switch (format) {
    case ImageFormat::Pgm: return pgm(grid, contours, options);
    case ImageFormat::Svg: return svg(grid, contours, options);
  }
  throw SpectralError(ErrorCode::UnsupportedFormat, "unknown image format");
}

}  // namespace bandspec
