#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bandspec/operator.hpp"
#include "bandspec/region.hpp"
#include "bandspec/spectrum.hpp"

namespace bandspec {

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i" with decimal reals; no whitespace.
std::complex<double> parse_complex(std::string_view text);

std::string format_complex(const std::complex<double>& z);

/// {"r": [[re, im], ...], "s": [[re, im], ...]}
PeriodicBand<double> params_from_json(const nlohmann::json& doc);
nlohmann::json params_to_json(const PeriodicBand<double>& band);
PeriodicBand<double> load_params(const std::filesystem::path& path);

/// The worked example: r = (1-i, -i, -1.5, -i), s = (i, 1+i, -2, -1.5, 1-i, -1).
PeriodicBand<double> figure_params();

nlohmann::json classification_to_json(const SpectrumClassification& c, double indicator);
SpectrumClassification classification_from_json(const nlohmann::json& doc);

/// "re,im,value" rows, row-major from the bottom row upward.
std::string grid_to_csv(const RegionGrid<double>& grid);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace bandspec
