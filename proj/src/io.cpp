#include "bandspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <array>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bandspec {

namespace {

bool is_real_literal(std::string_view s) {
  // digits with an optional single '.', optional exponent; no sign
  if (s.empty()) return false;
  std::size_t i = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) return false;
  if (i == s.size()) return true;
  if (s[i] != 'e' && s[i] != 'E') return false;
  ++i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

double to_double(std::string_view s, std::string_view whole) {
  if (!is_real_literal(s)) {
    throw SpectralError(ErrorCode::ParseError, "malformed complex literal '" + std::string(whole) + "'");
  }
  // strtod accepts every literal is_real_literal admits
  const std::string buf(s);
  return std::strtod(buf.c_str(), nullptr);
}

// Parses an optionally signed real; returns sign-applied value.
double signed_real(std::string_view s, std::string_view whole) {
  double sign = 1;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    sign = s[0] == '-' ? -1 : 1;
    s.remove_prefix(1);
  }
  return sign * to_double(s, whole);
}

// Imaginary coefficient of a term ending in 'i' (already stripped).
double imaginary_coeff(std::string_view s, std::string_view whole) {
  double sign = 1;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    sign = s[0] == '-' ? -1 : 1;
    s.remove_prefix(1);
  }
  if (s.empty()) return sign;
  return sign * to_double(s, whole);
}

std::complex<double> json_complex(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_string()) return parse_complex(v.get<std::string>());
  throw SpectralError(ErrorCode::ParseError, "expected [re, im], got " + v.dump());
}

std::vector<std::complex<double>> json_cycle(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array()) {
    throw SpectralError(ErrorCode::ParseError, std::string("parameter file needs an array \"") + key + "\"");
  }
  std::vector<std::complex<double>> out;
  for (const auto& v : doc.at(key)) out.push_back(json_complex(v));
  return out;
}

template <typename Enum, std::size_t N>
Enum enum_from_string(const std::string& s, const std::array<Enum, N>& all) {
  for (Enum e : all) {
    if (to_string(e) == s) return e;
  }
  throw SpectralError(ErrorCode::ParseError, "unknown label '" + s + "'");
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) throw SpectralError(ErrorCode::ParseError, "empty complex literal");
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n') {
      throw SpectralError(ErrorCode::ParseError, "whitespace in complex literal '" + std::string(text) + "'");
    }
  }
  if (text.back() != 'i') return {signed_real(text, text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // split at the last sign that is not the leading one and not part of an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, imaginary_coeff(body, text)};
  return {signed_real(body.substr(0, split), text), imaginary_coeff(body.substr(split), text)};
}

std::string format_complex(const std::complex<double>& z) {
  char buf[64];
  if (z.imag() == 0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

PeriodicBand<double> params_from_json(const nlohmann::json& doc) {
  return PeriodicBand<double>::create(json_cycle(doc, "r"), json_cycle(doc, "s"));
}

nlohmann::json params_to_json(const PeriodicBand<double>& band) {
  auto cycle = [](std::span<const std::complex<double>> values) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : values) arr.push_back({v.real(), v.imag()});
    return arr;
  };
  return {{"r", cycle(band.diagonal())}, {"s", cycle(band.subdiagonal())}};
}

PeriodicBand<double> load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpectralError(ErrorCode::ParseError, "cannot open parameter file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SpectralError(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return params_from_json(doc);
}

PeriodicBand<double> figure_params() {
  using C = std::complex<double>;
  return PeriodicBand<double>::create({C(1, -1), C(0, -1), C(-1.5, 0), C(0, -1)},
                                      {C(0, 1), C(1, 1), C(-2, 0), C(-1.5, 0), C(1, -1), C(-1, 0)});
}

nlohmann::json classification_to_json(const SpectrumClassification& c, double indicator) {
  nlohmann::json doc;
  doc["region"] = std::string(to_string(c.region));
  doc["fine"] = std::string(to_string(c.fine));
  doc["goldberg"] = std::string(to_string(c.goldberg));
  doc["indicator"] = indicator;
  return doc;
}

SpectrumClassification classification_from_json(const nlohmann::json& doc) {
  SpectrumClassification c;
  c.region = enum_from_string(doc.at("region").get<std::string>(),
                              std::array{Region::Regular, Region::Interior, Region::Boundary, Region::DiagonalValue});
  c.fine = enum_from_string(doc.at("fine").get<std::string>(),
                            std::array{FineSpectrum::None, FineSpectrum::Residual, FineSpectrum::Continuous});
  c.goldberg = enum_from_string(doc.at("goldberg").get<std::string>(),
                                std::array{Goldberg::NotApplicable, Goldberg::III1, Goldberg::III2,
                                           Goldberg::Undetermined});
  return c;
}

std::string grid_to_csv(const RegionGrid<double>& grid) {
  std::ostringstream out;
  out.precision(17);
  out << "re,im,value\n";
  for (std::size_t row = 0; row < grid.res_y; ++row) {
    for (std::size_t col = 0; col < grid.res_x; ++col) {
      const auto z = grid.cell_center(row, col);
      out << z.real() << ',' << z.imag() << ',' << grid.at(row, col) << '\n';
    }
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SpectralError(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SpectralError(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw SpectralError(ErrorCode::InvalidArgument, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace bandspec
