#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bandspec/io.hpp"
#include "oracles.hpp"

using namespace bandspec;
using bandspec::testing::C;

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("1-2.5i"), C(1, -2.5));
  EXPECT_EQ(parse_complex("-1.5"), C(-1.5, 0));
  EXPECT_EQ(parse_complex("3i"), C(0, 3));
  EXPECT_EQ(parse_complex("i"), C(0, 1));
  EXPECT_EQ(parse_complex("-i"), C(0, -1));
  EXPECT_EQ(parse_complex("+2+i"), C(2, 1));
  EXPECT_EQ(parse_complex("1e-3-2E+2i"), C(1e-3, -200));
  EXPECT_EQ(parse_complex("0.5"), C(0.5, 0));
}

TEST(ParseComplex, Errors) {
  for (const char* bad : {"", "1 - 2i", "abc", "1+", "i2", "1e", "--1", "1..2", "2j"}) {
    try {
      parse_complex(bad);
      FAIL() << bad;
    } catch (const SpectralError& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(FormatComplex, RoundTrips) {
  for (const C z : {C(1, -2.5), C(-1.5, 0), C(0, 1), C(0.1, 1e-300), C(-3e7, 0.3)})
    EXPECT_EQ(parse_complex(format_complex(z)), z);
}

TEST(Params, JsonRoundTrip) {
  const auto band = figure_params();
  const auto back = params_from_json(params_to_json(band));
  EXPECT_EQ(bandspec::testing::cycle(back.diagonal()), bandspec::testing::cycle(band.diagonal()));
  EXPECT_EQ(bandspec::testing::cycle(back.subdiagonal()), bandspec::testing::cycle(band.subdiagonal()));

  const auto mixed = params_from_json(nlohmann::json::parse(R"({"r": [2, "1-i"], "s": [[0.5, 0]]})"));
  EXPECT_EQ(mixed.diagonal()[1], C(1, -1));
  EXPECT_EQ(mixed.subdiagonal()[0], C(0.5, 0));

  EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"r": [1]})")), SpectralError);
  EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"r": [[1, 2, 3]], "s": [1]})")), SpectralError);
  try {
    params_from_json(nlohmann::json::parse(R"({"r": [1], "s": [0]})"));
    FAIL();
  } catch (const SpectralError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroSubdiagonal);
  }
}

TEST(Params, LoadFile) {
  const auto dir = std::filesystem::temp_directory_path() / "bandspec_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "p.json";
  write_file_atomic(path, R"({"r": [[1, -1], [0, -1], [-1.5, 0], [0, -1]],
                              "s": [[0, 1], [1, 1], [-2, 0], [-1.5, 0], [1, -1], [-1, 0]]})");
  const auto band = load_params(path);
  EXPECT_EQ(band.joint_period(), 12u);
  EXPECT_EQ(bandspec::testing::cycle(band.subdiagonal()),
            bandspec::testing::cycle(bandspec::testing::figure_band().subdiagonal()));
  EXPECT_FALSE(std::filesystem::exists(dir / "p.json.tmp"));
  EXPECT_THROW(load_params(dir / "missing.json"), SpectralError);
  std::filesystem::remove_all(dir);
}

TEST(Classification, JsonRoundTripIdempotent) {
  for (Region region : {Region::Regular, Region::Interior, Region::Boundary, Region::DiagonalValue}) {
    const auto c = SpectrumClassification::from_region(region);
    const auto doc = classification_to_json(c, -0.25);
    EXPECT_EQ(classification_from_json(doc), c);
    EXPECT_EQ(classification_to_json(classification_from_json(doc), -0.25), doc);
    EXPECT_EQ(doc.at("indicator").get<double>(), -0.25);
  }
  EXPECT_THROW(classification_from_json(nlohmann::json::parse(R"({"region":"X","fine":"None","goldberg":"III1"})")),
               SpectralError);
}

TEST(GridCsv, HeaderAndOrder) {
  RegionGrid<double> grid(Window<double>{0, 2, 0, 1}, 2, 2);
  grid.values << 1, 2, 3, 4;
  std::istringstream in(grid_to_csv(grid));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "re,im,value");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 4u);
  // bottom row first, left to right
  EXPECT_EQ(rows[0], "0.5,0.25,1");
  EXPECT_EQ(rows[1], "1.5,0.25,2");
  EXPECT_EQ(rows[3], "1.5,0.75,4");
}
