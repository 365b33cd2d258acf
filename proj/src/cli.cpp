#include "bandspec/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "bandspec/acceptance.hpp"
#include "bandspec/finite_section.hpp"
#include "bandspec/io.hpp"
#include "bandspec/region.hpp"
#include "bandspec/render.hpp"
#include "bandspec/resolvent.hpp"
#include "bandspec/spectrum.hpp"

namespace bandspec::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json complex_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

Window<double> window_from(const std::vector<double>& w) {
  if (w.empty()) return figure_window<double>();
  if (w.size() != 4) throw UsageError("--window expects four values: re_min re_max im_min im_max");
  Window<double> out{w[0], w[1], w[2], w[3]};
  try {
    out.validate();
  } catch (const SpectralError& e) {
    throw UsageError(std::string("--window: ") + e.what());
  }
  return out;
}

std::complex<double> lambda_from(const std::string& text) {
  try {
    return parse_complex(text);
  } catch (const SpectralError& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
}

std::string diagonal_message(const PeriodicBand<double>& band, const std::complex<double>& lambda) {
  const auto [idx, dist] = nearest_diagonal(band, lambda);
  return "lambda = " + format_complex(lambda) + " lies on the diagonal set (nearest r_" + std::to_string(idx + 1) +
         " = " + format_complex(band.diagonal()[idx]) + ", distance " + std::to_string(dist) + ")";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of periodic two-band lower-triangular operators on c0", "bandspec"};
  app.require_subcommand(1);

  std::string params_path;
  app.add_option("-p,--params", params_path, "parameter file {\"r\": [[re, im], ...], \"s\": [...]}; defaults to the built-in example");

  std::string lambda_text;
  double tol = kDefaultTolerance;
  auto* classify_cmd = app.add_subcommand("classify", "classify one point of the complex plane");
  classify_cmd->add_option("-l,--lambda", lambda_text, "complex point, e.g. 1-2.5i")->required();
  classify_cmd->add_option("--tol", tol, "classification tolerance")->check(CLI::PositiveNumber);

  auto* resolvent_cmd = app.add_subcommand("resolvent", "closed-form resolvent queries");
  resolvent_cmd->add_option("-l,--lambda", lambda_text, "complex point")->required();
  std::vector<std::size_t> entry_nk;
  std::size_t row = 0;
  auto* entry_opt = resolvent_cmd->add_option("--entry", entry_nk, "entry z_nk (row n, column k)")->expected(2);
  auto* row_opt = resolvent_cmd->add_option("--row", row, "absolute row sum of row n");
  auto* sup_flag = resolvent_cmd->add_flag("--sup", "supremum of the absolute row sums");
  entry_opt->excludes(row_opt)->excludes(sup_flag);
  row_opt->excludes(sup_flag);

  app.add_subcommand("norm", "operator norm bound and attained section norm");

  std::vector<double> window_values;
  std::size_t res = 0;
  std::string out_path;
  std::string format_name = "pgm";
  auto* region_cmd = app.add_subcommand("region", "render the spectral region");
  region_cmd->add_option("--window", window_values, "re_min re_max im_min im_max")->expected(4);
  region_cmd->add_option("--res", res, "grid resolution per axis")->check(CLI::PositiveNumber);
  region_cmd->add_option("-o,--out", out_path, "output file")->required();
  region_cmd->add_option("--format", format_name, "pgm or svg");

  std::size_t size = 120;
  double cap = kDefaultNormCap;
  auto* pseudo_cmd = app.add_subcommand("pseudo", "finite-section resolvent norms over a grid (CSV)");
  pseudo_cmd->add_option("--window", window_values, "re_min re_max im_min im_max")->expected(4);
  pseudo_cmd->add_option("--res", res, "grid resolution per axis (>= 2)");
  pseudo_cmd->add_option("--size", size, "section size N")->check(CLI::PositiveNumber);
  pseudo_cmd->add_option("--cap", cap, "norm ceiling")->check(CLI::PositiveNumber);
  pseudo_cmd->add_option("-o,--out", out_path, "output CSV file")->required();

  std::uint64_t seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--seed", seed, "64-bit seed for all randomized checks");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();  // program name
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) {
      bool ok = true;
      for (const auto& r : run_acceptance(seed)) {
        out << format_result(r) << '\n';
        ok = ok && r.passed;
      }
      out << (ok ? "all criteria passed" : "verification FAILED") << std::endl;
      return ok ? kExitOk : kExitVerifyFailed;
    }

    // without a parameter file, use the built-in (l, l') = (4, 6) example
    const auto band = params_path.empty() ? figure_params() : load_params(params_path);

    if (classify_cmd->parsed()) {
      const auto lambda = lambda_from(lambda_text);
      out << classification_to_json(classify(band, lambda, tol), spectral_indicator(band, lambda)).dump() << '\n';
      return kExitOk;
    }

    if (resolvent_cmd->parsed()) {
      const auto lambda = lambda_from(lambda_text);
      if (nearest_diagonal(band, lambda).second == 0.0) {
        err << "error: LambdaOnDiagonal: " << diagonal_message(band, lambda) << '\n';
        return kExitUsage;
      }
      const Resolvent<double> q(band, lambda);
      json doc{{"lambda", complex_json(lambda)}};
      if (!entry_nk.empty()) {
        doc["n"] = entry_nk[0];
        doc["k"] = entry_nk[1];
        doc["value"] = complex_json(q.entry(entry_nk[0], entry_nk[1]));
      } else if (*row_opt) {
        doc["row"] = row;
        doc["row_sum"] = q.row_sum(row);
      } else if (*sup_flag) {
        const auto sup = q.sup_norm();
        doc["block_ratio"] = sup.block_ratio;
        doc["divergent"] = sup.divergent();
        doc["sup_norm"] = sup.value ? json(*sup.value) : json(nullptr);
      } else {
        throw UsageError("resolvent needs one of --entry n k, --row n, --sup");
      }
      out << doc.dump() << '\n';
      return kExitOk;
    }

    if (app.got_subcommand("norm")) {
      const std::size_t n = 4 * band.joint_period();
      json doc{{"norm_bound", norm_bound(band)}, {"section_size", n}, {"section_norm", inf_norm(truncation(band, n))}};
      out << doc.dump() << '\n';
      return kExitOk;
    }

    if (region_cmd->parsed()) {
      ImageFormat format;
      try {
        format = parse_image_format(format_name);
      } catch (const SpectralError& e) {
        throw UsageError(std::string("--format: ") + e.what());
      }
      const auto window = window_from(window_values);
      const std::size_t r = res == 0 ? 600 : res;
      const auto grid = sample_indicator(band, window, r, r);
      const auto contours = extract_contour(grid, 0.0);
      RenderOptions options;
      options.markers.assign(band.diagonal().begin(), band.diagonal().end());
      write_file_atomic(out_path, render(grid, contours, format, options));
      out << json{{"out", out_path}, {"res", r}, {"contours", contours.polylines.size()}}.dump() << '\n';
      return kExitOk;
    }

    if (pseudo_cmd->parsed()) {
      const auto window = window_from(window_values);
      const std::size_t r = res == 0 ? 60 : res;
      if (r < 2) throw UsageError("--res must be at least 2");
      const auto grid = pseudospectrum_grid(band, window, r, size, cap);
      write_file_atomic(out_path, grid_to_csv(grid));
      out << json{{"out", out_path}, {"res", r}, {"size", size}}.dump() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpectralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bandspec::cli
