#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbproj/laplace.hpp"

namespace orbproj::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_usage = 2,
  exit_io = 3,
};

/// Run configuration: accepted both as flags and as a JSON config file
/// (flags override the file).
struct RunConfig {
  std::string series = "B";
  int n = 2;
  int k = 1;
  std::vector<double> x = {1.0, 2.0};
  std::uint64_t seed = 1;
  std::int64_t samples = 100000;
  int grid = 200;
  int npts = 64;
  std::string suite;
  std::string out;
};

/// Merge values from a JSON config file into cfg (only keys present in the
/// file are applied). Throws std::invalid_argument on malformed content and
/// std::runtime_error when the file cannot be read.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Tabulates the density on a grid over the support box and writes a CSV
/// (columns y_1..y_k, density, plus a cdf column when k = 1).
int cmd_density(const RunConfig& cfg);

/// Draws a sample batch and writes the CSV plus its JSON sidecar.
int cmd_sample(const RunConfig& cfg);

/// Runs one named verification suite (splines, lemma2, lemma1,
/// normalization, projection-identity, montecarlo) and writes a JSON report
/// {suite, cases: [{name, residual, tolerance, pass}]}. Returns 0 only if
/// every case passes.
int cmd_verify(const RunConfig& cfg);

/// Emits the closed-form constants {kappa, c, alpha, a_coeffs} for the
/// configured (series, n, k) as JSON.
int cmd_constants(const RunConfig& cfg);

}  // namespace orbproj::cli
