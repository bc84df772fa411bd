#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "orbproj/cli.hpp"

namespace {

std::vector<double> parse_csv_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number in --x list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--x list is empty");
  return out;
}

struct Flags {
  std::string series, x, suite, out, config;
  int n = 0, k = 0, grid = 0, npts = 0;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--series", f.series, "series: B (SO(2n+1)), C (Sp(2n)) or D (O(2n))");
  cmd->add_option("--n", f.n, "orbit rank n");
  cmd->add_option("--k", f.k, "projection rank k (k < n)");
  cmd->add_option("--x", f.x, "orbit coordinates, comma separated (e.g. 1,2)");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--config", f.config, "JSON config file (flags override its values)");
}

orbproj::cli::RunConfig merge(const CLI::App* cmd, const Flags& f) {
  orbproj::cli::RunConfig cfg;
  if (cmd->count("--config") > 0) orbproj::cli::apply_config_file(cfg, f.config);
  if (cmd->count("--series") > 0) cfg.series = f.series;
  if (cmd->count("--n") > 0) cfg.n = f.n;
  if (cmd->count("--k") > 0) cfg.k = f.k;
  if (cmd->count("--x") > 0) cfg.x = parse_csv_list(f.x);
  if (cmd->count("--seed") > 0) cfg.seed = f.seed;
  if (cmd->count("--out") > 0) cfg.out = f.out;
  if (cmd->count("--N") > 0) cfg.samples = f.samples;
  if (cmd->count("--grid") > 0) cfg.grid = f.grid;
  if (cmd->count("--npts") > 0) cfg.npts = f.npts;
  if (cmd->count("--suite") > 0) cfg.suite = f.suite;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial densities of corner-projected invariant measures for the compact "
               "classical groups, with a Monte Carlo cross-check"};
  app.require_subcommand(1);

  Flags fd, fs, fv, fc;

  CLI::App* density = app.add_subcommand("density", "tabulate the density over its support box");
  add_common(density, fd);
  density->add_option("--grid", fd.grid, "grid points per axis");

  CLI::App* sample = app.add_subcommand("sample", "draw projected spectra by Haar conjugation");
  add_common(sample, fs);
  sample->add_option("--N", fs.samples, "number of draws");

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  add_common(verify, fv);
  verify->add_option("--suite", fv.suite,
                     "one of: splines, lemma2, lemma1, normalization, projection-identity, "
                     "montecarlo");
  verify->add_option("--npts", fv.npts, "quadrature points per axis");
  verify->add_option("--N", fv.samples, "monte carlo sample count");

  CLI::App* constants = app.add_subcommand("constants", "emit the closed-form constants as JSON");
  add_common(constants, fc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : orbproj::cli::exit_usage;
  }

  try {
    if (density->parsed()) return orbproj::cli::cmd_density(merge(density, fd));
    if (sample->parsed()) return orbproj::cli::cmd_sample(merge(sample, fs));
    if (verify->parsed()) return orbproj::cli::cmd_verify(merge(verify, fv));
    if (constants->parsed()) return orbproj::cli::cmd_constants(merge(constants, fc));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return orbproj::cli::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return orbproj::cli::exit_io;
  }
  return orbproj::cli::exit_usage;
}
