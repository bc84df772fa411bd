#include "orbproj/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "orbproj/montecarlo.hpp"
#include "orbproj/radial.hpp"
#include "orbproj/splines.hpp"

namespace orbproj::cli {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

OrbitSpec make_spec(const RunConfig& cfg) {
  if (static_cast<int>(cfg.x.size()) != cfg.n)
    throw std::invalid_argument("--x must list exactly n coordinates");
  return OrbitSpec(series_from_string(cfg.series), cfg.x);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path);
}

// Two fixed generic evaluation points per k, kept inside the quadrature
// comfort zone |T| <= 2.
std::vector<std::vector<double>> generic_tk(int k) {
  std::vector<double> t1, t2;
  for (int i = 0; i < k; ++i) {
    t1.push_back(0.35 + 0.30 * i);
    t2.push_back(0.50 + 0.25 * i);
  }
  return {t1, t2};
}

struct CaseResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

int report_cases(const RunConfig& cfg, const std::string& suite,
                 const std::vector<CaseResult>& cases) {
  nlohmann::json j;
  j["suite"] = suite;
  j["cases"] = nlohmann::json::array();
  bool all_pass = true;
  for (const CaseResult& c : cases) {
    j["cases"].push_back({{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty())
    std::cout << text;
  else
    write_text_file(cfg.out, text);
  return all_pass ? exit_ok : exit_verification_failed;
}

CaseResult make_case(std::string name, double residual, double tolerance) {
  CaseResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = residual <= tolerance;
  return c;
}

KnotVector random_knots(SplitRng& rng, int order) {
  std::vector<double> t(static_cast<std::size_t>(order));
  while (true) {
    for (double& v : t) v = -3.0 + 6.0 * rng.uniform01();
    std::sort(t.begin(), t.end());
    double gap = 1e9;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) gap = std::min(gap, t[i + 1] - t[i]);
    if (gap > 5e-2) break;
  }
  return KnotVector(t);
}

std::vector<CaseResult> suite_splines(const RunConfig& cfg) {
  std::vector<CaseResult> cases;
  SplitRng rng = SplitRng::stream(cfg.seed, 0x5154);
  for (int order = 2; order <= 8; ++order) {
    const KnotVector kv = random_knots(rng, order);
    const double r = hermite_genocchi_residual([](double t) { return std::exp(t); },
                                               [](double t) { return std::exp(t); }, kv, 32);
    cases.push_back(make_case("hermite-genocchi exp order " + std::to_string(order),
                              std::fabs(r), 1e-9));
  }
  for (int i = 0; i < 10; ++i) {
    const int order = 2 + static_cast<int>(rng.next_u64() % 9);
    const KnotVector kv = random_knots(rng, order);
    const double mass = gauss_legendre_segments(
        [&](double t) { return mspline_eval_stable(kv, t); }, kv.knots(), 32);
    cases.push_back(
        make_case("unit mass order " + std::to_string(order) + " case " + std::to_string(i),
                  std::fabs(mass - 1.0), 1e-10));
  }
  return cases;
}

std::vector<CaseResult> suite_lemma2(const RunConfig& cfg) {
  std::vector<CaseResult> cases;
  SplitRng rng = SplitRng::stream(cfg.seed, 0x1e2);
  for (int i = 0; i < 20; ++i) {
    const int kind = static_cast<int>(rng.next_u64() % 3);
    RealFunction f;
    std::string fname;
    if (kind == 0) {
      const double c0 = rng.uniform01(), c2 = rng.uniform01(), c4 = rng.uniform01();
      f = [c0, c2, c4](double z) { return c0 + c2 * z * z + c4 * z * z * z * z; };
      fname = "even quartic";
    } else if (kind == 1) {
      f = [](double z) { return std::cosh(z); };
      fname = "cosh";
    } else {
      f = [](double z) { return z == 0.0 ? 1.0 : std::sinh(z) / z; };
      fname = "sinh(z)/z";
    }
    const int m = 1 + static_cast<int>(rng.next_u64() % 5);
    std::vector<double> z(static_cast<std::size_t>(m));
    double base = 0.2 + rng.uniform01();
    for (double& v : z) {
      v = base;
      base += 0.3 + rng.uniform01();
    }
    const double doubled = doubled_divided_difference(f, z);
    std::vector<double> squares(z.size());
    for (std::size_t r = 0; r < z.size(); ++r) squares[r] = z[r] * z[r];
    const double direct =
        divided_difference([&](double y) { return f(std::sqrt(y)); }, squares);
    const double scale = std::max({1e-30, std::fabs(doubled), std::fabs(direct)});
    cases.push_back(make_case("case " + std::to_string(i) + " " + fname + " m=" +
                                  std::to_string(m),
                              std::fabs(doubled - direct) / scale, 1e-10));
  }
  return cases;
}

double richardson_padded_dn(const OrbitSpec& spec, std::span<const double> tk) {
  const int q = spec.n - static_cast<int>(tk.size());
  const auto padded = [&](double eps) {
    std::vector<double> t(tk.begin(), tk.end());
    for (int r = 1; r <= q; ++r) t.push_back(eps * r);
    return dn_ratio(spec.series, t, spec.x);
  };
  const double e1 = 1e-3, e2 = 1e-4;
  const double v1 = padded(e1), v2 = padded(e2);
  return (e1 * e1 * v2 - e2 * e2 * v1) / (e1 * e1 - e2 * e2);
}

std::vector<CaseResult> suite_lemma1(const RunConfig& cfg) {
  std::vector<CaseResult> cases;
  const OrbitSpec spec = make_spec(cfg);
  for (int k = 1; k < spec.n; ++k) {
    for (const std::vector<double>& tk : generic_tk(k)) {
      const double reduced = projected_dn_ratio(spec, tk);
      const double limit = richardson_padded_dn(spec, tk);
      const double rel = std::fabs(reduced - limit) / std::max(1e-300, std::fabs(limit));
      std::ostringstream name;
      name << series_name(spec.series) << " n=" << spec.n << " k=" << k << " T=(";
      for (std::size_t i = 0; i < tk.size(); ++i) name << (i ? "," : "") << tk[i];
      name << ")";
      cases.push_back(make_case(name.str(), rel, 1e-4));
    }
  }
  return cases;
}

std::vector<CaseResult> suite_normalization(const RunConfig& cfg) {
  const RadialDensity rd(make_spec(cfg), cfg.k);
  const double mass = rd.normalization(cfg.npts);
  std::ostringstream name;
  name << series_name(rd.spec().series) << " n=" << cfg.n << " k=" << cfg.k;
  return {make_case(name.str(), std::fabs(mass - 1.0), 1e-4)};
}

std::vector<CaseResult> suite_projection_identity(const RunConfig& cfg) {
  std::vector<CaseResult> cases;
  const RadialDensity rd(make_spec(cfg), cfg.k);
  for (const std::vector<double>& tk : generic_tk(cfg.k)) {
    const double r = rd.projection_identity_residual(tk, cfg.npts);
    std::ostringstream name;
    name << series_name(rd.spec().series) << " n=" << cfg.n << " k=" << cfg.k << " T=(";
    for (std::size_t i = 0; i < tk.size(); ++i) name << (i ? "," : "") << tk[i];
    name << ")";
    cases.push_back(make_case(name.str(), r, 1e-3));
  }
  return cases;
}

std::vector<CaseResult> suite_montecarlo(const RunConfig& cfg) {
  std::vector<CaseResult> cases;
  const OrbitSpec spec = make_spec(cfg);

  std::vector<double> t;
  for (int i = 0; i < spec.n; ++i) t.push_back((0.25 + 0.2 * i) / std::sqrt(spec.n));
  const McEstimate est = mc_orbital_laplace(spec, t, cfg.samples, cfg.seed);
  const double exact = orbital_laplace(spec, t);
  cases.push_back(
      make_case("orbital transform vs monte carlo", std::fabs(est.value - exact),
                3.0 * est.std_error));

  if (cfg.k == 1) {
    const RadialDensity rd(spec, 1);
    const RadialCdf cdf(rd);
    SampleBatch batch = sample_projected_spectrum(spec, 1, cfg.samples, cfg.seed);
    std::sort(batch.samples.begin(), batch.samples.end());
    const double d = ks_statistic(batch.samples, [&](double y) { return cdf(y); });
    cases.push_back(make_case("kolmogorov-smirnov k=1", d,
                              1.63 / std::sqrt(static_cast<double>(cfg.samples))));
  }
  return cases;
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed config file: " + std::string(e.what()));
  }
  try {
    if (j.contains("series")) cfg.series = j["series"].get<std::string>();
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("k")) cfg.k = j["k"].get<int>();
    if (j.contains("x")) cfg.x = j["x"].get<std::vector<double>>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("N")) cfg.samples = j["N"].get<std::int64_t>();
    if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
    if (j.contains("npts")) cfg.npts = j["npts"].get<int>();
    if (j.contains("suite")) cfg.suite = j["suite"].get<std::string>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad config value: " + std::string(e.what()));
  }
}

int cmd_density(const RunConfig& cfg) {
  try {
    const RadialDensity rd(make_spec(cfg), cfg.k);
    if (cfg.grid < 2) throw std::invalid_argument("--grid must be at least 2");
    const int g = cfg.grid;
    double rows_d = 1.0;
    for (int d = 0; d < cfg.k; ++d) rows_d *= g;
    if (rows_d > 4e6)
      throw std::invalid_argument("grid^k too large; reduce --grid");
    const std::int64_t rows = static_cast<std::int64_t>(rows_d);
    const double xmax = rd.spec().x.back();
    const double step = xmax / (g - 1);

    std::vector<double> density(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      std::vector<double> y(static_cast<std::size_t>(cfg.k));
      std::int64_t rem = r;
      for (int d = cfg.k - 1; d >= 0; --d) {
        y[static_cast<std::size_t>(d)] = step * static_cast<double>(rem % g);
        rem /= g;
      }
      density[static_cast<std::size_t>(r)] = rd.density(y);
    }

    std::vector<double> cdf_col;
    if (cfg.k == 1) {
      const RadialCdf cdf(rd);
      cdf_col.resize(static_cast<std::size_t>(rows));
      for (std::int64_t r = 0; r < rows; ++r)
        cdf_col[static_cast<std::size_t>(r)] = cdf(step * static_cast<double>(r));
    }

    std::ostringstream os;
    for (std::int64_t r = 0; r < rows; ++r) {
      std::int64_t rem = r;
      std::vector<double> y(static_cast<std::size_t>(cfg.k));
      for (int d = cfg.k - 1; d >= 0; --d) {
        y[static_cast<std::size_t>(d)] = step * static_cast<double>(rem % g);
        rem /= g;
      }
      for (int d = 0; d < cfg.k; ++d) os << format_double(y[static_cast<std::size_t>(d)]) << ',';
      os << format_double(density[static_cast<std::size_t>(r)]);
      if (cfg.k == 1) os << ',' << format_double(cdf_col[static_cast<std::size_t>(r)]);
      os << '\n';
    }
    write_text_file(cfg.out.empty() ? "density.csv" : cfg.out, os.str());
    return exit_ok;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
}

int cmd_sample(const RunConfig& cfg) {
  try {
    const OrbitSpec spec = make_spec(cfg);
    const SampleBatch batch =
        sample_projected_spectrum(spec, cfg.k, cfg.samples, cfg.seed);
    write_sample_files(batch, cfg.out.empty() ? "samples.csv" : cfg.out);
    return exit_ok;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<CaseResult> cases;
  try {
    if (cfg.suite == "splines")
      cases = suite_splines(cfg);
    else if (cfg.suite == "lemma2")
      cases = suite_lemma2(cfg);
    else if (cfg.suite == "lemma1")
      cases = suite_lemma1(cfg);
    else if (cfg.suite == "normalization")
      cases = suite_normalization(cfg);
    else if (cfg.suite == "projection-identity")
      cases = suite_projection_identity(cfg);
    else if (cfg.suite == "montecarlo")
      cases = suite_montecarlo(cfg);
    else {
      std::cerr << "error: unknown suite '" << cfg.suite
                << "' (expected splines, lemma2, lemma1, normalization, "
                   "projection-identity or montecarlo)\n";
      return exit_usage;
    }
    return report_cases(cfg, cfg.suite, cases);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
}

int cmd_constants(const RunConfig& cfg) {
  try {
    const Series series = series_from_string(cfg.series);
    const SeriesParams p = make_series_params(series, cfg.n, cfg.k);
    nlohmann::json j;
    j["series"] = series_name(series);
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["kappa"] = p.kappa;
    j["c"] = p.c;
    j["alpha"] = alpha(series);
    std::vector<double> a;
    for (int m = 0; m <= cfg.n - cfg.k; ++m) a.push_back(a_coeff(series, m));
    j["a_coeffs"] = a;
    const std::string text = j.dump(2) + "\n";
    if (cfg.out.empty())
      std::cout << text;
    else
      write_text_file(cfg.out, text);
    return exit_ok;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
}

}  // namespace orbproj::cli
