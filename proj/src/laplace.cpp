#include "orbproj/laplace.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace orbproj {

double alpha(Series series) { return series == Series::D ? -0.5 : 0.5; }

const char* series_name(Series series) {
  switch (series) {
    case Series::B: return "B";
    case Series::C: return "C";
    case Series::D: return "D";
  }
  return "?";
}

Series series_from_string(const std::string& s) {
  if (s == "B" || s == "b") return Series::B;
  if (s == "C" || s == "c") return Series::C;
  if (s == "D" || s == "d") return Series::D;
  throw std::invalid_argument("unknown series '" + s + "' (expected B, C or D)");
}

OrbitSpec::OrbitSpec(Series s, std::vector<double> coords)
    : series(s), n(static_cast<int>(coords.size())), x(std::move(coords)) {
  if (n < 1) throw std::invalid_argument("orbit needs at least one coordinate");
  double prev = 0.0;
  for (double xi : x) {
    if (!(xi > prev))
      throw std::invalid_argument(
          "orbit coordinates must be strictly increasing and strictly positive; "
          "perturb coincident or zero entries by a small epsilon");
    prev = xi;
  }
}

double f_alpha(Series series, double z) {
  if (series == Series::D) return std::cosh(z);
  if (z == 0.0) return 1.0;
  return std::sinh(z) / z;
}

double f_alpha_primitive(Series series, double z) {
  if (series == Series::D) return std::sinh(z);
  // integral of sinh(s)/s: term z^(2m+1) / ((2m+1) (2m+1)!)
  double term = z, sum = z;
  for (int m = 1; m < 200; ++m) {
    term *= z * z / ((2 * m) * (2 * m + 1));
    const double add = term / (2 * m + 1);
    sum += add;
    if (std::fabs(add) <= 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

double laplace_prefactor(Series series, int n) {
  if (n < 1) throw std::invalid_argument("laplace_prefactor: n must be positive");
  double p = 1.0;
  if (series == Series::D) {
    for (int j = 1; j < n; ++j) p *= factorial(2 * j);
  } else {
    for (int j = 1; j <= n; ++j) p *= factorial(2 * j - 1);
  }
  return p;
}

double a_coeff(Series series, int m) {
  if (m < 0) throw std::invalid_argument("a_coeff: negative index");
  const double ap1 = alpha(series) + 1.0;
  double p = 1.0;
  for (int j = 0; j < m; ++j) p *= 1.0 / (std::ldexp(1.0, 2 * j) * factorial(j) * pochhammer(ap1, j));
  return p;
}

double vandermonde_squares(std::span<const double> s) {
  double v = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) v *= s[j] * s[j] - s[i] * s[i];
  return v;
}

void require_generic_point(std::span<const double> t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) throw std::invalid_argument("degenerate evaluation point");
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] * t[i] == t[j] * t[j]) throw std::invalid_argument("degenerate evaluation point");
  }
}

double dn_ratio(Series series, std::span<const double> t, std::span<const double> x) {
  const int m = static_cast<int>(t.size());
  if (m < 1 || t.size() != x.size())
    throw std::invalid_argument("dn_ratio: argument lists must be nonempty and of equal length");
  require_generic_point(t);
  const double vt = vandermonde_squares(t);
  const double vx = vandermonde_squares(x);
  if (vt == 0.0 || vx == 0.0) throw std::invalid_argument("degenerate evaluation point");
  SquareMatrix mat(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mat(i, j) = f_alpha(series, t[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
  return determinant(std::move(mat)) / (vt * vx);
}

double orbital_laplace(const OrbitSpec& spec, std::span<const double> t) {
  if (static_cast<int>(t.size()) != spec.n)
    throw std::invalid_argument("orbital_laplace: T must have n entries");
  return laplace_prefactor(spec.series, spec.n) * dn_ratio(spec.series, t, spec.x);
}

double doubled_divided_difference(const RealFunction& f, std::span<const double> zpoints) {
  const std::size_t m = zpoints.size();
  if (m == 0) throw std::invalid_argument("doubled_divided_difference: empty point list");
  double prev = 0.0;
  for (double z : zpoints) {
    if (!(z > prev))
      throw std::invalid_argument(
          "doubled_divided_difference: points must be strictly increasing and positive");
    prev = z;
  }
  std::vector<double> knots(2 * m), values(2 * m);
  for (std::size_t r = 0; r < m; ++r) {
    knots[r] = -zpoints[m - 1 - r];
    knots[m + r] = zpoints[r];
  }
  for (std::size_t r = 0; r < 2 * m; ++r) values[r] = knots[r] * f(knots[r]);
  return divided_difference_values(knots, values);
}

double projected_dn_ratio(const OrbitSpec& spec, std::span<const double> tk) {
  const int n = spec.n;
  const int k = static_cast<int>(tk.size());
  if (k < 1 || k >= n)
    throw std::invalid_argument("projected_dn_ratio: need 1 <= |T| < n");
  require_generic_point(tk);
  const int q = n - k;

  SquareMatrix dd(k);
  for (int i = 0; i < k; ++i) {
    const double ti = tk[static_cast<std::size_t>(i)];
    const RealFunction fi = [&, ti](double z) { return f_alpha(spec.series, ti * z); };
    for (int j = 0; j < k; ++j) {
      const std::span<const double> window(spec.x.data() + j, static_cast<std::size_t>(q) + 1);
      dd(i, j) = doubled_divided_difference(fi, window);
    }
  }

  double band = 1.0;  // prod over pairs i < j with j - i <= q of (x_j^2 - x_i^2)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n && j - i <= q; ++j)
      band *= spec.x[static_cast<std::size_t>(j)] * spec.x[static_cast<std::size_t>(j)] -
              spec.x[static_cast<std::size_t>(i)] * spec.x[static_cast<std::size_t>(i)];

  double tpow = 1.0;
  for (double ti : tk) tpow *= std::pow(ti * ti, q);

  return a_coeff(spec.series, q) * band * determinant(std::move(dd)) /
         (vandermonde_squares(spec.x) * vandermonde_squares(tk) * tpow);
}

}  // namespace orbproj
