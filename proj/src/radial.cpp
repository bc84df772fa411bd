#include "orbproj/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace orbproj {

SeriesParams make_series_params(Series series, int n, int k) {
  if (n < 1 || k < 1 || k >= n)
    throw std::invalid_argument("projection index must satisfy k < n");
  SeriesParams p;
  p.series = series;
  p.n = n;
  p.k = k;
  const int q = n - k;
  if (series == Series::D) {
    p.kappa = 2.0 * q;
    p.c = double_factorial(2 * q - 1) / double_factorial(2 * n - 1);
    for (int i = 0; i < k; ++i) p.c *= binomial(2 * q + 2 * i + 1, 2 * i);
  } else {
    p.kappa = 0.0;
    p.c = double_factorial(2 * q) / double_factorial(2 * n);
    for (int i = 0; i < k; ++i) p.c *= binomial(2 * q + 2 * i + 2, 2 * i + 1);
  }
  return p;
}

double delta_M(const KnotVector& kv, double y, double kappa) {
  if (kv.order() < 4 || kv.order() % 2 != 0)
    throw std::invalid_argument("delta_M: knot vector must have even order >= 4");
  double v = -y * mspline_derivative(kv, y);
  if (kappa != 0.0) v += kappa * mspline_eval_stable(kv, y);
  return v;
}

RadialDensity::RadialDensity(OrbitSpec spec, int k) : spec_(std::move(spec)), k_(k) {
  const int n = spec_.n;
  if (k < 1 || k >= n) throw std::invalid_argument("projection index must satisfy k < n");
  q_ = n - k;
  if (2 * q_ + 2 > KnotVector::kMaxOrder)
    throw std::invalid_argument("n - k too large: spline order exceeds supported maximum");
  params_ = make_series_params(spec_.series, n, k);
  windows_.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) windows_.push_back(symmetric_knots(spec_.x, j, q_));
  denom_ = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + q_ + 1; j < n; ++j)
      denom_ *= spec_.x[static_cast<std::size_t>(j)] * spec_.x[static_cast<std::size_t>(j)] -
                spec_.x[static_cast<std::size_t>(i)] * spec_.x[static_cast<std::size_t>(i)];
  scale_ = std::ldexp(params_.c, k_) / denom_;
}

double RadialDensity::symmetric_density(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != k_)
    throw std::invalid_argument("density: point must have k coordinates");
  const double xmax = spec_.x.back();
  for (double yi : y)
    if (std::fabs(yi) > xmax) return 0.0;
  SquareMatrix m(k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j)
      m(i, j) = delta_M(windows_[static_cast<std::size_t>(j)], y[static_cast<std::size_t>(i)],
                        params_.kappa);
  double v = 1.0;
  for (int i = 0; i < k_; ++i)
    for (int j = i + 1; j < k_; ++j)
      v *= y[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)] -
           y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  return scale_ * determinant(std::move(m)) * v;
}

namespace {

std::vector<double> sorted_nonneg(std::span<const double> y) {
  std::vector<double> s(y.begin(), y.end());
  for (double yi : s)
    if (yi < 0.0) throw std::invalid_argument("density: coordinates must be nonnegative");
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

double RadialDensity::density(std::span<const double> y) const {
  return symmetric_density(sorted_nonneg(y));
}

double RadialDensity::density_wrt_vk(std::span<const double> y) const {
  const std::vector<double> s = sorted_nonneg(y);
  if (static_cast<int>(s.size()) != k_)
    throw std::invalid_argument("density: point must have k coordinates");
  const double xmax = spec_.x.back();
  for (double yi : s)
    if (yi > xmax) return 0.0;
  SquareMatrix m(k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j)
      m(i, j) = delta_M(windows_[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(i)],
                        params_.kappa);
  return scale_ * determinant(std::move(m));
}

std::vector<Interval> RadialDensity::support_box() const {
  return std::vector<Interval>(static_cast<std::size_t>(k_), Interval{0.0, spec_.x.back()});
}

std::vector<std::vector<double>> RadialDensity::quadrature_breaks() const {
  // The integrand is piecewise smooth with kinks on the hyperplanes y = x_j,
  // so the panels are aligned with the knots on every axis.
  std::vector<double> breaks;
  breaks.push_back(0.0);
  for (double xi : spec_.x) breaks.push_back(xi);
  return std::vector<std::vector<double>>(static_cast<std::size_t>(k_), breaks);
}

double RadialDensity::normalization(int npts_per_axis, Exec exec) const {
  const auto breaks = quadrature_breaks();
  const int panels = static_cast<int>(breaks.front().size()) - 1;
  const int npts = std::max(4, (npts_per_axis + panels - 1) / panels);
  const double integral = cube_integrate_panels(
      [this](std::span<const double> y) { return symmetric_density(y); }, breaks, npts, exec);
  return integral / factorial(k_);
}

double RadialDensity::projection_identity_residual(std::span<const double> tk, int npts_per_axis,
                                                   Exec exec) const {
  if (static_cast<int>(tk.size()) != k_)
    throw std::invalid_argument("projection identity: T must have k entries");
  require_generic_point(tk);

  const double lhs =
      laplace_prefactor(spec_.series, spec_.n) * projected_dn_ratio(spec_, tk);

  // Mixture side: integral over the chamber of the rank-k orbital transform
  // at Y against the density. The Vandermonde of Y cancels between the
  // transform's denominator and the density, leaving the smooth kernel
  // det[f(t_i y_l)] det[(Delta M)_j(y_l)].
  std::vector<double> t(tk.begin(), tk.end());
  const CubeFunction kernel = [this, &t](std::span<const double> y) {
    SquareMatrix mf(k_), md(k_);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) {
        mf(i, j) = f_alpha(spec_.series,
                           t[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]);
        md(i, j) = delta_M(windows_[static_cast<std::size_t>(j)], y[static_cast<std::size_t>(i)],
                           params_.kappa);
      }
    return determinant(std::move(mf)) * determinant(std::move(md));
  };

  const auto breaks = quadrature_breaks();
  const int panels = static_cast<int>(breaks.front().size()) - 1;
  const int npts = std::max(4, (npts_per_axis + panels - 1) / panels);
  const double integral = cube_integrate_panels(kernel, breaks, npts, exec);
  const double rhs = laplace_prefactor(spec_.series, k_) * scale_ * integral /
                     (vandermonde_squares(tk) * factorial(k_));
  return std::fabs(lhs - rhs);
}

RadialCdf::RadialCdf(const RadialDensity& rd, int npts_per_segment)
    : rd_(rd), npts_(npts_per_segment) {
  if (rd.k() != 1) throw std::invalid_argument("RadialCdf: only defined for k = 1");
  breaks_.push_back(0.0);
  for (double xi : rd.spec().x) breaks_.push_back(xi);
  cumulative_.resize(breaks_.size(), 0.0);
  for (std::size_t s = 0; s + 1 < breaks_.size(); ++s) {
    const double seg = gauss_legendre(
        [&](double y) { return rd_.symmetric_density(std::span<const double>(&y, 1)); },
        breaks_[s], breaks_[s + 1], npts_);
    cumulative_[s + 1] = cumulative_[s] + seg;
  }
}

double RadialCdf::operator()(double y) const {
  if (y <= 0.0) return 0.0;
  if (y >= breaks_.back()) return 1.0;
  std::size_t s = 0;
  while (s + 2 < breaks_.size() && y > breaks_[s + 1]) ++s;
  double value = cumulative_[s];
  if (y > breaks_[s]) {
    value += gauss_legendre(
        [&](double t) { return rd_.symmetric_density(std::span<const double>(&t, 1)); },
        breaks_[s], y, npts_);
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace orbproj
