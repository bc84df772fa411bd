#include "orbproj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace orbproj {

namespace {

void check_distinct(std::span<const double> knots) {
  for (std::size_t i = 0; i < knots.size(); ++i)
    for (std::size_t j = i + 1; j < knots.size(); ++j)
      if (knots[i] == knots[j]) throw std::invalid_argument("coincident knots unsupported");
}

}  // namespace

double divided_difference_values(std::span<const double> knots, std::span<const double> values) {
  if (knots.empty() || knots.size() != values.size())
    throw std::invalid_argument("divided_difference: knot/value size mismatch");
  check_distinct(knots);
  std::vector<double> d(values.begin(), values.end());
  const std::size_t n = d.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      d[i] = (d[i] - d[i + 1]) / (knots[i] - knots[i + level]);
  return d[0];
}

double divided_difference(const RealFunction& f, std::span<const double> knots) {
  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) values[i] = f(knots[i]);
  return divided_difference_values(knots, values);
}

double pochhammer(double a, int m) {
  if (m < 0) throw std::invalid_argument("pochhammer: negative order");
  double p = 1.0;
  for (int j = 0; j < m; ++j) p *= a + j;
  return p;
}

double double_factorial(int m) {
  if (m < -1) throw std::invalid_argument("double_factorial: negative argument");
  double p = 1.0;
  for (int j = m; j >= 2; j -= 2) p *= j;
  return p;
}

double binomial(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("binomial: negative argument");
  if (b > a) return 0.0;
  b = std::min(b, a - b);
  double p = 1.0;
  for (int j = 1; j <= b; ++j) p = p * (a - b + j) / j;
  return std::round(p);
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  double p = 1.0;
  for (int j = 2; j <= n; ++j) p *= j;
  return p;
}

double determinant(SquareMatrix m) {
  const int n = m.order;
  if (n < 1 || static_cast<std::size_t>(n) * n != m.a.size())
    throw std::invalid_argument("determinant: malformed matrix");
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(m(r, col)) > std::fabs(m(pivot, col))) pivot = r;
    if (m(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double mult = m(r, col) / m(col, col);
      for (int c = col; c < n; ++c) m(r, c) -= mult * m(col, c);
    }
  }
  return det;
}

namespace {

GaussLegendreRule compute_rule(int npts) {
  GaussLegendreRule rule;
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  const int half = (npts + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < npts; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
      }
      pp = npts * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[npts - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[npts - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, compute_rule(npts)).first;
  return it->second;
}

double gauss_legendre(const RealFunction& f, double a, double b, int npts) {
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: empty interval");
  const GaussLegendreRule& rule = gauss_legendre_rule(npts);
  const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < npts; ++i) sum += rule.weights[i] * f(mid + halfw * rule.nodes[i]);
  return halfw * sum;
}

double gauss_legendre_segments(const RealFunction& f, std::span<const double> breaks, int npts) {
  if (breaks.size() < 2) throw std::invalid_argument("gauss_legendre_segments: need two breaks");
  double sum = 0.0;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
    sum += gauss_legendre(f, breaks[s], breaks[s + 1], npts);
  return sum;
}

namespace {

// One flattened axis of quadrature points: panels x Gauss nodes.
struct AxisNodes {
  std::vector<double> y;
  std::vector<double> w;
};

AxisNodes flatten_axis(std::span<const double> breaks, int npts) {
  const GaussLegendreRule& rule = gauss_legendre_rule(npts);
  AxisNodes axis;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    if (!(a < b)) throw std::invalid_argument("cube_integrate: panel edges not increasing");
    const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
    for (int i = 0; i < npts; ++i) {
      axis.y.push_back(mid + halfw * rule.nodes[i]);
      axis.w.push_back(halfw * rule.weights[i]);
    }
  }
  return axis;
}

double tensor_integrate(const CubeFunction& f, const std::vector<AxisNodes>& axes, Exec exec) {
  const int dim = static_cast<int>(axes.size());
  std::int64_t total = 1;
  for (const AxisNodes& ax : axes) total *= static_cast<std::int64_t>(ax.y.size());

  // Fixed-size chunks keep the reduction order independent of thread count.
  const std::int64_t chunk = 4096;
  const std::int64_t nchunks = (total + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);

  const bool par = (exec == Exec::parallel);
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t ci = 0; ci < nchunks; ++ci) {
    std::vector<double> y(dim);
    double s = 0.0;
    const std::int64_t lo = ci * chunk, hi = std::min(total, lo + chunk);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      std::int64_t rem = idx;
      double w = 1.0;
      for (int d = dim - 1; d >= 0; --d) {
        const std::int64_t nd = static_cast<std::int64_t>(axes[d].y.size());
        const std::int64_t id = rem % nd;
        rem /= nd;
        y[d] = axes[d].y[static_cast<std::size_t>(id)];
        w *= axes[d].w[static_cast<std::size_t>(id)];
      }
      s += w * f(y);
    }
    partial[static_cast<std::size_t>(ci)] = s;
  }

  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace

double cube_integrate(const CubeFunction& f, std::span<const Interval> box, int npts_per_axis,
                      Exec exec) {
  if (box.empty()) throw std::invalid_argument("cube_integrate: need at least one axis");
  std::vector<AxisNodes> axes;
  axes.reserve(box.size());
  for (const Interval& iv : box) {
    const double edges[2] = {iv.lo, iv.hi};
    axes.push_back(flatten_axis(edges, npts_per_axis));
  }
  return tensor_integrate(f, axes, exec);
}

double cube_integrate_panels(const CubeFunction& f,
                             const std::vector<std::vector<double>>& axis_breaks,
                             int npts_per_panel, Exec exec) {
  if (axis_breaks.empty()) throw std::invalid_argument("cube_integrate: need at least one axis");
  std::vector<AxisNodes> axes;
  axes.reserve(axis_breaks.size());
  for (const std::vector<double>& breaks : axis_breaks)
    axes.push_back(flatten_axis(breaks, npts_per_panel));
  return tensor_integrate(f, axes, exec);
}

}  // namespace orbproj
