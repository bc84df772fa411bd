#include "orbproj/splines.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace orbproj {

KnotVector::KnotVector(std::vector<double> knots) : knots_(std::move(knots)) {
  const int n = static_cast<int>(knots_.size());
  if (n < 2 || n > kMaxOrder) throw std::invalid_argument("spline order out of supported range");
  for (int i = 0; i + 1 < n; ++i) {
    if (!(knots_[static_cast<std::size_t>(i)] < knots_[static_cast<std::size_t>(i) + 1]))
      throw std::invalid_argument("knots must be strictly increasing");
  }
}

KnotVector symmetric_knots(std::span<const double> x, int first, int m) {
  if (first < 0 || m < 0 || static_cast<std::size_t>(first + m) >= x.size())
    throw std::invalid_argument("symmetric_knots: window out of range");
  if (!(x[static_cast<std::size_t>(first)] > 0.0))
    throw std::invalid_argument("zero or negative knot collides under reflection");
  std::vector<double> knots;
  knots.reserve(2 * static_cast<std::size_t>(m) + 2);
  for (int r = first + m; r >= first; --r) knots.push_back(-x[static_cast<std::size_t>(r)]);
  for (int r = first; r <= first + m; ++r) knots.push_back(x[static_cast<std::size_t>(r)]);
  return KnotVector(std::move(knots));
}

namespace {

// Truncated power (u)_+^e. For e = 0 this is the step 1{u > 0}, which makes
// the order-2 spline right-continuous with support [t_1, t_2).
double trunc_pow(double u, int e) {
  if (u <= 0.0) return 0.0;
  if (e == 0) return 1.0;
  double p = u;
  for (int j = 1; j < e; ++j) p *= u;
  return p;
}

// Cox-de Boor triangle for the single normalized B-spline spanning all the
// knots, divided by its integral (t_n - t_1)/(n - 1).
double cox_de_boor(std::span<const double> t, double x) {
  const int n = static_cast<int>(t.size());
  if (x < t[0] || x >= t[static_cast<std::size_t>(n) - 1]) return 0.0;
  std::vector<double> b(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i + 1 < n; ++i)
    b[static_cast<std::size_t>(i)] =
        (x >= t[static_cast<std::size_t>(i)] && x < t[static_cast<std::size_t>(i) + 1]) ? 1.0
                                                                                        : 0.0;
  for (int ord = 2; ord < n; ++ord) {
    for (int i = 0; i + ord < n; ++i) {
      const double left = (x - t[static_cast<std::size_t>(i)]) /
                          (t[static_cast<std::size_t>(i + ord - 1)] - t[static_cast<std::size_t>(i)]);
      const double right = (t[static_cast<std::size_t>(i + ord)] - x) /
                           (t[static_cast<std::size_t>(i + ord)] - t[static_cast<std::size_t>(i) + 1]);
      b[static_cast<std::size_t>(i)] =
          left * b[static_cast<std::size_t>(i)] + right * b[static_cast<std::size_t>(i) + 1];
    }
  }
  return b[0] * (n - 1) / (t[static_cast<std::size_t>(n) - 1] - t[0]);
}

}  // namespace

double mspline_eval(const KnotVector& kv, double t) {
  const int n = kv.order();
  if (t < kv.front() || t >= kv.back()) return 0.0;
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = trunc_pow(kv[i] - t, n - 2);
  return (n - 1) * divided_difference_values(kv.knots(), values);
}

double mspline_eval_stable(const KnotVector& kv, double t) { return cox_de_boor(kv.knots(), t); }

double mspline_derivative(const KnotVector& kv, double t) {
  const int n = kv.order();
  if (n < 3) throw std::invalid_argument("derivative of order-2 spline is distributional");
  if (t < kv.front() || t >= kv.back()) return 0.0;
  std::span<const double> knots = kv.knots();
  const double lower = cox_de_boor(knots.first(static_cast<std::size_t>(n) - 1), t);
  const double upper = cox_de_boor(knots.last(static_cast<std::size_t>(n) - 1), t);
  return (n - 1) / (kv.back() - kv.front()) * (lower - upper);
}

double hermite_genocchi_residual(const RealFunction& f, const RealFunction& dfn,
                                 const KnotVector& kv, int npts) {
  const int n = kv.order();
  const double dd = divided_difference(f, kv.knots());
  const double integral = gauss_legendre_segments(
      [&](double t) { return dfn(t) * mspline_eval_stable(kv, t); }, kv.knots(), npts);
  return dd - integral / factorial(n - 1);
}

}  // namespace orbproj
