#pragma once

#include <functional>
#include <span>
#include <vector>

namespace orbproj {

/// Scalar function handle used throughout the library.
using RealFunction = std::function<double(double)>;
/// Function of a point in R^k (for cube quadrature).
using CubeFunction = std::function<double(std::span<const double>)>;

/// Execution policy of the data-parallel kernels. `parallel` uses OpenMP when
/// available; the result is identical to `serial` up to floating-point
/// reduction order, and independent of the number of threads (partial sums
/// are accumulated over fixed-size chunks).
enum class Exec { serial, parallel };

/// Dense row-major square matrix of doubles.
struct SquareMatrix {
  int order = 0;
  std::vector<double> a;

  SquareMatrix() = default;
  explicit SquareMatrix(int n) : order(n), a(static_cast<std::size_t>(n) * n, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * order + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * order + j]; }
};

/// Divided difference f[t_1,...,t_n] over pairwise distinct knots, computed
/// by the triangular (Neville-style) table. Length-1 input returns f(t_1).
/// Throws std::invalid_argument on coincident knots.
double divided_difference(const RealFunction& f, std::span<const double> knots);

/// Same recurrence over precomputed values[i] = f(knots[i]).
double divided_difference_values(std::span<const double> knots, std::span<const double> values);

/// Pochhammer symbol (a)_m = a (a+1) ... (a+m-1); empty product for m = 0.
double pochhammer(double a, int m);

/// m!! with 0!! = (-1)!! = 1.
double double_factorial(int m);

/// C(a, b) for nonnegative integers; 0 when b > a.
double binomial(int a, int b);

/// n! in double precision.
double factorial(int n);

/// Determinant by LU with partial pivoting; singular input gives 0.
double determinant(SquareMatrix m);

/// Nodes and weights of the npts-point Gauss-Legendre rule on (-1, 1).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule lookup; thread-safe.
const GaussLegendreRule& gauss_legendre_rule(int npts);

/// Integral of f over [a, b] with the npts-point Gauss-Legendre rule
/// (exact for polynomials of degree <= 2 npts - 1).
double gauss_legendre(const RealFunction& f, double a, double b, int npts);

/// Composite rule over the panels [breaks[0], breaks[1]], ..., npts per panel.
double gauss_legendre_segments(const RealFunction& f, std::span<const double> breaks, int npts);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Tensor-product Gauss-Legendre integral of f over a k-dimensional box,
/// npts_per_axis points on each axis.
double cube_integrate(const CubeFunction& f, std::span<const Interval> box, int npts_per_axis,
                      Exec exec = Exec::parallel);

/// Tensor-product quadrature with per-axis panel edges (axis_breaks[d] is the
/// increasing list of panel boundaries for axis d) and npts_per_panel Gauss
/// points per panel. Panel edges let piecewise-smooth integrands (splines)
/// be integrated to full accuracy.
double cube_integrate_panels(const CubeFunction& f,
                             const std::vector<std::vector<double>>& axis_breaks,
                             int npts_per_panel, Exec exec = Exec::parallel);

}  // namespace orbproj
