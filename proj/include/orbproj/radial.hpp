#pragma once

#include <span>
#include <vector>

#include "orbproj/laplace.hpp"
#include "orbproj/numerics.hpp"
#include "orbproj/splines.hpp"

namespace orbproj {

/// Constants of the closed-form radial density for one (series, n, k):
/// kappa is the zero-order coefficient of the Delta operator and c the
/// combinatorial normalization
///   B/C: kappa = 0,       c = (2n-2k)!!/(2n)!!   * prod_i C(2n-2k+2i+2, 2i+1)
///   D:   kappa = 2(n-k),  c = (2n-2k-1)!!/(2n-1)!! * prod_i C(2n-2k+2i+1, 2i)
/// with i = 0..k-1.
struct SeriesParams {
  Series series = Series::B;
  int n = 0;
  int k = 0;
  double kappa = 0.0;
  double c = 0.0;
};

SeriesParams make_series_params(Series series, int n, int k);

/// (Delta M)(y) = -y M'(kv; y) + kappa M(kv; y) for an even-order (>= 4)
/// sign-symmetric knot vector.
double delta_M(const KnotVector& kv, double y, double kappa);

/// The radial density of the rank-k projection of the orbital measure of
/// `spec`, with respect to Lebesgue measure on the chamber
/// 0 <= y_1 <= ... <= y_k:
///
///   rho(Y) = 2^k c / prod_{j-i>=n-k+1}(x_j^2-x_i^2)
///            * det[ (Delta M)(window_j; y_i) ]_{i,j=1..k}
///            * prod_{i<j}(y_j^2 - y_i^2),
///
/// where window_j is the sign-symmetric knot vector on x_j..x_{j+n-k}. Both
/// alternating factors are evaluated with identically (increasing) ordered
/// arguments, which makes the product nonnegative on the chamber. The factor
/// 2^k folds the even extension of the spline determinant onto the positive
/// chamber; the closed-form constant c alone normalizes the integral over
/// R^k, not over the chamber (see the normalization and Monte Carlo checks).
class RadialDensity {
 public:
  RadialDensity(OrbitSpec spec, int k);

  /// Density at Y (sorted internally; entries must be nonnegative).
  double density(std::span<const double> y) const;

  /// Density relative to the measure v_k(dY) = prod_{i<j}(y_j^2-y_i^2) dY,
  /// i.e. the determinant part without the Vandermonde factor.
  double density_wrt_vk(std::span<const double> y) const;

  /// Symmetric extension of the density evaluated without sorting: the two
  /// alternating factors flip sign together, so this agrees with density()
  /// on the chamber and extends it symmetrically. Quadrature kernel.
  double symmetric_density(std::span<const double> y) const;

  /// Bounding box [0, x_n]^k of the support.
  std::vector<Interval> support_box() const;

  /// Integral of the density over the chamber, computed by knot-aligned
  /// tensor quadrature of the symmetric extension over the box divided by k!
  /// (npts_per_axis Gauss points per axis, split across the knot panels).
  /// Must come out as 1 for a correct evaluator.
  double normalization(int npts_per_axis, Exec exec = Exec::parallel) const;

  /// Absolute residual of the projection identity at a generic point Tk:
  /// the transform of the projected measure computed in closed reduced form
  /// minus the mixture integral of rank-k transforms against this density.
  double projection_identity_residual(std::span<const double> tk, int npts_per_axis,
                                      Exec exec = Exec::parallel) const;

  const OrbitSpec& spec() const { return spec_; }
  int k() const { return k_; }
  const SeriesParams& params() const { return params_; }
  const std::vector<KnotVector>& windows() const { return windows_; }
  double denom() const { return denom_; }

 private:
  OrbitSpec spec_;
  int k_;
  int q_;  // n - k
  SeriesParams params_;
  std::vector<KnotVector> windows_;
  double denom_;
  double scale_;  // 2^k c / denom

  std::vector<std::vector<double>> quadrature_breaks() const;
};

/// Cumulative distribution function of a k = 1 radial density, precomputed
/// per knot segment and evaluated by partial Gauss-Legendre integration.
class RadialCdf {
 public:
  explicit RadialCdf(const RadialDensity& rd, int npts_per_segment = 32);

  double operator()(double y) const;

 private:
  const RadialDensity& rd_;
  std::vector<double> breaks_;
  std::vector<double> cumulative_;
  int npts_;
};

}  // namespace orbproj
