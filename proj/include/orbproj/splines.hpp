#pragma once

#include <span>
#include <vector>

#include "orbproj/numerics.hpp"

namespace orbproj {

/// Strictly increasing simple knots t_1 < ... < t_n. The order n (number of
/// knots) of the M-spline M_n(t_1,...,t_n; .) ranges from 2 to kMaxOrder;
/// beyond that the truncated-power reference evaluator loses too much
/// precision to serve as a cross-check.
class KnotVector {
 public:
  static constexpr int kMaxOrder = 18;

  explicit KnotVector(std::vector<double> knots);

  int order() const { return static_cast<int>(knots_.size()); }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }
  std::span<const double> knots() const { return knots_; }
  double operator[](int i) const { return knots_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> knots_;
};

/// Sign-symmetric knot vector (-x[first+m], ..., -x[first], x[first], ...,
/// x[first+m]) built from a window of m+1 entries of the strictly increasing
/// positive sequence x (indices are 0-based). 2m+2 knots in total.
KnotVector symmetric_knots(std::span<const double> x, int first, int m);

/// Reference evaluator: M_n(kv; t) = (n-1) * dd over the knots of
/// s -> max(s - t, 0)^(n-2). Values at knots follow the right-continuous
/// convention (an order-2 spline is 1/(t_2 - t_1) on [t_1, t_2) and 0 at t_2).
double mspline_eval(const KnotVector& kv, double t);

/// Production evaluator via the Cox-de Boor recurrence on normalized
/// B-splines, rescaled to unit integral. Same values and conventions as
/// mspline_eval (agreement to ~1e-9 absolute through order 12).
double mspline_eval_stable(const KnotVector& kv, double t);

/// d/dt M_m(kv; t) through the order-lowering recurrence
///   M_m' = (m-1)/(t_m - t_1) * (M_{m-1}(t_1..t_{m-1}) - M_{m-1}(t_2..t_m)).
/// Requires order >= 3; for order 3 the value is the piecewise slope with the
/// right-continuous convention at knots.
double mspline_derivative(const KnotVector& kv, double t);

/// f[t_1,...,t_n] - 1/(n-1)! * integral of dfn(t) M_n(kv; t) dt, where dfn is
/// the (n-1)-th derivative of f supplied by the caller. The integral is done
/// with npts-point Gauss-Legendre on each inter-knot segment.
double hermite_genocchi_residual(const RealFunction& f, const RealFunction& dfn,
                                 const KnotVector& kv, int npts);

}  // namespace orbproj
