#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbproj/numerics.hpp"

namespace orbproj {

/// Classical series of the compact group G_n:
///   B = SO(2n+1), C = Sp(2n), D = O(2n).
enum class Series { B, C, D };

/// The parameter alpha of the series kernel: 1/2 for B and C, -1/2 for D.
double alpha(Series series);

const char* series_name(Series series);
Series series_from_string(const std::string& s);

/// An adjoint orbit: the series together with the strictly increasing,
/// strictly positive coordinates (x_1, ..., x_n) of its canonical form.
struct OrbitSpec {
  Series series = Series::B;
  int n = 0;
  std::vector<double> x;

  OrbitSpec(Series s, std::vector<double> coords);
};

/// The even entire kernel f(z) = sum_m z^(2m) / (2^(2m) m! (alpha+1)_m),
/// evaluated through its closed form: sinh(z)/z for B/C, cosh(z) for D.
double f_alpha(Series series, double z);

/// Antiderivative of f_alpha vanishing at 0: sinh(z) for D; for B/C the
/// termwise-integrated series sum_m z^(2m+1) / ((2m+1)(2m+1)!).
double f_alpha_primitive(Series series, double z);

/// Prefactor of the closed-form orbital transform:
/// (2n-1)!(2n-3)!...1! for B/C and (2n-2)!(2n-4)!...2! for D.
double laplace_prefactor(Series series, int n);

/// a_m(f) = prod_{j=0}^{m-1} c_{2j}, the running product of the even Taylor
/// coefficients c_{2j} = 1 / (2^(2j) j! (alpha+1)_j) of f_alpha.
double a_coeff(Series series, int m);

/// Determinant ratio det[f_alpha(t_i x_j)] / (V(T^2) V(X^2)) with
/// V(S) = prod_{i<j}(s_j - s_i). Requires pairwise distinct squares in both
/// argument lists; the ratio is invariant under permutations and sign flips
/// of either list.
double dn_ratio(Series series, std::span<const double> t, std::span<const double> x);

/// Laplace transform of the orbital measure at a generic point T (all t_i
/// nonzero with pairwise distinct squares):
///   laplace_prefactor(series, n) * dn_ratio(series, T, X).
double orbital_laplace(const OrbitSpec& spec, std::span<const double> t);

/// g[-z_m, ..., -z_1, z_1, ..., z_m] for g(z) = z f(z) over strictly
/// increasing positive z-points. For even f this equals the divided
/// difference of y -> f(sqrt(y)) over the squared points, with no square-root
/// branch issues.
double doubled_divided_difference(const RealFunction& f, std::span<const double> zpoints);

/// The determinant ratio of `spec` evaluated at (t_1, ..., t_k, 0, ..., 0),
/// k < n, in closed reduced form (no numerical limit):
///   a_{n-k} * prod_{1<=j-i<=n-k}(x_j^2 - x_i^2) * det[ dd_i(window_j) ]
///     / ( V(X^2) V(T^2) (t_1...t_k)^(2(n-k)) ),
/// where dd_i(window_j) is the divided difference of y -> f_alpha(t_i sqrt y)
/// over x_j^2, ..., x_{j+n-k}^2, computed via doubled_divided_difference.
double projected_dn_ratio(const OrbitSpec& spec, std::span<const double> tk);

/// prod_{i<j}(s_j^2 - s_i^2) in the given order of s.
double vandermonde_squares(std::span<const double> s);

/// Throws unless all entries are nonzero with pairwise distinct squares.
void require_generic_point(std::span<const double> t);

}  // namespace orbproj
