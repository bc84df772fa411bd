#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "orbproj/laplace.hpp"
#include "orbproj/numerics.hpp"

namespace orbproj {

/// Splittable counter-seeded generator (splitmix64 core). Independent streams
/// are derived by hashing (seed, stream id), so a batch split across workers
/// is bit-reproducible for any thread count.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}

  static SplitRng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Standard normal via Box-Muller (second member of each pair is cached).
  double normal();

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Canonical block form of an algebra element with the given coordinates:
/// B gives the (2n+1) x (2n+1) antisymmetric matrix with 2x2 blocks
/// [[0, x_j], [-x_j, 0]] and a trailing zero row/column, D the same without
/// the trailing zero (size 2n). Coordinates are not required to be ordered
/// or positive (the builder is also used for evaluation points T).
Eigen::MatrixXd canonical_matrix_real(Series series, std::span<const double> coords);

/// Canonical form for series C in the complex 2n x 2n representation:
/// diag(i x_1, ..., i x_n, -i x_1, ..., -i x_n); anti-Hermitian and
/// quaternionic (A J = J conj(A) for J = [[0, I], [-I, 0]]).
Eigen::MatrixXcd canonical_matrix_complex(std::span<const double> coords);

/// Haar-distributed orthogonal matrix via QR of a Gaussian matrix with the
/// R-diagonal sign correction. With unit_determinant the sample is forced
/// into SO(m) by flipping the last column when det = -1.
Eigen::MatrixXd haar_orthogonal(int m, SplitRng& rng, bool unit_determinant);

/// Haar element of the compact symplectic group Sp(n) as a 2n x 2n complex
/// unitary with Q^T J Q = J, generated by Gram-Schmidt over the quaternions
/// applied to a quaternionic Gaussian matrix.
Eigen::MatrixXcd haar_symplectic(int n, SplitRng& rng);

/// Which principal corner realizes the projection. top_left is the
/// production convention; bottom_right exists to validate that the sampled
/// law does not depend on the choice.
enum class CornerPos { top_left, bottom_right };

/// Principal corner submatrix: (2k+1) x (2k+1) for B, 2k x 2k for D.
Eigen::MatrixXd corner_real(Series series, const Eigen::MatrixXd& m, int k,
                            CornerPos pos = CornerPos::top_left);

/// Quaternionic k x k corner of a 2n x 2n series-C matrix: complex rows and
/// columns {0..k-1} and {n..n+k-1}.
Eigen::MatrixXcd corner_complex(const Eigen::MatrixXcd& m, int k,
                                CornerPos pos = CornerPos::top_left);

/// Nonnegative half of the spectrum of an algebra element: the eigenvalues
/// are {+-i y_j} (plus one 0 in odd dimension); returns y_1 <= ... <= y_k.
/// Goes through the Hermitian matrix iA; throws if the input fails the
/// antisymmetry / quaternionic structure checks beyond 1e-8.
std::vector<double> spectrum_nonneg(Series series, const Eigen::MatrixXd& a);
std::vector<double> spectrum_nonneg(Series series, const Eigen::MatrixXcd& a);

/// A batch of projected-spectrum draws; samples is count x k row-major, each
/// row sorted increasing.
struct SampleBatch {
  Series series = Series::B;
  int n = 0;
  int k = 0;
  std::vector<double> x;
  std::int64_t count = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;

  std::span<const double> row(std::int64_t i) const {
    return std::span<const double>(samples.data() + i * k, static_cast<std::size_t>(k));
  }
};

/// count independent draws of the projected spectrum: conjugate the canonical
/// form by a Haar element, take the corner, extract the nonnegative spectrum.
/// Deterministic for a fixed seed, independent of Exec and thread count.
SampleBatch sample_projected_spectrum(const OrbitSpec& spec, int k, std::int64_t count,
                                      std::uint64_t seed, Exec exec = Exec::parallel,
                                      CornerPos pos = CornerPos::top_left);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo orbital integral of exp<T, Ad_g X> over Haar draws, with the
/// pairing normalized so that the n = 1 estimates converge to sinh(tx)/(tx)
/// (series B) and cosh(tx) (series D). T may be any real vector.
McEstimate mc_orbital_laplace(const OrbitSpec& spec, std::span<const double> t,
                              std::int64_t count, std::uint64_t seed,
                              Exec exec = Exec::parallel);

/// Kolmogorov-Smirnov sup distance between the empirical CDF of the sorted
/// samples and the reference CDF.
double ks_statistic(std::span<const double> sorted_samples, const RealFunction& cdf);

/// CSV serialization: one row per draw, columns y_1..y_k, 17 significant
/// digits, no header.
void write_sample_csv(const SampleBatch& batch, std::ostream& os);

/// JSON sidecar {series, n, k, X, N, seed}.
std::string sample_sidecar_json(const SampleBatch& batch);

/// Writes the CSV to csv_path and the sidecar to csv_path + ".json".
/// Throws std::runtime_error on I/O failure.
void write_sample_files(const SampleBatch& batch, const std::string& csv_path);

}  // namespace orbproj
