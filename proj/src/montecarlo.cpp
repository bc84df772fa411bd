#include "orbproj/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace orbproj {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace

SplitRng SplitRng::stream(std::uint64_t seed, std::uint64_t stream_id) {
  return SplitRng(mix64(seed ^ mix64(stream_id + 0x9e3779b97f4a7c15ULL)));
}

std::uint64_t SplitRng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitRng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SplitRng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(th);
  have_cached_ = true;
  return r * std::cos(th);
}

Eigen::MatrixXd canonical_matrix_real(Series series, std::span<const double> coords) {
  if (series == Series::C)
    throw std::invalid_argument("canonical_matrix_real: series C is complex");
  const int n = static_cast<int>(coords.size());
  const int m = series == Series::B ? 2 * n + 1 : 2 * n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < n; ++j) {
    a(2 * j, 2 * j + 1) = coords[static_cast<std::size_t>(j)];
    a(2 * j + 1, 2 * j) = -coords[static_cast<std::size_t>(j)];
  }
  return a;
}

Eigen::MatrixXcd canonical_matrix_complex(std::span<const double> coords) {
  const int n = static_cast<int>(coords.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = std::complex<double>(0.0, coords[static_cast<std::size_t>(j)]);
    a(n + j, n + j) = std::complex<double>(0.0, -coords[static_cast<std::size_t>(j)]);
  }
  return a;
}

Eigen::MatrixXd haar_orthogonal(int m, SplitRng& rng, bool unit_determinant) {
  if (m < 1) throw std::invalid_argument("haar_orthogonal: dimension must be positive");
  Eigen::MatrixXd z(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) z(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < m; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  if (unit_determinant && q.determinant() < 0.0) q.col(m - 1) = -q.col(m - 1);
  return q;
}

namespace {

// Hamilton quaternion w + x i + y j + z k.
struct Quat {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

Quat qmul(const Quat& a, const Quat& b) {
  return Quat{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
              a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
              a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
              a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat qconj(const Quat& a) { return Quat{a.w, -a.x, -a.y, -a.z}; }

double qnorm2(const Quat& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }

}  // namespace

Eigen::MatrixXcd haar_symplectic(int n, SplitRng& rng) {
  if (n < 1) throw std::invalid_argument("haar_symplectic: dimension must be positive");
  std::vector<Quat> q(static_cast<std::size_t>(n) * n);
  auto at = [&](int r, int c) -> Quat& { return q[static_cast<std::size_t>(r) * n + c]; };
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      at(r, c) = Quat{rng.normal(), rng.normal(), rng.normal(), rng.normal()};

  // Modified Gram-Schmidt over the quaternions (right scalar coefficients),
  // two passes per column; the positive real R diagonal makes the result
  // Haar on Sp(n).
  for (int c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < c; ++p) {
        Quat coef{};
        for (int r = 0; r < n; ++r) {
          const Quat add = qmul(qconj(at(r, p)), at(r, c));
          coef.w += add.w;
          coef.x += add.x;
          coef.y += add.y;
          coef.z += add.z;
        }
        for (int r = 0; r < n; ++r) {
          const Quat sub = qmul(at(r, p), coef);
          at(r, c).w -= sub.w;
          at(r, c).x -= sub.x;
          at(r, c).y -= sub.y;
          at(r, c).z -= sub.z;
        }
      }
    }
    double norm2 = 0.0;
    for (int r = 0; r < n; ++r) norm2 += qnorm2(at(r, c));
    const double inv = 1.0 / std::sqrt(norm2);
    for (int r = 0; r < n; ++r) {
      at(r, c).w *= inv;
      at(r, c).x *= inv;
      at(r, c).y *= inv;
      at(r, c).z *= inv;
    }
  }

  // Complex representation a + b j -> [[a, b], [-conj(b), conj(a)]].
  Eigen::MatrixXcd big(2 * n, 2 * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Quat& v = at(r, c);
      const std::complex<double> a(v.w, v.x), b(v.y, v.z);
      big(r, c) = a;
      big(r, n + c) = b;
      big(n + r, c) = -std::conj(b);
      big(n + r, n + c) = std::conj(a);
    }
  return big;
}

Eigen::MatrixXd corner_real(Series series, const Eigen::MatrixXd& m, int k, CornerPos pos) {
  const int size = series == Series::B ? 2 * k + 1 : 2 * k;
  if (size > m.rows()) throw std::invalid_argument("corner: k too large for the matrix");
  return pos == CornerPos::top_left ? m.topLeftCorner(size, size).eval()
                                    : m.bottomRightCorner(size, size).eval();
}

Eigen::MatrixXcd corner_complex(const Eigen::MatrixXcd& m, int k, CornerPos pos) {
  const int n = static_cast<int>(m.rows()) / 2;
  if (k > n) throw std::invalid_argument("corner: k too large for the matrix");
  Eigen::MatrixXcd out(2 * k, 2 * k);
  const int off = pos == CornerPos::top_left ? 0 : n - k;
  std::vector<int> idx(static_cast<std::size_t>(2 * k));
  for (int j = 0; j < k; ++j) {
    idx[static_cast<std::size_t>(j)] = off + j;
    idx[static_cast<std::size_t>(k + j)] = n + off + j;
  }
  for (int r = 0; r < 2 * k; ++r)
    for (int c = 0; c < 2 * k; ++c)
      out(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return out;
}

namespace {

std::vector<double> pair_spectrum(const Eigen::VectorXd& eigenvalues, bool odd_dim, double scale) {
  const double tol = 1e-9 * std::max(1.0, scale);
  std::vector<double> absv(static_cast<std::size_t>(eigenvalues.size()));
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) absv[static_cast<std::size_t>(i)] =
      std::fabs(eigenvalues(i));
  std::sort(absv.begin(), absv.end());
  std::size_t start = 0;
  if (odd_dim) {
    if (absv[0] > tol) throw std::invalid_argument("input not in expected algebra");
    start = 1;
  }
  std::vector<double> out;
  out.reserve((absv.size() - start) / 2);
  for (std::size_t i = start; i + 1 < absv.size(); i += 2) {
    if (std::fabs(absv[i] - absv[i + 1]) > tol)
      throw std::invalid_argument("input not in expected algebra");
    out.push_back(0.5 * (absv[i] + absv[i + 1]));
  }
  return out;
}

}  // namespace

std::vector<double> spectrum_nonneg(Series series, const Eigen::MatrixXd& a) {
  if (series == Series::C)
    throw std::invalid_argument("spectrum_nonneg: series C matrices are complex");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("input not in expected algebra");
  const std::complex<double> iu(0.0, 1.0);
  const Eigen::MatrixXcd h = iu * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return pair_spectrum(es.eigenvalues(), a.rows() % 2 != 0, scale);
}

std::vector<double> spectrum_nonneg(Series series, const Eigen::MatrixXcd& a) {
  if (series != Series::C)
    throw std::invalid_argument("spectrum_nonneg: complex overload is for series C");
  const int two_k = static_cast<int>(a.rows());
  if (two_k % 2 != 0) throw std::invalid_argument("input not in expected algebra");
  const int k = two_k / 2;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("input not in expected algebra");
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(two_k, two_k);
  for (int r = 0; r < k; ++r) {
    j(r, k + r) = 1.0;
    j(k + r, r) = -1.0;
  }
  if ((a * j - j * a.conjugate()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("input not in expected algebra");
  const std::complex<double> iu(0.0, 1.0);
  const Eigen::MatrixXcd h = iu * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return pair_spectrum(es.eigenvalues(), false, scale);
}

namespace {

std::vector<double> draw_projected_spectrum(const OrbitSpec& spec, int k, SplitRng& rng,
                                            CornerPos pos) {
  if (spec.series == Series::C) {
    const Eigen::MatrixXcd xc = canonical_matrix_complex(spec.x);
    const Eigen::MatrixXcd g = haar_symplectic(spec.n, rng);
    const Eigen::MatrixXcd a = g * xc * g.adjoint();
    return spectrum_nonneg(Series::C, corner_complex(a, k, pos));
  }
  const Eigen::MatrixXd xc = canonical_matrix_real(spec.series, spec.x);
  const int m = static_cast<int>(xc.rows());
  const Eigen::MatrixXd g = haar_orthogonal(m, rng, spec.series == Series::B);
  const Eigen::MatrixXd a = g * xc * g.transpose();
  return spectrum_nonneg(spec.series, corner_real(spec.series, a, k, pos));
}

}  // namespace

SampleBatch sample_projected_spectrum(const OrbitSpec& spec, int k, std::int64_t count,
                                      std::uint64_t seed, Exec exec, CornerPos pos) {
  if (k < 1 || k >= spec.n) throw std::invalid_argument("projection index must satisfy k < n");
  if (count < 1) throw std::invalid_argument("sample count must be positive");
  SampleBatch batch;
  batch.series = spec.series;
  batch.n = spec.n;
  batch.k = k;
  batch.x = spec.x;
  batch.count = count;
  batch.seed = seed;
  batch.samples.resize(static_cast<std::size_t>(count) * k);

  const bool par = (exec == Exec::parallel);
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t i = 0; i < count; ++i) {
    SplitRng rng = SplitRng::stream(seed, static_cast<std::uint64_t>(i));
    const std::vector<double> y = draw_projected_spectrum(spec, k, rng, pos);
    std::copy(y.begin(), y.end(), batch.samples.begin() + i * k);
  }
  return batch;
}

namespace {

// <T, A> normalized so that at A = canonical(X) it equals sum_j t_j x_j.
double pairing_real(std::span<const double> t, const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j)
    s += t[j] * a(2 * static_cast<int>(j), 2 * static_cast<int>(j) + 1);
  return s;
}

double pairing_complex(std::span<const double> t, const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(t.size());
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::complex<double> diff = a(j, j) - a(n + j, n + j);
    s += t[static_cast<std::size_t>(j)] * (std::complex<double>(0.0, 1.0) * diff).real();
  }
  return -0.5 * s;
}

}  // namespace

McEstimate mc_orbital_laplace(const OrbitSpec& spec, std::span<const double> t,
                              std::int64_t count, std::uint64_t seed, Exec exec) {
  if (static_cast<int>(t.size()) != spec.n)
    throw std::invalid_argument("mc_orbital_laplace: T must have n entries");
  if (count < 1) throw std::invalid_argument("sample count must be positive");

  const std::int64_t chunk = 1024;
  const std::int64_t nchunks = (count + chunk - 1) / chunk;
  std::vector<double> sum1(static_cast<std::size_t>(nchunks), 0.0);
  std::vector<double> sum2(static_cast<std::size_t>(nchunks), 0.0);
  std::vector<double> tvec(t.begin(), t.end());

  const bool par = (exec == Exec::parallel);
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t ci = 0; ci < nchunks; ++ci) {
    double s1 = 0.0, s2 = 0.0;
    const std::int64_t lo = ci * chunk, hi = std::min(count, lo + chunk);
    for (std::int64_t i = lo; i < hi; ++i) {
      SplitRng rng = SplitRng::stream(seed, static_cast<std::uint64_t>(i));
      double v = 0.0;
      if (spec.series == Series::C) {
        const Eigen::MatrixXcd xc = canonical_matrix_complex(spec.x);
        const Eigen::MatrixXcd g = haar_symplectic(spec.n, rng);
        const Eigen::MatrixXcd a = g * xc * g.adjoint();
        v = std::exp(pairing_complex(tvec, a));
      } else {
        const Eigen::MatrixXd xc = canonical_matrix_real(spec.series, spec.x);
        const Eigen::MatrixXd g =
            haar_orthogonal(static_cast<int>(xc.rows()), rng, spec.series == Series::B);
        const Eigen::MatrixXd a = g * xc * g.transpose();
        v = std::exp(pairing_real(tvec, a));
      }
      s1 += v;
      s2 += v * v;
    }
    sum1[static_cast<std::size_t>(ci)] = s1;
    sum2[static_cast<std::size_t>(ci)] = s2;
  }

  double s1 = 0.0, s2 = 0.0;
  for (std::int64_t ci = 0; ci < nchunks; ++ci) {
    s1 += sum1[static_cast<std::size_t>(ci)];
    s2 += sum2[static_cast<std::size_t>(ci)];
  }
  McEstimate est;
  est.value = s1 / static_cast<double>(count);
  if (count > 1) {
    const double var =
        std::max(0.0, (s2 - s1 * s1 / static_cast<double>(count)) / static_cast<double>(count - 1));
    est.std_error = std::sqrt(var / static_cast<double>(count));
  }
  return est;
}

double ks_statistic(std::span<const double> sorted_samples, const RealFunction& cdf) {
  const std::size_t n = sorted_samples.size();
  if (n == 0) throw std::invalid_argument("ks_statistic: empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max(d, std::max(hi - f, f - lo));
  }
  return d;
}

void write_sample_csv(const SampleBatch& batch, std::ostream& os) {
  char buf[32];
  for (std::int64_t i = 0; i < batch.count; ++i) {
    for (int j = 0; j < batch.k; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", batch.samples[static_cast<std::size_t>(i * batch.k + j)]);
      if (j > 0) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

std::string sample_sidecar_json(const SampleBatch& batch) {
  nlohmann::json j;
  j["series"] = series_name(batch.series);
  j["n"] = batch.n;
  j["k"] = batch.k;
  j["X"] = batch.x;
  j["N"] = batch.count;
  j["seed"] = batch.seed;
  return j.dump(2) + "\n";
}

void write_sample_files(const SampleBatch& batch, const std::string& csv_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open output file: " + csv_path);
  write_sample_csv(batch, csv);
  csv.flush();
  if (!csv) throw std::runtime_error("write failed: " + csv_path);
  const std::string sidecar_path = csv_path + ".json";
  std::ofstream sidecar(sidecar_path, std::ios::binary);
  if (!sidecar) throw std::runtime_error("cannot open output file: " + sidecar_path);
  sidecar << sample_sidecar_json(batch);
  sidecar.flush();
  if (!sidecar) throw std::runtime_error("write failed: " + sidecar_path);
}

}  // namespace orbproj
