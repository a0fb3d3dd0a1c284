#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace ghzledger {

/// Deterministic RNG used everywhere randomness is needed. Seeds are always
/// caller-supplied; substreams are derived by mixing, never by sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Derive an independent substream deterministically from (seed, tags...).
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0) {
    return Rng(mix(mix(mix(seed, a), b), c));
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int uniform_int(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// Complex Gaussian vector; normalized vectors drawn this way are Haar
  /// distributed on the unit sphere.
  Eigen::VectorXcd gaussian_vector(int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_normal();
    return v;
  }

  Eigen::VectorXcd unit_vector(int dim) {
    Eigen::VectorXcd v = gaussian_vector(dim);
    const double n = v.norm();
    return n > 0 ? Eigen::VectorXcd(v / n) : unit_vector(dim);
  }

  /// Haar-random unitary via QR of a complex Gaussian matrix.
  Eigen::MatrixXcd haar_unitary(int dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = complex_normal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
      std::complex<double> d = r(j, j);
      const double a = std::abs(d);
      q.col(j) *= (a > 0 ? d / a : 1.0);
    }
    return q;
  }

 private:
  static std::uint64_t mix(std::uint64_t z, std::uint64_t salt) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL + salt;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace ghzledger
