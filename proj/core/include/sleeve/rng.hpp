#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace sleeve {

/// Seeded random stream. Every randomized operation in the library takes an
/// explicit seed or stream; there is no ambient RNG state. Uniform doubles
/// are built from raw engine words so results do not depend on the standard
/// library's distribution implementations.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : eng_(mix64(seed ^ 0x6c1e55ee0f5eedULL)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// Uniform on the unit sphere S^{n-1}.
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v = gaussian_vector(n);
    double nrm = v.norm();
    while (nrm < 1e-300) {
      v = gaussian_vector(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

  Eigen::MatrixXd gaussian_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

  /// Derive a child seed from a master seed and up to two stream indices.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t x = mix64(master ^ (0x9e3779b97f4a7c15ULL + a));
    return mix64(x ^ (0xc2b2ae3d27d4eb4fULL + b));
  }

private:
  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sleeve
