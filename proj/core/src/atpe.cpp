#include "sleeve/atpe.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "sleeve/errors.hpp"
#include "sleeve/rng.hpp"

namespace sleeve {

namespace {

constexpr int kMaxResamples = 16;
constexpr double kDegenerateTol = 1e-12;

// Orthonormal basis of the hyperplane {c}^perp inside R^i, for a unit c:
// the trailing i-1 columns of the Householder reflector mapping e_1 onto +-c.
Eigen::MatrixXd hyperplane_basis(const Eigen::VectorXd& c) {
  const int i = static_cast<int>(c.size());
  Eigen::VectorXd v = c;
  v[0] += (c[0] >= 0.0 ? 1.0 : -1.0);
  v /= v.norm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(i, i) - 2.0 * v * v.transpose();
  return h.rightCols(i - 1);
}

}  // namespace

Eigen::MatrixXd shrink_plane(const Eigen::MatrixXd& plane, const Eigen::VectorXd& dir_coords) {
  if (plane.cols() != dir_coords.size() || plane.cols() < 2)
    throw DimensionError("shrink_plane: direction coordinates must match the plane dimension (>= 2)");
  return plane * hyperplane_basis(dir_coords);
}

long atpe_query_budget(int N, int d) {
  long total = 0;
  for (int i = d + 1; i <= N; ++i) total += i + 1;
  return total;
}

Subspace atpc_exact(const GradientOracle& grad, int N, int d, std::uint64_t seed) {
  if (d < 1 || d >= N) throw DimensionError("atpc_exact: need 1 <= d < N");
  RngStream rng(seed);
  Eigen::MatrixXd plane = Eigen::MatrixXd::Identity(N, N);  // T^N = R^N
  for (int i = N; i > d; --i) {
    Eigen::VectorXd dir;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
      // random unit point in T^i: ambient Gaussian projected and normalized
      Eigen::VectorXd z = plane.transpose() * rng.gaussian_vector(N);
      const double zn = z.norm();
      if (zn < kDegenerateTol) continue;
      z /= zn;
      const Eigen::VectorXd g = plane.transpose() * grad(plane * z);  // in-plane gradient
      if (g.norm() >= kDegenerateTol) {
        dir = g / g.norm();
        ok = true;
        break;
      }
    }
    if (!ok)
      throw DegenerateInputError("atpc_exact: vanishing projected gradient at step i=" +
                                 std::to_string(i));
    plane = shrink_plane(plane, dir);
  }
  return Subspace(plane);
}

RecoveryReport atpe(SleeveOracle& o, int d, double h, std::uint64_t seed) {
  const int N = o.hidden_subspace().ambient_dim();
  if (d < 1 || d >= N) throw DimensionError("atpe: need 1 <= d < N");
  if (o.hidden_subspace().dim() != N - d)
    throw DimensionError("atpe: oracle hidden subspace must have dimension N - d");
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("atpe: need 0 < h < 1");

  const auto start = std::chrono::steady_clock::now();
  const long queries_before = o.query_count();
  RngStream rng(seed);
  Eigen::MatrixXd plane = Eigen::MatrixXd::Identity(N, N);
  for (int i = N; i > d; --i) {
    // The forward differences carry an O(h) bias per coordinate, so a
    // divided-difference gradient below ~h*sqrt(i) is all bias and carries no
    // directional information: the drawn point sits on (or numerically on)
    // the sought subspace, the measure-zero event the resample clause covers.
    const double degenerate_norm = std::max(kDegenerateTol, 0.5 * h * std::sqrt(static_cast<double>(i)));
    Eigen::VectorXd dir;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
      Eigen::VectorXd z = plane.transpose() * rng.gaussian_vector(N);
      const double zn = z.norm();
      if (zn < kDegenerateTol) continue;
      z /= zn;
      // restriction in the plane's own coordinates: hhat(zhat) = f(plane * zhat)
      const auto restricted = [&](const Eigen::VectorXd& zhat) { return o.evaluate(plane * zhat); };
      const Eigen::VectorXd g = divided_difference_gradient(restricted, z, h);
      if (g.norm() >= degenerate_norm) {
        dir = g / g.norm();
        ok = true;
        break;
      }
    }
    if (!ok)
      throw DegenerateInputError("atpe: vanishing divided-difference gradient at step i=" +
                                 std::to_string(i));
    plane = shrink_plane(plane, dir);
  }
  Subspace estimate(plane);
  const Subspace truth = orth_complement(o.hidden_subspace());
  const double err = subspace_distance(estimate, truth);
  const auto wall =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return RecoveryReport{std::move(estimate), err, o.query_count() - queries_before, 0,
                        static_cast<long>(wall.count())};
}

Profile1D recover_profile_after_atpe(SleeveOracle& o, const Subspace& l_estimate, int M,
                                     std::uint64_t seed, double direction_step) {
  const int N = o.hidden_subspace().ambient_dim();
  if (l_estimate.ambient_dim() != N)
    throw DimensionError("recover_profile_after_atpe: subspace dimension mismatch");
  RngStream rng(seed);
  const Subspace normal_space = orth_complement(l_estimate);
  const Eigen::MatrixXd& w = normal_space.basis();
  Eigen::VectorXd a;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const Eigen::VectorXd eta = rng.unit_vector(N);
    const auto f = [&](const Eigen::VectorXd& x) { return o.evaluate(x); };
    // keep only the component normal to the estimated level sets
    const Eigen::VectorXd g = w * (w.transpose() * divided_difference_gradient(f, eta, direction_step));
    if (g.norm() >= kDegenerateTol) {
      a = g / g.norm();
      ok = true;
      break;
    }
  }
  if (!ok) throw DegenerateInputError("recover_profile_after_atpe: vanishing gradient direction");
  return profile_from_direction(o, a, M);
}

}  // namespace sleeve
