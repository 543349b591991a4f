#include "sleeve/subspace.hpp"

#include <cmath>
#include <string>

#include "sleeve/errors.hpp"
#include "sleeve/rng.hpp"

namespace sleeve {

Subspace::Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  const int N = static_cast<int>(basis_.rows());
  const int d = static_cast<int>(basis_.cols());
  if (d < 1 || d > N)
    throw DimensionError("Subspace: need 1 <= dim <= ambient_dim, got d=" + std::to_string(d) +
                         ", N=" + std::to_string(N));
  Eigen::MatrixXd gram = basis_.transpose() * basis_;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > kOrthonormalTol)
    throw DimensionError("Subspace: basis columns are not orthonormal (Gram deviation " +
                         std::to_string(gram.cwiseAbs().maxCoeff()) + ")");
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& frame) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
  const int d = static_cast<int>(frame.cols());
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(frame.rows(), d);
  for (int j = 0; j < d; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

bool is_valid_projection(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  if ((m * m - m).cwiseAbs().maxCoeff() > tol) return false;
  const double tr = m.trace();
  return std::abs(tr - std::round(tr)) <= tol;
}

Subspace random_subspace(int d, int N, std::uint64_t seed) {
  if (d < 1 || d > N)
    throw DimensionError("random_subspace: need 1 <= d <= N, got d=" + std::to_string(d) +
                         ", N=" + std::to_string(N));
  RngStream rng(seed);
  return Subspace(orthonormalize(rng.gaussian_matrix(N, d)));
}

ProjectionMatrix projection_matrix(const Subspace& s) {
  return ProjectionMatrix{s.basis() * s.basis().transpose()};
}

double hs_distance(const ProjectionMatrix& p, const ProjectionMatrix& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw DimensionError("hs_distance: ambient dimensions differ");
  return (p.m - q.m).norm();
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  return hs_distance(projection_matrix(a), projection_matrix(b));
}

Subspace orth_complement(const Subspace& s) {
  const int N = s.ambient_dim();
  const int d = s.dim();
  if (d >= N) throw DimensionError("orth_complement: the full space has an empty complement");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(s.basis());
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(N, N);
  return Subspace(q.rightCols(N - d));
}

std::vector<Eigen::VectorXd> gram_schmidt(const std::vector<Eigen::VectorXd>& vectors) {
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Eigen::VectorXd v = vectors[i];
    const double input_norm = v.norm();
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) v -= u.dot(v) * u;
    const double res = v.norm();
    if (res <= 1e-10 * std::max(1.0, input_norm))
      throw DependenceError(
          "gram_schmidt: vector " + std::to_string(i + 1) + " is linearly dependent on its predecessors",
          static_cast<int>(i + 1));
    basis.push_back(v / res);
  }
  return basis;
}

std::vector<Eigen::VectorXd> extend_to_onb(const std::vector<Eigen::VectorXd>& partial, int N) {
  const int k = static_cast<int>(partial.size());
  if (k > N)
    throw DimensionError("extend_to_onb: got " + std::to_string(k) + " vectors for ambient dim " +
                         std::to_string(N));
  for (const auto& u : partial)
    if (u.size() != N) throw DimensionError("extend_to_onb: vector length does not match N");
  std::vector<Eigen::VectorXd> basis = partial;
  for (int c = 0; c < N && static_cast<int>(basis.size()) < N; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(N, c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) v -= u.dot(v) * u;
    const double res = v.norm();
    if (res > 1e-8) basis.push_back(v / res);
  }
  if (static_cast<int>(basis.size()) != N)
    throw DimensionError("extend_to_onb: could not complete the basis; input not orthonormal?");
  return basis;
}

Subspace random_rotation_within(const Subspace& s, double angle, std::uint64_t seed) {
  if (angle < 0.0 || angle > M_PI / 2.0 + 1e-15)
    throw std::invalid_argument("random_rotation_within: angle must lie in [0, pi/2]");
  const int N = s.ambient_dim();
  const int d = s.dim();
  const int r = std::min(d, N - d);
  if (r == 0 || angle == 0.0) return s;

  RngStream rng(seed);
  // Mutually orthonormal arrival directions inside the complement keep the
  // rotated frame exactly orthonormal, so the per-plane rotation angles map
  // directly onto principal angles.
  Eigen::MatrixXd w = orth_complement(s).basis() * orthonormalize(rng.gaussian_matrix(N - d, r));
  // sin^2(beta) <= 1 - cos(angle) per plane gives the advertised bound.
  const double beta_max = std::asin(std::min(1.0, std::sqrt(std::max(0.0, 1.0 - std::cos(angle)))));
  Eigen::MatrixXd v = s.basis();
  for (int i = 0; i < r; ++i) {
    const double beta = rng.uniform(0.0, beta_max);
    v.col(i) = std::cos(beta) * s.basis().col(i) + std::sin(beta) * w.col(i);
  }
  return Subspace(orthonormalize(v));
}

}  // namespace sleeve
