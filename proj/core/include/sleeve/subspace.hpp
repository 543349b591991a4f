#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace sleeve {

inline constexpr double kOrthonormalTol = 1e-12;
inline constexpr double kProjectionTol = 1e-10;

/// A d-dimensional linear subspace of R^N held as an N x d matrix with
/// orthonormal columns. Construction validates 1 <= d <= N and pairwise
/// orthonormality to 1e-12. Immutable after construction.
class Subspace {
public:
  explicit Subspace(Eigen::MatrixXd basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

private:
  Eigen::MatrixXd basis_;
};

/// Orthogonal projection matrix: symmetric, idempotent, trace = dim.
struct ProjectionMatrix {
  Eigen::MatrixXd m;
  int ambient_dim() const { return static_cast<int>(m.rows()); }
};

/// Orthonormalize the columns of a full-column-rank matrix by Householder QR,
/// fixing the sign of the triangular factor's diagonal to be nonnegative.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& frame);

/// True if m is symmetric, idempotent, and has near-integer trace within tol.
bool is_valid_projection(const Eigen::MatrixXd& m, double tol = kProjectionTol);

/// Haar-distributed d-dimensional subspace of R^N (Gaussian matrix followed
/// by sign-fixed orthonormalization). Deterministic given the seed.
Subspace random_subspace(int d, int N, std::uint64_t seed);

/// P = sum_i u_i u_i^T over the basis vectors.
ProjectionMatrix projection_matrix(const Subspace& s);

/// Hilbert-Schmidt (Frobenius) distance between two projection matrices.
double hs_distance(const ProjectionMatrix& p, const ProjectionMatrix& q);

/// hs_distance of the two spans' projections; the canonical subspace metric
/// (bases are non-unique, so subspaces are always compared this way).
double subspace_distance(const Subspace& a, const Subspace& b);

/// The (N-d)-dimensional orthogonal complement. Requires d < N.
Subspace orth_complement(const Subspace& s);

/// Modified Gram-Schmidt with a second re-orthogonalization pass. Throws
/// DependenceError naming the 1-based offending index on rank deficiency.
std::vector<Eigen::VectorXd> gram_schmidt(const std::vector<Eigen::VectorXd>& vectors);

/// Complete a pairwise-orthonormal prefix to a full orthonormal basis of R^N;
/// the first k vectors are returned unchanged.
std::vector<Eigen::VectorXd> extend_to_onb(const std::vector<Eigen::VectorXd>& partial, int N);

/// Random subspace H near S with hs_distance(proj(S), proj(H)) guaranteed
/// <= sqrt(2 d (1 - cos angle)). Each of min(d, N-d) basis vectors is rotated
/// by an angle <= `angle` toward a random direction orthogonal to S, then the
/// frame is re-orthonormalized. Requires 0 <= angle <= pi/2.
Subspace random_rotation_within(const Subspace& s, double angle, std::uint64_t seed);

}  // namespace sleeve
