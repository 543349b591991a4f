#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "sleeve/oracle.hpp"
#include "sleeve/profile.hpp"
#include "sleeve/report.hpp"
#include "sleeve/subspace.hpp"

namespace sleeve {

using GradientOracle = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Exact-gradient adaptive tangent-plane computation. Starting from T^N = R^N,
/// each of the N-d steps picks a random unit point in the current plane,
/// projects the exact gradient into the plane, normalizes it into a new normal
/// direction, and shrinks the plane by that direction. Recovers the hidden
/// d-dimensional subspace exactly (up to floating point) almost surely.
Subspace atpc_exact(const GradientOracle& grad, int N, int d, std::uint64_t seed);

/// Query-only variant: the gradient of each restriction is replaced by forward
/// divided differences taken in the plane's own coordinates (i+1 queries at
/// step i), then mapped back to ambient space. Total query budget is
/// atpe_query_budget(N, d). `d` is the dimension of the sought subspace L;
/// the oracle's hidden subspace must be its complement.
RecoveryReport atpe(SleeveOracle& o, int d, double h, std::uint64_t seed);

/// Profile recovery after subspace estimation: estimate a unit direction a
/// normal to the level sets (divided-difference gradient projected onto the
/// complement of l_estimate), sample f(i/M * a) for i = 0..M, and return the
/// quasi-interpolant over the squared abscissae {((i/M)^2, f(i/M * a))}.
Profile1D recover_profile_after_atpe(SleeveOracle& o, const Subspace& l_estimate, int M,
                                     std::uint64_t seed, double direction_step = 1e-6);

/// Closed-form query budget sum_{i=d+1..N} (i+1); never exceeds (N-d)(N+1).
long atpe_query_budget(int N, int d);

/// One plane-shrink step shared by both algorithms: given an orthonormal
/// plane basis (N x i) and the in-plane coordinates of a unit normal
/// direction, return an orthonormal basis of the direction's orthogonal
/// complement inside the plane (N x (i-1)).
Eigen::MatrixXd shrink_plane(const Eigen::MatrixXd& plane, const Eigen::VectorXd& dir_coords);

}  // namespace sleeve
