#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sleeve/subspace.hpp"

namespace sleeve {

enum class DesignKind { full, reduced, custom };

/// Ordered list of sampling vectors x_i whose squared projection norms
/// ||Hx_i||^2 determine a projection.
struct MeasurementDesign {
  int ambient_dim = 0;
  DesignKind kind = DesignKind::custom;
  std::vector<Eigen::VectorXd> points;

  std::size_t size() const { return points.size(); }
};

/// Values ||Hx_i||^2 aligned with a design's point order. Squared norms by
/// convention: the reconstruction formulas consume squares.
using MeasurementVector = std::vector<double>;

std::size_t full_design_size(int N);            // N(N+1)/2
std::size_t reduced_design_size(int N, int d);  // (N-1) + sum_{j<=min(d,N-d)}(N-j) + 1

/// All e_j and e_j + e_k, j < k, in row-major order over pairs (j,k), j <= k.
MeasurementDesign full_design(int N);

/// e_i (i = 1..N-1), e_j + e_k (j = 1..d', k = j+1..N) and one Haar-random
/// unit vector, with d' = min(d, N-d): dimensions above N/2 are handled
/// through the complement, which the same measurements determine.
MeasurementDesign reduced_design(int N, int d, std::uint64_t seed);

/// values[i] = ||P x_i||^2 = x_i^T P x_i.
MeasurementVector measure(const ProjectionMatrix& p, const MeasurementDesign& design);

/// Invert a full-design measurement: P_ii = ||P e_i||^2 and
/// 2 P_ij = ||P(e_i + e_j)||^2 - ||P e_i||^2 - ||P e_j||^2.
ProjectionMatrix reconstruct_from_full(const MeasurementVector& m, int N);

/// Invert an exact reduced-design measurement: recover the diagonal via the
/// trace, assemble the first d' columns, Gram-Schmidt d'-1 of them, enumerate
/// the sign patterns of the last basis vector consistent with orthogonality,
/// and disambiguate with the random measurement. Desk-scale (N <= 12).
ProjectionMatrix reconstruct_from_reduced(const MeasurementVector& m, const MeasurementDesign& design,
                                          int N, int d);

/// True iff measure(p, design) and measure(h, design) agree entrywise within
/// 1e-10 — an empirical probe of the designs' injectivity.
bool check_injectivity_pair(const MeasurementDesign& design, const ProjectionMatrix& p,
                            const ProjectionMatrix& h);

}  // namespace sleeve
