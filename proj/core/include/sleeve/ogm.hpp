#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sleeve/oracle.hpp"
#include "sleeve/profile.hpp"
#include "sleeve/report.hpp"
#include "sleeve/retrieval.hpp"
#include "sleeve/subspace.hpp"

namespace sleeve {

/// Frozen optimization problem: direction, surrogate profile, design and the
/// oracle values over it. Objective and gradient evaluations consume zero
/// additional oracle queries and are safe to run concurrently.
struct OgmProblem {
  int ambient_dim = 0;
  int subspace_dim = 0;  ///< dimension d of the sought projection P
  int sample_count = 0;  ///< M, profile samples along the ray
  MeasurementDesign design;
  Eigen::MatrixXd design_matrix;  ///< n x N, design points as rows
  Eigen::VectorXd theta_hat;      ///< unit direction with ||P theta|| ~ 1
  double p_hat = 1.0;             ///< estimate of ||P theta_hat||^2
  Profile1D surrogate;            ///< ghat over squared radii covering the design
  Eigen::VectorXd design_values;  ///< frozen f(x_i)
  long build_queries = 0;         ///< (N+1) + (M+1) + n
};

struct SolverParams {
  int max_iterations = 2000;
  double grad_tol = 1e-10;   ///< stop when the Riemannian gradient norm drops below
  double armijo_c = 1e-4;    ///< Armijo slope constant
  double backtrack = 0.5;    ///< line-search shrink factor, in (0,1)
  double initial_step = 1.0;
  double max_step = 0.25;    ///< cap on the tangent-step length ||t xi||_F per iteration
};

struct SolverResult {
  Subspace frame;
  std::vector<double> cost_trace;  ///< accepted cost per iteration, starting value included
  int iterations = 0;
  bool stalled = false;  ///< line search underflowed before reaching grad_tol
  double grad_norm = 0.0;
};

/// Estimate a unit direction nearly inside P: theta = divided-difference
/// gradient at a random unit point, normalized (N+1 queries). Returns
/// (theta_hat, p_hat) with p_hat = 1, the almost-sure exact value for the
/// exact gradient.
std::pair<Eigen::VectorXd, double> choose_direction(SleeveOracle& o, double h, std::uint64_t seed);

/// Run choose_direction with h = 1/M, sample the profile along theta_hat out
/// to the design's largest point norm, evaluate f over the design, freeze.
OgmProblem build_problem(SleeveOracle& o, int d, int M, MeasurementDesign design, std::uint64_t seed);

/// Assemble a problem from an externally chosen direction (test hook; no
/// direction queries, so the query cost is (M+1) + n).
OgmProblem build_problem_with_direction(SleeveOracle& o, int d, int M, MeasurementDesign design,
                                        const Eigen::VectorXd& theta_hat, double p_hat);

/// F_hat(H) = sqrt(sum_i |f(x_i) - ghat(||H x_i||^2 / p_hat)|^2).
double objective(const OgmProblem& prob, const Subspace& h);

/// F_hat on a raw N x d frame (no orthonormality requirement).
double objective_frame(const OgmProblem& prob, const Eigen::MatrixXd& y);

/// 0.5 F_hat^2, the smooth cost the solver actually minimizes.
double objective_half_sq(const OgmProblem& prob, const Eigen::MatrixXd& y);

/// Gradient of 0.5 F_hat^2 with respect to the frame entries; clamped design
/// points contribute zero slope.
Eigen::MatrixXd euclidean_gradient(const OgmProblem& prob, const Eigen::MatrixXd& y);

/// Riemannian steepest descent on the Grassmannian: tangent projection
/// xi = (I - YY^T) egrad, Armijo backtracking on cost o retraction, retraction
/// by sign-fixed QR orthonormalization, step length capped by max_step.
SolverResult grassmann_steepest_descent(const std::function<double(const Eigen::MatrixXd&)>& cost,
                                        const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& egrad,
                                        const Subspace& h0, const SolverParams& params);

/// Full pipeline: build the problem over the chosen design (full by default),
/// descend from `init`, and report the estimate of P = L^perp together with
/// its HS error, the query count and iteration count.
RecoveryReport ogm_recover(SleeveOracle& o, int d, int M, const Subspace& init,
                           const SolverParams& params, std::uint64_t seed,
                           DesignKind design_kind = DesignKind::full);

}  // namespace sleeve
