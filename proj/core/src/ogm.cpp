#include "sleeve/ogm.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sleeve/errors.hpp"
#include "sleeve/rng.hpp"

namespace sleeve {

namespace {

constexpr int kMaxResamples = 16;
constexpr double kDegenerateTol = 1e-12;
// Direction step for build_problem. The divided-difference bias enters the
// direction estimate as O(h) regardless of the profile resolution M, and the
// query cost (N+1) does not depend on h, so a step much finer than 1/M keeps
// the estimate of theta at the rounding level for the same budget.
constexpr double kDirectionStep = 1e-6;

Eigen::MatrixXd points_as_rows(const MeasurementDesign& design) {
  Eigen::MatrixXd x(design.size(), design.ambient_dim);
  for (std::size_t i = 0; i < design.size(); ++i) x.row(static_cast<int>(i)) = design.points[i];
  return x;
}

}  // namespace

std::pair<Eigen::VectorXd, double> choose_direction(SleeveOracle& o, double h, std::uint64_t seed) {
  if (h <= 0.0) throw std::invalid_argument("choose_direction: h must be positive");
  const int n = o.hidden_subspace().ambient_dim();
  RngStream rng(seed);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const Eigen::VectorXd eta = rng.unit_vector(n);
    const auto f = [&](const Eigen::VectorXd& x) { return o.evaluate(x); };
    const Eigen::VectorXd theta = divided_difference_gradient(f, eta, h);
    const double nrm = theta.norm();
    if (nrm >= kDegenerateTol) return {theta / nrm, 1.0};
  }
  throw DegenerateInputError("choose_direction: divided-difference gradient vanished repeatedly");
}

OgmProblem build_problem_with_direction(SleeveOracle& o, int d, int M, MeasurementDesign design,
                                        const Eigen::VectorXd& theta_hat, double p_hat) {
  const int n_amb = o.hidden_subspace().ambient_dim();
  if (design.ambient_dim != n_amb) throw DimensionError("build_problem: design dimension mismatch");
  if (d < 1 || d >= n_amb) throw DimensionError("build_problem: need 1 <= d < N");
  if (!(p_hat > 0.0)) throw std::invalid_argument("build_problem: p_hat must be positive");

  const long before = o.query_count();
  double max_radius = 1.0;
  for (const auto& x : design.points) max_radius = std::max(max_radius, x.norm());
  Profile1D surrogate = profile_from_direction(o, theta_hat, M, max_radius);

  Eigen::VectorXd values(design.size());
  for (std::size_t i = 0; i < design.size(); ++i)
    values[static_cast<int>(i)] = o.evaluate(design.points[i]);

  Eigen::MatrixXd rows = points_as_rows(design);
  return OgmProblem{n_amb,
                    d,
                    M,
                    std::move(design),
                    std::move(rows),
                    theta_hat,
                    p_hat,
                    std::move(surrogate),
                    std::move(values),
                    o.query_count() - before};
}

OgmProblem build_problem(SleeveOracle& o, int d, int M, MeasurementDesign design, std::uint64_t seed) {
  const long before = o.query_count();
  auto [theta_hat, p_hat] = choose_direction(o, kDirectionStep, seed);
  OgmProblem prob = build_problem_with_direction(o, d, M, std::move(design), theta_hat, p_hat);
  prob.build_queries = o.query_count() - before;
  return prob;
}

double objective_frame(const OgmProblem& prob, const Eigen::MatrixXd& y) {
  if (y.rows() != prob.ambient_dim || y.cols() != prob.subspace_dim)
    throw DimensionError("objective: frame must be " + std::to_string(prob.ambient_dim) + " x " +
                         std::to_string(prob.subspace_dim));
  const Eigen::VectorXd q = (prob.design_matrix * y).rowwise().squaredNorm() / prob.p_hat;
  double sum = 0.0;
  for (int k = 0; k < q.size(); ++k) {
    const double r = prob.design_values[k] - prob.surrogate.eval(q[k]);
    sum += r * r;
  }
  return std::sqrt(sum);
}

double objective(const OgmProblem& prob, const Subspace& h) { return objective_frame(prob, h.basis()); }

double objective_half_sq(const OgmProblem& prob, const Eigen::MatrixXd& y) {
  const double f = objective_frame(prob, y);
  return 0.5 * f * f;
}

Eigen::MatrixXd euclidean_gradient(const OgmProblem& prob, const Eigen::MatrixXd& y) {
  if (y.rows() != prob.ambient_dim || y.cols() != prob.subspace_dim)
    throw DimensionError("euclidean_gradient: frame dimension mismatch");
  const Eigen::MatrixXd xy = prob.design_matrix * y;  // n x d
  const Eigen::VectorXd q = xy.rowwise().squaredNorm() / prob.p_hat;
  Eigen::VectorXd w(q.size());
  for (int k = 0; k < q.size(); ++k) {
    const double r = prob.design_values[k] - prob.surrogate.eval(q[k]);
    // d/dY of 0.5 r^2 = -r ghat'(q) / p_hat * 2 x x^T Y; clamped points have slope 0
    w[k] = -2.0 * r * prob.surrogate.eval_derivative(q[k]) / prob.p_hat;
  }
  return prob.design_matrix.transpose() * (w.asDiagonal() * xy);
}

SolverResult grassmann_steepest_descent(const std::function<double(const Eigen::MatrixXd&)>& cost,
                                        const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& egrad,
                                        const Subspace& h0, const SolverParams& params) {
  if (params.backtrack <= 0.0 || params.backtrack >= 1.0)
    throw std::invalid_argument("grassmann_steepest_descent: backtrack factor must lie in (0,1)");
  if (params.max_iterations < 0 || params.grad_tol < 0 || params.armijo_c <= 0 || params.initial_step <= 0)
    throw std::invalid_argument("grassmann_steepest_descent: parameters must be positive");

  Eigen::MatrixXd y = h0.basis();
  double c = cost(y);
  Eigen::MatrixXd g = egrad(y);
  std::vector<double> trace{c};
  double t = params.initial_step;
  int it = 0;
  bool stalled = false;
  double grad_norm = 0.0;
  for (; it < params.max_iterations; ++it) {
    const Eigen::MatrixXd xi = g - y * (y.transpose() * g);  // tangent (horizontal) projection
    const double gn2 = xi.squaredNorm();
    grad_norm = std::sqrt(gn2);
    if (grad_norm <= params.grad_tol) break;
    t = std::min(2.0 * t, 1e6);
    if (params.max_step > 0.0) t = std::min(t, params.max_step / grad_norm);
    bool accepted = false;
    while (t > 1e-18) {
      const Eigen::MatrixXd y_new = orthonormalize(y - t * xi);
      const double c_new = cost(y_new);
      if (c_new <= c - params.armijo_c * t * gn2) {
        y = y_new;
        c = c_new;
        accepted = true;
        break;
      }
      t *= params.backtrack;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    g = egrad(y);
    trace.push_back(c);
  }
  return SolverResult{Subspace(std::move(y)), std::move(trace), it, stalled, grad_norm};
}

RecoveryReport ogm_recover(SleeveOracle& o, int d, int M, const Subspace& init,
                           const SolverParams& params, std::uint64_t seed, DesignKind design_kind) {
  const int n_amb = o.hidden_subspace().ambient_dim();
  if (o.hidden_subspace().dim() != d)
    throw DimensionError("ogm_recover: oracle hidden subspace must have dimension d");
  if (init.ambient_dim() != n_amb || init.dim() != d)
    throw DimensionError("ogm_recover: init frame must be N x d");

  const auto start = std::chrono::steady_clock::now();
  const long before = o.query_count();
  MeasurementDesign design = design_kind == DesignKind::reduced
                                 ? reduced_design(n_amb, d, RngStream::derive(seed, 0x9d))
                                 : full_design(n_amb);
  const OgmProblem prob = build_problem(o, d, M, std::move(design), seed);
  const auto cost = [&prob](const Eigen::MatrixXd& y) { return objective_half_sq(prob, y); };
  const auto grad = [&prob](const Eigen::MatrixXd& y) { return euclidean_gradient(prob, y); };
  SolverResult res = grassmann_steepest_descent(cost, grad, init, params);
  const double err = subspace_distance(res.frame, o.hidden_subspace());
  const auto wall =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return RecoveryReport{std::move(res.frame), err, o.query_count() - before, res.iterations,
                        static_cast<long>(wall.count())};
}

}  // namespace sleeve
