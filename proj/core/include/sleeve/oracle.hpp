#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "sleeve/subspace.hpp"

namespace sleeve {

/// Named 1-D profile g with its derivative. Built-ins are smooth on [0, 2.5],
/// wide enough to cover every measurement-design point (squared norms reach 2).
struct ProfileFunction {
  std::string name;
  std::function<double(double)> g;
  std::function<double(double)> dg;
};

/// Registry lookup for "identity", "tanh", "sin5". Throws std::invalid_argument
/// for unknown names.
ProfileFunction make_profile(const std::string& name);

std::vector<std::string> profile_names();

/// Black-box point-query access to f(x) = g(||Px||^2), where P projects onto
/// the hidden subspace. Counts every evaluate() call; the counter is never
/// reset implicitly. Single-writer: give each concurrent trial its own clone.
class SleeveOracle {
public:
  SleeveOracle(Subspace hidden, ProfileFunction profile, double domain_radius = 1.0);

  /// g(||Px||^2); increments the query counter.
  double evaluate(const Eigen::VectorXd& x);

  /// 2 g'(||Px||^2) Px. Privileged test access: does not touch the counter.
  Eigen::VectorXd analytic_gradient(const Eigen::VectorXd& x) const;

  const Subspace& hidden_subspace() const { return hidden_; }
  const ProfileFunction& profile() const { return profile_; }
  double domain_radius() const { return domain_radius_; }
  long query_count() const { return query_count_; }
  void reset_query_count() { query_count_ = 0; }

  /// Copy with the same ground truth and a zeroed counter.
  SleeveOracle fresh_clone() const;

private:
  Subspace hidden_;
  ProfileFunction profile_;
  double domain_radius_;
  long query_count_ = 0;
};

/// Forward divided-difference gradient [f(x + h e_i) - f(x)] / h, i = 1..n,
/// using exactly n + 1 evaluations of f.
Eigen::VectorXd divided_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                            const Eigen::VectorXd& x, double h);

}  // namespace sleeve
