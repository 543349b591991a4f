#include "sleeve/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "sleeve/errors.hpp"

namespace sleeve {

ProfileFunction make_profile(const std::string& name) {
  if (name == "identity")
    return {"identity", [](double t) { return t; }, [](double) { return 1.0; }};
  if (name == "tanh")
    return {"tanh", [](double t) { return std::tanh(t); },
            [](double t) {
              const double c = std::cosh(t);
              return 1.0 / (c * c);
            }};
  if (name == "sin5")
    return {"sin5", [](double t) { return std::sin(5.0 * t); },
            [](double t) { return 5.0 * std::cos(5.0 * t); }};
  throw std::invalid_argument("unknown profile '" + name + "' (known: identity, tanh, sin5)");
}

std::vector<std::string> profile_names() { return {"identity", "tanh", "sin5"}; }

SleeveOracle::SleeveOracle(Subspace hidden, ProfileFunction profile, double domain_radius)
    : hidden_(std::move(hidden)), profile_(std::move(profile)), domain_radius_(domain_radius) {
  if (domain_radius_ <= 0.0) throw std::invalid_argument("SleeveOracle: domain_radius must be positive");
}

double SleeveOracle::evaluate(const Eigen::VectorXd& x) {
  if (x.size() != hidden_.ambient_dim())
    throw DimensionError("SleeveOracle::evaluate: point dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("SleeveOracle::evaluate: non-finite point");
  ++query_count_;
  return profile_.g((hidden_.basis().transpose() * x).squaredNorm());
}

Eigen::VectorXd SleeveOracle::analytic_gradient(const Eigen::VectorXd& x) const {
  if (x.size() != hidden_.ambient_dim())
    throw DimensionError("SleeveOracle::analytic_gradient: point dimension mismatch");
  const Eigen::VectorXd px = hidden_.basis() * (hidden_.basis().transpose() * x);
  return 2.0 * profile_.dg(px.squaredNorm()) * px;
}

SleeveOracle SleeveOracle::fresh_clone() const {
  return SleeveOracle(hidden_, profile_, domain_radius_);
}

Eigen::VectorXd divided_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                            const Eigen::VectorXd& x, double h) {
  if (h <= 0.0) throw std::invalid_argument("divided_difference_gradient: h must be positive");
  const int n = static_cast<int>(x.size());
  const double f0 = f(x);
  Eigen::VectorXd g(n);
  Eigen::VectorXd xs = x;
  for (int i = 0; i < n; ++i) {
    xs[i] += h;
    g[i] = (f(xs) - f0) / h;
    xs[i] = x[i];
  }
  return g;
}

}  // namespace sleeve
