#include "sleeve/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sleeve/errors.hpp"

namespace sleeve {

namespace {

// Natural cubic spline moments (second derivatives at the knots) for general
// strictly increasing knots, by the Thomas algorithm. M_0 = M_{n-1} = 0.
std::vector<double> natural_spline_moments(const std::vector<double>& t, const std::vector<double>& y) {
  const int n = static_cast<int>(t.size());
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  const int k = n - 2;  // unknown interior moments
  std::vector<double> diag(k), rhs(k), upper(k);
  for (int i = 1; i <= k; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    diag[i - 1] = (h0 + h1) / 3.0;
    upper[i - 1] = h1 / 6.0;
    rhs[i - 1] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
  }
  // forward sweep; sub-diagonal entry for row i is h_i/6 = upper[i-1]
  for (int i = 1; i < k; ++i) {
    const double w = upper[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m[k] = rhs[k - 1] / diag[k - 1];
  for (int i = k - 1; i >= 1; --i) m[i] = (rhs[i - 1] - upper[i - 1] * m[i]) / diag[i - 1];
  return m;
}

}  // namespace

Profile1D Profile1D::interpolate(std::vector<double> knots, std::vector<double> values, int degree) {
  if (degree != 1 && degree != 3)
    throw std::invalid_argument("Profile1D: supported degrees are 1 (linear) and 3 (cubic)");
  if (knots.size() != values.size())
    throw ArityError("Profile1D: knot/value count mismatch");
  const std::size_t min_samples = static_cast<std::size_t>(degree) + 2;  // S + 1 with S = degree + 1
  if (knots.size() < min_samples)
    throw ArityError("Profile1D: need at least " + std::to_string(min_samples) + " samples for degree " +
                     std::to_string(degree) + ", got " + std::to_string(knots.size()));
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i + 1] > knots[i]))
      throw SpacingError("Profile1D: knots must be strictly increasing (index " + std::to_string(i + 1) + ")");

  Profile1D p;
  p.degree_ = degree;
  p.knots_ = std::move(knots);
  p.values_ = std::move(values);
  if (degree == 3) p.moments_ = natural_spline_moments(p.knots_, p.values_);
  return p;
}

int Profile1D::interval(double t) const {
  // index i with knots_[i] <= t < knots_[i+1], clamped to valid pieces
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  int i = static_cast<int>(it - knots_.begin()) - 1;
  i = std::max(0, std::min(i, static_cast<int>(knots_.size()) - 2));
  return i;
}

double Profile1D::eval(double t) const {
  if (t <= t_min()) return values_.front();
  if (t >= t_max()) return values_.back();
  const int i = interval(t);
  const double h = knots_[i + 1] - knots_[i];
  const double a = knots_[i + 1] - t;
  const double b = t - knots_[i];
  if (degree_ == 1) return (values_[i] * a + values_[i + 1] * b) / h;
  return moments_[i] * a * a * a / (6.0 * h) + moments_[i + 1] * b * b * b / (6.0 * h) +
         (values_[i] / h - moments_[i] * h / 6.0) * a + (values_[i + 1] / h - moments_[i + 1] * h / 6.0) * b;
}

double Profile1D::eval_derivative(double t) const {
  // clamped regions are constant
  if (t < t_min() || t > t_max()) return 0.0;
  const int i = interval(t);
  const double h = knots_[i + 1] - knots_[i];
  if (degree_ == 1) return (values_[i + 1] - values_[i]) / h;
  const double a = knots_[i + 1] - t;
  const double b = t - knots_[i];
  return -moments_[i] * a * a / (2.0 * h) + moments_[i + 1] * b * b / (2.0 * h) -
         (values_[i] / h - moments_[i] * h / 6.0) + (values_[i + 1] / h - moments_[i + 1] * h / 6.0);
}

Profile1D quasi_interpolant(const std::vector<std::pair<double, double>>& samples, int degree) {
  const std::size_t min_samples = static_cast<std::size_t>(degree) + 2;
  if (samples.size() < min_samples)
    throw ArityError("quasi_interpolant: need at least " + std::to_string(min_samples) +
                     " samples for degree " + std::to_string(degree) + ", got " +
                     std::to_string(samples.size()));
  std::vector<double> knots(samples.size()), values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    knots[i] = samples[i].first;
    values[i] = samples[i].second;
  }
  const double h0 = knots[1] - knots[0];
  if (!(h0 > 0.0)) throw SpacingError("quasi_interpolant: abscissae must be strictly increasing");
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (std::abs((knots[i + 1] - knots[i]) - h0) > 1e-12)
      throw SpacingError("quasi_interpolant: abscissae are not equispaced (index " + std::to_string(i + 1) +
                         ")");
  return Profile1D::interpolate(std::move(knots), std::move(values), degree);
}

double eval_profile(const Profile1D& p, double t) { return p.eval(t); }

double eval_profile_derivative(const Profile1D& p, double t) { return p.eval_derivative(t); }

Profile1D profile_from_direction(SleeveOracle& o, const Eigen::VectorXd& theta, int M,
                                 double max_radius) {
  if (std::abs(theta.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("profile_from_direction: theta must be a unit vector");
  if (max_radius <= 0.0) throw std::invalid_argument("profile_from_direction: max_radius must be positive");
  if (M < 1) throw ArityError("profile_from_direction: M must be at least 1");
  const double step = max_radius / M;
  std::vector<double> knots(M + 1), values(M + 1);
  for (int i = 0; i <= M; ++i) {
    const double r = i * step;
    knots[i] = r * r;
    values[i] = o.evaluate(r * theta);
  }
  return Profile1D::interpolate(std::move(knots), std::move(values), 3);
}

}  // namespace sleeve
