#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "sleeve/oracle.hpp"

namespace sleeve {

/// Piecewise-polynomial interpolant of 1-D samples. Degree 3 is a natural
/// cubic spline (C^2), degree 1 is piecewise linear. Knots are strictly
/// increasing but need not be equispaced; evaluation outside the knot range
/// clamps to the nearest endpoint (with derivative 0 there). Immutable.
class Profile1D {
public:
  /// Interpolate samples at general strictly increasing knots.
  static Profile1D interpolate(std::vector<double> knots, std::vector<double> values, int degree);

  double eval(double t) const;
  double eval_derivative(double t) const;

  int degree() const { return degree_; }
  double t_min() const { return knots_.front(); }
  double t_max() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

private:
  Profile1D() = default;

  int interval(double t) const;

  int degree_ = 3;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> moments_;  // spline second derivatives at knots (degree 3)
};

/// The quasi-interpolant Q_h: interpolating piecewise polynomial of degree
/// S-1 on equispaced samples (t_i, y_i). Requires at least S+1 samples and
/// constant spacing within 1e-12; otherwise throws ArityError / SpacingError.
Profile1D quasi_interpolant(const std::vector<std::pair<double, double>>& samples, int degree = 3);

double eval_profile(const Profile1D& p, double t);
double eval_profile_derivative(const Profile1D& p, double t);

/// Sample f along the ray through `theta`: queries f(i * step * theta) for
/// i = 0..M with step = max_radius / M (M+1 queries), storing knots at the
/// squared radii (i * step)^2. The result approximates t -> g(t ||P theta||^2)
/// as a function of squared radius. Requires ||theta|| = 1 within 1e-10.
Profile1D profile_from_direction(SleeveOracle& o, const Eigen::VectorXd& theta, int M,
                                 double max_radius = 1.0);

}  // namespace sleeve
