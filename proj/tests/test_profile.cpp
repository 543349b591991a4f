#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sleeve/errors.hpp"
#include "sleeve/profile.hpp"
#include "sleeve/rng.hpp"

using namespace sleeve;

namespace {

std::vector<std::pair<double, double>> sample_fn(double (*f)(double), int m, double a = 0.0,
                                                 double b = 1.0) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= m; ++i) {
    const double t = a + (b - a) * i / m;
    s.emplace_back(t, f(t));
  }
  return s;
}

double sup_error(const Profile1D& p, double (*f)(double), double a, double b, int grid = 10000) {
  double worst = 0;
  for (int i = 0; i <= grid; ++i) {
    const double t = a + (b - a) * i / grid;
    worst = std::max(worst, std::abs(p.eval(t) - f(t)));
  }
  return worst;
}

double ident(double t) { return t; }

}  // namespace

TEST_CASE("quasi_interpolant reproduces linear data exactly") {
  for (int m : {8, 13, 32}) {
    const Profile1D p = quasi_interpolant(sample_fn(&ident, m));
    CHECK(sup_error(p, &ident, 0, 1) < 1e-10);
  }
}

TEST_CASE("quasi_interpolant: tanh sup-error drops by >= 3.5x per halving") {
  double prev = -1;
  for (int m : {8, 16, 32}) {
    const Profile1D p = quasi_interpolant(sample_fn(&std::tanh, m));
    const double err = sup_error(p, &std::tanh, 0, 1);
    if (prev > 0) CHECK(prev / err >= 3.5);
    prev = err;
  }
}

TEST_CASE("quasi_interpolant convergence order: log-log slope >= 1.9") {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int m : {8, 16, 32, 64, 128}) {
    const Profile1D p = quasi_interpolant(sample_fn(&std::tanh, m));
    const double lx = std::log(1.0 / m), ly = std::log(sup_error(p, &std::tanh, 0, 1));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 1.9);
}

TEST_CASE("quasi_interpolant error cases") {
  std::vector<std::pair<double, double>> two = {{0.0, 0.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(quasi_interpolant(two), ArityError);

  auto s = sample_fn(&ident, 8);
  s[3].first += 1e-6;  // break the spacing
  CHECK_THROWS_AS(quasi_interpolant(s), SpacingError);

  CHECK_THROWS_AS(quasi_interpolant(sample_fn(&ident, 8), 2), std::invalid_argument);
}

TEST_CASE("degree-1 interpolant is piecewise linear") {
  const Profile1D p = quasi_interpolant(sample_fn(&ident, 4), 1);
  CHECK(p.eval(0.375) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(p.eval_derivative(0.6) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eval_profile: knot reproduction and clamping") {
  const auto samples = sample_fn(&std::tanh, 16);
  const Profile1D p = quasi_interpolant(samples);
  for (const auto& [t, y] : samples) CHECK(eval_profile(p, t) == doctest::Approx(y).epsilon(1e-9));
  CHECK(eval_profile(p, -0.5) == doctest::Approx(std::tanh(0.0)));
  CHECK(eval_profile(p, 2.7) == doctest::Approx(std::tanh(1.0)));

  // mid-knot accuracy of order h^2
  const double h = 1.0 / 16;
  CHECK(sup_error(p, &std::tanh, 0, 1) < 2.0 * h * h);
}

TEST_CASE("eval_profile_derivative: linear slope, tanh'(0), clamp contract") {
  const Profile1D lin = quasi_interpolant(sample_fn(&ident, 10));
  for (double t : {0.05, 0.33, 0.71, 0.99}) CHECK(eval_profile_derivative(lin, t) == doctest::Approx(1.0).epsilon(1e-9));

  const Profile1D th = quasi_interpolant(sample_fn(&std::tanh, 64));
  CHECK(std::abs(eval_profile_derivative(th, 0.0) - 1.0) < 1e-3);  // tanh'(0) = 1

  CHECK(eval_profile_derivative(th, -0.2) == 0.0);
  CHECK(eval_profile_derivative(th, 1.2) == 0.0);
}

TEST_CASE("profile_from_direction: identity profile along an in-plane direction") {
  // theta equals a basis vector of the hidden subspace, so ||P theta|| = 1
  const Subspace hidden = random_subspace(2, 6, 31);
  SleeveOracle o(hidden, make_profile("identity"));
  const Eigen::VectorXd theta = hidden.basis().col(0);
  const Profile1D p = profile_from_direction(o, theta, 16);
  CHECK(o.query_count() == 17);  // M + 1 queries
  CHECK(sup_error(p, &ident, 0, 1) <= 1e-8);

  // abscissa convention: eval at (i h)^2 returns f(i h theta)
  SleeveOracle o2 = o.fresh_clone();
  for (int i = 0; i <= 16; ++i) {
    const double r = i / 16.0;
    CHECK(eval_profile(p, r * r) == doctest::Approx(o2.evaluate(r * theta)).epsilon(1e-9));
  }
}

TEST_CASE("profile_from_direction: tanh convergence in M") {
  const Subspace hidden = random_subspace(3, 8, 77);
  const Eigen::VectorXd theta = hidden.basis().col(1);
  double prev = -1;
  for (int m : {16, 32, 64}) {
    SleeveOracle o(hidden, make_profile("tanh"));
    const Profile1D p = profile_from_direction(o, theta, m);
    CHECK(o.query_count() == m + 1);
    const double err = sup_error(p, &std::tanh, 0, 1);
    if (prev > 0) CHECK(prev / err >= 3.5);
    prev = err;
  }
}

TEST_CASE("profile_from_direction: errors") {
  SleeveOracle o(random_subspace(1, 4, 3), make_profile("identity"));
  CHECK_THROWS_AS(profile_from_direction(o, Eigen::VectorXd::Ones(4), 16), std::invalid_argument);
  const Eigen::VectorXd unit = Eigen::VectorXd::Unit(4, 0);
  CHECK_THROWS_AS(profile_from_direction(o, unit, 2), ArityError);
}

TEST_CASE("Profile1D::interpolate rejects non-increasing knots") {
  std::vector<double> knots = {0, 0.1, 0.1, 0.3, 0.4, 0.5};
  std::vector<double> vals(6, 1.0);
  CHECK_THROWS_AS(Profile1D::interpolate(knots, vals, 3), SpacingError);
}
