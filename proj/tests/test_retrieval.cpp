#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sleeve/errors.hpp"
#include "sleeve/retrieval.hpp"
#include "sleeve/rng.hpp"

using namespace sleeve;

TEST_CASE("full_design: enumeration order, count, point norms") {
  const MeasurementDesign d2 = full_design(2);
  REQUIRE(d2.size() == 3);
  CHECK((d2.points[0] - Eigen::Vector2d(1, 0)).norm() == 0.0);
  CHECK((d2.points[1] - Eigen::Vector2d(1, 1)).norm() == 0.0);
  CHECK((d2.points[2] - Eigen::Vector2d(0, 1)).norm() == 0.0);

  const MeasurementDesign d10 = full_design(10);
  CHECK(d10.size() == 55);
  for (const auto& x : d10.points) {
    const double n2 = x.squaredNorm();
    CHECK((n2 == doctest::Approx(1.0) || n2 == doctest::Approx(2.0)));
  }
}

TEST_CASE("reduced_design: point sets and counts") {
  const MeasurementDesign d = reduced_design(3, 1, 7);
  REQUIRE(d.size() == 5);
  CHECK((d.points[0] - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);
  CHECK((d.points[1] - Eigen::Vector3d(0, 1, 0)).norm() == 0.0);
  CHECK((d.points[2] - Eigen::Vector3d(1, 1, 0)).norm() == 0.0);
  CHECK((d.points[3] - Eigen::Vector3d(1, 0, 1)).norm() == 0.0);
  CHECK(d.points[4].norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(reduced_design(10, 1, 3).size() == 19);

  // strictly cheaper than the full design except for the degenerate N=2,
  // where both designs need 3 points
  CHECK(reduced_design_size(2, 1) == full_design_size(2));
  for (int n = 3; n <= 50; ++n)
    for (int dd = 1; dd < n; ++dd) CHECK(reduced_design_size(n, dd) < full_design_size(n));

  CHECK_THROWS_AS(reduced_design(5, 5, 1), DimensionError);
}

TEST_CASE("measure: hand values") {
  const MeasurementDesign d2 = full_design(2);
  const ProjectionMatrix pd{(Eigen::MatrixXd(2, 2) << 1, 0, 0, 0).finished()};
  MeasurementVector m = measure(pd, d2);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(1.0));
  CHECK(m[2] == doctest::Approx(0.0));

  const ProjectionMatrix half{(Eigen::MatrixXd(2, 2) << 0.5, 0.5, 0.5, 0.5).finished()};
  m = measure(half, d2);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[1] == doctest::Approx(2.0));
  CHECK(m[2] == doctest::Approx(0.5));

  const ProjectionMatrix eye{Eigen::MatrixXd::Identity(4, 4)};
  const MeasurementDesign d4 = full_design(4);
  m = measure(eye, d4);
  for (std::size_t i = 0; i < d4.size(); ++i) CHECK(m[i] == doctest::Approx(d4.points[i].squaredNorm()));

  CHECK_THROWS_AS(measure(eye, d2), DimensionError);
}

TEST_CASE("measurement values are bounded by the point norms") {
  for (int t = 0; t < 20; ++t) {
    const ProjectionMatrix p = projection_matrix(random_subspace(1 + t % 5, 8, RngStream::derive(3, t)));
    const MeasurementDesign d = full_design(8);
    const MeasurementVector m = measure(p, d);
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(m[i] >= -1e-12);
      CHECK(m[i] <= d.points[i].squaredNorm() + 1e-12);
    }
  }
}

TEST_CASE("reconstruct_from_full: hand cases and round trips") {
  const ProjectionMatrix half{(Eigen::MatrixXd(2, 2) << 0.5, 0.5, 0.5, 0.5).finished()};
  ProjectionMatrix rec = reconstruct_from_full(measure(half, full_design(2)), 2);
  CHECK((rec.m - half.m).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
  diag(0, 0) = 1;
  rec = reconstruct_from_full(measure(ProjectionMatrix{diag}, full_design(3)), 3);
  CHECK((rec.m - diag).cwiseAbs().maxCoeff() < 1e-14);

  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 19;
    const int d = 1 + t % n;
    const ProjectionMatrix p = projection_matrix(random_subspace(d, n, RngStream::derive(9, t)));
    rec = reconstruct_from_full(measure(p, full_design(n)), n);
    CHECK((rec.m - p.m).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(rec.m.trace() - d) <= 1e-9);
  }

  CHECK_THROWS_AS(reconstruct_from_full(MeasurementVector{1.0, 2.0}, 2), ArityError);
}

TEST_CASE("reconstruct_from_reduced: lines (d=1) round trip") {
  for (int t = 0; t < 30; ++t) {
    const int n = 3 + t % 10;  // up to N = 12
    const ProjectionMatrix p = projection_matrix(random_subspace(1, n, RngStream::derive(13, t)));
    const MeasurementDesign design = reduced_design(n, 1, RngStream::derive(14, t));
    const ProjectionMatrix rec = reconstruct_from_reduced(measure(p, design), design, n, 1);
    CHECK(hs_distance(p, rec) < 1e-8);
  }
}

TEST_CASE("reconstruct_from_reduced: axis-aligned last basis vector") {
  // d=1 lines along coordinate axes: a single-entry sign pattern
  for (int k : {0, 3, 5}) {
    Eigen::MatrixXd line = Eigen::MatrixXd::Zero(6, 1);
    line(k, 0) = 1;
    const ProjectionMatrix p = projection_matrix(Subspace(line));
    const MeasurementDesign design = reduced_design(6, 1, 5 + k);
    const ProjectionMatrix rec = reconstruct_from_reduced(measure(p, design), design, 6, 1);
    CHECK(hs_distance(p, rec) < 1e-10);
  }

  // d=2 with the second basis vector axis-aligned (first column of P nonzero)
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(6, 2);
  basis(0, 0) = 1;
  basis(4, 1) = 1;
  const ProjectionMatrix p = projection_matrix(Subspace(basis));
  const MeasurementDesign design = reduced_design(6, 2, 5);
  const ProjectionMatrix rec = reconstruct_from_reduced(measure(p, design), design, 6, 2);
  CHECK(hs_distance(p, rec) < 1e-10);
}

TEST_CASE("reconstruct_from_reduced: (8,3) ensemble and validity") {
  for (int t = 0; t < 20; ++t) {
    const ProjectionMatrix p = projection_matrix(random_subspace(3, 8, RngStream::derive(15, t)));
    const MeasurementDesign design = reduced_design(8, 3, RngStream::derive(16, t));
    const ProjectionMatrix rec = reconstruct_from_reduced(measure(p, design), design, 8, 3);
    CHECK(hs_distance(p, rec) < 1e-8);
    CHECK(is_valid_projection(rec.m, 1e-8));
  }
}

TEST_CASE("reconstruct_from_reduced: d > N/2 goes through the complement") {
  for (int t = 0; t < 15; ++t) {
    const ProjectionMatrix p = projection_matrix(random_subspace(5, 8, RngStream::derive(17, t)));
    const MeasurementDesign design = reduced_design(8, 5, RngStream::derive(18, t));
    CHECK(design.size() == reduced_design_size(8, 5));
    CHECK(design.size() == reduced_design_size(8, 3));  // built for min(d, N-d)
    const ProjectionMatrix rec = reconstruct_from_reduced(measure(p, design), design, 8, 5);
    CHECK(hs_distance(p, rec) < 1e-8);
  }
}

TEST_CASE("reconstruct_from_reduced: corrupted measurements are rejected") {
  const ProjectionMatrix p = projection_matrix(random_subspace(2, 7, 19));
  const MeasurementDesign design = reduced_design(7, 2, 20);
  MeasurementVector m = measure(p, design);
  m.back() += 0.5;  // break the random measurement: nothing can match
  CHECK_THROWS_AS(reconstruct_from_reduced(m, design, 7, 2), InconsistencyError);

  MeasurementVector wrong(3, 0.0);
  CHECK_THROWS_AS(reconstruct_from_reduced(wrong, design, 7, 2), ArityError);
}

TEST_CASE("complement consistency: measure(I - P) = ||x||^2 - measure(P)") {
  const ProjectionMatrix p = projection_matrix(random_subspace(3, 9, 23));
  const ProjectionMatrix pc{Eigen::MatrixXd::Identity(9, 9) - p.m};
  const MeasurementDesign design = full_design(9);
  const MeasurementVector mp = measure(p, design);
  const MeasurementVector mc = measure(pc, design);
  for (std::size_t i = 0; i < mp.size(); ++i)
    CHECK(mc[i] == doctest::Approx(design.points[i].squaredNorm() - mp[i]).epsilon(1e-10));
}

TEST_CASE("check_injectivity_pair: identical vs distinct projections") {
  const ProjectionMatrix p = projection_matrix(random_subspace(3, 10, 31));
  const MeasurementDesign full = full_design(10);
  CHECK(check_injectivity_pair(full, p, p));

  const MeasurementDesign red = reduced_design(10, 3, 37);
  for (int t = 0; t < 200; ++t) {
    const ProjectionMatrix a = projection_matrix(random_subspace(3, 10, RngStream::derive(41, t)));
    const ProjectionMatrix b = projection_matrix(random_subspace(3, 10, RngStream::derive(43, t)));
    if (hs_distance(a, b) <= 1e-6) continue;
    CHECK_FALSE(check_injectivity_pair(full, a, b));
    CHECK_FALSE(check_injectivity_pair(red, a, b));
  }
}
