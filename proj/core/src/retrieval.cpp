#include "sleeve/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sleeve/errors.hpp"
#include "sleeve/rng.hpp"

namespace sleeve {

namespace {

constexpr double kMeasurementTol = 1e-8;
constexpr double kZeroEntryTol = 1e-6;  // |u_di|^2 arises from differences of order-1 terms
constexpr long kCandidateCap = 1 << 20;

// row-major index of the pair (j,k), j <= k, inside the full design
std::size_t pair_index(int j, int k, int N) {
  const long jj = j;
  return static_cast<std::size_t>(jj * N - jj * (jj - 1) / 2 + (k - j));
}

struct SignEnumerator {
  // Enumerates sign patterns of `mags` (first nonzero entry pinned positive)
  // that keep the candidate orthogonal to every u_j within tolerance.
  const std::vector<double>& mags;
  const std::vector<int>& support;
  const std::vector<Eigen::VectorXd>& us;
  std::vector<Eigen::VectorXd> found;
  long visited = 0;

  void recurse(Eigen::VectorXd& cand, std::vector<double>& partial, std::vector<double>& slack,
               std::size_t pos) {
    if (++visited > kCandidateCap)
      throw InconsistencyError("reconstruct_from_reduced: sign-candidate cap (2^20) exceeded");
    // prune: a partial dot product that the remaining entries cannot cancel
    for (std::size_t j = 0; j < us.size(); ++j)
      if (std::abs(partial[j]) - slack[j] > kMeasurementTol) return;
    if (pos == support.size()) {
      found.push_back(cand);
      return;
    }
    const int i = support[pos];
    for (int sign = 0; sign < (pos == 0 ? 1 : 2); ++sign) {
      const double v = (sign == 0 ? 1.0 : -1.0) * mags[i];
      cand[i] = v;
      for (std::size_t j = 0; j < us.size(); ++j) {
        partial[j] += v * us[j][i];
        slack[j] -= std::abs(mags[i] * us[j][i]);
      }
      recurse(cand, partial, slack, pos + 1);
      for (std::size_t j = 0; j < us.size(); ++j) {
        partial[j] -= v * us[j][i];
        slack[j] += std::abs(mags[i] * us[j][i]);
      }
      cand[i] = 0.0;
    }
  }
};

ProjectionMatrix reconstruct_reduced_direct(const MeasurementVector& m, const MeasurementDesign& design,
                                            int N, int d) {
  // diagonal: N-1 measured entries plus the trace identity P_NN = d - sum
  Eigen::VectorXd diag(N);
  for (int i = 0; i < N - 1; ++i) diag[i] = m[i];
  diag[N - 1] = d - diag.head(N - 1).sum();

  // first d columns from the pair measurements
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(N, d);
  std::size_t idx = static_cast<std::size_t>(N - 1);
  for (int j = 0; j < d; ++j) {
    cols(j, j) = diag[j];
    for (int k = j + 1; k < N; ++k) {
      const double pjk = 0.5 * (m[idx++] - diag[j] - diag[k]);
      cols(k, j) = pjk;
      if (k < d) cols(j, k) = pjk;
    }
  }

  // orthonormal basis from the first d-1 columns; they span a subspace of P
  std::vector<Eigen::VectorXd> us;
  for (int j = 0; j + 1 < d; ++j) {
    Eigen::VectorXd v = cols.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : us) v -= u.dot(v) * u;
    const double nrm = v.norm();
    if (nrm <= 1e-10)
      throw InconsistencyError("reconstruct_from_reduced: assembled columns are rank deficient");
    us.push_back(v / nrm);
  }

  // entries of the last basis vector, in absolute value
  std::vector<double> mags(N, 0.0);
  std::vector<int> support;
  for (int i = 0; i < N; ++i) {
    double s = diag[i];
    for (const auto& u : us) s -= u[i] * u[i];
    const double mag = std::sqrt(std::max(0.0, s));
    if (mag > kZeroEntryTol) {
      mags[i] = mag;
      support.push_back(i);
    }
  }
  if (support.empty())
    throw InconsistencyError("reconstruct_from_reduced: last basis vector vanished");

  Eigen::VectorXd cand = Eigen::VectorXd::Zero(N);
  std::vector<double> partial(us.size(), 0.0), slack(us.size(), 0.0);
  for (std::size_t j = 0; j < us.size(); ++j)
    for (int i : support) slack[j] += mags[i] * std::abs(us[j][i]);
  SignEnumerator en{mags, support, us, {}, 0};
  en.recurse(cand, partial, slack, 0);

  // disambiguate via the random measurement
  const Eigen::VectorXd& x = design.points.back();
  const double mx = m.back();
  std::vector<ProjectionMatrix> survivors;
  for (const auto& ud : en.found) {
    Eigen::MatrixXd basis(N, d);
    for (std::size_t j = 0; j < us.size(); ++j) basis.col(static_cast<int>(j)) = us[j];
    basis.col(d - 1) = ud / ud.norm();
    Eigen::MatrixXd p = basis * basis.transpose();
    if (std::abs(x.dot(p * x) - mx) <= kMeasurementTol) survivors.push_back(ProjectionMatrix{std::move(p)});
  }
  if (survivors.empty())
    throw InconsistencyError("reconstruct_from_reduced: no candidate matches the measurements");
  if (survivors.size() > 1)
    throw AmbiguityError("reconstruct_from_reduced: " + std::to_string(survivors.size()) +
                             " candidates survive the random measurement",
                         static_cast<int>(survivors.size()));
  return survivors.front();
}

}  // namespace

std::size_t full_design_size(int N) {
  return static_cast<std::size_t>(N) * (static_cast<std::size_t>(N) + 1) / 2;
}

std::size_t reduced_design_size(int N, int d) {
  const int de = std::min(d, N - d);
  std::size_t n = static_cast<std::size_t>(N - 1);
  for (int j = 1; j <= de; ++j) n += static_cast<std::size_t>(N - j);
  return n + 1;
}

MeasurementDesign full_design(int N) {
  if (N < 1) throw DimensionError("full_design: N must be positive");
  MeasurementDesign design{N, DesignKind::full, {}};
  design.points.reserve(full_design_size(N));
  for (int j = 0; j < N; ++j)
    for (int k = j; k < N; ++k) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
      x[j] = 1.0;
      if (k != j) x[k] = 1.0;
      design.points.push_back(std::move(x));
    }
  return design;
}

MeasurementDesign reduced_design(int N, int d, std::uint64_t seed) {
  if (d < 1 || d >= N) throw DimensionError("reduced_design: need 1 <= d < N");
  const int de = std::min(d, N - d);
  MeasurementDesign design{N, DesignKind::reduced, {}};
  design.points.reserve(reduced_design_size(N, d));
  for (int i = 0; i < N - 1; ++i) design.points.push_back(Eigen::VectorXd::Unit(N, i));
  for (int j = 0; j < de; ++j)
    for (int k = j + 1; k < N; ++k) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
      x[j] = 1.0;
      x[k] = 1.0;
      design.points.push_back(std::move(x));
    }
  RngStream rng(seed);
  design.points.push_back(rng.unit_vector(N));
  return design;
}

MeasurementVector measure(const ProjectionMatrix& p, const MeasurementDesign& design) {
  if (p.ambient_dim() != design.ambient_dim)
    throw DimensionError("measure: projection and design dimensions differ");
  MeasurementVector values;
  values.reserve(design.size());
  for (const auto& x : design.points) values.push_back(x.dot(p.m * x));
  return values;
}

ProjectionMatrix reconstruct_from_full(const MeasurementVector& m, int N) {
  if (m.size() != full_design_size(N))
    throw ArityError("reconstruct_from_full: expected " + std::to_string(full_design_size(N)) +
                     " measurements for N=" + std::to_string(N) + ", got " + std::to_string(m.size()));
  Eigen::MatrixXd p(N, N);
  for (int i = 0; i < N; ++i) p(i, i) = m[pair_index(i, i, N)];
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const double v = 0.5 * (m[pair_index(i, j, N)] - p(i, i) - p(j, j));
      p(i, j) = v;
      p(j, i) = v;
    }
  return ProjectionMatrix{std::move(p)};
}

ProjectionMatrix reconstruct_from_reduced(const MeasurementVector& m, const MeasurementDesign& design,
                                          int N, int d) {
  if (design.ambient_dim != N)
    throw DimensionError("reconstruct_from_reduced: design dimension mismatch");
  if (d < 1 || d >= N) throw DimensionError("reconstruct_from_reduced: need 1 <= d < N");
  if (m.size() != design.size() || m.size() != reduced_design_size(N, d))
    throw ArityError("reconstruct_from_reduced: measurement count does not match the design");
  const int de = std::min(d, N - d);
  if (de == d) return reconstruct_reduced_direct(m, design, N, d);
  // d > N/2: the same points determine the complement of dimension N - d
  MeasurementVector mc(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) mc[i] = design.points[i].squaredNorm() - m[i];
  ProjectionMatrix q = reconstruct_reduced_direct(mc, design, N, N - d);
  return ProjectionMatrix{Eigen::MatrixXd::Identity(N, N) - q.m};
}

bool check_injectivity_pair(const MeasurementDesign& design, const ProjectionMatrix& p,
                            const ProjectionMatrix& h) {
  const MeasurementVector mp = measure(p, design);
  const MeasurementVector mh = measure(h, design);
  for (std::size_t i = 0; i < mp.size(); ++i)
    if (std::abs(mp[i] - mh[i]) > 1e-10) return false;
  return true;
}

}  // namespace sleeve
