#include <benchmark/benchmark.h>

#include "sleeve/atpe.hpp"
#include "sleeve/ogm.hpp"
#include "sleeve/rng.hpp"

using namespace sleeve;

namespace {

SleeveOracle make_oracle(int n, int d, const char* profile, std::uint64_t seed) {
  return SleeveOracle(random_subspace(d, n, seed), make_profile(profile));
}

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SleeveOracle o = make_oracle(n, n / 2, "tanh", 1);
  const Eigen::VectorXd x = RngStream(2).unit_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(o.evaluate(x));
}
BENCHMARK(BM_Evaluate)->Arg(10)->Arg(50)->Arg(200);

void BM_ObjectiveFrame(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  SleeveOracle o = make_oracle(10, d, "tanh", 3);
  const OgmProblem prob = build_problem(o, d, 64, full_design(10), 5);
  const Eigen::MatrixXd y = random_subspace(d, 10, 7).basis();
  for (auto _ : state) benchmark::DoNotOptimize(objective_frame(prob, y));
}
BENCHMARK(BM_ObjectiveFrame)->Arg(1)->Arg(8);

void BM_EuclideanGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  SleeveOracle o = make_oracle(10, d, "tanh", 3);
  const OgmProblem prob = build_problem(o, d, 64, full_design(10), 5);
  const Eigen::MatrixXd y = random_subspace(d, 10, 7).basis();
  for (auto _ : state) benchmark::DoNotOptimize(euclidean_gradient(prob, y));
}
BENCHMARK(BM_EuclideanGradient)->Arg(1)->Arg(8);

void BM_OgmRecover(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    SleeveOracle o = make_oracle(10, 1, "tanh", 11);
    const Subspace init = random_rotation_within(o.hidden_subspace(), M_PI / 3, 13);
    state.ResumeTiming();
    benchmark::DoNotOptimize(ogm_recover(o, 1, m, init, SolverParams{}, 17));
  }
}
BENCHMARK(BM_OgmRecover)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Atpe(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    SleeveOracle o = make_oracle(n, n - 1, "tanh", 19);  // hidden dim N-1, d = 1
    state.ResumeTiming();
    benchmark::DoNotOptimize(atpe(o, 1, 1e-3, 23));
  }
}
BENCHMARK(BM_Atpe)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ReconstructFull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProjectionMatrix p = projection_matrix(random_subspace(n / 2, n, 29));
  const MeasurementDesign design = full_design(n);
  const MeasurementVector m = measure(p, design);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_from_full(m, n));
}
BENCHMARK(BM_ReconstructFull)->Arg(10)->Arg(20);

void BM_ReconstructReduced(benchmark::State& state) {
  const int n = 12, d = 2;
  const ProjectionMatrix p = projection_matrix(random_subspace(d, n, 31));
  const MeasurementDesign design = reduced_design(n, d, 37);
  const MeasurementVector m = measure(p, design);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_from_reduced(m, design, n, d));
}
BENCHMARK(BM_ReconstructReduced);

void BM_ProfileEval(benchmark::State& state) {
  SleeveOracle o = make_oracle(10, 2, "tanh", 41);
  const Eigen::VectorXd theta = o.hidden_subspace().basis().col(0);
  const Profile1D p = profile_from_direction(o, theta, 128);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.eval(t));
    t += 1e-4;
    if (t > 1.0) t = 0.0;
  }
}
BENCHMARK(BM_ProfileEval);

void BM_RandomSubspace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_subspace(n / 2, n, ++seed));
}
BENCHMARK(BM_RandomSubspace)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
