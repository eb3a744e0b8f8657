#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bcdual/duality.hpp"
#include "bcdual/matkit.hpp"
#include "bcdual/rsvd.hpp"
#include "bcdual/sutherland.hpp"

using namespace bcdual;

namespace {

ModelParams params(int n) { return ModelParams{-1.0, 1.3, 0.6, n}; }

PhasePointS point_s(int n) {
  PhasePointS pt{RVector(n), RVector(n)};
  for (int c = 0; c < n; ++c) {
    pt.q(c) = 0.5 + 0.8 * (n - c);
    pt.p(c) = 0.3 * (c % 2 ? -1 : 1);
  }
  return pt;
}

PhasePointR point_r(int n) {
  PhasePointR pt{RVector(n), RVector(n)};
  for (int c = 0; c < n; ++c) {
    pt.lambda(c) = 0.4 + 0.9 * (n - c);
    pt.theta(c) = 0.2 * (c % 2 ? -1 : 1);
  }
  return pt;
}

CMatrix random_hermitian(int dim) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m + m.adjoint();
}

const std::vector<double> kTimes = [] {
  std::vector<double> t;
  for (int k = 0; k <= 10; ++k) t.push_back(0.1 * k);
  return t;
}();

}  // namespace

static void BM_HermitianEig(benchmark::State& state) {
  const CMatrix m = random_hermitian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(matkit::hermitian_eig_desc(m));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8);

static void BM_Expm(benchmark::State& state) {
  const CMatrix m = 0.5 * random_hermitian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(matkit::expm(m));
}
BENCHMARK(BM_Expm)->Arg(2)->Arg(4)->Arg(8);

static void BM_SToR(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointS pt = point_s(n);
  for (auto _ : state) benchmark::DoNotOptimize(duality::s_to_r(params(n), pt));
}
BENCHMARK(BM_SToR)->DenseRange(1, 4);

static void BM_RToS(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointR pt = point_r(n);
  for (auto _ : state) benchmark::DoNotOptimize(duality::r_to_s(params(n), pt));
}
BENCHMARK(BM_RToS)->DenseRange(1, 4);

static void BM_LaxA(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointR pt = point_r(n);
  for (auto _ : state) benchmark::DoNotOptimize(rsvd::lax_A(params(n), pt));
}
BENCHMARK(BM_LaxA)->DenseRange(1, 4);

static void BM_SutherlandAlgebraic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointS pt = point_s(n);
  for (auto _ : state) benchmark::DoNotOptimize(sutherland::solve_algebraic(params(n), pt, kTimes));
}
BENCHMARK(BM_SutherlandAlgebraic)->Arg(2)->Arg(4);

static void BM_SutherlandOde(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointS pt = point_s(n);
  for (auto _ : state) benchmark::DoNotOptimize(sutherland::solve_ode(params(n), pt, kTimes));
}
BENCHMARK(BM_SutherlandOde)->Arg(2)->Arg(4);

static void BM_RsvdAlgebraic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointR pt = point_r(n);
  for (auto _ : state) benchmark::DoNotOptimize(rsvd::solve_algebraic(params(n), pt, kTimes));
}
BENCHMARK(BM_RsvdAlgebraic)->Arg(2)->Arg(4);

static void BM_RsvdOde(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhasePointR pt = point_r(n);
  for (auto _ : state) benchmark::DoNotOptimize(rsvd::solve_ode(params(n), pt, kTimes));
}
BENCHMARK(BM_RsvdOde)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
