#include <benchmark/benchmark.h>

#include <cstdint>

#include "hrnr/matpoly.hpp"
#include "hrnr/matrix_range.hpp"
#include "hrnr/numkit.hpp"
#include "hrnr/poly_range.hpp"

namespace {

hrnr::CMatrix random_matrix(int n, std::uint64_t seed) {
  hrnr::CounterRng rng(seed);
  hrnr::CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = rng.normal_complex();
    }
  }
  return a;
}

hrnr::MatrixPolynomial random_poly(int n, int m, std::uint64_t seed) {
  std::vector<hrnr::CMatrix> coeffs;
  for (int j = 0; j <= m; ++j) {
    coeffs.push_back(random_matrix(n, seed + static_cast<std::uint64_t>(j)));
  }
  return hrnr::MatrixPolynomial(std::move(coeffs));
}

void BM_HermitianEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hrnr::CMatrix a = random_matrix(n, 11);
  const auto [re, im] = hrnr::hermitian_split(a);
  std::vector<double> values;
  for (auto _ : state) {
    hrnr::CMatrix h = re;
    hrnr::hermitian_eigenvalues_inplace(h, values);
    benchmark::DoNotOptimize(values);
  }
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(5)->Arg(8)->Arg(15);

void BM_MemberZero(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hrnr::CMatrix a = random_matrix(n, 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrnr::member_zero(a, 2));
  }
}
BENCHMARK(BM_MemberZero)->Arg(4)->Arg(5)->Arg(8);

void BM_MemberZeroEarlyExit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hrnr::CMatrix a = random_matrix(n, 23);
  hrnr::MemberOptions opts;
  opts.n_theta = 24;
  opts.refine_tol = 0.0;
  opts.early_exit_out = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrnr::member_zero(a, 2, opts));
  }
}
BENCHMARK(BM_MemberZeroEarlyExit)->Arg(4)->Arg(5)->Arg(8);

void BM_RegionPolygon(benchmark::State& state) {
  const hrnr::CMatrix a = random_matrix(5, 37);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrnr::region_polygon(a, 2, state.range(0)));
  }
}
BENCHMARK(BM_RegionPolygon)->Arg(64)->Arg(256)->Arg(1024);

void BM_PolyMember(benchmark::State& state) {
  const hrnr::MatrixPolynomial l = random_poly(5, 3, 51);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrnr::member(l, 2, hrnr::Complex(0.3, -0.7)));
  }
}
BENCHMARK(BM_PolyMember);

void BM_GridScanSmall(benchmark::State& state) {
  const hrnr::MatrixPolynomial l = random_poly(4, 2, 77);
  const hrnr::GridWindow w{-2.0, 2.0, -2.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hrnr::grid_scan(l, 2, w, 16, 16));
  }
}
BENCHMARK(BM_GridScanSmall);

}  // namespace

BENCHMARK_MAIN();
