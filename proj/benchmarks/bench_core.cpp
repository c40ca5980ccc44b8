// Micro-benchmarks for the decomposition entry points.

#include <benchmark/benchmark.h>

#include <random>

#include "bruhat/bruhat.hpp"
#include "bruhat/etd.hpp"
#include "bruhat/ldu.hpp"
#include "bruhat/matrix.hpp"
#include "bruhat/minors.hpp"

namespace {

using namespace bruhat;

Matrix<Int> random_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_int_distribution<int> entry(-9, 9);
  Matrix<Int> a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = Int(entry(rng));
  return a;
}

Matrix<Int> random_generic(int n) {
  std::mt19937 rng(0xBE7Cu + static_cast<unsigned>(n));
  for (;;) {
    Matrix<Int> a = random_matrix(rng, n, n);
    if (has_generic_profile(a)) return a;
  }
}

void BM_ldu_full(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix<Int> a = random_generic(n);
  for (auto _ : state) {
    OpCounter counter;
    benchmark::DoNotOptimize(ldu_full(a, counter));
  }
}
BENCHMARK(BM_ldu_full)->Arg(4)->Arg(8)->Arg(16);

void BM_etd_square(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(0xE7D0u + static_cast<unsigned>(n));
  const Matrix<Int> a = random_matrix(rng, n, n);
  for (auto _ : state) {
    OpCounter counter;
    benchmark::DoNotOptimize(etd(a, counter));
  }
}
BENCHMARK(BM_etd_square)->Arg(8)->Arg(16);

void BM_etd_rectangular(benchmark::State& state) {
  std::mt19937 rng(0xE7D1u);
  const Matrix<Int> a = random_matrix(rng, 12, 8);
  for (auto _ : state) {
    OpCounter counter;
    benchmark::DoNotOptimize(etd(a, counter));
  }
}
BENCHMARK(BM_etd_rectangular);

void BM_bruhat_general(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(0xB40Au + static_cast<unsigned>(n));
  const Matrix<Int> a = random_matrix(rng, n, n);
  for (auto _ : state) {
    OpCounter counter;
    benchmark::DoNotOptimize(bruhat_general(a, counter));
  }
}
BENCHMARK(BM_bruhat_general)->Arg(8);

void BM_bareiss_det(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(0xDE70u + static_cast<unsigned>(n));
  const Matrix<Int> a = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(bareiss_det(a));
}
BENCHMARK(BM_bareiss_det)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
