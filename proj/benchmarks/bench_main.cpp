#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "signbal/balance.hpp"
#include "signbal/bruhat.hpp"
#include "signbal/matrix.hpp"

using namespace signbal;

namespace {

std::vector<Mat> random_invertible(const Field& f, int n, int count) {
  std::mt19937_64 rng(42);
  std::vector<Mat> out;
  while (int(out.size()) < count) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.set(i, j, unsigned(rng() % f.q()));
    if (!m.det().is_zero()) out.push_back(std::move(m));
  }
  return out;
}

void BM_MulGeneric(benchmark::State& state) {
  Field f2 = Field::make(2, 1);
  auto ms = random_invertible(f2, int(state.range(0)), 32);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        detail::mul_generic(ms[i % 32], ms[(i + 1) % 32]));
    ++i;
  }
}
BENCHMARK(BM_MulGeneric)->Arg(4)->Arg(8);

void BM_MulPacked(benchmark::State& state) {
  Field f2 = Field::make(2, 1);
  auto ms = random_invertible(f2, int(state.range(0)), 32);
  std::vector<PackedMat> ps;
  for (const Mat& m : ms) ps.push_back(PackedMat::pack(m));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps[i % 32] * ps[(i + 1) % 32]);
    ++i;
  }
}
BENCHMARK(BM_MulPacked)->Arg(4)->Arg(8);

void BM_InversePacked(benchmark::State& state) {
  Field f2 = Field::make(2, 1);
  auto ms = random_invertible(f2, 6, 32);
  std::vector<PackedMat> ps;
  for (const Mat& m : ms) ps.push_back(PackedMat::pack(m));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps[i % 32].inverse());
    ++i;
  }
}
BENCHMARK(BM_InversePacked);

void BM_Decompose(benchmark::State& state) {
  Field f3 = Field::make(3, 1);
  auto ms = random_invertible(f3, 5, 32);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(ms[i % 32]));
    ++i;
  }
}
BENCHMARK(BM_Decompose);

void BM_CanonicalRep(benchmark::State& state) {
  Field f2 = Field::make(2, 1);
  auto ms = random_invertible(f2, 8, 32);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_rep(ms[i % 32]));
    ++i;
  }
}
BENCHMARK(BM_CanonicalRep);

void BM_GenFunGl(benchmark::State& state) {
  Field f2 = Field::make(2, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_fun_gl(int(state.range(0)), f2, Stat::Ones));
}
BENCHMARK(BM_GenFunGl)->Arg(2)->Arg(3);

void BM_SpClosure(benchmark::State& state) {
  for (auto _ : state) {
    SpGroup sp(int(state.range(0)));
    benchmark::DoNotOptimize(sp.size());
  }
}
BENCHMARK(BM_SpClosure)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ImbalanceStructured(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(imbalance_gl_structured(int(state.range(0)), 2));
}
BENCHMARK(BM_ImbalanceStructured)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
