// Serial reference kernels against their OpenMP versions, and factored apply
// against dense matrix-vector multiply.

#include <householder/dictlearn.hpp>
#include <householder/generators.hpp>
#include <householder/kernels.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace householder;

namespace {

HouseholderProduct product_for(Index n, Index m) {
  GeneratorSpec spec;
  spec.n = n;
  spec.m = m;
  spec.seed = 42;
  return generate_product(spec);
}

Matrix random_block(Index n, Index p) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Matrix block(n, p);
  for (Index i = 0; i < block.size(); ++i) block.data()[i] = normal(rng);
  return block;
}

template <void (*Kernel)(std::span<const Reflector>, Matrix&)>
void BM_ApplyColumns(benchmark::State& state) {
  const Index n = state.range(0);
  const auto product = product_for(n, state.range(1));
  const Matrix input = random_block(n, n);
  Matrix block;
  for (auto _ : state) {
    block = input;
    Kernel(product.factors(), block);
    benchmark::DoNotOptimize(block.data());
  }
}

template <void (*Kernel)(const Vector&, Matrix&)>
void BM_Reflect(benchmark::State& state) {
  const Index n = state.range(0);
  const auto product = product_for(n, 1);
  Matrix block = random_block(n, n);
  for (auto _ : state) {
    Kernel(product[0].direction(), block);
    benchmark::DoNotOptimize(block.data());
  }
}

void BM_FactoredApply(benchmark::State& state) {
  const Index n = state.range(0);
  const auto product = product_for(n, state.range(1));
  const Vector x = random_block(n, 1).col(0);
  Vector work(n);
  for (auto _ : state) {
    work = x;
    kernels::apply_factors(product.factors(), work);
    benchmark::DoNotOptimize(work.data());
  }
}

void BM_DenseMatvec(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix a = materialize(product_for(n, state.range(1))).matrix();
  const Vector x = random_block(n, 1).col(0);
  Vector out(n);
  for (auto _ : state) {
    out.noalias() = a * x;
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Enumerate(benchmark::State& state, bool pruned) {
  const Index n = state.range(0);
  std::mt19937_64 rng(3);
  const Reflector h(random_unit_vector(n, rng));
  Vector x = Vector::Zero(n);
  for (Index i = 0; i < n; i += 2) x[i] = 1.0;
  const Vector y = apply(HouseholderProduct(n, {h}), x);
  for (auto _ : state) {
    auto set = pruned ? enumerate_candidates(y) : enumerate_candidates_exhaustive(y);
    benchmark::DoNotOptimize(set.candidates.data());
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_ApplyColumns, kernels::apply_factors_columns_serial)
    ->Args({256, 16})->Args({512, 32});
BENCHMARK_TEMPLATE(BM_ApplyColumns, kernels::apply_factors_columns)
    ->Args({256, 16})->Args({512, 32});
BENCHMARK_TEMPLATE(BM_Reflect, kernels::reflect_left_serial)->Arg(256)->Arg(512);
BENCHMARK_TEMPLATE(BM_Reflect, kernels::reflect_left)->Arg(256)->Arg(512);
BENCHMARK_TEMPLATE(BM_Reflect, kernels::reflect_right_serial)->Arg(256)->Arg(512);
BENCHMARK_TEMPLATE(BM_Reflect, kernels::reflect_right)->Arg(256)->Arg(512);
BENCHMARK(BM_FactoredApply)->ArgsProduct({{1024}, {8, 16, 32, 64}});
BENCHMARK(BM_DenseMatvec)->Args({1024, 8});
BENCHMARK_CAPTURE(BM_Enumerate, pruned, true)->Arg(12)->Arg(16);
BENCHMARK_CAPTURE(BM_Enumerate, exhaustive, false)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
