#include <householder/generators.hpp>
#include <householder/kernels.hpp>
#include <householder/timing.hpp>

#include <algorithm>
#include <chrono>

namespace householder {

namespace {

using Clock = std::chrono::steady_clock;

// Seconds per call, from a batch long enough to swamp clock resolution.
template <class Fn>
double seconds_per_call(Fn&& fn) {
  constexpr double kMinBatch = 2e-3;
  long reps = 1;
  for (;;) {
    const auto start = Clock::now();
    for (long r = 0; r < reps; ++r) fn();
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= kMinBatch) return elapsed / static_cast<double>(reps);
    reps *= 2;
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

ApplyTiming time_apply(Index n, Index m, int trials, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.m = m;
  spec.seed = seed;
  const HouseholderProduct product = generate_product(spec);
  const Matrix dense = materialize(product).matrix();

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const Vector x = random_unit_vector(n, rng);
  Vector work(n);
  Vector out(n);
  volatile double sink = 0.0;

  std::vector<double> factored;
  std::vector<double> direct;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    factored.push_back(seconds_per_call([&] {
      work = x;
      kernels::apply_factors(product.factors(), work);
      sink = sink + work[0];
    }));
    direct.push_back(seconds_per_call([&] {
      out.noalias() = dense * x;
      sink = sink + out[0];
    }));
  }
  return {n, m, median(factored), median(direct)};
}

std::vector<ApplyTiming> time_apply_sweep(Index n, const std::vector<Index>& ms, int trials,
                                          std::uint64_t seed) {
  std::vector<ApplyTiming> out;
  for (Index m : ms) out.push_back(time_apply(n, m, trials, seed));
  return out;
}

}  // namespace householder
