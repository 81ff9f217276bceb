#pragma once

#include <householder/core.hpp>

#include <cstdint>
#include <vector>

namespace householder {

struct ApplyTiming {
  Index n = 0;
  Index m = 0;
  double factored_seconds = 0.0;  // median time of one factored apply
  double dense_seconds = 0.0;     // median time of one dense matrix-vector product
};

/// Median wall time of applying a random m-factor product to a vector,
/// matrix-free versus through its dense n x n matrix.
ApplyTiming time_apply(Index n, Index m, int trials, std::uint64_t seed);

/// Runs time_apply for each m in `ms` with the same n, trials and seed.
std::vector<ApplyTiming> time_apply_sweep(Index n, const std::vector<Index>& ms, int trials,
                                          std::uint64_t seed);

}  // namespace householder
