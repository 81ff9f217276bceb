#pragma once

// Seeded random instances: products of reflectors with directions drawn
// from several distributions, symmetric orthogonal matrices, and Haar
// orthogonal matrices.

#include <householder/core.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace householder {

enum class Distribution { gaussian, sparse, correlated, bernoulli, exponential, symmetric };

std::string_view to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);

inline constexpr Distribution kAllDistributions[] = {
    Distribution::gaussian,  Distribution::sparse,      Distribution::correlated,
    Distribution::bernoulli, Distribution::exponential, Distribution::symmetric};

struct GeneratorSpec {
  Distribution distribution = Distribution::gaussian;
  Index n = 500;
  Index m = 25;
  std::uint64_t seed = 1;
  /// Fraction of nonzero entries per direction for Distribution::sparse.
  double sparse_fraction = 0.02;
};

/// Throws InvalidInput unless 1 <= m <= n and 0 < sparse_fraction <= 1.
void validate(const GeneratorSpec& spec);

/// Number of nonzeros per sparse direction, ceil(fraction * n).
Index sparse_support(const GeneratorSpec& spec);

/// The m reflectors of the instance. For Distribution::symmetric they are
/// mutually orthogonal, so their product is the symmetric matrix
/// I - 2 sum u_i u_i^T with eigenvalue -1 of multiplicity m.
HouseholderProduct generate_product(const GeneratorSpec& spec);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Matrix random_orthogonal(Index n, std::mt19937_64& rng);

/// Uniformly distributed point on the unit sphere.
Vector random_unit_vector(Index n, std::mt19937_64& rng);

}  // namespace householder
