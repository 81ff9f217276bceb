#pragma once

// Inner loops shared by the decomposition and recovery code. Each kernel has
// a plain serial version, kept as the reference the parallel one is tested
// and benchmarked against. The parallel versions split work over independent
// columns (or rows) so their results are bit-identical to the serial ones.

#include <householder/core.hpp>

#include <span>

namespace householder::kernels {

/// x <- (I - 2uu^T) x
void reflect(const Vector& u, Eigen::Ref<Vector> x);

/// x <- H_1 H_2 ... H_m x, applying H_m first.
void apply_factors(std::span<const Reflector> factors, Eigen::Ref<Vector> x);

/// Applies the product to every column of `block`.
void apply_factors_columns_serial(std::span<const Reflector> factors, Matrix& block);
void apply_factors_columns(std::span<const Reflector> factors, Matrix& block);

/// m <- (I - 2uu^T) m
void reflect_left_serial(const Vector& u, Matrix& m);
void reflect_left(const Vector& u, Matrix& m);

/// m <- m (I - 2uu^T)
void reflect_right_serial(const Vector& u, Matrix& m);
void reflect_right(const Vector& u, Matrix& m);

/// Naive row-major dense product, used as the O(n^2) baseline for apply.
void dense_matvec(const Matrix& a, const Vector& x, Vector& out);

}  // namespace householder::kernels
