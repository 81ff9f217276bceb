#pragma once

// Test-only oracles. These build everything from explicit dense matrices so
// they share no code path with the matrix-free kernels under test.

#include <householder/core.hpp>

#include <initializer_list>
#include <random>
#include <vector>

namespace householder::testing {

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Matrix dense_reflector(const Vector& u) {
  const Vector w = u / u.norm();
  return Matrix::Identity(u.size(), u.size()) - 2.0 * w * w.transpose();
}

/// Left-to-right dense product of explicit reflector matrices.
inline Matrix dense_product(const std::vector<Vector>& directions, Index n) {
  Matrix m = Matrix::Identity(n, n);
  for (const Vector& u : directions) m = m * dense_reflector(u);
  return m;
}

inline std::vector<Vector> gaussian_directions(Index n, Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Vector> out;
  for (Index k = 0; k < m; ++k) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal(rng);
    out.push_back(v);
  }
  return out;
}

inline HouseholderProduct product_of(const std::vector<Vector>& directions, Index n) {
  HouseholderProduct p(n);
  for (const Vector& u : directions) p.push_back(Reflector(u));
  return p;
}

/// The 3 x 3 reflector with u = (2/3, 1/3, 2/3).
inline Matrix three_by_three_example() {
  Matrix v(3, 3);
  v << 1.0, -4.0, -8.0,  //
      -4.0, 7.0, -4.0,   //
      -8.0, -4.0, 1.0;
  return v / 9.0;
}

/// Data matrix generated by that reflector from binary columns (1,1,0), (0,0,1).
inline Matrix two_column_data() {
  Matrix y(3, 2);
  y << -1.0 / 3.0, -8.0 / 9.0,  //
      1.0 / 3.0, -4.0 / 9.0,    //
      -4.0 / 3.0, 1.0 / 9.0;
  return y;
}

}  // namespace householder::testing
