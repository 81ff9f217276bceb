#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace householder {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Raised for malformed inputs: dimension mismatches, non-orthogonal or
/// non-symmetric matrices, degenerate reflector directions.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A Householder reflector H = I - 2uu^T stored by its unit direction u.
///
/// The direction is kept in canonical sign: the first entry with magnitude
/// above 1e-12 is positive. u and -u describe the same reflector, so two
/// reflectors compare equal iff their canonical directions agree.
class Reflector {
public:
  /// Normalizes and canonicalizes `u`. Throws InvalidInput on a zero vector.
  explicit Reflector(const Vector& u);

  const Vector& direction() const noexcept { return u_; }
  Index dim() const noexcept { return u_.size(); }

  /// Dense I - 2uu^T.
  Matrix dense() const;

  /// min(|u - v|, |u + v|), the distance between the two reflectors' lines.
  double distance(const Reflector& other) const;

private:
  Vector u_;
};

Reflector make_reflector(const Vector& u);

/// Ordered product H_1 H_2 ... H_m of reflectors acting on R^n.
/// An empty product is the identity.
class HouseholderProduct {
public:
  explicit HouseholderProduct(Index n) : n_(n) {}
  HouseholderProduct(Index n, std::vector<Reflector> factors);

  Index dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }
  std::span<const Reflector> factors() const noexcept { return factors_; }
  const Reflector& operator[](std::size_t i) const { return factors_[i]; }

  /// Appends H on the right: product becomes H_1 ... H_m H.
  void push_back(Reflector h);

private:
  Index n_;
  std::vector<Reflector> factors_;
};

/// A dense n x n matrix checked to satisfy |V^T V - I|_F <= tolerance.
class DenseOrthogonal {
public:
  static double default_tolerance(Index n) { return 1e-8 * static_cast<double>(n); }

  /// Throws InvalidInput when the matrix is not square or not orthogonal.
  explicit DenseOrthogonal(Matrix v);
  DenseOrthogonal(Matrix v, double tolerance);

  const Matrix& matrix() const noexcept { return v_; }
  Index dim() const noexcept { return v_.rows(); }

private:
  Matrix v_;
};

/// |M^T M - I|_F.
double orthogonality_defect(const Matrix& m);

/// Eigenpairs of a symmetric matrix, eigenvalues ascending with the matching
/// orthonormal eigenvectors stored column-wise.
struct SymmetricSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// H_1(H_2(...(H_m x))). Cost is O(mn).
Vector apply(const HouseholderProduct& p, const Vector& x);

/// Dense H_1 H_2 ... H_m.
DenseOrthogonal materialize(const HouseholderProduct& p);

/// (V + V^T) / 2.
Matrix symmetric_part(const Matrix& v);
Matrix symmetric_part(const DenseOrthogonal& v);

/// Full eigendecomposition of a symmetric matrix. Rejects inputs with
/// |A - A^T|_F > 1e-10 n.
SymmetricSpectrum symmetric_eigendecomposition(const Matrix& a);

/// Default rank threshold for singular values of V - I.
inline double eigenspace_tolerance(Index n) { return 1e-6 * std::sqrt(static_cast<double>(n)); }

/// dim{x : Vx = x}, computed as n - rank(V - I) where singular values
/// below `tol` count as zero.
Index eigenspace_one_dimension(const Matrix& v, double tol);
Index eigenspace_one_dimension(const DenseOrthogonal& v, double tol);
Index eigenspace_one_dimension(const DenseOrthogonal& v);

/// The same count from the ascending eigenvalues mu of V_sym of an orthogonal
/// V: the singular values of V - I are sqrt(2 (1 - mu)).
Index eigenspace_one_dimension_from_spectrum(const Vector& symmetric_eigenvalues, double tol);

}  // namespace householder
