#include <householder/core.hpp>
#include <householder/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace householder {

namespace {

constexpr double kSignificant = 1e-12;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidInput(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace

Reflector::Reflector(const Vector& u) : u_(u) {
  const double norm = u_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("degenerate reflector");
  }
  u_ /= norm;
  for (Index i = 0; i < u_.size(); ++i) {
    if (std::abs(u_[i]) > kSignificant) {
      if (u_[i] < 0.0) u_ = -u_;
      break;
    }
  }
}

Matrix Reflector::dense() const {
  const Index n = dim();
  return Matrix::Identity(n, n) - 2.0 * u_ * u_.transpose();
}

double Reflector::distance(const Reflector& other) const {
  if (other.dim() != dim()) {
    throw InvalidInput("reflector dimension mismatch");
  }
  return std::min((u_ - other.u_).norm(), (u_ + other.u_).norm());
}

Reflector make_reflector(const Vector& u) { return Reflector(u); }

HouseholderProduct::HouseholderProduct(Index n, std::vector<Reflector> factors) : n_(n) {
  factors_.reserve(factors.size());
  for (auto& h : factors) push_back(std::move(h));
}

void HouseholderProduct::push_back(Reflector h) {
  if (h.dim() != n_) {
    throw InvalidInput("reflector of length " + std::to_string(h.dim()) +
                       " does not match product dimension " + std::to_string(n_));
  }
  factors_.push_back(std::move(h));
}

double orthogonality_defect(const Matrix& m) {
  return (m.transpose() * m - Matrix::Identity(m.cols(), m.cols())).norm();
}

DenseOrthogonal::DenseOrthogonal(Matrix v) : DenseOrthogonal(std::move(v), 0.0) {}

DenseOrthogonal::DenseOrthogonal(Matrix v, double tolerance) : v_(std::move(v)) {
  require_square(v_, "orthogonal matrix");
  if (tolerance <= 0.0) tolerance = default_tolerance(v_.rows());
  const double defect = orthogonality_defect(v_);
  if (!(defect <= tolerance)) {
    throw InvalidInput("matrix is not orthogonal: |V^T V - I|_F = " + std::to_string(defect));
  }
}

Vector apply(const HouseholderProduct& p, const Vector& x) {
  if (x.size() != p.dim()) {
    throw InvalidInput("apply: vector length " + std::to_string(x.size()) +
                       " does not match dimension " + std::to_string(p.dim()));
  }
  Vector y = x;
  kernels::apply_factors(p.factors(), y);
  return y;
}

DenseOrthogonal materialize(const HouseholderProduct& p) {
  Matrix m = Matrix::Identity(p.dim(), p.dim());
  kernels::apply_factors_columns(p.factors(), m);
  return DenseOrthogonal(std::move(m));
}

Matrix symmetric_part(const Matrix& v) {
  require_square(v, "symmetric_part");
  return 0.5 * (v + v.transpose());
}

Matrix symmetric_part(const DenseOrthogonal& v) { return symmetric_part(v.matrix()); }

SymmetricSpectrum symmetric_eigendecomposition(const Matrix& a) {
  require_square(a, "symmetric_eigendecomposition");
  const double asym = (a - a.transpose()).norm();
  if (asym > 1e-10 * static_cast<double>(a.rows())) {
    throw InvalidInput("matrix is not symmetric: |A - A^T|_F = " + std::to_string(asym));
  }
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Index eigenspace_one_dimension(const Matrix& v, double tol) {
  require_square(v, "eigenspace_one_dimension");
  const Index n = v.rows();
  if (n == 0) return 0;
  const Matrix shifted = v - Matrix::Identity(n, n);
  const Vector sigma = Eigen::JacobiSVD<Matrix>(shifted).singularValues();
  Index zero = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < tol) ++zero;
  }
  return zero;
}

Index eigenspace_one_dimension(const DenseOrthogonal& v, double tol) {
  return eigenspace_one_dimension(v.matrix(), tol);
}

Index eigenspace_one_dimension(const DenseOrthogonal& v) {
  return eigenspace_one_dimension(v.matrix(), eigenspace_tolerance(v.dim()));
}

Index eigenspace_one_dimension_from_spectrum(const Vector& symmetric_eigenvalues, double tol) {
  Index zero = 0;
  for (Index i = 0; i < symmetric_eigenvalues.size(); ++i) {
    const double gap = std::max(0.0, 2.0 * (1.0 - symmetric_eigenvalues[i]));
    if (std::sqrt(gap) < tol) ++zero;
  }
  return zero;
}

}  // namespace householder
