#include <householder/kernels.hpp>

namespace householder::kernels {

void reflect(const Vector& u, Eigen::Ref<Vector> x) {
  const double s = 2.0 * u.dot(x);
  x.noalias() -= s * u;
}

void apply_factors(std::span<const Reflector> factors, Eigen::Ref<Vector> x) {
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    reflect(it->direction(), x);
  }
}

void apply_factors_columns_serial(std::span<const Reflector> factors, Matrix& block) {
  for (Index j = 0; j < block.cols(); ++j) {
    apply_factors(factors, block.col(j));
  }
}

void apply_factors_columns(std::span<const Reflector> factors, Matrix& block) {
  const Index cols = block.cols();
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < cols; ++j) {
    apply_factors(factors, block.col(j));
  }
}

void reflect_left_serial(const Vector& u, Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    reflect(u, m.col(j));
  }
}

void reflect_left(const Vector& u, Matrix& m) {
  const Index cols = m.cols();
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < cols; ++j) {
    reflect(u, m.col(j));
  }
}

// Row i of m(I - 2uu^T) is m_i - 2 (m_i . u) u^T. Computing the row dot
// products first keeps the column-major sweep contiguous.
void reflect_right_serial(const Vector& u, Matrix& m) {
  Vector mu(m.rows());
  for (Index i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (Index j = 0; j < m.cols(); ++j) acc += m(i, j) * u[j];
    mu[i] = acc;
  }
  for (Index j = 0; j < m.cols(); ++j) {
    m.col(j) -= (2.0 * u[j]) * mu;
  }
}

void reflect_right(const Vector& u, Matrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  Vector mu(rows);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < cols; ++j) acc += m(i, j) * u[j];
    mu[i] = acc;
  }
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < cols; ++j) {
    m.col(j) -= (2.0 * u[j]) * mu;
  }
}

void dense_matvec(const Matrix& a, const Vector& x, Vector& out) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  out.setZero(rows);
  for (Index j = 0; j < cols; ++j) {
    const double xj = x[j];
    for (Index i = 0; i < rows; ++i) out[i] += a(i, j) * xj;
  }
}

}  // namespace householder::kernels
