#include <householder/decompose.hpp>
#include <householder/kernels.hpp>

#include <algorithm>
#include <string>

namespace householder {

namespace {

double clamped_sqrt(double radicand) { return std::sqrt(std::max(radicand, 0.0)); }

}  // namespace

SingleReflectorFit project_onto_reflector(const DenseOrthogonal& v) {
  const Index n = v.dim();
  if (n == 0) throw InvalidInput("project_onto_reflector: empty matrix");
  const SymmetricSpectrum spectrum = symmetric_eigendecomposition(symmetric_part(v));
  const double lambda_min = spectrum.eigenvalues[0];
  const double radicand =
      2.0 * static_cast<double>(n) - 2.0 * v.matrix().trace() + 4.0 * lambda_min;
  return {Reflector(spectrum.eigenvectors.col(0)), clamped_sqrt(radicand)};
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::factor_cap:
      return "factor_cap";
    case Termination::dimension_cap:
      return "dimension_cap";
  }
  return "unknown";
}

GreedyDecomposition greedy_decompose(const DenseOrthogonal& v, const GreedyOptions& options) {
  if (!(options.tolerance > 0.0)) {
    throw InvalidInput("greedy_decompose: tolerance must be positive");
  }
  const Index n = v.dim();
  const Index cap = options.max_factors < 0 ? n : std::min(options.max_factors, n);
  const double e1_tol = eigenspace_tolerance(n);

  GreedyDecomposition out{HouseholderProduct(n), {}};
  DecompositionTrace& trace = out.trace;

  Matrix remainder = v.matrix();
  Matrix approx = Matrix::Identity(n, n);
  double residual = (approx - v.matrix()).norm();
  trace.initial_residual = residual;

  Index k = 0;
  while (residual > options.tolerance && k < cap) {
    const SymmetricSpectrum spectrum = symmetric_eigendecomposition(symmetric_part(remainder));

    TraceRow row;
    row.iteration = k;
    row.lambda_min = spectrum.eigenvalues[0];
    row.trace = remainder.trace();
    row.dim_e1 = options.record_eigenspace
                     ? eigenspace_one_dimension_from_spectrum(spectrum.eigenvalues, e1_tol)
                     : -1;

    Reflector h(spectrum.eigenvectors.col(0));
    kernels::reflect_left(h.direction(), remainder);
    kernels::reflect_right(h.direction(), approx);
    out.product.push_back(std::move(h));

    residual = (approx - v.matrix()).norm();
    row.residual = residual;
    trace.rows.push_back(row);
    ++k;
  }

  trace.factor_count = k;
  trace.final_residual = residual;
  trace.final_trace = remainder.trace();
  trace.final_dim_e1 = -1;
  if (options.record_eigenspace) {
    const Vector mu = symmetric_eigendecomposition(symmetric_part(remainder)).eigenvalues;
    trace.final_dim_e1 = eigenspace_one_dimension_from_spectrum(mu, e1_tol);
  }
  if (residual <= options.tolerance) {
    trace.reason = Termination::converged;
  } else if (cap < n) {
    trace.reason = Termination::factor_cap;
  } else {
    trace.reason = Termination::dimension_cap;
  }
  return out;
}

GreedyDecomposition greedy_decompose(const DenseOrthogonal& v, Index max_factors, double tolerance) {
  GreedyOptions options;
  options.max_factors = max_factors;
  options.tolerance = tolerance;
  return greedy_decompose(v, options);
}

HouseholderProduct symmetric_decompose(const DenseOrthogonal& v) {
  const Index n = v.dim();
  const double asym = (v.matrix() - v.matrix().transpose()).norm();
  if (asym > 1e-8 * static_cast<double>(n)) {
    throw InvalidInput("symmetric_decompose: matrix is not symmetric, |V - V^T|_F = " +
                       std::to_string(asym));
  }
  HouseholderProduct product(n);
  if (n == 0) return product;
  // Eigenvalues are +-1 up to rounding, so the sign separates them.
  const SymmetricSpectrum spectrum = symmetric_eigendecomposition(symmetric_part(v));
  for (Index i = 0; i < n; ++i) {
    if (spectrum.eigenvalues[i] < 0.0) {
      product.push_back(Reflector(spectrum.eigenvectors.col(i)));
    }
  }
  return product;
}

QrFactorization qr_baseline(const DenseOrthogonal& v) {
  const Index n = v.dim();
  QrFactorization out{HouseholderProduct(n), Vector::Ones(n)};
  Matrix r = v.matrix();
  for (Index k = 0; k < n; ++k) {
    const Index len = n - k;
    const Vector column = r.col(k).tail(len);
    const double below = len > 1 ? column.tail(len - 1).norm() : 0.0;
    if (below <= 1e-12 && column[0] > 0.0) {
      continue;
    }
    const double alpha = column[0] >= 0.0 ? -column.norm() : column.norm();
    Vector w = Vector::Zero(n);
    w.tail(len) = column;
    w[k] -= alpha;
    Reflector h(w);
    kernels::reflect_left(h.direction(), r);
    out.product.push_back(std::move(h));
    out.diagonal[k] = alpha < 0.0 ? -1.0 : 1.0;
  }
  return out;
}

double greedy_error_bound(const DenseOrthogonal& v, Index m) {
  const Index n = v.dim();
  if (m < 0 || m > n) {
    throw InvalidInput("greedy_error_bound: m = " + std::to_string(m) + " outside [0, " +
                       std::to_string(n) + "]");
  }
  double radicand = static_cast<double>(n) - v.matrix().trace() - 2.0 * static_cast<double>(m / 2);
  if (m > 0) {
    const SymmetricSpectrum spectrum = symmetric_eigendecomposition(symmetric_part(v));
    radicand += spectrum.eigenvalues.head(m).sum();
  }
  return clamped_sqrt(2.0 * radicand);
}

Index min_factors(const DenseOrthogonal& v) { return v.dim() - eigenspace_one_dimension(v); }

}  // namespace householder
