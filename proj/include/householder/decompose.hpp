#pragma once

#include <householder/core.hpp>

#include <string_view>
#include <vector>

namespace householder {

/// Closest single reflector to V in Frobenius norm.
struct SingleReflectorFit {
  Reflector reflector;
  /// |V - (I - 2uu^T)|_F from the closed form sqrt(2n - 2tr V + 4 lambda_min(V_sym)).
  double residual;
};

/// u is the eigenvector of lambda_min(V_sym); the radicand is clamped at 0.
SingleReflectorFit project_onto_reflector(const DenseOrthogonal& v);

enum class Termination { converged, factor_cap, dimension_cap };

std::string_view to_string(Termination t);

/// State of one greedy step k, recorded before H_k is applied, except for
/// `residual` which is |V_hat_{k+1} - V|_F after the step.
struct TraceRow {
  Index iteration = 0;
  double residual = 0.0;
  double lambda_min = 0.0;
  double trace = 0.0;
  Index dim_e1 = 0;
};

struct DecompositionTrace {
  std::vector<TraceRow> rows;
  Index factor_count = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  /// tr(V_m) and dim E^1(V_m) of the remainder after the last step.
  double final_trace = 0.0;
  Index final_dim_e1 = 0;
  Termination reason = Termination::converged;
};

struct GreedyOptions {
  Index max_factors = -1;  // negative: no cap beyond n
  double tolerance = 1e-6;
  /// Record dim E^1 in each trace row (read off the V_sym spectrum).
  bool record_eigenspace = true;
};

struct GreedyDecomposition {
  HouseholderProduct product;
  DecompositionTrace trace;
};

/// Greedy factorization V ~ H_1 H_2 ... H_m.
///
/// Each step takes the reflector closest to the current remainder
/// V_k = H_{k-1} ... H_1 V, i.e. the eigenvector of the smallest eigenvalue
/// of (V_k)_sym, and multiplies it out of the remainder. Stops once
/// |H_1...H_k - V|_F <= tolerance or k reaches min(max_factors, n). When V
/// is a product of p reflectors and the tolerance is at exact-recovery scale
/// the loop stops at k = p, and no shorter product exists.
GreedyDecomposition greedy_decompose(const DenseOrthogonal& v, const GreedyOptions& options);
GreedyDecomposition greedy_decompose(const DenseOrthogonal& v, Index max_factors, double tolerance);

/// Factors a symmetric orthogonal V as the product of reflectors along its
/// eigenvalue -1 eigenvectors, in ascending eigen-index order.
HouseholderProduct symmetric_decompose(const DenseOrthogonal& v);

struct QrFactorization {
  HouseholderProduct product;
  /// Diagonal of R, entries exactly +1 or -1, with V = H_1 ... H_k diag(r).
  Vector diagonal;
};

/// Column-by-column Householder QR of V. A column whose trailing part is
/// already +|v| e_1 gets no reflector; every other column does.
QrFactorization qr_baseline(const DenseOrthogonal& v);

/// sqrt(2(n - tr V - 2 floor(m/2) + sum_{i<=m} lambda_i)) with lambda ascending
/// eigenvalues of V_sym. Radicand clamped at 0. Requires 0 <= m <= n.
double greedy_error_bound(const DenseOrthogonal& v, Index m);

/// n - dim E^1(V): the fewest reflectors whose product is V.
Index min_factors(const DenseOrthogonal& v);

}  // namespace householder
