#pragma once

// Recovery of a single Householder dictionary H = I - 2uu^T from data
// Y = HX with a binary coefficient matrix X.

#include <householder/core.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace householder {

/// Binary column encoded as a bit pattern: entry i of x is bit (n - 1 - i),
/// so increasing pattern values enumerate x lexicographically.
using BitPattern = std::uint32_t;

Vector pattern_to_vector(BitPattern pattern, Index n);

/// H fixes the column (x == y): every u orthogonal to y solves it.
struct FixedColumn {};
/// No reflector maps x to y.
struct NoSolution {};

using ColumnSolution = std::variant<Reflector, FixedColumn, NoSolution>;

/// Solves (I - 2uu^T) x = y for unit u. When |x|^2 and |y|^2 agree the
/// reflection u = (x - y)/|x - y| is the only solution up to sign.
ColumnSolution solve_column(const Vector& y, const Vector& x);

struct Candidate {
  Reflector reflector;
  BitPattern pattern;
};

struct CandidateSet {
  std::vector<Candidate> candidates;
  /// Some binary x equals y, so any u orthogonal to y is also consistent.
  bool fixed_column = false;
  bool zero_column = false;
};

inline constexpr Index kDefaultEnumerationCap = 24;

class RecoveryError : public std::runtime_error {
public:
  enum class Kind { no_common_candidate, ambiguous, too_large, invalid };

  RecoveryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Candidate reflectors for one column, trying only the binary x with
/// popcount round(|y|^2) since H preserves norms. Parallel over patterns;
/// output order follows the pattern order.
CandidateSet enumerate_candidates(const Vector& y, Index cap = kDefaultEnumerationCap);

/// Serial reference that tries all 2^n binary vectors.
CandidateSet enumerate_candidates_exhaustive(const Vector& y, Index cap = kDefaultEnumerationCap);

struct RecoveryResult {
  Reflector reflector;
  Matrix coefficients;  // binary, n x p
  double residual;      // |(I - 2uu^T) X - Y|_F
  /// Columns whose candidate sets were intersected.
  std::vector<Index> informative_columns;
};

/// Recovers u and X from Y = (I - 2uu^T) X.
///
/// The first two informative columns (nonzero, not fixed by some binary x,
/// not a repeat of an earlier column) each give a candidate set; their
/// common member is the dictionary. The remaining columns are decoded as
/// X = HY and checked to be binary. Throws RecoveryError.
RecoveryResult recover(const Matrix& y, Index cap = kDefaultEnumerationCap);

/// Two different (H, X) pairs with H_1 X_1 == H_2 X_2 for real-valued X.
struct NonUniqueExample {
  Reflector first;
  Matrix first_coefficients;
  Reflector second;
  Matrix second_coefficients;
};

/// Second-pair column that matches a given first-pair column,
/// x_2 = H_2 H_1 x_1 for the reflectors of non_uniqueness_example.
Vector matching_coefficients(const Vector& first_column);

/// Built from u_1 = (sqrt(1/3), sqrt(2/3)) and u_2 = (1/sqrt 2, 1/sqrt 2).
/// The first column is (2 sqrt 2 / 3, 1/3) -> (1, 0); later columns use
/// further distinct first-pair coefficients. Requires p >= 1.
NonUniqueExample non_uniqueness_example(Index p);

}  // namespace householder
