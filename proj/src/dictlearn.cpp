#include <householder/dictlearn.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace householder {

namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kSolveTolerance = 1e-9;
constexpr double kMatchTolerance = 1e-8;
constexpr double kBinaryTolerance = 1e-6;

void check_size(const Vector& y, Index cap) {
  if (y.size() > cap || y.size() > 31) {
    throw RecoveryError(RecoveryError::Kind::too_large,
                        "instance too large: n = " + std::to_string(y.size()) +
                            " exceeds enumeration cap " + std::to_string(std::min<Index>(cap, 31)));
  }
}

// All n-bit patterns with `ones` set bits, ascending.
std::vector<BitPattern> patterns_with_popcount(Index n, Index ones) {
  std::vector<BitPattern> out;
  if (ones == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t v = (std::uint64_t{1} << ones) - 1;
  while (v < limit) {
    out.push_back(static_cast<BitPattern>(v));
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

CandidateSet solve_patterns(const Vector& y, const std::vector<BitPattern>& patterns) {
  const Index n = y.size();
  const auto count = static_cast<std::int64_t>(patterns.size());
  std::vector<std::optional<Reflector>> found(patterns.size());
  int fixed = 0;

#pragma omp parallel for schedule(dynamic, 256) reduction(| : fixed)
  for (std::int64_t i = 0; i < count; ++i) {
    ColumnSolution s = solve_column(y, pattern_to_vector(patterns[i], n));
    if (auto* h = std::get_if<Reflector>(&s)) {
      found[i] = std::move(*h);
    } else if (std::holds_alternative<FixedColumn>(s)) {
      fixed = 1;
    }
  }

  CandidateSet out;
  out.fixed_column = fixed != 0;
  out.zero_column = y.norm() <= kSolveTolerance;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i]) out.candidates.push_back({std::move(*found[i]), patterns[i]});
  }
  return out;
}

// Members of `a` that also appear in `b`, matched up to sign.
std::vector<Candidate> intersect(const CandidateSet& a, const CandidateSet& b) {
  auto lead = [](const Candidate& c) { return std::abs(c.reflector.direction()[0]); };
  std::vector<std::size_t> order(b.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return lead(b.candidates[i]) < lead(b.candidates[j]);
  });

  std::vector<Candidate> common;
  for (const Candidate& c : a.candidates) {
    const double key = lead(c);
    auto it = std::lower_bound(order.begin(), order.end(), key - kMatchTolerance,
                               [&](std::size_t i, double k) { return lead(b.candidates[i]) < k; });
    for (; it != order.end() && lead(b.candidates[*it]) <= key + kMatchTolerance; ++it) {
      if (c.reflector.distance(b.candidates[*it].reflector) <= kMatchTolerance) {
        common.push_back(c);
        break;
      }
    }
  }
  return common;
}

}  // namespace

Vector pattern_to_vector(BitPattern pattern, Index n) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = static_cast<double>((pattern >> (n - 1 - i)) & 1u);
  }
  return x;
}

ColumnSolution solve_column(const Vector& y, const Vector& x) {
  if (x.size() != y.size()) {
    throw InvalidInput("solve_column: x has length " + std::to_string(x.size()) +
                       ", y has length " + std::to_string(y.size()));
  }
  const Vector diff = x - y;
  const double gap = diff.norm();
  if (gap <= kSolveTolerance) return FixedColumn{};
  if (std::abs(x.squaredNorm() - y.squaredNorm()) > kNormTolerance) return NoSolution{};

  Reflector h(diff / gap);
  const Vector& u = h.direction();
  const Vector image = x - (2.0 * u.dot(x)) * u;
  if ((image - y).norm() > kSolveTolerance) return NoSolution{};
  return h;
}

CandidateSet enumerate_candidates(const Vector& y, Index cap) {
  check_size(y, cap);
  const Index n = y.size();
  const double norm2 = y.squaredNorm();
  const double ones = std::round(norm2);
  if (std::abs(norm2 - ones) > kNormTolerance || ones < 0.0 || ones > static_cast<double>(n)) {
    return {};
  }
  return solve_patterns(y, patterns_with_popcount(n, static_cast<Index>(ones)));
}

CandidateSet enumerate_candidates_exhaustive(const Vector& y, Index cap) {
  check_size(y, cap);
  const Index n = y.size();
  CandidateSet out;
  out.zero_column = y.norm() <= kSolveTolerance;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t p = 0; p < total; ++p) {
    const auto pattern = static_cast<BitPattern>(p);
    ColumnSolution s = solve_column(y, pattern_to_vector(pattern, n));
    if (auto* h = std::get_if<Reflector>(&s)) {
      out.candidates.push_back({std::move(*h), pattern});
    } else if (std::holds_alternative<FixedColumn>(s)) {
      out.fixed_column = true;
    }
  }
  return out;
}

RecoveryResult recover(const Matrix& y, Index cap) {
  using Kind = RecoveryError::Kind;
  const Index n = y.rows();
  const Index p = y.cols();
  if (p < 2) {
    throw RecoveryError(Kind::invalid, "recover needs at least two columns, got " + std::to_string(p));
  }
  if (n == 0) throw RecoveryError(Kind::invalid, "recover: empty columns");
  check_size(y.col(0), cap);

  std::vector<Index> chosen;
  std::vector<CandidateSet> sets;
  for (Index j = 0; j < p && chosen.size() < 2; ++j) {
    const Vector column = y.col(j);
    const bool repeat = std::any_of(chosen.begin(), chosen.end(), [&](Index i) {
      return (y.col(i) - column).norm() <= kSolveTolerance;
    });
    if (repeat) continue;
    CandidateSet cs = enumerate_candidates(column, cap);
    if (cs.zero_column || cs.fixed_column) continue;
    if (cs.candidates.empty()) {
      throw RecoveryError(Kind::no_common_candidate,
                          "no common candidate: column " + std::to_string(j) +
                              " is not the image of any binary vector");
    }
    chosen.push_back(j);
    sets.push_back(std::move(cs));
  }

  if (chosen.empty()) {
    throw RecoveryError(Kind::ambiguous, "ambiguous: no informative column");
  }
  const std::vector<Candidate> common =
      chosen.size() == 1 ? sets[0].candidates : intersect(sets[0], sets[1]);
  if (common.empty()) {
    throw RecoveryError(Kind::no_common_candidate, "no common candidate");
  }
  if (common.size() > 1) {
    throw RecoveryError(Kind::ambiguous, "ambiguous: " + std::to_string(common.size()) +
                                             " reflectors are consistent with the data");
  }

  const Reflector& h = common.front().reflector;
  const Vector& u = h.direction();
  // H is an involution, so X = HY.
  const Matrix decoded = y - 2.0 * u * (u.transpose() * y);
  Matrix x(n, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double r = std::round(decoded(i, j));
      if ((r != 0.0 && r != 1.0) || std::abs(decoded(i, j) - r) > kBinaryTolerance) {
        throw RecoveryError(Kind::no_common_candidate,
                            "no common candidate: column " + std::to_string(j) +
                                " does not decode to a binary vector");
      }
      x(i, j) = r;
    }
  }
  const double residual = (x - 2.0 * u * (u.transpose() * x) - y).norm();
  if (residual > 1e-8 * std::sqrt(static_cast<double>(n * p))) {
    throw RecoveryError(Kind::no_common_candidate,
                        "no common candidate: residual " + std::to_string(residual));
  }
  return {h, std::move(x), residual, std::move(chosen)};
}

namespace {

Reflector first_example_reflector() {
  Vector u(2);
  u << std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0);
  return Reflector(u);
}

Reflector second_example_reflector() {
  Vector u(2);
  u << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return Reflector(u);
}

Vector reflect_copy(const Reflector& h, const Vector& x) {
  const Vector& u = h.direction();
  return x - (2.0 * u.dot(x)) * u;
}

}  // namespace

Vector matching_coefficients(const Vector& first_column) {
  if (first_column.size() != 2) {
    throw InvalidInput("matching_coefficients: expected a length-2 column");
  }
  return reflect_copy(second_example_reflector(),
                      reflect_copy(first_example_reflector(), first_column));
}

NonUniqueExample non_uniqueness_example(Index p) {
  if (p < 1) throw InvalidInput("non_uniqueness_example: p must be at least 1");
  NonUniqueExample ex{first_example_reflector(), Matrix(2, p), second_example_reflector(),
                      Matrix(2, p)};
  for (Index j = 0; j < p; ++j) {
    Vector x1(2);
    if (j == 0) {
      x1 << 2.0 * std::sqrt(2.0) / 3.0, 1.0 / 3.0;
    } else {
      x1 << static_cast<double>(j), 1.0;
    }
    ex.first_coefficients.col(j) = x1;
    ex.second_coefficients.col(j) = matching_coefficients(x1);
  }
  return ex;
}

}  // namespace householder
