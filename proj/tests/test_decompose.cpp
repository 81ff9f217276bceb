#include <doctest.h>

#include <householder/decompose.hpp>
#include <householder/generators.hpp>

#include "support.hpp"

#include <cmath>
#include <random>

using namespace householder;
using namespace householder::testing;

namespace {

const Vector kExampleU = vec({2.0 / 3, 1.0 / 3, 2.0 / 3});

Matrix symmetric_with_negative_eigenvalues(Index n, Index negatives, std::mt19937_64& rng) {
  const Matrix q = random_orthogonal(n, rng);
  Vector d = Vector::Ones(n);
  d.head(negatives).setConstant(-1.0);
  return q * d.asDiagonal() * q.transpose();
}

// Remainders V_0 = V, V_{k+1} = H_k V_k rebuilt densely from the factors.
std::vector<Matrix> remainders(const Matrix& v, const HouseholderProduct& p) {
  std::vector<Matrix> out{v};
  for (const Reflector& h : p.factors()) out.push_back(h.dense() * out.back());
  return out;
}

// Orthonormal basis of {x : M x = lambda x} for a real eigenvalue.
Matrix real_eigenspace(const Matrix& m, double lambda) {
  const Index n = m.rows();
  Eigen::JacobiSVD<Matrix> svd(m - lambda * Matrix::Identity(n, n), Eigen::ComputeFullV);
  Index zero = 0;
  for (Index i = 0; i < n; ++i)
    if (svd.singularValues()[i] < 1e-7) ++zero;
  return svd.matrixV().rightCols(zero);
}

}  // namespace

TEST_CASE("project_onto_reflector") {
  SUBCASE("the 3x3 example is itself a reflector") {
    const auto fit = project_onto_reflector(DenseOrthogonal(three_by_three_example()));
    CHECK(fit.reflector.distance(Reflector(kExampleU)) < 1e-12);
    CHECK(fit.residual < 1e-7);
  }
  SUBCASE("identity is at distance 2 from every reflector") {
    const auto fit = project_onto_reflector(DenseOrthogonal(Matrix::Identity(5, 5)));
    CHECK(fit.residual == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("product of two reflectors is at distance 2 from its best single reflector") {
    // tr = n - 4 + 4k^2 and lambda_min = -1 + 2k^2 give 2n - 2tr + 4 lambda_min = 4.
    std::mt19937_64 rng(61);
    const auto dirs = gaussian_directions(9, 2, rng);
    const Matrix v = dense_product(dirs, 9);
    const auto fit = project_onto_reflector(DenseOrthogonal(v));
    CHECK(fit.residual == doctest::Approx(2.0).epsilon(1e-12));
    CHECK((v - fit.reflector.dense()).norm() == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("property: closed-form projection residual equals the direct distance") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + trial;
    const Matrix v = random_orthogonal(n, rng);
    const auto fit = project_onto_reflector(DenseOrthogonal(v));
    CHECK(std::abs(fit.residual - (v - fit.reflector.dense()).norm()) <= 1e-8);
    // No other reflector does better: spot-check random ones.
    for (const Vector& d : gaussian_directions(n, 5, rng)) {
      CHECK((v - dense_reflector(d)).norm() >= fit.residual - 1e-9);
    }
  }
}

TEST_CASE("greedy_decompose examples") {
  SUBCASE("the 3x3 reflector needs one factor") {
    const auto out = greedy_decompose(DenseOrthogonal(three_by_three_example()), 3, 1e-8);
    REQUIRE(out.product.size() == 1);
    CHECK(out.product[0].distance(Reflector(kExampleU)) < 1e-12);
    CHECK(out.trace.final_residual <= 1e-10);
    CHECK(out.trace.reason == Termination::converged);
    CHECK(out.trace.rows.size() == 1);
  }
  SUBCASE("identity needs none") {
    const auto out = greedy_decompose(DenseOrthogonal(Matrix::Identity(6, 6)), 6, 1e-8);
    CHECK(out.product.empty());
    CHECK(out.trace.rows.empty());
    CHECK(out.trace.reason == Termination::converged);
  }
  SUBCASE("25 gaussian reflectors at n = 64") {
    std::mt19937_64 rng(71);
    const Matrix v = dense_product(gaussian_directions(64, 25, rng), 64);
    const DenseOrthogonal dv(v);
    const auto out = greedy_decompose(dv, 64, 1e-6);
    CHECK(out.product.size() == 25);
    CHECK(min_factors(dv) == 25);
    CHECK(out.trace.final_residual <= 1e-6);
    CHECK((materialize(out.product).matrix() - v).norm() <= 1e-6);
  }
  SUBCASE("-I needs n factors") {
    const auto out = greedy_decompose(DenseOrthogonal(-Matrix::Identity(8, 8)), 8, 1e-8);
    CHECK(out.product.size() == 8);
    CHECK(out.trace.reason == Termination::converged);
  }
}

TEST_CASE("greedy_decompose caps and errors") {
  std::mt19937_64 rng(73);
  const DenseOrthogonal v(dense_product(gaussian_directions(10, 5, rng), 10));
  SUBCASE("factor cap") {
    const auto out = greedy_decompose(v, 2, 1e-8);
    CHECK(out.product.size() == 2);
    CHECK(out.trace.reason == Termination::factor_cap);
    CHECK(out.trace.final_residual > 1e-8);
  }
  SUBCASE("zero cap returns the identity approximation") {
    const auto out = greedy_decompose(v, 0, 1e-8);
    CHECK(out.product.empty());
    CHECK(out.trace.reason == Termination::factor_cap);
  }
  SUBCASE("dimension cap with an unreachable tolerance") {
    const DenseOrthogonal w(random_orthogonal(6, rng));
    const auto out = greedy_decompose(w, 100, 1e-300);
    CHECK(out.product.size() == 6);
    CHECK(out.trace.reason == Termination::dimension_cap);
  }
  SUBCASE("tolerance must be positive") {
    CHECK_THROWS_AS(greedy_decompose(v, 3, 0.0), InvalidInput);
  }
  SUBCASE("non-orthogonal input never reaches the algorithm") {
    Matrix bad = v.matrix();
    bad(1, 2) += 0.1;
    CHECK_THROWS_AS(greedy_decompose(DenseOrthogonal{bad}, 3, 1e-6), InvalidInput);
  }
}

TEST_CASE("property: greedy stops at the minimal factor count") {
  std::mt19937_64 rng(79);
  for (Index n : {8, 16, 32, 64}) {
    for (Index m : {Index{1}, n / 4, n / 2, n - 1, n}) {
      for (int trial = 0; trial < 3; ++trial) {
        const DenseOrthogonal v(dense_product(gaussian_directions(n, m, rng), n));
        const auto out = greedy_decompose(v, n, 1e-6);
        CHECK(static_cast<Index>(out.product.size()) == min_factors(v));
        CHECK(static_cast<Index>(out.product.size()) == m);
        CHECK(out.trace.final_residual <= 1e-6);
      }
    }
  }
}

TEST_CASE("property: trace and fixed-space recursions along the greedy path") {
  std::mt19937_64 rng(83);
  for (Index n : {8, 16, 32}) {
    for (Index m : {Index{1}, n / 2, n}) {
      const DenseOrthogonal v(dense_product(gaussian_directions(n, m, rng), n));
      const auto out = greedy_decompose(v, n, 1e-6);
      const auto& rows = out.trace.rows;
      const double tol = 1e-8 * static_cast<double>(n);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const double next_trace = k + 1 < rows.size() ? rows[k + 1].trace : out.trace.final_trace;
        const Index next_dim = k + 1 < rows.size() ? rows[k + 1].dim_e1 : out.trace.final_dim_e1;
        CHECK(std::abs(next_trace - rows[k].trace + 2.0 * rows[k].lambda_min) <= tol);
        CHECK(next_dim == rows[k].dim_e1 + 1);
        CHECK(rows[k].iteration == static_cast<Index>(k));
      }
      CHECK(out.trace.final_dim_e1 == n);
    }
  }
}

TEST_CASE("property: eigenvectors orthogonal to the chosen direction survive a step") {
  std::mt19937_64 rng(89);
  int compared = 0;
  for (Index n : {6, 12, 20}) {
    const Matrix v = dense_product(gaussian_directions(n, n / 2 + 1, rng), n);
    const auto out = greedy_decompose(DenseOrthogonal(v), n, 1e-6);
    const auto steps = remainders(v, out.product);
    for (std::size_t k = 0; k < out.product.size(); ++k) {
      const Vector& u = out.product[k].direction();
      for (double lambda : {1.0, -1.0}) {
        const Matrix basis = real_eigenspace(steps[k], lambda);
        for (Index c = 0; c < basis.cols(); ++c) {
          Vector w = basis.col(c) - u.dot(basis.col(c)) * u;
          if (w.norm() < 1e-6) continue;
          w.normalize();
          // Only vectors that stay in the eigenspace after projecting out u.
          if ((steps[k] * w - lambda * w).norm() > 1e-8) continue;
          CHECK((steps[k + 1] * w - steps[k] * w).norm() <= 1e-8);
          ++compared;
        }
      }
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("symmetric_decompose") {
  SUBCASE("single coordinate reflector") {
    Matrix v = Matrix::Identity(4, 4);
    v(0, 0) = -1.0;
    const auto p = symmetric_decompose(DenseOrthogonal(v));
    REQUIRE(p.size() == 1);
    CHECK(p[0].direction() == vec({1, 0, 0, 0}));
  }
  SUBCASE("-I has n orthonormal factors") {
    const auto p = symmetric_decompose(DenseOrthogonal(-Matrix::Identity(4, 4)));
    REQUIRE(p.size() == 4);
    Matrix u(4, 4);
    for (Index k = 0; k < 4; ++k) u.col(k) = p[static_cast<std::size_t>(k)].direction();
    CHECK(orthogonality_defect(u) < 1e-12);
  }
  SUBCASE("random symmetric with three -1 eigenvalues") {
    std::mt19937_64 rng(97);
    const Matrix v = symmetric_with_negative_eigenvalues(10, 3, rng);
    const DenseOrthogonal dv(v);
    const auto p = symmetric_decompose(dv);
    CHECK(p.size() == 3);
    CHECK((materialize(p).matrix() - v).norm() <= 1e-8);
    CHECK(greedy_decompose(dv, 10, 1e-6).product.size() == 3);
  }
  SUBCASE("non-symmetric input is rejected") {
    CHECK_THROWS_AS(symmetric_decompose(DenseOrthogonal(dense_product(
                        {vec({1, 2, 0}), vec({0, 1, 3})}, 3))),
                    InvalidInput);
  }
}

TEST_CASE("property: symmetric factor count equals the -1 multiplicity") {
  std::mt19937_64 rng(101);
  for (Index n : {5, 12, 25}) {
    for (Index neg = 0; neg <= n; neg += 3) {
      const DenseOrthogonal v(symmetric_with_negative_eigenvalues(n, neg, rng));
      CHECK(static_cast<Index>(symmetric_decompose(v).size()) == neg);
      CHECK(static_cast<Index>(greedy_decompose(v, n, 1e-6).product.size()) == neg);
    }
  }
}

TEST_CASE("qr_baseline") {
  SUBCASE("the 3x3 reflector takes three reflectors") {
    const auto qr = qr_baseline(DenseOrthogonal(three_by_three_example()));
    REQUIRE(qr.product.size() == 3);
    CHECK(qr.diagonal == vec({-1, -1, 1}));

    Matrix h1(3, 3), h2(3, 3), h3(3, 3);
    h1 << -1.0 / 9, 4.0 / 9, 8.0 / 9,  //
        4.0 / 9, 37.0 / 45, -16.0 / 45,  //
        8.0 / 9, -16.0 / 45, 13.0 / 45;
    h2 << 1, 0, 0, 0, -3.0 / 5, 4.0 / 5, 0, 4.0 / 5, 3.0 / 5;
    h3 << 1, 0, 0, 0, 1, 0, 0, 0, -1;
    CHECK((qr.product[0].dense() - h1).norm() < 1e-14);
    CHECK((qr.product[1].dense() - h2).norm() < 1e-14);
    CHECK((qr.product[2].dense() - h3).norm() < 1e-14);
  }
  SUBCASE("identity needs no reflectors") {
    const auto qr = qr_baseline(DenseOrthogonal(Matrix::Identity(5, 5)));
    CHECK(qr.product.empty());
    CHECK(qr.diagonal == Vector::Ones(5));
  }
  SUBCASE("random orthogonal reconstruction") {
    std::mt19937_64 rng(103);
    const Matrix v = random_orthogonal(16, rng);
    const auto qr = qr_baseline(DenseOrthogonal(v));
    CHECK(qr.product.size() <= 16);
    CHECK((materialize(qr.product).matrix() * qr.diagonal.asDiagonal() - v).norm() <= 1e-8 * 16);
    CHECK(qr.diagonal.cwiseAbs() == Vector::Ones(16));
  }
}

TEST_CASE("greedy_error_bound") {
  SUBCASE("exact for a product of two reflectors at m = 2") {
    std::mt19937_64 rng(107);
    const DenseOrthogonal v(dense_product(gaussian_directions(12, 2, rng), 12));
    CHECK(greedy_error_bound(v, 2) <= 1e-7);
  }
  SUBCASE("identity with m = 0") {
    CHECK(greedy_error_bound(DenseOrthogonal(Matrix::Identity(7, 7)), 0) == 0.0);
  }
  SUBCASE("a single reflector at m = 1 is bounded by sqrt 2 rather than 0") {
    const double b = greedy_error_bound(DenseOrthogonal(three_by_three_example()), 1);
    CHECK(b == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("m outside [0, n]") {
    const DenseOrthogonal v(Matrix::Identity(3, 3));
    CHECK_THROWS_AS(greedy_error_bound(v, 4), InvalidInput);
    CHECK_THROWS_AS(greedy_error_bound(v, -1), InvalidInput);
  }
}

TEST_CASE("property: the bound is tight at even m for rotations") {
  // With det V = +1 the spectrum of V_sym comes in equal pairs and the greedy
  // path removes one pair per two steps, so the bound is attained at even m.
  std::mt19937_64 rng(109);
  int checked = 0;
  while (checked < 10) {
    const Matrix v = random_orthogonal(32, rng);
    if (v.determinant() < 0.0) continue;
    ++checked;
    const DenseOrthogonal dv(v);
    for (Index m = 0; m <= 32; m += 2) {
      const auto out = greedy_decompose(dv, m, 1e-300);
      CHECK(out.trace.final_residual <= greedy_error_bound(dv, m) + 1e-6);
      CHECK(out.trace.final_residual == doctest::Approx(greedy_error_bound(dv, m)).epsilon(1e-6));
    }
  }
}

TEST_CASE("min_factors") {
  CHECK(min_factors(DenseOrthogonal(Matrix::Identity(5, 5))) == 0);
  CHECK(min_factors(DenseOrthogonal(three_by_three_example())) == 1);
  CHECK(min_factors(DenseOrthogonal(-Matrix::Identity(8, 8))) == 8);
}
