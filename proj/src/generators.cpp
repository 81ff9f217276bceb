#include <householder/generators.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace householder {

namespace {

Vector gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

// `count` distinct indices in [0, n), via a partial Fisher-Yates shuffle.
std::vector<Index> random_positions(Index n, Index count, std::mt19937_64& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < count; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(count));
  return idx;
}

// Redraws until the direction is nonzero; only reachable for tiny supports.
template <class Draw>
Reflector draw_reflector(Draw&& draw) {
  for (;;) {
    Vector v = draw();
    if (v.norm() > 0.0) return Reflector(v);
  }
}

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::gaussian:
      return "gaussian";
    case Distribution::sparse:
      return "sparse";
    case Distribution::correlated:
      return "correlated";
    case Distribution::bernoulli:
      return "bernoulli";
    case Distribution::exponential:
      return "exponential";
    case Distribution::symmetric:
      return "symmetric";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  for (Distribution d : kAllDistributions) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

void validate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw InvalidInput("generator: n must be at least 1");
  if (spec.m < 1 || spec.m > spec.n) {
    throw InvalidInput("generator: m = " + std::to_string(spec.m) + " outside [1, " +
                       std::to_string(spec.n) + "]");
  }
  if (!(spec.sparse_fraction > 0.0 && spec.sparse_fraction <= 1.0)) {
    throw InvalidInput("generator: sparse fraction must lie in (0, 1]");
  }
}

Index sparse_support(const GeneratorSpec& spec) {
  // The small offset keeps products like 0.02 * 100 from rounding up past 2.
  const double raw = spec.sparse_fraction * static_cast<double>(spec.n);
  return std::clamp<Index>(static_cast<Index>(std::ceil(raw - 1e-9)), 1, spec.n);
}

Vector random_unit_vector(Index n, std::mt19937_64& rng) {
  Vector v;
  do {
    v = gaussian_vector(n, rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

Matrix random_orthogonal(Index n, std::mt19937_64& rng) {
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j) g.col(j) = gaussian_vector(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

HouseholderProduct generate_product(const GeneratorSpec& spec) {
  validate(spec);
  const Index n = spec.n;
  std::mt19937_64 rng(spec.seed);
  HouseholderProduct product(n);

  switch (spec.distribution) {
    case Distribution::gaussian:
      for (Index k = 0; k < spec.m; ++k) {
        product.push_back(draw_reflector([&] { return gaussian_vector(n, rng); }));
      }
      break;

    case Distribution::sparse: {
      const Index support = sparse_support(spec);
      std::normal_distribution<double> normal;
      for (Index k = 0; k < spec.m; ++k) {
        product.push_back(draw_reflector([&] {
          Vector v = Vector::Zero(n);
          for (Index i : random_positions(n, support, rng)) v[i] = normal(rng);
          return v;
        }));
      }
      break;
    }

    case Distribution::correlated: {
      product.push_back(draw_reflector([&] { return gaussian_vector(n, rng); }));
      Vector previous = product[0].direction();
      for (Index k = 1; k < spec.m; ++k) {
        product.push_back(draw_reflector([&] {
          Vector v = gaussian_vector(n, rng);
          for (Index i : random_positions(n, n / 2, rng)) v[i] = previous[i];
          return v;
        }));
        previous = product[product.size() - 1].direction();
      }
      break;
    }

    case Distribution::bernoulli: {
      std::bernoulli_distribution coin(0.5);
      for (Index k = 0; k < spec.m; ++k) {
        product.push_back(draw_reflector([&] {
          Vector v(n);
          for (Index i = 0; i < n; ++i) v[i] = coin(rng) ? 1.0 : -1.0;
          return v;
        }));
      }
      break;
    }

    case Distribution::exponential: {
      std::exponential_distribution<double> expo(1.0);
      for (Index k = 0; k < spec.m; ++k) {
        product.push_back(draw_reflector([&] {
          Vector v(n);
          for (Index i = 0; i < n; ++i) v[i] = expo(rng);
          return v;
        }));
      }
      break;
    }

    case Distribution::symmetric: {
      const Matrix basis = random_orthogonal(n, rng);
      for (Index k = 0; k < spec.m; ++k) product.push_back(Reflector(basis.col(k)));
      break;
    }
  }
  return product;
}

}  // namespace householder
