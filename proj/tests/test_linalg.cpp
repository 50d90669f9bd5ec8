#include "doctest.h"

#include <random>

#include "pbwgate/linalg.hpp"

using namespace pbwgate;

namespace {

Matrix mat(std::size_t r, std::size_t c, std::vector<long> entries) {
  std::vector<Scalar> d;
  for (long x : entries)
    d.emplace_back(x);
  return Matrix(r, c, std::move(d));
}

Vector vec(std::vector<long> entries) {
  Vector v;
  for (long x : entries)
    v.emplace_back(x);
  return v;
}

// Small random integer matrices with a deliberate share of zeros so that
// rank deficiency shows up regularly.
Matrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> dist(-3, 3);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = dist(rng) / 2; // roughly half zeros
  return m;
}

} // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_scalar("3") == 3);
  CHECK(parse_scalar("-2/6") == Scalar(-1, 3));
  CHECK(to_string(parse_scalar("4/2")) == "2");
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("x"), Error);
  CHECK_THROWS_AS(parse_scalar("1.5"), Error);
}

TEST_CASE("rref examples") {
  auto id = rref(Matrix::identity(3));
  CHECK(id.reduced == Matrix::identity(3));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});

  auto z = rref(Matrix(2, 2));
  CHECK(z.reduced.is_zero());
  CHECK(z.pivots.empty());

  auto r = rref(mat(2, 2, {2, 4, 1, 2}));
  CHECK(r.reduced == mat(2, 2, {1, 2, 0, 0}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("solve examples") {
  CHECK(*solve(Matrix::identity(2), vec({1, 2})) == vec({1, 2}));
  CHECK(*solve(mat(1, 2, {1, 1}), vec({3})) == vec({3, 0}));
  CHECK_FALSE(solve(mat(1, 1, {0}), vec({1})).has_value());
  CHECK_THROWS_AS(solve(Matrix::identity(2), vec({1})), DimensionMismatch);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(3)).empty());
  CHECK(kernel_basis(Matrix(1, 2)).size() == 2);
  auto k = kernel_basis(mat(1, 2, {1, 1}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == vec({-1, 1}));
}

TEST_CASE("subspace intersection examples") {
  Vector e1 = vec({1, 0, 0}), e2 = vec({0, 1, 0}), e3 = vec({0, 0, 1});
  auto a = subspace_intersection({e1}, {e1}, 3);
  REQUIRE(a.size() == 1);
  CHECK(in_span(a, e1));
  CHECK(subspace_intersection({e1}, {e2}, 3).empty());
  auto b = subspace_intersection({e1, e2}, {e2, e3}, 3);
  REQUIRE(b.size() == 1);
  CHECK(in_span(b, e2));
}

TEST_CASE("tensor_map examples") {
  CHECK(tensor_map(mat(1, 1, {2}), mat(1, 1, {5})) == mat(1, 1, {10}));
  CHECK(tensor_map(Matrix::identity(2), Matrix::identity(3)) == Matrix::identity(6));
  std::mt19937 rng(1);
  CHECK(tensor_map(Matrix(2, 2), random_matrix(rng, 3, 3)).is_zero());
}

TEST_CASE("property: solve, rank-nullity, tensor_map on basis tensors") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix a = random_matrix(rng, r, c);
    auto kernel = kernel_basis(a);
    CHECK(rank(a) + kernel.size() == c);
    for (const auto &k : kernel)
      CHECK(is_zero(a * k));

    Vector x0(c);
    for (auto &xi : x0)
      xi = static_cast<long>(rng() % 7) - 3;
    Vector b = a * x0;
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);

    // sparse system agrees with the dense solver, including the free-variable convention
    SparseSystem sys(c);
    for (std::size_t i = 0; i < r; ++i)
      sys.add_equation(SparseVector::from_dense(a.row(i)), b[i]);
    auto xs = sys.solve();
    REQUIRE(xs.has_value());
    CHECK(*xs == *x);

    Matrix f = random_matrix(rng, 2, 3), g = random_matrix(rng, 3, 2);
    Matrix fg = tensor_map(f, g);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Vector u(3), v(2);
        u[i] = 1;
        v[j] = 1;
        Vector lhs = fg * tensor_map(Matrix::from_columns({u}, 3), Matrix::from_columns({v}, 2)).column(0);
        Vector rhs = tensor_map(Matrix::from_columns({f * u}, 2), Matrix::from_columns({g * v}, 3)).column(0);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("sparse system detects inconsistency") {
  SparseSystem sys(2);
  sys.add_equation(SparseVector::from_dense(vec({1, 1})), 1);
  sys.add_equation(SparseVector::from_dense(vec({2, 2})), 3);
  CHECK_FALSE(sys.solve().has_value());
}

TEST_CASE("echelon basis canonical remainder") {
  EchelonBasis e;
  CHECK(e.insert(SparseVector::from_dense(vec({1, 1, 0}))));
  CHECK(e.insert(SparseVector::from_dense(vec({0, 1, 1}))));
  CHECK_FALSE(e.insert(SparseVector::from_dense(vec({1, 2, 1}))));
  CHECK(e.rank() == 2);
  // e_0 ≡ -e_1 ≡ e_2 modulo the span
  auto r = e.reduce(SparseVector::unit(0));
  CHECK(r == SparseVector::unit(2));
  CHECK(e.contains(SparseVector::from_dense(vec({1, 0, -1}))));
}
