#include "doctest.h"

#include "pbwgate/koszul.hpp"
#include "pbwgate/problem.hpp"
#include "helpers.hpp"

using namespace pbwgate;
using namespace pbwgate::testing;

namespace {

InclusionPair abelian_whole() { return make_pair_from_indices(LieAlgebra::abelian(3), {0, 1, 2}); }

InclusionPair sl2_whole() { return make_pair_from_indices(LieAlgebra::sl2(), {0, 1, 2}); }

} // namespace

TEST_CASE("qR dimension and phi") {
  for (const auto &name : kValid) {
    CAPTURE(name);
    auto pair = pair_of(name);
    auto q = quadratic_data(pair);
    std::size_t dh = pair.dim_h();
    CHECK(q.dim() == dh * pair.dim_n() + dh * (dh - 1) / 2);
    CHECK(q.phi_consistent);
    CHECK(q.phi.rows() == pair.dim_g());
  }
  CHECK(quadratic_data(abelian_whole()).dim() == 3);
}

TEST_CASE("Braverman-Gaitsgory conditions") {
  for (const auto &name : kValid) {
    CAPTURE(name);
    auto bg = bg_conditions(pair_of(name));
    CHECK(bg.condition1);
    CHECK(bg.condition2);
  }
  auto whole = bg_conditions(sl2_whole());
  CHECK(whole.condition1);
  CHECK(whole.condition2);

  auto broken = bg_conditions(pair_of("jacobi-broken-negative-control"));
  CHECK_FALSE(broken.condition2);
}

TEST_CASE("graded dimensions of qA") {
  CHECK(qa_graded_dimension(pair_of("sl2-borel"), 2) == 6);
  CHECK(qa_graded_dimension(pair_of("diagonal-sl2"), 2) == 24);
  for (const auto &name : kValid) {
    CAPTURE(name);
    auto pair = pair_of(name);
    for (std::size_t k = 0; k <= 4; ++k) {
      CAPTURE(k);
      CHECK(qa_graded_dimension(pair, k) == qa_expected_dimension(pair, k));
    }
  }
  auto whole = abelian_whole();
  for (std::size_t k = 0; k <= 4; ++k)
    CHECK(qa_graded_dimension(whole, k) == binomial(k + 2, 2));
}

TEST_CASE("K-tilde pieces") {
  auto pair = pair_of("diagonal-sl2");
  CHECK(koszul_dual_piece(pair, 0).size() == 1);
  CHECK(koszul_dual_piece(pair, 1).size() == 6);
  CHECK(koszul_dual_piece(pair, 2).size() == 12);
  CHECK(koszul_dual_piece(pair, 3).size() == 10);
  CHECK(koszul_dual_piece(pair, 4).size() == 3);
  CHECK(koszul_dual_piece(pair, 5).empty());
  for (std::size_t i = 0; i <= 4; ++i) {
    CHECK(koszul_dual_expected_dimension(pair, i) == koszul_dual_piece(pair, i).size());
    CHECK(koszul_dual_in_relations(pair, i));
  }
  // K̃^2 is qR itself
  auto borel = pair_of("sl2-borel");
  CHECK(koszul_dual_piece(borel, 2).size() == quadratic_data(borel).dim());
}

TEST_CASE("Koszul complex slices are exact") {
  std::vector<std::pair<std::string, InclusionPair>> cases;
  for (const auto &name : {"sl2-borel", "diagonal-sl2", "semidirect-split", "heisenberg-nonsplit"})
    cases.emplace_back(name, pair_of(name));
  cases.emplace_back("abelian h = g", abelian_whole());
  for (const auto &[name, pair] : cases) {
    CAPTURE(name);
    auto r = koszul_acyclicity(pair, 4);
    CHECK(r.dual_dims == r.dual_expected);
    CHECK(r.dual_contained);
    REQUIRE(r.slices.size() == 4);
    for (const auto &s : r.slices) {
      CAPTURE(s.degree);
      CHECK(s.d_squared_zero);
      CHECK(s.lands_in_complex);
      for (std::size_t i = 1; i <= s.degree; ++i)
        CHECK(s.exact[i]);
      CHECK(s.h0 == 0);
      CHECK(s.ok());
    }
    CHECK(r.ok());
  }
}

TEST_CASE("slice Euler characteristic vanishes") {
  auto r = koszul_acyclicity(pair_of("diagonal-heisenberg"), 3);
  for (const auto &s : r.slices) {
    long chi = 0;
    for (std::size_t i = 0; i < s.dims.size(); ++i)
      chi += (i % 2 ? -1L : 1L) * static_cast<long>(s.dims[i]);
    CHECK(chi == 0);
  }
}
