#include "doctest.h"

#include "pbwgate/lie.hpp"

using namespace pbwgate;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

// sl2 ⋉ k^2 (standard representation as an abelian ideal).
LieAlgebra sl2_semidirect() {
  std::size_t d = 5;
  std::vector<Scalar> c(d * d * d);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long v) {
    c[(i * d + j) * d + k] = v;
    c[(j * d + i) * d + k] = -v;
  };
  set(0, 2, 1, 1);
  set(1, 0, 0, 2);
  set(1, 2, 2, -2);
  set(0, 4, 3, 1);  // e.v2 = v1
  set(2, 3, 4, 1);  // f.v1 = v2
  set(1, 3, 3, 1);  // h.v1 = v1
  set(1, 4, 4, -1); // h.v2 = -v2
  return LieAlgebra({"e", "h", "f", "v1", "v2"}, std::move(c));
}

} // namespace

TEST_CASE("validate_lie") {
  CHECK(validate_lie(LieAlgebra::abelian(4)).ok());
  CHECK(validate_lie(LieAlgebra::sl2()).ok());
  CHECK(validate_lie(LieAlgebra::heisenberg()).ok());
  CHECK(validate_lie(sl2_semidirect()).ok());

  // flip c_{ef}^h on one side only
  auto c = LieAlgebra::sl2().constants();
  c[(0 * 3 + 2) * 3 + 1] = -1;
  LieAlgebra broken({"e", "h", "f"}, c);
  auto report = validate_lie(broken);
  CHECK_FALSE(report.antisymmetry_ok());
  bool found = false;
  for (const auto &v : report.violations)
    if (v.kind == LieViolation::Kind::Antisymmetry && v.i == 0 && v.j == 2)
      found = true;
  CHECK(found);
}

TEST_CASE("make_pair: sl2 Borel and error paths") {
  auto g = LieAlgebra::sl2();
  auto pair = make_pair_from_indices(g, {0, 1});
  CHECK(pair.dim_n() == 1);
  CHECK(pair.complement_columns() == std::vector<std::size_t>{2});
  CHECK(pair.sigma().column(0) == unit(3, 2));
  CHECK(pair.n_labels() == std::vector<std::string>{"f"});

  Matrix span_ef(3, 2);
  span_ef(0, 0) = 1;
  span_ef(2, 1) = 1;
  CHECK_THROWS_AS(make_pair(g, span_ef), NotSubalgebra);

  Matrix dependent(3, 2);
  dependent(0, 0) = 1;
  dependent(0, 1) = 2;
  CHECK_THROWS_AS(make_pair(g, dependent), NotInjective);
}

TEST_CASE("projection composed with sigma is the identity") {
  for (const auto &pair : {make_pair_from_indices(LieAlgebra::sl2(), {0, 1}),
                           diagonal_pair(LieAlgebra::sl2()),
                           diagonal_pair(LieAlgebra::heisenberg())}) {
    for (std::size_t x = 0; x < pair.dim_n(); ++x)
      CHECK(pair.project(pair.sigma().column(x)) == unit(pair.dim_n(), x));
    for (std::size_t a = 0; a < pair.dim_h(); ++a)
      CHECK(is_zero(pair.project(pair.embedding().column(a))));
  }
}

TEST_CASE("quotient_module") {
  auto borel = make_pair_from_indices(LieAlgebra::sl2(), {0, 1});
  auto n = quotient_module(borel);
  CHECK(n.dim() == 1);
  CHECK(n.action(0)(0, 0) == 0);  // e.f = 0
  CHECK(n.action(1)(0, 0) == -2); // h.f = -2f
  CHECK(n.is_valid());

  // diagonal L ⊂ L ⊕ L: n is the adjoint module of L, with identical matrices
  for (const auto &l : {LieAlgebra::sl2(), LieAlgebra::heisenberg()}) {
    auto diag = diagonal_pair(l);
    auto q = quotient_module(diag);
    auto adj = LieModule::adjoint(diag.h_ptr());
    for (std::size_t a = 0; a < l.dim(); ++a)
      CHECK(q.action(a) == adj.action(a));
  }

  auto ab = make_pair_from_indices(LieAlgebra::abelian(3), {0});
  auto qa = quotient_module(ab);
  CHECK(qa.dim() == 2);
  for (const auto &m : qa.actions())
    CHECK(m.is_zero());
}

TEST_CASE("quotient_module does not depend on the complement up to isomorphism") {
  auto g = LieAlgebra::sl2();
  Matrix emb(3, 2);
  emb(0, 0) = 1;
  emb(1, 1) = 1;
  Matrix other(3, 1);
  other(0, 0) = 3;
  other(1, 0) = -1;
  other(2, 0) = 1;
  auto p1 = make_pair(g, emb);
  auto p2 = make_pair(g, emb, other);
  auto n1 = quotient_module(p1), n2 = quotient_module(p2);
  // intertwiner: lift with sigma_1, project with p2
  Matrix t(1, 1);
  t(0, 0) = p2.project(p1.sigma().column(0))[0];
  CHECK((ModuleMap{n1, n2, t}).is_equivariant());
  CHECK(find_module_isomorphism(n1, n2).has_value());
}

TEST_CASE("tensor and hom modules") {
  auto borel = make_pair_from_indices(LieAlgebra::sl2(), {0, 1});
  auto n = quotient_module(borel);
  auto nn = tensor_module(n, n);
  CHECK(nn.dim() == 1);
  CHECK(nn.action(1)(0, 0) == -4);
  CHECK(nn.action(0)(0, 0) == 0);
  CHECK(nn.is_valid());

  auto hom = hom_module(nn, n);
  CHECK(hom.action(0).is_zero()); // e acts trivially on Hom(n⊗n, n)
  CHECK(hom.is_valid());

  auto h = borel.h_ptr();
  auto adj = LieModule::adjoint(h);
  auto triv = LieModule::trivial(h);
  auto t_adj = tensor_module(triv, adj);
  for (std::size_t a = 0; a < 2; ++a)
    CHECK(t_adj.action(a) == adj.action(a));
  auto hom_triv = hom_module(triv, adj);
  for (std::size_t a = 0; a < 2; ++a)
    CHECK(hom_triv.action(a) == adj.action(a));
  auto dual = hom_module(adj, triv);
  auto dd = dual_module(dual);
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(dual.action(a) == dual_module(adj).action(a));
    CHECK(dd.action(a) == adj.action(a));
  }
}

TEST_CASE("tensor associativity and power modules") {
  auto diag = diagonal_pair(LieAlgebra::sl2());
  auto adj = LieModule::adjoint(diag.h_ptr());
  auto left = tensor_module(tensor_module(adj, adj), adj);
  auto right = tensor_module(adj, tensor_module(adj, adj));
  for (std::size_t a = 0; a < 3; ++a)
    CHECK(left.action(a) == right.action(a));
  CHECK(left.is_valid());

  CHECK(sym_power_module(adj, 0).dim() == 1);
  CHECK(ext_power_module(adj, 0).dim() == 1);
  CHECK(sym_power_module(adj, 0).action(0).is_zero());
  CHECK(sym_power_module(adj, 2).dim() == 6);
  for (std::size_t k = 0; k <= 4; ++k) {
    auto s = sym_power_module(adj, k);
    auto e = ext_power_module(adj, k);
    CHECK(s.dim() == binomial(3 + k - 1, k));
    CHECK(e.dim() == binomial(3, k));
    CHECK(s.is_valid());
    CHECK(e.is_valid());
  }
  // ∧^3 of sl2 is the trivial module (trace of ad is zero)
  auto top = ext_power_module(adj, 3);
  for (const auto &m : top.actions())
    CHECK(m.is_zero());
}

TEST_CASE("semidirect product splits as h-modules") {
  auto g = sl2_semidirect();
  auto pair = make_pair_from_indices(g, {0, 1, 2});
  auto n = quotient_module(pair);
  CHECK(n.dim() == 2);
  CHECK(n.is_valid());
  // the complement is an ideal, so sigma itself is equivariant
  auto gmod = restricted_adjoint(pair);
  CHECK((ModuleMap{n, gmod, pair.sigma()}).is_equivariant());
}

TEST_CASE("word enumeration") {
  CHECK(all_words(2, 3).size() == 8);
  CHECK(all_words(3, 0).size() == 1);
  CHECK(weakly_increasing(3, 2).size() == 6);
  CHECK(strictly_increasing(3, 2).size() == 3);
  CHECK(word_index({1, 0, 1}, 2) == 5);
}
