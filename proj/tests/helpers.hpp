#pragma once

// Shared by the unit suites and the acceptance binary.

#include <string>
#include <vector>

#include "pbwgate/pbw.hpp"
#include "pbwgate/problem.hpp"

namespace pbwgate::testing {

inline const std::vector<std::string> kValid = {"sl2-borel",         "diagonal-sl2",     "diagonal-heisenberg",
                                                "abelian-inclusion", "semidirect-split", "heisenberg-nonsplit"};
inline const std::vector<std::string> kTrivialAlpha = {"diagonal-sl2", "diagonal-heisenberg", "abelian-inclusion",
                                                       "semidirect-split", "heisenberg-nonsplit"};

inline InclusionPair pair_of(const std::string &name) { return catalog_get(name).pair(); }

inline Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

/// The particular solution plus every homogeneous direction with weights 1, 2, ...
inline ExtensionDatum generic_rho(const InclusionPair &pair) {
  auto n = quotient_module(pair);
  auto sols = extension_solution_space(pair, n);
  if (!sols.particular)
    throw Error("no extension datum");
  std::vector<Matrix> b;
  for (std::size_t l = 0; l < pair.dim_n(); ++l) {
    Matrix m = sols.particular->on_complement(l, pair.dim_h());
    for (std::size_t h = 0; h < sols.homogeneous.size(); ++h)
      m += sols.homogeneous[h][l] * Scalar(static_cast<long>(h + 1));
    b.push_back(std::move(m));
  }
  auto rho = make_extension(pair, n, b);
  if (!extension_violations(pair, rho).empty())
    throw Error("generic extension datum is invalid");
  return rho;
}

/// rho(v) for v in n.
inline Matrix rho_of(const InclusionPair &pair, const ExtensionDatum &rho, const Vector &v) {
  Matrix out(pair.dim_n(), pair.dim_n());
  for (std::size_t l = 0; l < v.size(); ++l)
    if (!is_zero(v[l]))
      out += rho.on_complement(l, pair.dim_h()) * v[l];
  return out;
}

inline void add_vector_word(WordCombination &out, const Word &prefix, const Vector &v, const Word &suffix,
                            const Scalar &c) {
  for (std::size_t z = 0; z < v.size(); ++z)
    if (!is_zero(v[z])) {
      Word w = prefix;
      w.push_back(static_cast<int>(z));
      w.insert(w.end(), suffix.begin(), suffix.end());
      out[w] += c * v[z];
    }
}

inline void prune(WordCombination &w) {
  for (auto it = w.begin(); it != w.end();)
    it = is_zero(it->second) ? w.erase(it) : std::next(it);
}

/// x1 x2 − ad(x1)x2, with ad = rho.
inline WordCombination printed_s2(const InclusionPair &pair, const ExtensionDatum &rho, const Word &w) {
  const std::size_t dn = pair.dim_n();
  WordCombination out;
  out[w] += 1;
  add_vector_word(out, {}, rho.on_complement(w[0], pair.dim_h()) * unit(dn, w[1]), {}, -1);
  prune(out);
  return out;
}

/// x1x2x3 − x1 ad(x2)x3 − x2 ad(x1)x3 + ad(x2)ad(x1)x3 − ad(x1)x2 · x3 + ad(ad(x1)x2)x3.
inline WordCombination printed_s3(const InclusionPair &pair, const ExtensionDatum &rho, const Word &w) {
  const std::size_t dn = pair.dim_n();
  auto r = [&](std::size_t x) { return rho.on_complement(x, pair.dim_h()); };
  const std::size_t x1 = w[0], x2 = w[1];
  Vector e3 = unit(dn, w[2]);
  WordCombination out;
  out[w] += 1;
  add_vector_word(out, {w[0]}, r(x2) * e3, {}, -1);
  add_vector_word(out, {w[1]}, r(x1) * e3, {}, -1);
  add_vector_word(out, {}, r(x2) * (r(x1) * e3), {}, 1);
  add_vector_word(out, {}, r(x1) * unit(dn, x2), {w[2]}, -1);
  add_vector_word(out, {}, rho_of(pair, rho, r(x1) * unit(dn, x2)) * e3, {}, 1);
  prune(out);
  return out;
}

/// The alpha cocycle of p2 moved to the coordinates of p1 along n1 ≅ n2.
inline Cochain transported_alpha(const InclusionPair &p1, const InclusionPair &p2) {
  auto n1 = quotient_module(p1), n2 = quotient_module(p2);
  const std::size_t dn = n1.dim();
  Matrix t(dn, dn);
  for (std::size_t x = 0; x < dn; ++x) {
    Vector col = p2.project(p1.sigma().column(x));
    for (std::size_t y = 0; y < dn; ++y)
      t(y, x) = col[y];
  }
  if (!ModuleMap{n1, n2, t}.is_equivariant())
    throw Error("n1 -> n2 is not equivariant");
  Matrix t_inv = *solve(t, Matrix::identity(dn));
  Matrix tt = tensor_map(t, t);
  auto a1 = alpha_cocycle(p1, n1), a2 = alpha_cocycle(p2, n2);
  Cochain moved{1, a1.coefficients, Matrix(a1.values.rows(), a1.values.cols())};
  for (std::size_t z = 0; z < p1.dim_h(); ++z) {
    Matrix az(dn, dn * dn);
    for (std::size_t i = 0; i < dn * dn * dn; ++i)
      az(i / (dn * dn), i % (dn * dn)) = a2.values(i, z);
    Matrix back = t_inv * az * tt;
    for (std::size_t i = 0; i < dn * dn * dn; ++i)
      moved.values(i, z) = back(i / (dn * dn), i % (dn * dn));
  }
  return moved;
}

/// Alternative complements for the pairs used in the complement-independence checks.
inline std::vector<std::pair<std::string, Matrix>> alternative_complements() {
  std::vector<std::pair<std::string, Matrix>> cases;
  Matrix borel(3, 1);
  borel(0, 0) = 3;
  borel(1, 0) = -1;
  borel(2, 0) = 1;
  cases.emplace_back("sl2-borel", borel);
  // (0, x_i) shifted by diagonal elements
  Matrix diag(6, 3);
  for (std::size_t i = 0; i < 3; ++i)
    diag(3 + i, i) = 1;
  diag(1, 0) = diag(4, 0) = 1;
  diag(2, 1) = diag(5, 1) = -2;
  diag(0, 2) += 1;
  diag(3, 2) += 1;
  cases.emplace_back("diagonal-sl2", diag);
  cases.emplace_back("diagonal-heisenberg", diag);
  return cases;
}

} // namespace pbwgate::testing
