#pragma once

// The quadratic algebra qA = T(g)/(qR) with qR spanned by a⊗x − x⊗a
// (a in h, x in g), the Braverman-Gaitsgory conditions for the deformation
// A of qA, and bounded-degree acyclicity of the Koszul complex.

#include <vector>

#include "pbwgate/lie.hpp"

namespace pbwgate {

struct QuadraticData {
  /// Basis of qR as columns of a dim(g)^2-row matrix (original coordinates).
  Matrix relations;
  /// phi: qR -> g on that basis, (a⊗x − x⊗a) -> [a, x].
  Matrix phi;
  /// phi takes the same value on every spanning element that it does when
  /// expanded through the basis.
  bool phi_consistent = true;
  std::size_t dim() const { return relations.cols(); }
};

QuadraticData quadratic_data(const InclusionPair &pair);

struct BgConditions {
  bool condition1 = false; // Im(phi⊗id − id⊗phi) ⊂ qR on qR⊗g ∩ g⊗qR
  bool condition2 = false; // phi∘(phi⊗id − id⊗phi) = 0
  std::size_t intersection_dim = 0;
};

BgConditions bg_conditions(const InclusionPair &pair);

/// dim of T^k(g) modulo the degree-k part of the ideal generated by qR, by rank.
std::size_t qa_graded_dimension(const InclusionPair &pair, std::size_t k);
/// Σ_{i+j=k} (dim n)^i C(dim h + j − 1, j).
std::size_t qa_expected_dimension(const InclusionPair &pair, std::size_t k);

/// Basis of K̃^i, the antisymmetrization image of h^{⊗(i−1)} ⊗ g, as vectors
/// in g^{⊗i} over adapted coordinates (word_index order).
std::vector<Vector> koszul_dual_piece(const InclusionPair &pair, std::size_t i);
/// C(dim h, i) + C(dim h, i − 1) dim n.
std::size_t koszul_dual_expected_dimension(const InclusionPair &pair, std::size_t i);
/// K̃^i ⊂ g^{⊗k} ⊗ qR ⊗ g^{⊗(i−k−2)} for every k.
bool koszul_dual_in_relations(const InclusionPair &pair, std::size_t i);

struct KoszulSlice {
  std::size_t degree = 0;
  std::vector<std::size_t> dims;  // dims[i] = dim qA_{d−i} ⊗ K̃^i, i = 0..d
  std::vector<std::size_t> ranks; // ranks[i] = rank of d: C_i -> C_{i−1} (ranks[0] = 0)
  bool d_squared_zero = false;
  bool lands_in_complex = false; // d maps into qA ⊗ K̃ (not only qA ⊗ g^{⊗})
  std::vector<bool> exact;       // exact[i] for i = 1..d (exact[0] unused)
  std::size_t h0 = 0;
  bool ok() const;
};

struct KoszulReport {
  std::vector<std::size_t> dual_dims, dual_expected; // i = 0..max
  bool dual_contained = true;
  std::vector<KoszulSlice> slices; // internal degree 1..max
  bool ok() const;
};

KoszulReport koszul_acyclicity(const InclusionPair &pair, std::size_t max_internal_degree);

} // namespace pbwgate
