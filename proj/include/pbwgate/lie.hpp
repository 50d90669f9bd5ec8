#pragma once

// Lie algebras given by structure constants, subalgebra inclusions with a
// chosen linear complement, and finite-dimensional modules.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pbwgate/linalg.hpp"

namespace pbwgate {

/// A word/tuple of basis indices.
using Word = std::vector<int>;

class LieAlgebra {
public:
  LieAlgebra() = default;
  /// constants[(i * dim + j) * dim + k] is the coefficient of x_k in [x_i, x_j].
  LieAlgebra(std::vector<std::string> labels, std::vector<Scalar> constants);

  static LieAlgebra abelian(std::size_t dim, std::vector<std::string> labels = {});
  /// sl2 in the basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
  static LieAlgebra sl2();
  /// Heisenberg algebra (p, q, z): [p,q] = z.
  static LieAlgebra heisenberg();

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  const Scalar &constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim() + j) * dim() + k];
  }
  const std::vector<Scalar> &constants() const { return constants_; }

  Vector bracket(std::size_t i, std::size_t j) const;
  Vector bracket(const Vector &x, const Vector &y) const;
  /// Matrix of ad(x): column j holds [x, x_j].
  Matrix ad(const Vector &x) const;
  Matrix ad(std::size_t i) const;

  /// Structure constants in a new basis whose elements are the columns of `basis`.
  LieAlgebra change_basis(const Matrix &basis, std::vector<std::string> labels) const;
  LieAlgebra direct_sum(const LieAlgebra &other) const;

  bool operator==(const LieAlgebra &o) const {
    return labels_ == o.labels_ && constants_ == o.constants_;
  }

private:
  std::vector<std::string> labels_;
  std::vector<Scalar> constants_;
};

struct LieViolation {
  enum class Kind { Antisymmetry, Jacobi };
  Kind kind;
  std::size_t i, j, k; // k unused for antisymmetry
  std::string describe(const LieAlgebra &g) const;
};

struct LieValidation {
  std::vector<LieViolation> violations;
  bool ok() const { return violations.empty(); }
  bool jacobi_ok() const;
  bool antisymmetry_ok() const;
};

/// Lists every antisymmetry pair and Jacobi triple that fails.
LieValidation validate_lie(const LieAlgebra &g);

class NotInjective : public Error {
public:
  using Error::Error;
};

class NotSubalgebra : public Error {
public:
  NotSubalgebra(std::size_t a, std::size_t b, const std::string &msg)
      : Error(msg), first(a), second(b) {}
  std::size_t first, second;
};

/// An inclusion h -> g together with a linear splitting sigma: n -> g.
/// The adapted basis of g lists the images of the h-basis first, then the
/// complement columns; every pair-level computation happens in that basis.
class InclusionPair {
public:
  const LieAlgebra &g() const { return *g_; }
  const LieAlgebra &h() const { return *h_; }
  std::shared_ptr<const LieAlgebra> h_ptr() const { return h_; }
  const LieAlgebra &adapted() const { return adapted_; }

  std::size_t dim_g() const { return g_->dim(); }
  std::size_t dim_h() const { return h_->dim(); }
  std::size_t dim_n() const { return dim_g() - dim_h(); }

  const Matrix &embedding() const { return embedding_; }
  /// Columns are sigma(n_l), in original g coordinates.
  const Matrix &sigma() const { return sigma_; }
  /// Non-pivot coordinates used for the echelon complement (empty for a
  /// user-supplied complement).
  const std::vector<std::size_t> &complement_columns() const { return complement_columns_; }
  const Matrix &adapted_change_of_basis() const { return change_; }
  const Matrix &adapted_inverse() const { return change_inverse_; }
  const std::vector<std::string> &n_labels() const { return n_labels_; }

  /// Original g coordinates -> adapted coordinates.
  Vector to_adapted(const Vector &x) const { return change_inverse_ * x; }
  /// Projection g -> n (n coordinates).
  Vector project(const Vector &x) const;
  /// The h-component of x, in h coordinates (depends on sigma).
  Vector h_component(const Vector &x) const;
  /// Original-coordinate image of the adapted basis vector i.
  Vector adapted_vector(std::size_t i) const { return change_.column(i); }

private:
  friend InclusionPair make_pair(const LieAlgebra &, const Matrix &, const Matrix &,
                                 std::vector<std::string>);
  friend InclusionPair make_pair(const LieAlgebra &, const Matrix &, std::vector<std::string>);
  std::shared_ptr<const LieAlgebra> g_, h_;
  LieAlgebra adapted_;
  Matrix embedding_, sigma_, change_, change_inverse_;
  std::vector<std::size_t> complement_columns_;
  std::vector<std::string> n_labels_;
};

/// Checks injectivity and bracket closure; the complement is the echelon
/// complement (standard basis vectors at non-pivot coordinates of the
/// embedding's column space).
InclusionPair make_pair(const LieAlgebra &g, const Matrix &embedding,
                        std::vector<std::string> h_labels = {});
/// Same, with an explicitly chosen complement (columns span a complement of h).
InclusionPair make_pair(const LieAlgebra &g, const Matrix &embedding,
                        const Matrix &complement, std::vector<std::string> h_labels = {});
/// h spanned by a subset of the basis of g.
InclusionPair make_pair_from_indices(const LieAlgebra &g, const std::vector<std::size_t> &indices);
/// x -> (x, x) into L ⊕ L.
InclusionPair diagonal_pair(const LieAlgebra &l);

class LieModule {
public:
  LieModule() = default;
  LieModule(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim,
            std::vector<Matrix> action);

  static LieModule trivial(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim = 1);
  static LieModule adjoint(std::shared_ptr<const LieAlgebra> algebra);

  const LieAlgebra &algebra() const { return *algebra_; }
  std::shared_ptr<const LieAlgebra> algebra_ptr() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const Matrix &action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix> &actions() const { return action_; }
  /// Action of a general element of the acting algebra.
  Matrix act(const Vector &x) const;
  bool same_algebra(const LieModule &o) const;

  /// Basis pairs (i, j) with action([x_i,x_j]) != [action(x_i), action(x_j)].
  std::vector<std::pair<std::size_t, std::size_t>> bracket_violations() const;
  bool is_valid() const { return bracket_violations().empty(); }

private:
  std::shared_ptr<const LieAlgebra> algebra_;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
};

struct ModuleMap {
  LieModule source, target;
  Matrix matrix; // target.dim() x source.dim()
  bool is_equivariant() const;
};

/// n = g/h with act(a)(x) = proj([a, sigma(x)]).
LieModule quotient_module(const InclusionPair &pair);
/// g as an h-module through ad and the embedding.
LieModule restricted_adjoint(const InclusionPair &pair);

LieModule tensor_module(const LieModule &m, const LieModule &n);
LieModule tensor_power_module(const LieModule &m, std::size_t k);
LieModule dual_module(const LieModule &m);
/// Hom(M, N); phi is stored as a dim N x dim M matrix flattened row-major,
/// so Hom(M, N) = N ⊗ M^* in tensor_module ordering.
LieModule hom_module(const LieModule &m, const LieModule &n);
LieModule direct_sum_module(const LieModule &m, const LieModule &n);
/// Basis: weakly increasing index tuples in lexicographic order.
LieModule sym_power_module(const LieModule &m, std::size_t k);
/// Basis: strictly increasing index tuples in lexicographic order.
LieModule ext_power_module(const LieModule &m, std::size_t k);

/// Equivariant isomorphism M -> N if one exists (brute-force linear solve,
/// then an invertibility check over the solution space basis).
std::optional<Matrix> find_module_isomorphism(const LieModule &m, const LieModule &n);
/// Basis of Hom_h(M, N) as matrices.
std::vector<Matrix> equivariant_maps(const LieModule &m, const LieModule &n);

// Monomial bases shared by the symmetric/exterior powers and the filtrations.
std::vector<Word> all_words(std::size_t letters, std::size_t length);
std::vector<Word> weakly_increasing(std::size_t letters, std::size_t length);
std::vector<Word> strictly_increasing(std::size_t letters, std::size_t length);
/// Lexicographic index of a word of fixed length (first letter most significant).
std::size_t word_index(const Word &w, std::size_t letters);

} // namespace pbwgate
