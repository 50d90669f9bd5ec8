#pragma once

// Truncated normal-form models of the two induced modules
//   F = U(h^(1)) ⊗_{U(h)} V   (free words in n)
//   R = U(g) ⊗_{U(h)} V       (ordered monomials in n)
// with their degree filtrations, the splitting maps built from an extension
// datum rho, and a brute-force equivariant section solver.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pbwgate/cohomology.hpp"

namespace pbwgate {

class AlphaNontrivial : public Error {
public:
  using Error::Error;
};

class ConfluenceFailure : public Error {
public:
  using Error::Error;
};

enum class Side { F, R };
const char *side_name(Side s);

/// Linear combination of words (n-indices for normal forms).
using WordCombination = std::map<Word, Scalar>;

/// Rewriting engine.  Words are over adapted letters (h-basis first, then
/// the n-lifts); normal words are over n-indices, paired with a V-index.
/// Basis order: degree-major, then word lexicographic, then V fastest, so
/// the basis of level k is a prefix of the basis of level k + 1.
class NormalForms {
public:
  NormalForms(const InclusionPair &pair, Side side, LieModule v, std::size_t max_degree);

  Side side() const { return side_; }
  const InclusionPair &pair() const { return pair_; }
  const LieModule &coefficients() const { return v_; }
  std::size_t dim_n() const { return dn_; }
  std::size_t dim_v() const { return v_.dim(); }
  std::size_t max_degree() const { return max_degree_; }

  /// Number of normal basis elements of degree < len.
  std::size_t offset(std::size_t len) const { return offsets_.at(len); }
  /// Dimension of level k (degree <= k).
  std::size_t level_dim(std::size_t k) const { return offsets_.at(k + 1); }
  std::size_t index(const Word &n_word, std::size_t v) const;
  const Word &basis_word(std::size_t i) const { return words_[i / dim_v()]; }
  std::size_t basis_v(std::size_t i) const { return i % dim_v(); }

  /// Normal form of (adapted word) ⊗ e_v; the word may be at most one
  /// letter longer than max_degree when it starts with an h-letter.
  SparseVector nf(const Word &adapted_word, std::size_t v) const;
  /// Normal form of an n-word ⊗ e_v read as adapted letters.
  SparseVector nf_n(const Word &n_word, std::size_t v) const;

  /// First relation instance u·rel·u' (total length <= degree) whose normal
  /// form is nonzero, described; nullopt when every instance vanishes.
  std::optional<std::string> confluence_failure(std::size_t degree) const;

private:
  SparseVector compute(const Word &w, std::size_t v) const;

  InclusionPair pair_;
  Side side_;
  LieModule v_;
  std::size_t max_degree_, dh_, dn_;
  std::vector<Word> words_; // normal words in basis order (one entry per V-block)
  std::vector<std::size_t> offsets_;
  std::map<Word, std::size_t> sorted_rank_;
  mutable std::mutex mutex_;
  mutable std::map<Word, SparseVector> memo_;
};

/// 0 -> sub -> total -> quotient -> 0 with equivariant maps.
struct ShortExactSequence {
  LieModule sub, total, quotient;
  Matrix inclusion;  // total x sub
  Matrix projection; // quotient x total
  /// Reasons the data is not an equivariant short exact sequence.
  std::vector<std::string> violations() const;
};

/// An equivariant s with projection * s = id, or nullopt.
std::optional<Matrix> section_oracle(const ShortExactSequence &seq);

struct FilteredModule {
  std::shared_ptr<const NormalForms> forms;
  /// Reduced: the degree-0 part (trivial V only) is split off.
  bool reduced = false;
  std::size_t max_level = 0;
  /// h-action on the top level, in basis coordinates from first_index().
  std::vector<Matrix> actions;

  Side side() const { return forms->side(); }
  std::size_t first_index() const { return reduced ? forms->level_dim(0) : 0; }
  std::size_t dim(std::size_t k) const { return forms->level_dim(k) - first_index(); }
  LieModule level(std::size_t k) const;
  /// Level k modulo level k - 1 (top block of the action).
  LieModule graded(std::size_t k) const;
  ModuleMap inclusion(std::size_t k) const; // level k-1 -> level k
  ShortExactSequence level_sequence(std::size_t k) const;
  /// Coordinates relative to first_index() of a normal-form vector.
  Vector coordinates(const SparseVector &v, std::size_t k) const;
};

/// Builds levels 0..K; checks confluence up to degree K and that the action
/// respects the bracket of h.  Reduced requires the trivial one-dimensional V.
FilteredModule build_filtration(const InclusionPair &pair, Side side, std::size_t max_level,
                                std::optional<LieModule> v = std::nullopt, bool reduced = false);

/// dim of (T^{<=k}(g) ⊗ V) modulo the relations of degree <= k, by rank.
std::size_t truncated_quotient_dimension(const InclusionPair &pair, Side side, std::size_t k,
                                         std::optional<LieModule> v = std::nullopt);

/// Normal form in U(g)/U(g)h of a word over the original g-basis.
WordCombination straighten_g(const InclusionPair &pair, const Word &g_word);
/// Normal form in T(g)/(J + T(g)h) of a word over the original g-basis.
WordCombination reduce_h1(const InclusionPair &pair, const Word &g_word);

struct GrReport {
  bool equivariant = false;
  bool isomorphism = false;
  /// R side: the kernel of n^{⊗k} -> gr_k is spanned by commutators.
  bool commutator_kernel = true;
  std::string failure;
  bool ok() const { return equivariant && isomorphism && commutator_kernel; }
};
/// Checks n^{⊗k} ⊗ V -> gr_k F (resp. S^k(n) ⊗ V -> gr_k R) is an
/// equivariant isomorphism; on R also that τ: n^{⊗k} -> gr_k R has the
/// commutator span as kernel.
GrReport gr_check(const FilteredModule &filt, std::size_t k);

struct F2Report {
  bool well_defined = false;
  bool squares_commute = false;
  bool equivariant = false;
  bool bijective = false;
  bool q_splits = false;
  bool f2_splits = false;
  Matrix map; // Q -> F̃²
  std::string failure;
  bool ok() const {
    return well_defined && squares_commute && equivariant && bijective && q_splits == f2_splits;
  }
};
/// The map Q -> F̃² from the pushout of c, with E = n.
F2Report f2_class_check(const InclusionPair &pair);

/// Δ on words with primitive letters: the sum over subsequence splittings.
std::map<std::pair<Word, Word>, Scalar> coproduct_word(const Word &w);
/// S(x_1 ... x_m) = (-1)^m x_m ... x_1.
std::pair<Scalar, Word> antipode_word(const Word &w);

/// f ⊗ m in U(h^(1)) ⊗_{U(h)} n^{⊗k}: keys are (n-word f, index of m).
struct InducedElement {
  std::size_t tensor_degree = 0;
  std::map<std::pair<Word, std::size_t>, Scalar> terms;
  void add(const Word &f, std::size_t m, const Scalar &c);
  /// Longest word with a nonzero coefficient (-1 for zero).
  long filtration_degree() const;
};

/// Action of an n-word on n̄ through rho: w_1 ... w_m . y = rho(w_1)(... rho(w_m) y).
Vector act_word(const InclusionPair &pair, const ExtensionDatum &rho, const Word &w, const Vector &y);

/// t_k: U(h^(1)) ⊗ n^{⊗k} -> U(h^(1)) ⊗ n^{⊗(k-1)}.
InducedElement t_map(const InclusionPair &pair, const ExtensionDatum &rho, std::size_t k,
                     const InducedElement &e);

struct Splitting {
  ModuleMap map;
  bool equivariant = false;
  bool section = false;
  bool ok() const { return equivariant && section; }
};

/// s_k: n^{⊗k} -> F^k (trivial V), the adjoint of t_1 ∘ ... ∘ t_k.
Splitting splitting_s(const InclusionPair &pair, const ExtensionDatum &rho, std::size_t k);
/// Same, deriving rho; throws AlphaNontrivial when no rho exists.
Splitting splitting_s(const InclusionPair &pair, std::size_t k);
/// s_k(x_{m_1} ⊗ ... ⊗ x_{m_k}) as a combination of n-words.
WordCombination splitting_s_value(const InclusionPair &pair, const ExtensionDatum &rho,
                                  const Word &inputs);

/// I_k: S^k(n) -> R^k for k = 0..K (symmetrize, s_k, straighten).
std::vector<Splitting> pbw_splitting_I(const InclusionPair &pair, const ExtensionDatum &rho,
                                       std::size_t max_degree);
std::vector<Splitting> pbw_splitting_I(const InclusionPair &pair, std::size_t max_degree);

/// Levelwise verdicts for the reduced filtrations (trivial V).
struct EquivalenceLevel {
  std::size_t k;
  bool predicted; // split predicted by alpha
  bool f_split, r_split;
  bool agrees() const { return predicted == f_split && predicted == r_split; }
};
struct EquivalenceReport {
  bool alpha_trivial = false;
  std::vector<EquivalenceLevel> levels;
  bool agrees() const;
};
/// Levels 0 and 1 always split; for k >= 2 level k is predicted to split
/// exactly when alpha is trivial.
EquivalenceReport equivalence_harness(const InclusionPair &pair, std::size_t max_degree);

struct TwistedReport {
  bool alpha_trivial = false;
  bool alpha_v_trivial = false;
  std::vector<bool> f_split, r_split; // levels 1..K of the unreduced filtrations
  /// level 1 splits iff alpha_V trivial; all levels split iff both trivial.
  bool agrees() const;
};
TwistedReport twisted_verdict(const InclusionPair &pair, const LieModule &v, std::size_t max_degree);

} // namespace pbwgate
