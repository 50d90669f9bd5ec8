#pragma once

// Chevalley-Eilenberg cochains for h with coefficients in an h-module, the
// connecting cocycle of 0 -> h -> g -> n -> 0, the obstruction cocycle, and
// the extension datum rho that exists exactly when the obstruction vanishes.

#include <optional>
#include <vector>

#include "pbwgate/lie.hpp"

namespace pbwgate {

class NotACocycle : public Error {
public:
  using Error::Error;
};

/// A p-cochain: a linear map ∧^p h -> M, stored as a dim M x C(dim h, p)
/// matrix whose columns follow the strictly increasing tuples of h-indices.
struct Cochain {
  std::size_t degree = 0;
  LieModule coefficients;
  Matrix values;

  /// Column-major flattening: entry (i, J) sits at J * dim M + i.
  Vector flatten() const;
  static Cochain from_flat(std::size_t degree, const LieModule &m, const Vector &flat);
  /// Value on the basis element x_a (degree one only).
  Vector value_on(std::size_t a) const { return values.column(a); }
};

/// Matrix of d: C^p(h, M) -> C^{p+1}(h, M) in the flattened coordinates.
Matrix ce_differential(const LieAlgebra &h, const LieModule &m, std::size_t p);
bool is_cocycle(const Cochain &c);

/// c(a)(x) = sigma(a.x) - [a, sigma(x)], valued in Hom(n, h).
Cochain connecting_cocycle(const InclusionPair &pair);
/// a(z)(x ⊗ v) = c(z)(x) . v, valued in Hom(n ⊗ E, E).
Cochain alpha_cocycle(const InclusionPair &pair, const LieModule &e);

/// The coefficient modules Hom(n, h) and Hom(n ⊗ E, E).
LieModule connecting_coefficients(const InclusionPair &pair);
LieModule alpha_coefficients(const InclusionPair &pair, const LieModule &e);

/// A 0-cochain b with d(b) = a, or nullopt.  Throws NotACocycle when d(a) != 0.
std::optional<Cochain> is_trivial(const Cochain &a);
std::optional<Cochain> is_trivial(const InclusionPair &pair, const LieModule &e,
                                  const Cochain &a);

/// rho: g -> End(E) restricting to the h-action and h-equivariant.
struct ExtensionDatum {
  LieModule module;
  /// One matrix per basis element of g (original basis).
  std::vector<Matrix> rho;
  /// One matrix per adapted basis element: h-basis images first, then sigma(n_l).
  std::vector<Matrix> rho_adapted;

  Matrix of(const Vector &g_element) const;
  /// rho(sigma(n_l)).
  const Matrix &on_complement(std::size_t l, std::size_t dim_h) const {
    return rho_adapted[dim_h + l];
  }
};

/// Reasons an ExtensionDatum fails its invariants; empty means valid.
std::vector<std::string> extension_violations(const InclusionPair &pair, const ExtensionDatum &rho);

struct ExtensionSolutions {
  std::optional<ExtensionDatum> particular;
  /// Homogeneous solutions: matrices B_l = delta rho(sigma(n_l)).
  std::vector<std::vector<Matrix>> homogeneous;
};

/// Solves for the unknowns B_l = rho(sigma(n_l)) imposed by h-equivariance.
ExtensionSolutions extension_solution_space(const InclusionPair &pair, const LieModule &e);
/// One solution (free variables zero), verified against its invariants.
std::optional<ExtensionDatum> find_extension(const InclusionPair &pair, const LieModule &e);
/// Builds the datum from complement values B_l; no verification.
ExtensionDatum make_extension(const InclusionPair &pair, const LieModule &e,
                              const std::vector<Matrix> &complement_values);

/// The pushout 0 -> E -> Q -> n ⊗ E -> 0.
struct PushoutSequence {
  LieModule q;
  ModuleMap inclusion;  // E -> Q
  ModuleMap projection; // Q -> n ⊗ E
  /// Ambient coordinates (E first, then g ⊗ E) of each Q basis vector.
  std::vector<Vector> representatives;
};
PushoutSequence pushout_module(const InclusionPair &pair, const LieModule &e);

std::size_t h1_dimension(const LieAlgebra &h, const LieModule &m);

/// x ∧ y -> x ⊗ y - y ⊗ x.
ModuleMap wedge_inclusion(const LieModule &n);
/// The composite of a with ∧²n -> n ⊗ n, valued in Hom(∧²n, n).
Cochain alpha_on_wedge(const InclusionPair &pair);

} // namespace pbwgate
