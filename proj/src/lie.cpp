#include "pbwgate/lie.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pbwgate {

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<Scalar> constants)
    : labels_(std::move(labels)), constants_(std::move(constants)) {
  std::size_t d = labels_.size();
  if (constants_.size() != d * d * d)
    throw DimensionMismatch("structure constants must have dim^3 entries");
}

LieAlgebra LieAlgebra::abelian(std::size_t dim, std::vector<std::string> labels) {
  if (labels.empty())
    for (std::size_t i = 0; i < dim; ++i)
      labels.push_back("x" + std::to_string(i));
  return LieAlgebra(std::move(labels), std::vector<Scalar>(dim * dim * dim));
}

namespace {

void set_bracket(std::vector<Scalar> &c, std::size_t d, std::size_t i, std::size_t j,
                 std::size_t k, const Scalar &v) {
  c[(i * d + j) * d + k] = v;
  c[(j * d + i) * d + k] = -v;
}

} // namespace

LieAlgebra LieAlgebra::sl2() {
  std::vector<Scalar> c(27);
  set_bracket(c, 3, 0, 2, 1, 1);  // [e,f] = h
  set_bracket(c, 3, 1, 0, 0, 2);  // [h,e] = 2e
  set_bracket(c, 3, 1, 2, 2, -2); // [h,f] = -2f
  return LieAlgebra({"e", "h", "f"}, std::move(c));
}

LieAlgebra LieAlgebra::heisenberg() {
  std::vector<Scalar> c(27);
  set_bracket(c, 3, 0, 1, 2, 1);
  return LieAlgebra({"p", "q", "z"}, std::move(c));
}

Vector LieAlgebra::bracket(std::size_t i, std::size_t j) const {
  auto first = constants_.begin() + static_cast<std::ptrdiff_t>((i * dim() + j) * dim());
  return Vector(first, first + static_cast<std::ptrdiff_t>(dim()));
}

Vector LieAlgebra::bracket(const Vector &x, const Vector &y) const {
  Vector r(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0)
      continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(y[j]) == 0)
        continue;
      Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim(); ++k)
        if (sgn(constant(i, j, k)) != 0)
          r[k] += xy * constant(i, j, k);
    }
  }
  return r;
}

Matrix LieAlgebra::ad(const Vector &x) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    Vector e(dim());
    e[j] = 1;
    Vector b = bracket(x, e);
    for (std::size_t k = 0; k < dim(); ++k)
      m(k, j) = b[k];
  }
  return m;
}

Matrix LieAlgebra::ad(std::size_t i) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t k = 0; k < dim(); ++k)
      m(k, j) = constant(i, j, k);
  return m;
}

LieAlgebra LieAlgebra::change_basis(const Matrix &basis, std::vector<std::string> labels) const {
  std::size_t d = dim();
  if (basis.rows() != d || basis.cols() != d)
    throw DimensionMismatch("change_basis expects a square matrix");
  auto inverse = solve(basis, Matrix::identity(d));
  if (!inverse)
    throw Error("change_basis: basis matrix is singular");
  std::vector<Scalar> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector b = *inverse * bracket(basis.column(i), basis.column(j));
      for (std::size_t k = 0; k < d; ++k)
        c[(i * d + j) * d + k] = b[k];
    }
  return LieAlgebra(std::move(labels), std::move(c));
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra &other) const {
  std::size_t a = dim(), b = other.dim(), d = a + b;
  std::vector<std::string> labels;
  for (const auto &l : labels_)
    labels.push_back(l + "1");
  for (const auto &l : other.labels_)
    labels.push_back(l + "2");
  std::vector<Scalar> c(d * d * d);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j)
      for (std::size_t k = 0; k < a; ++k)
        c[(i * d + j) * d + k] = constant(i, j, k);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < b; ++k)
        c[((a + i) * d + a + j) * d + a + k] = other.constant(i, j, k);
  return LieAlgebra(std::move(labels), std::move(c));
}

std::string LieViolation::describe(const LieAlgebra &g) const {
  std::ostringstream os;
  const auto &l = g.labels();
  if (kind == Kind::Antisymmetry)
    os << "antisymmetry fails for (" << l[i] << ", " << l[j] << ")";
  else
    os << "Jacobi identity fails for (" << l[i] << ", " << l[j] << ", " << l[k] << ")";
  return os.str();
}

bool LieValidation::jacobi_ok() const {
  return std::none_of(violations.begin(), violations.end(),
                      [](const auto &v) { return v.kind == LieViolation::Kind::Jacobi; });
}

bool LieValidation::antisymmetry_ok() const {
  return std::none_of(violations.begin(), violations.end(), [](const auto &v) {
    return v.kind == LieViolation::Kind::Antisymmetry;
  });
}

LieValidation validate_lie(const LieAlgebra &g) {
  LieValidation report;
  std::size_t d = g.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      bool bad = false;
      for (std::size_t k = 0; k < d; ++k)
        if (g.constant(i, j, k) != -g.constant(j, i, k))
          bad = true;
      if (bad)
        report.violations.push_back({LieViolation::Kind::Antisymmetry, i, j, 0});
    }
  auto unit = [d](std::size_t i) {
    Vector e(d);
    e[i] = 1;
    return e;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        Vector xi = unit(i), xj = unit(j), xk = unit(k);
        Vector s = g.bracket(g.bracket(xi, xj), xk);
        Vector t = g.bracket(g.bracket(xj, xk), xi);
        Vector u = g.bracket(g.bracket(xk, xi), xj);
        for (std::size_t m = 0; m < d; ++m)
          s[m] += t[m] + u[m];
        if (!is_zero(s))
          report.violations.push_back({LieViolation::Kind::Jacobi, i, j, k});
      }
  return report;
}

Vector InclusionPair::project(const Vector &x) const {
  Vector a = to_adapted(x);
  return Vector(a.begin() + static_cast<std::ptrdiff_t>(dim_h()), a.end());
}

Vector InclusionPair::h_component(const Vector &x) const {
  Vector a = to_adapted(x);
  return Vector(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(dim_h()));
}

namespace {

bool is_unit_column(const Matrix &m, std::size_t j, std::size_t &where) {
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(m(i, j)) != 0) {
      ++nonzero;
      where = i;
    }
  return nonzero == 1 && m(where, j) == 1;
}

} // namespace

InclusionPair make_pair(const LieAlgebra &g, const Matrix &embedding,
                        const Matrix &complement, std::vector<std::string> h_labels) {
  std::size_t dg = g.dim(), dh = embedding.cols();
  if (embedding.rows() != dg)
    throw DimensionMismatch("embedding must have dim(g) rows");
  if (rank(embedding) != dh)
    throw NotInjective("embedding of h into g is not injective");
  if (complement.rows() != dg || complement.cols() != dg - dh)
    throw DimensionMismatch("complement must be dim(g) x (dim(g) - dim(h))");

  Matrix change(dg, dg);
  for (std::size_t i = 0; i < dg; ++i) {
    for (std::size_t j = 0; j < dh; ++j)
      change(i, j) = embedding(i, j);
    for (std::size_t j = 0; j < dg - dh; ++j)
      change(i, dh + j) = complement(i, j);
  }
  auto inverse = solve(change, Matrix::identity(dg));
  if (!inverse)
    throw Error("complement columns do not span a complement of h");

  // Bracket closure: every [a_i, a_j] must have zero complement part.
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = 0; j < dh; ++j) {
      Vector b = *inverse * g.bracket(embedding.column(i), embedding.column(j));
      for (std::size_t k = dh; k < dg; ++k)
        if (sgn(b[k]) != 0)
          throw NotSubalgebra(i, j,
                              "image of h is not closed under the bracket: [h" +
                                  std::to_string(i) + ", h" + std::to_string(j) +
                                  "] leaves the subspace");
    }

  if (h_labels.empty())
    for (std::size_t j = 0; j < dh; ++j) {
      std::size_t where = 0;
      h_labels.push_back(is_unit_column(embedding, j, where) ? g.labels()[where]
                                                             : "h" + std::to_string(j));
    }
  std::vector<std::string> n_labels;
  for (std::size_t j = 0; j < dg - dh; ++j) {
    std::size_t where = 0;
    n_labels.push_back(is_unit_column(complement, j, where) ? g.labels()[where]
                                                            : "n" + std::to_string(j));
  }
  std::vector<std::string> adapted_labels = h_labels;
  adapted_labels.insert(adapted_labels.end(), n_labels.begin(), n_labels.end());

  LieAlgebra adapted = g.change_basis(change, adapted_labels);
  std::vector<Scalar> hc(dh * dh * dh);
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = 0; j < dh; ++j)
      for (std::size_t k = 0; k < dh; ++k)
        hc[(i * dh + j) * dh + k] = adapted.constant(i, j, k);

  InclusionPair p;
  p.g_ = std::make_shared<const LieAlgebra>(g);
  p.h_ = std::make_shared<const LieAlgebra>(std::move(h_labels), std::move(hc));
  p.adapted_ = std::move(adapted);
  p.embedding_ = embedding;
  p.sigma_ = complement;
  p.change_ = std::move(change);
  p.change_inverse_ = std::move(*inverse);
  p.n_labels_ = std::move(n_labels);
  return p;
}

InclusionPair make_pair(const LieAlgebra &g, const Matrix &embedding,
                        std::vector<std::string> h_labels) {
  if (embedding.rows() != g.dim())
    throw DimensionMismatch("embedding must have dim(g) rows");
  auto pivots = rref(embedding.transpose()).pivots;
  if (pivots.size() != embedding.cols())
    throw NotInjective("embedding of h into g is not injective");
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end())
      free.push_back(i);
  Matrix complement(g.dim(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j)
    complement(free[j], j) = 1;
  InclusionPair p = make_pair(g, embedding, complement, std::move(h_labels));
  p.complement_columns_ = std::move(free);
  return p;
}

InclusionPair make_pair_from_indices(const LieAlgebra &g,
                                     const std::vector<std::size_t> &indices) {
  Matrix emb(g.dim(), indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= g.dim())
      throw DimensionMismatch("subalgebra index out of range");
    emb(indices[j], j) = 1;
  }
  return make_pair(g, emb);
}

InclusionPair diagonal_pair(const LieAlgebra &l) {
  LieAlgebra g = l.direct_sum(l);
  Matrix emb(g.dim(), l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i) {
    emb(i, i) = 1;
    emb(l.dim() + i, i) = 1;
  }
  return make_pair(g, emb, l.labels());
}

LieModule::LieModule(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim,
                     std::vector<Matrix> action)
    : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)) {
  if (action_.size() != algebra_->dim())
    throw DimensionMismatch("module needs one action matrix per basis element");
  for (const auto &a : action_)
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionMismatch("action matrix has the wrong shape");
}

LieModule LieModule::trivial(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim) {
  std::vector<Matrix> action(algebra->dim(), Matrix(dim, dim));
  return LieModule(std::move(algebra), dim, std::move(action));
}

LieModule LieModule::adjoint(std::shared_ptr<const LieAlgebra> algebra) {
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < algebra->dim(); ++i)
    action.push_back(algebra->ad(i));
  std::size_t d = algebra->dim();
  return LieModule(std::move(algebra), d, std::move(action));
}

Matrix LieModule::act(const Vector &x) const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0)
      m += action_[i] * x[i];
  return m;
}

bool LieModule::same_algebra(const LieModule &o) const {
  return algebra_ == o.algebra_ || *algebra_ == *o.algebra_;
}

std::vector<std::pair<std::size_t, std::size_t>> LieModule::bracket_violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t i = 0; i < algebra_->dim(); ++i)
    for (std::size_t j = i + 1; j < algebra_->dim(); ++j)
      if (act(algebra_->bracket(i, j)) != commutator(action_[i], action_[j]))
        bad.emplace_back(i, j);
  return bad;
}

bool ModuleMap::is_equivariant() const {
  if (!source.same_algebra(target))
    return false;
  for (std::size_t i = 0; i < source.algebra().dim(); ++i)
    if (matrix * source.action(i) != target.action(i) * matrix)
      return false;
  return true;
}

LieModule quotient_module(const InclusionPair &pair) {
  std::size_t dh = pair.dim_h(), dn = pair.dim_n();
  const auto &ad = pair.adapted();
  std::vector<Matrix> action;
  for (std::size_t a = 0; a < dh; ++a) {
    Matrix m(dn, dn);
    for (std::size_t x = 0; x < dn; ++x)
      for (std::size_t y = 0; y < dn; ++y)
        m(y, x) = ad.constant(a, dh + x, dh + y);
    action.push_back(std::move(m));
  }
  return LieModule(pair.h_ptr(), dn, std::move(action));
}

LieModule restricted_adjoint(const InclusionPair &pair) {
  std::vector<Matrix> action;
  for (std::size_t a = 0; a < pair.dim_h(); ++a)
    action.push_back(pair.g().ad(pair.embedding().column(a)));
  return LieModule(pair.h_ptr(), pair.dim_g(), std::move(action));
}

LieModule tensor_module(const LieModule &m, const LieModule &n) {
  if (!m.same_algebra(n))
    throw Error("tensor_module: modules over different algebras");
  Matrix im = Matrix::identity(m.dim()), in = Matrix::identity(n.dim());
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    action.push_back(tensor_map(m.action(i), in) + tensor_map(im, n.action(i)));
  return LieModule(m.algebra_ptr(), m.dim() * n.dim(), std::move(action));
}

LieModule tensor_power_module(const LieModule &m, std::size_t k) {
  LieModule r = LieModule::trivial(m.algebra_ptr(), 1);
  for (std::size_t i = 0; i < k; ++i)
    r = tensor_module(r, m);
  return r;
}

LieModule dual_module(const LieModule &m) {
  std::vector<Matrix> action;
  for (const auto &a : m.actions())
    action.push_back(a.transpose() * Scalar(-1));
  return LieModule(m.algebra_ptr(), m.dim(), std::move(action));
}

LieModule hom_module(const LieModule &m, const LieModule &n) {
  if (!m.same_algebra(n))
    throw Error("hom_module: modules over different algebras");
  return tensor_module(n, dual_module(m));
}

LieModule direct_sum_module(const LieModule &m, const LieModule &n) {
  if (!m.same_algebra(n))
    throw Error("direct_sum_module: modules over different algebras");
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix a(m.dim() + n.dim(), m.dim() + n.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c)
        a(r, c) = m.action(i)(r, c);
    for (std::size_t r = 0; r < n.dim(); ++r)
      for (std::size_t c = 0; c < n.dim(); ++c)
        a(m.dim() + r, m.dim() + c) = n.action(i)(r, c);
    action.push_back(std::move(a));
  }
  return LieModule(m.algebra_ptr(), m.dim() + n.dim(), std::move(action));
}

std::vector<Word> all_words(std::size_t letters, std::size_t length) {
  std::vector<Word> out;
  Word w(length, 0);
  if (letters == 0)
    return length == 0 ? std::vector<Word>{w} : out;
  while (true) {
    out.push_back(w);
    std::size_t p = length;
    while (p > 0 && static_cast<std::size_t>(w[p - 1]) + 1 == letters)
      w[--p] = 0;
    if (p == 0)
      break;
    ++w[p - 1];
  }
  return out;
}

std::vector<Word> weakly_increasing(std::size_t letters, std::size_t length) {
  std::vector<Word> out;
  for (auto &w : all_words(letters, length))
    if (std::is_sorted(w.begin(), w.end()))
      out.push_back(std::move(w));
  return out;
}

std::vector<Word> strictly_increasing(std::size_t letters, std::size_t length) {
  std::vector<Word> out;
  for (auto &w : all_words(letters, length))
    if (std::adjacent_find(w.begin(), w.end(), std::greater_equal<>()) == w.end())
      out.push_back(std::move(w));
  return out;
}

std::size_t word_index(const Word &w, std::size_t letters) {
  std::size_t idx = 0;
  for (int l : w)
    idx = idx * letters + static_cast<std::size_t>(l);
  return idx;
}

namespace {

// Derivation action on monomials; `alternating` selects the exterior power.
LieModule power_module(const LieModule &m, std::size_t k, bool alternating) {
  auto basis = alternating ? strictly_increasing(m.dim(), k) : weakly_increasing(m.dim(), k);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index.emplace(basis[i], i);
  std::vector<Matrix> action;
  for (const auto &a : m.actions()) {
    Matrix out(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const Word &w = basis[col];
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < m.dim(); ++q) {
          const Scalar &coeff = a(q, static_cast<std::size_t>(w[p]));
          if (sgn(coeff) == 0)
            continue;
          Word v = w;
          v[p] = static_cast<int>(q);
          int sign = 1;
          if (alternating) {
            // bubble sort, tracking the permutation sign
            for (std::size_t s = 0; s < v.size(); ++s)
              for (std::size_t t = 0; t + 1 < v.size() - s; ++t)
                if (v[t] > v[t + 1]) {
                  std::swap(v[t], v[t + 1]);
                  sign = -sign;
                }
            if (std::adjacent_find(v.begin(), v.end()) != v.end())
              continue;
          } else {
            std::sort(v.begin(), v.end());
          }
          out(index.at(v), col) += sign * coeff;
        }
    }
    action.push_back(std::move(out));
  }
  return LieModule(m.algebra_ptr(), basis.size(), std::move(action));
}

} // namespace

LieModule sym_power_module(const LieModule &m, std::size_t k) {
  return power_module(m, k, false);
}

LieModule ext_power_module(const LieModule &m, std::size_t k) {
  return power_module(m, k, true);
}

std::vector<Matrix> equivariant_maps(const LieModule &m, const LieModule &n) {
  if (!m.same_algebra(n))
    throw Error("equivariant_maps: modules over different algebras");
  std::size_t rows = n.dim(), cols = m.dim(), unknowns = rows * cols;
  // Unknown X(r, c) sits at r * cols + c; equations X A_m - A_n X = 0.
  std::vector<Vector> eqs;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    const Matrix &am = m.action(i), &an = n.action(i);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Vector e(unknowns);
        for (std::size_t k = 0; k < cols; ++k)
          e[r * cols + k] += am(k, c);
        for (std::size_t k = 0; k < rows; ++k)
          e[k * cols + c] -= an(r, k);
        if (!is_zero(e))
          eqs.push_back(std::move(e));
      }
  }
  std::vector<Vector> kernel;
  if (eqs.empty()) {
    for (std::size_t u = 0; u < unknowns; ++u) {
      Vector e(unknowns);
      e[u] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = kernel_basis(Matrix::from_rows(eqs, unknowns));
  }
  std::vector<Matrix> maps;
  for (auto &k : kernel)
    maps.emplace_back(rows, cols, std::move(k));
  return maps;
}

std::optional<Matrix> find_module_isomorphism(const LieModule &m, const LieModule &n) {
  if (m.dim() != n.dim())
    return std::nullopt;
  auto maps = equivariant_maps(m, n);
  if (maps.empty())
    return m.dim() == 0 ? std::optional<Matrix>(Matrix(0, 0)) : std::nullopt;
  auto invertible = [&](const Matrix &x) { return rank(x) == m.dim(); };
  for (const auto &x : maps)
    if (invertible(x))
      return x;
  // Generic combinations: a fixed sequence of small integer weights.
  for (int trial = 1; trial <= 8; ++trial) {
    Matrix x(n.dim(), m.dim());
    for (std::size_t i = 0; i < maps.size(); ++i)
      x += maps[i] * Scalar(static_cast<long>((i + 1) * (i + 1) * trial % 97 + i + 1));
    if (invertible(x))
      return x;
  }
  return std::nullopt;
}

} // namespace pbwgate
