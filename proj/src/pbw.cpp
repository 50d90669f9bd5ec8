#include "pbwgate/pbw.hpp"

#include <algorithm>
#include <numeric>

namespace pbwgate {

namespace {

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

Word concat(const Word &a, const Word &b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word lift(const Word &n_word, std::size_t dh) {
  Word out;
  for (int l : n_word)
    out.push_back(l + static_cast<int>(dh));
  return out;
}

Scalar factorial(std::size_t k) {
  Scalar f = 1;
  for (std::size_t i = 2; i <= k; ++i)
    f *= static_cast<long>(i);
  return f;
}

std::string word_text(const Word &w, const std::vector<std::string> &labels) {
  if (w.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i)
    out += (i ? "·" : "") + labels[w[i]];
  return out;
}

LieModule zero_module(const LieModule &like) {
  std::vector<Matrix> actions(like.algebra().dim(), Matrix(0, 0));
  return LieModule(like.algebra_ptr(), 0, std::move(actions));
}

bool is_trivial_module(const LieModule &v) {
  if (v.dim() != 1)
    return false;
  for (const auto &a : v.actions())
    if (!a.is_zero())
      return false;
  return true;
}

} // namespace

const char *side_name(Side s) { return s == Side::F ? "F" : "R"; }

// ---------------------------------------------------------------------------
// Normal forms

NormalForms::NormalForms(const InclusionPair &pair, Side side, LieModule v, std::size_t max_degree)
    : pair_(pair), side_(side), v_(std::move(v)), max_degree_(max_degree), dh_(pair.dim_h()),
      dn_(pair.dim_n()) {
  if (v_.algebra() != pair.h())
    throw DimensionMismatch("coefficient module is not a module over h");
  offsets_.push_back(0);
  for (std::size_t len = 0; len <= max_degree_; ++len) {
    auto ws = side_ == Side::F ? all_words(dn_, len) : weakly_increasing(dn_, len);
    if (side_ == Side::R)
      for (std::size_t i = 0; i < ws.size(); ++i)
        sorted_rank_.emplace(ws[i], i);
    offsets_.push_back(offsets_.back() + ws.size() * v_.dim());
    words_.insert(words_.end(), ws.begin(), ws.end());
  }
}

std::size_t NormalForms::index(const Word &n_word, std::size_t v) const {
  std::size_t len = n_word.size();
  if (len > max_degree_)
    throw Error("word longer than the degree cap");
  std::size_t pos = side_ == Side::F ? word_index(n_word, dn_) : sorted_rank_.at(n_word);
  return offsets_[len] + pos * dim_v() + v;
}

SparseVector NormalForms::nf(const Word &w, std::size_t v) const {
  Word key = w;
  key.push_back(static_cast<int>(v));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
  }
  SparseVector out = compute(w, v);
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(std::move(key), out);
  return out;
}

SparseVector NormalForms::nf_n(const Word &n_word, std::size_t v) const {
  return nf(lift(n_word, dh_), v);
}

SparseVector NormalForms::compute(const Word &w, std::size_t v) const {
  const auto &ad = pair_.adapted();
  const std::size_t dg = pair_.dim_g();
  // x y -> y x + [x, y] at position p
  auto swap_at = [&](std::size_t p) {
    Word swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    SparseVector out = nf(swapped, v);
    for (std::size_t k = 0; k < dg; ++k) {
      const Scalar &c = ad.constant(w[p], w[p + 1], k);
      if (is_zero(c))
        continue;
      Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      shorter.push_back(static_cast<int>(k));
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(p + 2), w.end());
      out.axpy(c, nf(shorter, v));
    }
    return out;
  };

  std::ptrdiff_t p = static_cast<std::ptrdiff_t>(w.size()) - 1;
  while (p >= 0 && static_cast<std::size_t>(w[p]) >= dh_)
    --p;
  if (p < 0) {
    Word n_word;
    for (int l : w)
      n_word.push_back(l - static_cast<int>(dh_));
    if (side_ == Side::R)
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1])
          return swap_at(i);
    return SparseVector::unit(index(n_word, v));
  }
  auto pos = static_cast<std::size_t>(p);
  if (pos + 1 < w.size())
    return swap_at(pos);
  // trailing h-letter: absorb into V
  Word prefix(w.begin(), w.end() - 1);
  const Matrix &act = v_.action(w.back());
  SparseVector out;
  for (std::size_t u = 0; u < dim_v(); ++u)
    if (!is_zero(act(u, v)))
      out.axpy(act(u, v), nf(prefix, u));
  return out;
}

std::optional<std::string> NormalForms::confluence_failure(std::size_t degree) const {
  const auto &ad = pair_.adapted();
  const std::size_t dg = pair_.dim_g();
  const std::size_t x_end = side_ == Side::F ? dh_ : dg;
  for (std::size_t len = 2; len <= degree; ++len)
    for (std::size_t left = 0; left + 2 <= len; ++left) {
      auto lefts = all_words(dg, left);
      auto rights = all_words(dg, len - 2 - left);
      for (const auto &u : lefts)
        for (const auto &u2 : rights)
          for (std::size_t x = 0; x < x_end; ++x)
            for (std::size_t y = 0; y < dg; ++y) {
              if (side_ == Side::R && y <= x)
                continue;
              Word xy = concat(concat(u, {static_cast<int>(x), static_cast<int>(y)}), u2);
              Word yx = concat(concat(u, {static_cast<int>(y), static_cast<int>(x)}), u2);
              for (std::size_t v = 0; v < dim_v(); ++v) {
                SparseVector r = nf(xy, v);
                r.axpy(Scalar(-1), nf(yx, v));
                for (std::size_t k = 0; k < dg; ++k)
                  if (!is_zero(ad.constant(x, y, k)))
                    r.axpy(-ad.constant(x, y, k), nf(concat(concat(u, {static_cast<int>(k)}), u2), v));
                if (!r.empty())
                  return "relation " + word_text(xy, ad.labels()) + " - " +
                         word_text(yx, ad.labels()) + " - [" + ad.labels()[x] + ", " +
                         ad.labels()[y] + "] has nonzero normal form";
              }
            }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Short exact sequences and the section solver

std::vector<std::string> ShortExactSequence::violations() const {
  std::vector<std::string> out;
  if (!(ModuleMap{sub, total, inclusion}).is_equivariant())
    out.push_back("inclusion is not equivariant");
  if (!(ModuleMap{total, quotient, projection}).is_equivariant())
    out.push_back("projection is not equivariant");
  if (sub.dim() > 0 && !(projection * inclusion).is_zero())
    out.push_back("projection ∘ inclusion != 0");
  if (sub.dim() > 0 && rank(inclusion) != sub.dim())
    out.push_back("inclusion is not injective");
  if (rank(projection) != quotient.dim())
    out.push_back("projection is not surjective");
  if (sub.dim() + quotient.dim() != total.dim())
    out.push_back("dimensions do not add up");
  return out;
}

std::optional<Matrix> section_oracle(const ShortExactSequence &seq) {
  const std::size_t s = seq.sub.dim(), q = seq.quotient.dim();
  auto s0 = solve(seq.projection, Matrix::identity(q));
  if (!s0)
    throw Error("section_oracle: projection is not surjective");
  const std::size_t letters = seq.total.algebra().dim();
  std::vector<Matrix> d;
  bool all_zero = true;
  for (std::size_t z = 0; z < letters; ++z) {
    Matrix r = seq.total.action(z) * *s0 - *s0 * seq.quotient.action(z);
    if (s == 0) {
      if (!r.is_zero())
        return std::nullopt;
      continue;
    }
    auto dz = solve(seq.inclusion, r);
    if (!dz)
      throw Error("section_oracle: sequence is not exact");
    all_zero = all_zero && dz->is_zero();
    d.push_back(std::move(*dz));
  }
  if (s == 0 || all_zero)
    return s0;

  // s = s0 + i t with t C_z - B_z t = D_z
  SparseSystem sys(s * q);
  for (std::size_t z = 0; z < letters; ++z) {
    const Matrix &b = seq.sub.action(z), &c = seq.quotient.action(z);
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t col = 0; col < q; ++col) {
        SparseVector lhs;
        for (std::size_t m = 0; m < q; ++m)
          if (!is_zero(c(m, col)))
            lhs.add(r * q + m, c(m, col));
        for (std::size_t m = 0; m < s; ++m)
          if (!is_zero(b(r, m)))
            lhs.add(m * q + col, -b(r, m));
        if (lhs.empty() && is_zero(d[z](r, col)))
          continue;
        sys.add_equation(lhs, d[z](r, col));
      }
  }
  auto sol = sys.solve();
  if (!sol)
    return std::nullopt;
  Matrix t(s, q, std::move(*sol));
  return *s0 + seq.inclusion * t;
}

// ---------------------------------------------------------------------------
// Filtrations

LieModule FilteredModule::level(std::size_t k) const {
  const std::size_t n = dim(k);
  std::vector<Matrix> acts;
  for (const auto &a : actions)
    acts.push_back(a.block(0, 0, n, n));
  return LieModule(forms->pair().h_ptr(), n, std::move(acts));
}

LieModule FilteredModule::graded(std::size_t k) const {
  const std::size_t lo = k == 0 ? 0 : dim(k - 1), n = dim(k) - lo;
  std::vector<Matrix> acts;
  for (const auto &a : actions)
    acts.push_back(a.block(lo, lo, n, n));
  return LieModule(forms->pair().h_ptr(), n, std::move(acts));
}

ModuleMap FilteredModule::inclusion(std::size_t k) const {
  auto lower = k == 0 ? zero_module(level(0)) : level(k - 1);
  auto upper = level(k);
  Matrix m(upper.dim(), lower.dim());
  for (std::size_t i = 0; i < lower.dim(); ++i)
    m(i, i) = 1;
  return {lower, upper, std::move(m)};
}

ShortExactSequence FilteredModule::level_sequence(std::size_t k) const {
  auto inc = inclusion(k);
  auto quot = graded(k);
  Matrix proj(quot.dim(), inc.target.dim());
  for (std::size_t i = 0; i < quot.dim(); ++i)
    proj(i, inc.source.dim() + i) = 1;
  return {inc.source, inc.target, quot, inc.matrix, std::move(proj)};
}

Vector FilteredModule::coordinates(const SparseVector &v, std::size_t k) const {
  Vector out(dim(k));
  for (const auto &[i, c] : v) {
    if (i < first_index() || i - first_index() >= out.size())
      throw Error("normal form leaves the requested level");
    out[i - first_index()] = c;
  }
  return out;
}

FilteredModule build_filtration(const InclusionPair &pair, Side side, std::size_t max_level,
                                std::optional<LieModule> v, bool reduced) {
  LieModule coeff = v ? *v : LieModule::trivial(pair.h_ptr());
  if (reduced && !is_trivial_module(coeff))
    throw Error("the reduced filtration needs the trivial one-dimensional module");
  auto forms = std::make_shared<NormalForms>(pair, side, coeff, max_level);
  if (auto failure = forms->confluence_failure(max_level))
    throw ConfluenceFailure(*failure);

  FilteredModule f{forms, reduced, max_level, {}};
  const std::size_t first = f.first_index(), n = f.dim(max_level);
  for (std::size_t a = 0; a < pair.dim_h(); ++a) {
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t idx = first + j;
      Word w{static_cast<int>(a)};
      for (int l : forms->basis_word(idx))
        w.push_back(l + static_cast<int>(pair.dim_h()));
      for (const auto &[i, c] : forms->nf(w, forms->basis_v(idx))) {
        if (i < first)
          throw Error("degree-zero part is not a direct summand");
        m(i - first, j) = c;
      }
    }
    f.actions.push_back(std::move(m));
  }
  // the action preserves every level
  for (std::size_t k = 0; k < max_level; ++k)
    for (const auto &m : f.actions)
      if (!m.block(f.dim(k), 0, n - f.dim(k), f.dim(k)).is_zero())
        throw Error("h-action raises the filtration degree");
  auto bad = LieModule(pair.h_ptr(), n, f.actions).bracket_violations();
  if (!bad.empty())
    throw Error(std::string("filtration action does not respect the bracket of h (") +
                side_name(side) + ")");
  return f;
}

std::size_t truncated_quotient_dimension(const InclusionPair &pair, Side side, std::size_t k,
                                         std::optional<LieModule> v) {
  LieModule coeff = v ? *v : LieModule::trivial(pair.h_ptr());
  const auto &ad = pair.adapted();
  const std::size_t dg = pair.dim_g(), dh = pair.dim_h(), dv = coeff.dim();
  std::vector<std::size_t> offsets{0};
  std::size_t block = dv;
  for (std::size_t len = 0; len <= k; ++len) {
    offsets.push_back(offsets.back() + block);
    block *= dg;
  }
  auto at = [&](const Word &w, std::size_t u) {
    return offsets[w.size()] + word_index(w, dg) * dv + u;
  };

  EchelonBasis rel;
  const std::size_t x_end = side == Side::F ? dh : dg;
  for (std::size_t len = 2; len <= k; ++len)
    for (std::size_t left = 0; left + 2 <= len; ++left)
      for (const auto &u : all_words(dg, left))
        for (const auto &u2 : all_words(dg, len - 2 - left))
          for (std::size_t x = 0; x < x_end; ++x)
            for (std::size_t y = 0; y < dg; ++y) {
              if (side == Side::R && y <= x)
                continue;
              for (std::size_t e = 0; e < dv; ++e) {
                SparseVector r;
                r.add(at(concat(concat(u, {static_cast<int>(x), static_cast<int>(y)}), u2), e), 1);
                r.add(at(concat(concat(u, {static_cast<int>(y), static_cast<int>(x)}), u2), e), -1);
                for (std::size_t c = 0; c < dg; ++c)
                  if (!is_zero(ad.constant(x, y, c)))
                    r.add(at(concat(concat(u, {static_cast<int>(c)}), u2), e), -ad.constant(x, y, c));
                if (!r.empty())
                  rel.insert(std::move(r));
              }
            }
  for (std::size_t len = 1; len <= k; ++len)
    for (const auto &u : all_words(dg, len - 1))
      for (std::size_t a = 0; a < dh; ++a)
        for (std::size_t e = 0; e < dv; ++e) {
          SparseVector r;
          r.add(at(concat(u, {static_cast<int>(a)}), e), 1);
          for (std::size_t e2 = 0; e2 < dv; ++e2)
            if (!is_zero(coeff.action(a)(e2, e)))
              r.add(at(u, e2), -coeff.action(a)(e2, e));
          rel.insert(std::move(r));
        }
  return offsets.back() - rel.rank();
}

namespace {

WordCombination normal_form_of_g_word(const InclusionPair &pair, Side side, const Word &g_word) {
  NormalForms forms(pair, side, LieModule::trivial(pair.h_ptr()), g_word.size());
  const Matrix &inv = pair.adapted_inverse();
  // expand each original letter in the adapted basis
  std::map<Word, Scalar> expanded{{Word{}, Scalar(1)}};
  for (int letter : g_word) {
    std::map<Word, Scalar> next;
    for (const auto &[w, c] : expanded)
      for (std::size_t j = 0; j < pair.dim_g(); ++j)
        if (!is_zero(inv(j, letter))) {
          Word w2 = w;
          w2.push_back(static_cast<int>(j));
          next[w2] += c * inv(j, letter);
        }
    expanded = std::move(next);
  }
  SparseVector total;
  for (const auto &[w, c] : expanded)
    total.axpy(c, forms.nf(w, 0));
  WordCombination out;
  for (const auto &[i, c] : total)
    out[forms.basis_word(i)] = c;
  return out;
}

} // namespace

WordCombination straighten_g(const InclusionPair &pair, const Word &g_word) {
  return normal_form_of_g_word(pair, Side::R, g_word);
}

WordCombination reduce_h1(const InclusionPair &pair, const Word &g_word) {
  return normal_form_of_g_word(pair, Side::F, g_word);
}

// ---------------------------------------------------------------------------
// Associated graded

GrReport gr_check(const FilteredModule &filt, std::size_t k) {
  GrReport rep;
  const auto &forms = *filt.forms;
  const auto &pair = forms.pair();
  auto n = quotient_module(pair);
  const LieModule &v = forms.coefficients();
  auto gr = filt.graded(k);
  if (filt.reduced && k == 0) {
    rep.equivariant = rep.isomorphism = gr.dim() == 0;
    return rep;
  }
  auto model = filt.side() == Side::F
                   ? tensor_module(tensor_power_module(n, k), v)
                   : tensor_module(sym_power_module(n, k), v);
  if (model.dim() != gr.dim()) {
    rep.failure = "graded piece has dimension " + std::to_string(gr.dim()) + ", expected " +
                  std::to_string(model.dim());
    return rep;
  }
  Matrix id = Matrix::identity(gr.dim());
  rep.equivariant = (ModuleMap{model, gr, id}).is_equivariant();
  rep.isomorphism = rep.equivariant;
  if (!rep.equivariant)
    rep.failure = "graded piece is not the expected module";
  if (filt.side() == Side::F)
    return rep;

  // tau: n^{⊗k} ⊗ V -> gr_k R, top-degree part of the normal form
  const std::size_t dn = n.dim(), dv = v.dim();
  auto words = all_words(dn, k);
  const std::size_t lo = forms.offset(k);
  Matrix tau(gr.dim(), words.size() * dv);
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t e = 0; e < dv; ++e)
      for (const auto &[i, c] : forms.nf_n(words[w], e))
        if (i >= lo)
          tau(i - lo, w * dv + e) = c;
  auto tensor = tensor_module(tensor_power_module(n, k), v);
  bool tau_equivariant = (ModuleMap{tensor, gr, tau}).is_equivariant();
  bool tau_onto = rank(tau) == gr.dim();
  std::vector<Vector> commutators;
  for (std::size_t p = 0; p + 1 < k; ++p)
    for (const auto &w : words) {
      if (w[p] >= w[p + 1])
        continue;
      Word swapped = w;
      std::swap(swapped[p], swapped[p + 1]);
      for (std::size_t e = 0; e < dv; ++e) {
        Vector c(words.size() * dv);
        c[word_index(w, dn) * dv + e] = 1;
        c[word_index(swapped, dn) * dv + e] = -1;
        commutators.push_back(std::move(c));
      }
    }
  bool in_kernel = true;
  for (const auto &c : commutators)
    in_kernel = in_kernel && is_zero(tau * c);
  std::size_t span = commutators.empty() ? 0 : span_basis(commutators, words.size() * dv).size();
  std::size_t kernel = words.size() * dv - rank(tau);
  rep.commutator_kernel = tau_equivariant && tau_onto && in_kernel && span == kernel;
  if (!rep.commutator_kernel && rep.failure.empty())
    rep.failure = "kernel of the symmetrization map is not the commutator span";
  return rep;
}

F2Report f2_class_check(const InclusionPair &pair) {
  F2Report rep;
  auto n = quotient_module(pair);
  const std::size_t dn = n.dim(), dh = pair.dim_h(), dg = pair.dim_g();
  auto seq = pushout_module(pair, n);
  auto filt = build_filtration(pair, Side::F, 2, std::nullopt, true);
  const auto &forms = *filt.forms;
  const std::size_t top = filt.dim(2);
  const Matrix &inv = pair.adapted_inverse();

  // Map on the ambient E ⊕ g ⊗ E (E = n).
  const std::size_t ambient = dn + dg * dn;
  Matrix phi(top, ambient);
  for (std::size_t w = 0; w < dn; ++w) {
    auto coords = filt.coordinates(forms.nf_n({static_cast<int>(w)}, 0), 2);
    for (std::size_t i = 0; i < top; ++i)
      phi(i, w) = coords[i];
  }
  for (std::size_t g = 0; g < dg; ++g)
    for (std::size_t x = 0; x < dn; ++x) {
      SparseVector image;
      for (std::size_t j = 0; j < dg; ++j)
        if (!is_zero(inv(j, g)))
          image.axpy(inv(j, g), forms.nf({static_cast<int>(j), static_cast<int>(dh + x)}, 0));
      auto coords = filt.coordinates(image, 2);
      for (std::size_t i = 0; i < top; ++i)
        phi(i, dn + g * dn + x) = coords[i];
    }

  rep.well_defined = true;
  for (std::size_t a = 0; a < dh && rep.well_defined; ++a)
    for (std::size_t v = 0; v < dn; ++v) {
      Vector r(ambient);
      for (std::size_t w = 0; w < dn; ++w)
        r[w] = n.action(a)(w, v);
      for (std::size_t i = 0; i < dg; ++i)
        r[dn + i * dn + v] -= pair.embedding()(i, a);
      if (!is_zero(phi * r)) {
        rep.well_defined = false;
        rep.failure = "map does not kill the relation for (" + pair.h().labels()[a] + ", " +
                      pair.n_labels()[v] + ")";
        break;
      }
    }

  rep.map = phi * Matrix::from_columns(seq.representatives, ambient);
  auto f2 = filt.level(2);
  auto f1 = filt.inclusion(2);
  auto f2_seq = filt.level_sequence(2);
  bool left = rep.map * seq.inclusion.matrix == f1.matrix;
  bool right = f2_seq.projection * rep.map == seq.projection.matrix;
  rep.squares_commute = left && right;
  if (!left && rep.failure.empty())
    rep.failure = "square with n -> Q and n -> F̃² does not commute";
  if (!right && rep.failure.empty())
    rep.failure = "square with Q -> n ⊗ n and F̃² -> n ⊗ n does not commute";
  rep.equivariant = (ModuleMap{seq.q, f2, rep.map}).is_equivariant();
  if (!rep.equivariant && rep.failure.empty())
    rep.failure = "map Q -> F̃² is not equivariant";
  rep.bijective = rep.map.rows() == rep.map.cols() && rank(rep.map) == rep.map.rows();
  if (!rep.bijective && rep.failure.empty())
    rep.failure = "map Q -> F̃² is not bijective";
  rep.q_splits = section_oracle({n, seq.q, seq.projection.target, seq.inclusion.matrix,
                                 seq.projection.matrix})
                     .has_value();
  rep.f2_splits = section_oracle(f2_seq).has_value();
  return rep;
}

// ---------------------------------------------------------------------------
// Hopf structure on words and the maps t_k

std::map<std::pair<Word, Word>, Scalar> coproduct_word(const Word &w) {
  std::map<std::pair<Word, Word>, Scalar> out;
  const std::size_t m = w.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Word a, b;
    for (std::size_t i = 0; i < m; ++i)
      (mask >> i & 1 ? a : b).push_back(w[i]);
    out[{a, b}] += 1;
  }
  return out;
}

std::pair<Scalar, Word> antipode_word(const Word &w) {
  return {Scalar(w.size() % 2 == 0 ? 1 : -1), Word(w.rbegin(), w.rend())};
}

void InducedElement::add(const Word &f, std::size_t m, const Scalar &c) {
  if (is_zero(c))
    return;
  auto key = std::make_pair(f, m);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (is_zero(it->second))
    terms.erase(it);
}

long InducedElement::filtration_degree() const {
  long deg = -1;
  for (const auto &[key, c] : terms)
    deg = std::max(deg, static_cast<long>(key.first.size()));
  return deg;
}

Vector act_word(const InclusionPair &pair, const ExtensionDatum &rho, const Word &w, const Vector &y) {
  Vector out = y;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out = rho.on_complement(static_cast<std::size_t>(*it), pair.dim_h()) * out;
  return out;
}

InducedElement t_map(const InclusionPair &pair, const ExtensionDatum &rho, std::size_t k,
                     const InducedElement &e) {
  if (k == 0 || e.tensor_degree != k)
    throw DimensionMismatch("t_map: element does not live over n^{⊗k}");
  const std::size_t dn = pair.dim_n();
  InducedElement out;
  out.tensor_degree = k - 1;
  if (k == 1) {
    for (const auto &[key, c] : e.terms) {
      Word fx = key.first;
      fx.push_back(static_cast<int>(key.second));
      out.add(fx, 0, c);
    }
    return out;
  }
  // psi: f ⊗ (m' ⊗ y) -> sum (f1 ⊗ m') ⊗ f2.y
  std::map<std::size_t, InducedElement> by_y;
  for (const auto &[key, c] : e.terms) {
    const auto &[f, m] = key;
    std::size_t m1 = m / dn, y = m % dn;
    for (const auto &[split, cc] : coproduct_word(f)) {
      Vector fy = act_word(pair, rho, split.second, unit_vector(dn, y));
      for (std::size_t z = 0; z < dn; ++z)
        if (!is_zero(fy[z])) {
          auto &slot = by_y[z];
          slot.tensor_degree = k - 1;
          slot.add(split.first, m1, c * cc * fy[z]);
        }
    }
  }
  // t_{k-1} ⊗ id, then phi: (g ⊗ m'') ⊗ y' -> sum g1 ⊗ (m'' ⊗ S(g2) y')
  for (const auto &[z, part] : by_y) {
    auto image = t_map(pair, rho, k - 1, part);
    for (const auto &[key, c] : image.terms) {
      const auto &[g, m2] = key;
      for (const auto &[split, cc] : coproduct_word(g)) {
        auto [sign, reversed] = antipode_word(split.second);
        Vector sy = act_word(pair, rho, reversed, unit_vector(dn, z));
        for (std::size_t z2 = 0; z2 < dn; ++z2)
          if (!is_zero(sy[z2]))
            out.add(split.first, m2 * dn + z2, c * cc * sign * sy[z2]);
      }
    }
  }
  return out;
}

WordCombination splitting_s_value(const InclusionPair &pair, const ExtensionDatum &rho,
                                  const Word &inputs) {
  InducedElement e;
  e.tensor_degree = inputs.size();
  e.add({}, word_index(inputs, pair.dim_n()), 1);
  for (std::size_t k = inputs.size(); k >= 1; --k)
    e = t_map(pair, rho, k, e);
  WordCombination out;
  for (const auto &[key, c] : e.terms)
    out[key.first] = c;
  return out;
}

namespace {

Splitting splitting_on(const FilteredModule &filt, const ExtensionDatum &rho, std::size_t k) {
  const auto &forms = *filt.forms;
  const auto &pair = forms.pair();
  auto n = quotient_module(pair);
  auto source = tensor_power_module(n, k);
  auto target = filt.level(k);
  auto words = all_words(n.dim(), k);
  Matrix m(target.dim(), words.size());
  for (std::size_t j = 0; j < words.size(); ++j)
    for (const auto &[w, c] : splitting_s_value(pair, rho, words[j]))
      m(forms.index(w, 0), j) = c;
  Splitting out{{source, target, m}, false, false};
  out.equivariant = out.map.is_equivariant();
  const std::size_t lo = k == 0 ? 0 : filt.dim(k - 1);
  out.section = m.block(lo, 0, m.rows() - lo, m.cols()) == Matrix::identity(words.size());
  return out;
}

ExtensionDatum require_extension(const InclusionPair &pair) {
  auto rho = find_extension(pair, quotient_module(pair));
  if (!rho)
    throw AlphaNontrivial("alpha is non-trivial: no extension datum exists");
  return *rho;
}

} // namespace

Splitting splitting_s(const InclusionPair &pair, const ExtensionDatum &rho, std::size_t k) {
  return splitting_on(build_filtration(pair, Side::F, k), rho, k);
}

Splitting splitting_s(const InclusionPair &pair, std::size_t k) {
  return splitting_s(pair, require_extension(pair), k);
}

std::vector<Splitting> pbw_splitting_I(const InclusionPair &pair, const ExtensionDatum &rho,
                                       std::size_t max_degree) {
  auto filt = build_filtration(pair, Side::R, max_degree);
  const auto &forms = *filt.forms;
  auto n = quotient_module(pair);
  std::map<Word, WordCombination> cache;
  auto s_value = [&](const Word &w) -> const WordCombination & {
    auto it = cache.find(w);
    if (it == cache.end())
      it = cache.emplace(w, splitting_s_value(pair, rho, w)).first;
    return it->second;
  };

  std::vector<Splitting> out;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    auto source = sym_power_module(n, k);
    auto target = filt.level(k);
    auto monomials = weakly_increasing(n.dim(), k);
    Matrix m(target.dim(), monomials.size());
    Scalar weight = 1 / factorial(k);
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      std::vector<std::size_t> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      SparseVector column;
      do {
        Word w;
        for (std::size_t p : perm)
          w.push_back(monomials[j][p]);
        for (const auto &[word, c] : s_value(w))
          column.axpy(c * weight, forms.nf_n(word, 0));
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (const auto &[i, c] : column)
        m(i, j) = c;
    }
    Splitting s{{source, target, m}, false, false};
    s.equivariant = s.map.is_equivariant();
    const std::size_t lo = k == 0 ? 0 : filt.dim(k - 1);
    s.section = m.block(lo, 0, m.rows() - lo, m.cols()) == Matrix::identity(monomials.size());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Splitting> pbw_splitting_I(const InclusionPair &pair, std::size_t max_degree) {
  return pbw_splitting_I(pair, require_extension(pair), max_degree);
}

// ---------------------------------------------------------------------------
// Harnesses

bool EquivalenceReport::agrees() const {
  return std::all_of(levels.begin(), levels.end(), [](const auto &l) { return l.agrees(); });
}

EquivalenceReport equivalence_harness(const InclusionPair &pair, std::size_t max_degree) {
  EquivalenceReport rep;
  auto n = quotient_module(pair);
  rep.alpha_trivial = is_trivial(pair, n, alpha_cocycle(pair, n)).has_value();
  auto f = build_filtration(pair, Side::F, max_degree, std::nullopt, true);
  auto r = build_filtration(pair, Side::R, max_degree, std::nullopt, true);
  for (std::size_t k = 0; k <= max_degree; ++k) {
    EquivalenceLevel level{k, k <= 1 || rep.alpha_trivial, true, true};
    if (k > 0) {
      level.f_split = section_oracle(f.level_sequence(k)).has_value();
      level.r_split = section_oracle(r.level_sequence(k)).has_value();
    }
    rep.levels.push_back(level);
  }
  return rep;
}

bool TwistedReport::agrees() const {
  auto all = [](const std::vector<bool> &v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  bool both = alpha_trivial && alpha_v_trivial;
  if (!f_split.empty() && (f_split[0] != alpha_v_trivial || r_split[0] != alpha_v_trivial))
    return false;
  return all(f_split) == both && all(r_split) == both;
}

TwistedReport twisted_verdict(const InclusionPair &pair, const LieModule &v, std::size_t max_degree) {
  TwistedReport rep;
  auto n = quotient_module(pair);
  rep.alpha_trivial = is_trivial(pair, n, alpha_cocycle(pair, n)).has_value();
  rep.alpha_v_trivial = is_trivial(pair, v, alpha_cocycle(pair, v)).has_value();
  auto f = build_filtration(pair, Side::F, max_degree, v);
  auto r = build_filtration(pair, Side::R, max_degree, v);
  for (std::size_t k = 1; k <= max_degree; ++k) {
    rep.f_split.push_back(section_oracle(f.level_sequence(k)).has_value());
    rep.r_split.push_back(section_oracle(r.level_sequence(k)).has_value());
  }
  return rep;
}

} // namespace pbwgate
