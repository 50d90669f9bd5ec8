#include "pbwgate/cohomology.hpp"

#include <algorithm>
#include <map>

namespace pbwgate {

namespace {

// Sorts a tuple into increasing order; returns the sign of the permutation,
// or 0 when an index repeats.
int sort_with_sign(Word &w) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1])
      return 0;
  return sign;
}

std::map<Word, std::size_t> index_of(const std::vector<Word> &words) {
  std::map<Word, std::size_t> out;
  for (std::size_t i = 0; i < words.size(); ++i)
    out.emplace(words[i], i);
  return out;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

void require_h_module(const InclusionPair &pair, const LieModule &e) {
  if (e.algebra() != pair.h() || e.algebra().dim() != pair.dim_h())
    throw DimensionMismatch("module is not a module over the subalgebra h");
}

} // namespace

Vector Cochain::flatten() const {
  Vector out;
  out.reserve(values.rows() * values.cols());
  for (std::size_t j = 0; j < values.cols(); ++j)
    for (std::size_t i = 0; i < values.rows(); ++i)
      out.push_back(values(i, j));
  return out;
}

Cochain Cochain::from_flat(std::size_t degree, const LieModule &m, const Vector &flat) {
  std::size_t cols = binomial(m.algebra().dim(), degree);
  if (flat.size() != cols * m.dim())
    throw DimensionMismatch("cochain vector has the wrong length");
  Matrix values(m.dim(), cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < m.dim(); ++i)
      values(i, j) = flat[j * m.dim() + i];
  return {degree, m, std::move(values)};
}

Matrix ce_differential(const LieAlgebra &h, const LieModule &m, std::size_t p) {
  const std::size_t d = h.dim(), dm = m.dim();
  auto sources = strictly_increasing(d, p);
  auto targets = strictly_increasing(d, p + 1);
  auto source_index = index_of(sources);
  Matrix out(targets.size() * dm, sources.size() * dm);

  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Word &tw = targets[t];
    for (std::size_t i = 0; i <= p; ++i) {
      Word rest = tw;
      rest.erase(rest.begin() + i);
      std::size_t col = source_index.at(rest);
      Scalar sign = (i % 2 == 0) ? 1 : -1;
      const Matrix &a = m.action(tw[i]);
      for (std::size_t r = 0; r < dm; ++r)
        for (std::size_t s = 0; s < dm; ++s)
          if (!is_zero(a(r, s)))
            out(t * dm + r, col * dm + s) += sign * a(r, s);
    }
    for (std::size_t i = 0; i <= p; ++i)
      for (std::size_t l = i + 1; l <= p; ++l) {
        Word rest;
        for (std::size_t q = 0; q <= p; ++q)
          if (q != i && q != l)
            rest.push_back(tw[q]);
        Scalar sign = ((i + l) % 2 == 0) ? 1 : -1;
        for (std::size_t k = 0; k < d; ++k) {
          const Scalar &c = h.constant(tw[i], tw[l], k);
          if (is_zero(c))
            continue;
          Word w{static_cast<int>(k)};
          w.insert(w.end(), rest.begin(), rest.end());
          int s = sort_with_sign(w);
          if (s == 0)
            continue;
          std::size_t col = source_index.at(w);
          Scalar coeff = sign * c * s;
          for (std::size_t r = 0; r < dm; ++r)
            out(t * dm + r, col * dm + r) += coeff;
        }
      }
  }
  return out;
}

bool is_cocycle(const Cochain &c) {
  return is_zero(ce_differential(c.coefficients.algebra(), c.coefficients, c.degree) * c.flatten());
}

LieModule connecting_coefficients(const InclusionPair &pair) {
  return hom_module(quotient_module(pair), LieModule::adjoint(pair.h_ptr()));
}

LieModule alpha_coefficients(const InclusionPair &pair, const LieModule &e) {
  return hom_module(tensor_module(quotient_module(pair), e), e);
}

Cochain connecting_cocycle(const InclusionPair &pair) {
  const std::size_t dh = pair.dim_h(), dn = pair.dim_n();
  auto n = quotient_module(pair);
  auto coeff = connecting_coefficients(pair);
  Matrix values(coeff.dim(), dh);
  for (std::size_t a = 0; a < dh; ++a) {
    Vector ia = pair.embedding().column(a);
    for (std::size_t x = 0; x < dn; ++x) {
      Vector sx = pair.sigma().column(x);
      Vector diff = pair.sigma() * n.action(a).column(x);
      Vector br = pair.g().bracket(ia, sx);
      for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] -= br[i];
      if (!is_zero(pair.project(diff)))
        throw Error("connecting cocycle left h; quotient action inconsistent");
      Vector hc = pair.h_component(diff);
      for (std::size_t k = 0; k < dh; ++k)
        values(k * dn + x, a) = hc[k];
    }
  }
  return {1, coeff, std::move(values)};
}

Cochain alpha_cocycle(const InclusionPair &pair, const LieModule &e) {
  require_h_module(pair, e);
  const std::size_t dh = pair.dim_h(), dn = pair.dim_n(), de = e.dim();
  auto c = connecting_cocycle(pair);
  auto coeff = alpha_coefficients(pair, e);
  Matrix values(coeff.dim(), dh);
  for (std::size_t z = 0; z < dh; ++z)
    for (std::size_t x = 0; x < dn; ++x) {
      Vector cx(dh);
      for (std::size_t k = 0; k < dh; ++k)
        cx[k] = c.values(k * dn + x, z);
      Matrix act = e.act(cx);
      for (std::size_t out = 0; out < de; ++out)
        for (std::size_t v = 0; v < de; ++v)
          values(out * (dn * de) + x * de + v, z) = act(out, v);
    }
  return {1, coeff, std::move(values)};
}

std::optional<Cochain> is_trivial(const Cochain &a) {
  if (a.degree != 1)
    throw DimensionMismatch("is_trivial expects a 1-cochain");
  const auto &h = a.coefficients.algebra();
  Vector flat = a.flatten();
  if (!is_zero(ce_differential(h, a.coefficients, 1) * flat))
    throw NotACocycle("d(a) != 0");
  auto b = solve(ce_differential(h, a.coefficients, 0), flat);
  if (!b)
    return std::nullopt;
  return Cochain::from_flat(0, a.coefficients, *b);
}

std::optional<Cochain> is_trivial(const InclusionPair &pair, const LieModule &e, const Cochain &a) {
  require_h_module(pair, e);
  if (a.coefficients.dim() != pair.dim_n() * e.dim() * e.dim())
    throw DimensionMismatch("cochain does not take values in Hom(n ⊗ E, E)");
  return is_trivial(a);
}

Matrix ExtensionDatum::of(const Vector &x) const {
  Matrix out(module.dim(), module.dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i]))
      out += rho[i] * x[i];
  return out;
}

ExtensionDatum make_extension(const InclusionPair &pair, const LieModule &e,
                              const std::vector<Matrix> &complement_values) {
  require_h_module(pair, e);
  ExtensionDatum out{e, {}, {}};
  for (std::size_t a = 0; a < pair.dim_h(); ++a)
    out.rho_adapted.push_back(e.action(a));
  for (const auto &b : complement_values)
    out.rho_adapted.push_back(b);
  const Matrix &inv = pair.adapted_inverse();
  for (std::size_t i = 0; i < pair.dim_g(); ++i) {
    Matrix m(e.dim(), e.dim());
    for (std::size_t j = 0; j < pair.dim_g(); ++j)
      if (!is_zero(inv(j, i)))
        m += out.rho_adapted[j] * inv(j, i);
    out.rho.push_back(std::move(m));
  }
  return out;
}

std::vector<std::string> extension_violations(const InclusionPair &pair, const ExtensionDatum &rho) {
  std::vector<std::string> out;
  const auto &e = rho.module;
  const auto &g = pair.g();
  for (std::size_t a = 0; a < pair.dim_h(); ++a) {
    Vector ia = pair.embedding().column(a);
    if (rho.of(ia) != e.action(a))
      out.push_back("rho does not restrict to the h-action on " + pair.h().labels()[a]);
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Matrix lhs = rho.of(g.bracket(ia, unit_vector(g.dim(), i)));
      if (lhs != commutator(e.action(a), rho.rho[i]))
        out.push_back("rho not equivariant at (" + pair.h().labels()[a] + ", " + g.labels()[i] + ")");
    }
  }
  return out;
}

ExtensionSolutions extension_solution_space(const InclusionPair &pair, const LieModule &e) {
  require_h_module(pair, e);
  const std::size_t dh = pair.dim_h(), dn = pair.dim_n(), de = e.dim();
  const std::size_t block = de * de;
  const auto &ad = pair.adapted();
  Matrix lhs(dh * dn * block, dn * block);
  Vector rhs(dh * dn * block);
  for (std::size_t a = 0; a < dh; ++a) {
    const Matrix &act = e.action(a);
    for (std::size_t x = 0; x < dn; ++x) {
      Matrix hpart(de, de);
      for (std::size_t k = 0; k < dh; ++k)
        if (!is_zero(ad.constant(a, dh + x, k)))
          hpart += e.action(k) * ad.constant(a, dh + x, k);
      for (std::size_t r = 0; r < de; ++r)
        for (std::size_t c = 0; c < de; ++c) {
          std::size_t row = (a * dn + x) * block + r * de + c;
          rhs[row] = -hpart(r, c);
          for (std::size_t l = 0; l < dn; ++l) {
            const Scalar &nl = ad.constant(a, dh + x, dh + l);
            if (!is_zero(nl))
              lhs(row, l * block + r * de + c) += nl;
          }
          for (std::size_t m = 0; m < de; ++m) {
            if (!is_zero(act(r, m)))
              lhs(row, x * block + m * de + c) -= act(r, m);
            if (!is_zero(act(m, c)))
              lhs(row, x * block + r * de + m) += act(m, c);
          }
        }
    }
  }

  auto unpack = [&](const Vector &v) {
    std::vector<Matrix> bs;
    for (std::size_t l = 0; l < dn; ++l) {
      Matrix b(de, de);
      for (std::size_t r = 0; r < de; ++r)
        for (std::size_t c = 0; c < de; ++c)
          b(r, c) = v[l * block + r * de + c];
      bs.push_back(std::move(b));
    }
    return bs;
  };

  ExtensionSolutions out;
  if (auto sol = solve(lhs, rhs))
    out.particular = make_extension(pair, e, unpack(*sol));
  for (const auto &k : kernel_basis(lhs))
    out.homogeneous.push_back(unpack(k));
  return out;
}

std::optional<ExtensionDatum> find_extension(const InclusionPair &pair, const LieModule &e) {
  auto sols = extension_solution_space(pair, e);
  if (!sols.particular)
    return std::nullopt;
  auto violations = extension_violations(pair, *sols.particular);
  if (!violations.empty())
    throw Error("extension solve produced an invalid datum: " + violations.front());
  return sols.particular;
}

PushoutSequence pushout_module(const InclusionPair &pair, const LieModule &e) {
  require_h_module(pair, e);
  const std::size_t dh = pair.dim_h(), dg = pair.dim_g(), dn = pair.dim_n(), de = e.dim();
  const std::size_t tensor_dim = dg * de, ambient = tensor_dim + de;
  // Internal coordinates put g ⊗ E first so that relation pivots land there
  // and E survives as coordinates of Q.
  auto to_ambient = [&](std::size_t in) { return in >= tensor_dim ? in - tensor_dim : in + de; };

  auto gmod = restricted_adjoint(pair);
  Matrix id_e = Matrix::identity(de), id_g = Matrix::identity(dg);
  std::vector<Matrix> ambient_action;
  for (std::size_t b = 0; b < dh; ++b) {
    Matrix t = tensor_map(gmod.action(b), id_e) + tensor_map(id_g, e.action(b));
    Matrix m(ambient, ambient);
    for (std::size_t i = 0; i < tensor_dim; ++i)
      for (std::size_t j = 0; j < tensor_dim; ++j)
        m(i, j) = t(i, j);
    for (std::size_t i = 0; i < de; ++i)
      for (std::size_t j = 0; j < de; ++j)
        m(tensor_dim + i, tensor_dim + j) = e.action(b)(i, j);
    ambient_action.push_back(std::move(m));
  }
  auto act_sparse = [&](std::size_t b, const SparseVector &v) {
    SparseVector out;
    const Matrix &m = ambient_action[b];
    for (const auto &[j, c] : v)
      for (std::size_t i = 0; i < ambient; ++i)
        if (!is_zero(m(i, j)))
          out.add(i, c * m(i, j));
    return out;
  };

  EchelonBasis rel;
  std::vector<SparseVector> relations;
  for (std::size_t a = 0; a < dh; ++a)
    for (std::size_t v = 0; v < de; ++v) {
      SparseVector r;
      for (std::size_t w = 0; w < de; ++w)
        if (!is_zero(e.action(a)(w, v)))
          r.add(tensor_dim + w, e.action(a)(w, v));
      for (std::size_t i = 0; i < dg; ++i)
        if (!is_zero(pair.embedding()(i, a)))
          r.add(i * de + v, -pair.embedding()(i, a));
      relations.push_back(r);
      rel.insert(r);
    }
  for (const auto &r : relations)
    for (std::size_t b = 0; b < dh; ++b)
      if (!rel.contains(act_sparse(b, r)))
        throw Error("pushout relations are not h-stable");

  std::vector<std::size_t> basis; // internal coordinates, E block first
  for (std::size_t w = 0; w < de; ++w)
    if (!rel.is_pivot(tensor_dim + w))
      basis.push_back(tensor_dim + w);
  for (std::size_t i = 0; i < tensor_dim; ++i)
    if (!rel.is_pivot(i))
      basis.push_back(i);
  std::map<std::size_t, std::size_t> position;
  for (std::size_t q = 0; q < basis.size(); ++q)
    position.emplace(basis[q], q);
  const std::size_t dq = basis.size();
  auto coordinates = [&](const SparseVector &v) {
    Vector out(dq);
    for (const auto &[i, c] : rel.reduce(v))
      out[position.at(i)] = c;
    return out;
  };

  std::vector<Matrix> q_action;
  for (std::size_t b = 0; b < dh; ++b) {
    std::vector<Vector> cols;
    for (std::size_t q = 0; q < dq; ++q)
      cols.push_back(coordinates(act_sparse(b, SparseVector::unit(basis[q]))));
    q_action.push_back(Matrix::from_columns(cols, dq));
  }
  LieModule qmod(pair.h_ptr(), dq, std::move(q_action));

  std::vector<Vector> inc_cols;
  for (std::size_t w = 0; w < de; ++w)
    inc_cols.push_back(coordinates(SparseVector::unit(tensor_dim + w)));

  auto nmod = quotient_module(pair);
  auto ne = tensor_module(nmod, e);
  Matrix proj(dn * de, dq);
  std::vector<Vector> reps;
  for (std::size_t q = 0; q < dq; ++q) {
    reps.push_back(unit_vector(ambient, to_ambient(basis[q])));
    if (basis[q] >= tensor_dim)
      continue;
    std::size_t i = basis[q] / de, v = basis[q] % de;
    Vector px = pair.project(unit_vector(dg, i));
    for (std::size_t x = 0; x < dn; ++x)
      proj(x * de + v, q) = px[x];
  }

  return {qmod, ModuleMap{e, qmod, Matrix::from_columns(inc_cols, dq)},
          ModuleMap{qmod, ne, proj}, std::move(reps)};
}

std::size_t h1_dimension(const LieAlgebra &h, const LieModule &m) {
  Matrix d1 = ce_differential(h, m, 1);
  return d1.cols() - rank(d1) - rank(ce_differential(h, m, 0));
}

ModuleMap wedge_inclusion(const LieModule &n) {
  const std::size_t dn = n.dim();
  auto wedge = ext_power_module(n, 2);
  auto pairs = strictly_increasing(dn, 2);
  Matrix m(dn * dn, pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    std::size_t x = pairs[j][0], y = pairs[j][1];
    m(x * dn + y, j) = 1;
    m(y * dn + x, j) = -1;
  }
  return {wedge, tensor_module(n, n), std::move(m)};
}

Cochain alpha_on_wedge(const InclusionPair &pair) {
  auto n = quotient_module(pair);
  const std::size_t dn = n.dim(), dh = pair.dim_h();
  auto a = alpha_cocycle(pair, n);
  auto inc = wedge_inclusion(n);
  auto coeff = hom_module(inc.source, n);
  const std::size_t w = inc.source.dim();
  Matrix values(coeff.dim(), dh);
  for (std::size_t z = 0; z < dh; ++z) {
    Matrix az(dn, dn * dn);
    for (std::size_t out = 0; out < dn; ++out)
      for (std::size_t in = 0; in < dn * dn; ++in)
        az(out, in) = a.values(out * dn * dn + in, z);
    Matrix composite = az * inc.matrix;
    for (std::size_t out = 0; out < dn; ++out)
      for (std::size_t j = 0; j < w; ++j)
        values(out * w + j, z) = composite(out, j);
  }
  return {1, coeff, std::move(values)};
}

} // namespace pbwgate
