#include "pbwgate/koszul.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace pbwgate {

QuadraticData quadratic_data(const InclusionPair &pair) {
  const auto &g = pair.g();
  std::size_t dg = g.dim(), dh = pair.dim_h();
  std::vector<Vector> span, values;
  for (std::size_t a = 0; a < dh; ++a) {
    Vector ia = pair.embedding().column(a);
    for (std::size_t x = 0; x < dg; ++x) {
      Vector r(dg * dg);
      for (std::size_t i = 0; i < dg; ++i) {
        r[i * dg + x] += ia[i];
        r[x * dg + i] -= ia[i];
      }
      Vector ex(dg);
      ex[x] = 1;
      span.push_back(std::move(r));
      values.push_back(g.bracket(ia, ex));
    }
  }
  QuadraticData q;
  if (span.empty()) {
    q.relations = Matrix(dg * dg, 0);
    q.phi = Matrix(dg, 0);
    return q;
  }
  Matrix s = Matrix::from_columns(span, dg * dg);
  Matrix v = Matrix::from_columns(values, dg);
  auto pivots = rref(s).pivots;
  std::vector<Vector> basis, phi;
  for (auto p : pivots) {
    basis.push_back(span[p]);
    phi.push_back(values[p]);
  }
  q.relations = Matrix::from_columns(basis, dg * dg);
  q.phi = Matrix::from_columns(phi, dg);
  auto coords = solve(q.relations, s);
  q.phi_consistent = coords && q.phi * *coords == v;
  return q;
}

BgConditions bg_conditions(const InclusionPair &pair) {
  auto q = quadratic_data(pair);
  std::size_t dg = pair.dim_g(), r = q.dim();
  BgConditions out;
  if (!q.phi_consistent)
    return out;
  Matrix id = Matrix::identity(dg);
  Matrix u = tensor_map(q.relations, id), v = tensor_map(id, q.relations);
  Matrix stacked(dg * dg * dg, 2 * r * dg);
  for (std::size_t i = 0; i < stacked.rows(); ++i)
    for (std::size_t j = 0; j < r * dg; ++j) {
      stacked(i, j) = u(i, j);
      stacked(i, r * dg + j) = -v(i, j);
    }
  Matrix phi_left = tensor_map(q.phi, id), phi_right = tensor_map(id, q.phi);
  auto kernel = kernel_basis(stacked);
  out.intersection_dim = kernel.size();
  out.condition1 = out.condition2 = true;
  for (const auto &k : kernel) {
    Vector alpha(k.begin(), k.begin() + r * dg), beta(k.begin() + r * dg, k.end());
    Vector left = phi_left * alpha, right = phi_right * beta, diff(dg * dg);
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = left[i] - right[i];
    auto c = solve(q.relations, diff);
    if (!c) {
      out.condition1 = out.condition2 = false;
      break;
    }
    if (!is_zero(q.phi * *c))
      out.condition2 = false;
  }
  return out;
}

namespace {

// qR in adapted coordinates, on g ⊗ g indexed x * dg + y.
EchelonBasis adapted_relations(const InclusionPair &pair) {
  std::size_t dg = pair.dim_g(), dh = pair.dim_h();
  EchelonBasis e;
  for (std::size_t a = 0; a < dh; ++a)
    for (std::size_t x = 0; x < dg; ++x) {
      SparseVector r;
      r.add(a * dg + x, 1);
      r.add(x * dg + a, -1);
      if (!r.empty())
        e.insert(r);
    }
  return e;
}

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--)
    r *= b;
  return r;
}

// Normal words of qA: h-letters sorted at the end.
bool qa_normal(const Word &w, int dh) {
  std::size_t first_h = w.size();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < dh) {
      first_h = i;
      break;
    }
  for (std::size_t i = first_h; i < w.size(); ++i)
    if (w[i] >= dh || (i > first_h && w[i] < w[i - 1]))
      return false;
  return true;
}

Word qa_nf(const Word &w, int dh) {
  Word n, h;
  for (int c : w)
    (c < dh ? h : n).push_back(c);
  std::sort(h.begin(), h.end());
  n.insert(n.end(), h.begin(), h.end());
  return n;
}

struct QaBasis {
  std::vector<Word> words;
  std::map<Word, std::size_t> index;
};

QaBasis qa_basis(std::size_t dg, std::size_t dh, std::size_t m) {
  QaBasis b;
  for (auto &w : all_words(dg, m))
    if (qa_normal(w, static_cast<int>(dh))) {
      b.index.emplace(w, b.words.size());
      b.words.push_back(w);
    }
  return b;
}

// Echelon basis of K̃^i together with the ordered pivots.
struct DualPiece {
  EchelonBasis echelon;
  std::vector<std::size_t> pivots;
  std::vector<SparseVector> rows;
};

DualPiece dual_piece(const InclusionPair &pair, std::size_t i) {
  DualPiece d;
  std::size_t dg = pair.dim_g(), dh = pair.dim_h();
  if (i == 0) {
    d.echelon.insert(SparseVector::unit(0));
  } else {
    Word perm(i);
    for (auto &prefix : all_words(dh, i - 1))
      for (std::size_t last = 0; last < dg; ++last) {
        Word t = prefix;
        t.push_back(static_cast<int>(last));
        SparseVector alt;
        for (std::size_t j = 0; j < i; ++j)
          perm[j] = static_cast<int>(j);
        do {
          int sign = 1;
          for (std::size_t a = 0; a < i; ++a)
            for (std::size_t b = a + 1; b < i; ++b)
              if (perm[a] > perm[b])
                sign = -sign;
          Word w(i);
          for (std::size_t j = 0; j < i; ++j)
            w[j] = t[perm[j]];
          alt.add(word_index(w, dg), sign);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!alt.empty())
          d.echelon.insert(alt);
      }
  }
  for (const auto &[p, row] : d.echelon.rows()) {
    d.pivots.push_back(p);
    d.rows.push_back(row);
  }
  return d;
}

// Coordinates of v in the echelon rows (by pivot order), or nullopt.
std::optional<SparseVector> echelon_coordinates(const DualPiece &d, SparseVector v) {
  SparseVector out;
  while (!v.empty()) {
    std::size_t lead = v.leading();
    auto it = std::lower_bound(d.pivots.begin(), d.pivots.end(), lead);
    if (it == d.pivots.end() || *it != lead)
      return std::nullopt;
    std::size_t k = static_cast<std::size_t>(it - d.pivots.begin());
    Scalar c = v.get(lead);
    out.add(k, c);
    v.axpy(-c, d.rows[k]);
  }
  return out;
}

} // namespace

std::size_t qa_graded_dimension(const InclusionPair &pair, std::size_t k) {
  std::size_t dg = pair.dim_g(), dh = pair.dim_h();
  if (k < 2)
    return power(dg, k);
  EchelonBasis e;
  for (std::size_t pos = 0; pos + 2 <= k; ++pos)
    for (auto &pre : all_words(dg, pos))
      for (auto &post : all_words(dg, k - pos - 2))
        for (std::size_t a = 0; a < dh; ++a)
          for (std::size_t x = 0; x < dg; ++x) {
            Word u = pre, v = pre;
            u.push_back(static_cast<int>(a));
            u.push_back(static_cast<int>(x));
            v.push_back(static_cast<int>(x));
            v.push_back(static_cast<int>(a));
            u.insert(u.end(), post.begin(), post.end());
            v.insert(v.end(), post.begin(), post.end());
            SparseVector r;
            r.add(word_index(u, dg), 1);
            r.add(word_index(v, dg), -1);
            if (!r.empty())
              e.insert(r);
          }
  return power(dg, k) - e.rank();
}

std::size_t qa_expected_dimension(const InclusionPair &pair, std::size_t k) {
  std::size_t dh = pair.dim_h(), dn = pair.dim_n(), total = 0;
  for (std::size_t j = 0; j <= k; ++j)
    total += power(dn, k - j) * (dh == 0 ? (j == 0) : binomial(dh + j - 1, j));
  return total;
}

std::vector<Vector> koszul_dual_piece(const InclusionPair &pair, std::size_t i) {
  auto d = dual_piece(pair, i);
  std::vector<Vector> out;
  for (auto &r : d.rows)
    out.push_back(r.to_dense(power(pair.dim_g(), i)));
  return out;
}

std::size_t koszul_dual_expected_dimension(const InclusionPair &pair, std::size_t i) {
  std::size_t dh = pair.dim_h();
  return binomial(dh, i) + (i == 0 ? 0 : binomial(dh, i - 1) * pair.dim_n());
}

bool koszul_dual_in_relations(const InclusionPair &pair, std::size_t i) {
  if (i < 2)
    return true;
  std::size_t dg = pair.dim_g();
  auto rel = adapted_relations(pair);
  auto d = dual_piece(pair, i);
  for (const auto &row : d.rows)
    for (std::size_t pos = 0; pos + 2 <= i; ++pos) {
      std::size_t outer_low = power(dg, i - pos - 2);
      std::map<std::pair<std::size_t, std::size_t>, SparseVector> slices;
      for (const auto &[idx, c] : row) {
        std::size_t low = idx % outer_low, rest = idx / outer_low;
        std::size_t mid = rest % (dg * dg), high = rest / (dg * dg);
        slices[{high, low}].add(mid, c);
      }
      for (const auto &[key, v] : slices)
        if (!rel.contains(v))
          return false;
    }
  return true;
}

bool KoszulSlice::ok() const {
  if (!d_squared_zero || !lands_in_complex)
    return false;
  for (std::size_t i = 1; i < exact.size(); ++i)
    if (!exact[i])
      return false;
  return true;
}

bool KoszulReport::ok() const {
  if (!dual_contained || dual_dims != dual_expected)
    return false;
  for (const auto &s : slices)
    if (!s.ok())
      return false;
  return true;
}

KoszulReport koszul_acyclicity(const InclusionPair &pair, std::size_t max_internal_degree) {
  std::size_t dg = pair.dim_g(), dh = pair.dim_h();
  std::size_t top = max_internal_degree;
  KoszulReport report;
  std::vector<DualPiece> duals;
  std::vector<QaBasis> qa;
  for (std::size_t i = 0; i <= top; ++i) {
    duals.push_back(dual_piece(pair, i));
    qa.push_back(qa_basis(dg, dh, i));
    report.dual_dims.push_back(duals.back().rows.size());
    report.dual_expected.push_back(koszul_dual_expected_dimension(pair, i));
    report.dual_contained = report.dual_contained && koszul_dual_in_relations(pair, i);
  }

  for (std::size_t d = 1; d <= top; ++d) {
    KoszulSlice s;
    s.degree = d;
    s.lands_in_complex = true;
    s.d_squared_zero = true;
    for (std::size_t i = 0; i <= d; ++i)
      s.dims.push_back(qa[d - i].words.size() * duals[i].rows.size());
    // differentials[i] : C_i -> C_{i-1}, as columns
    std::vector<std::vector<SparseVector>> diff(d + 1);
    for (std::size_t i = 1; i <= d; ++i) {
      const auto &src_qa = qa[d - i], &dst_qa = qa[d - i + 1];
      const auto &src = duals[i], &dst = duals[i - 1];
      std::size_t tail_size = power(dg, i - 1);
      for (const auto &m : src_qa.words)
        for (const auto &kappa : src.rows) {
          std::map<std::size_t, SparseVector> by_qa;
          for (const auto &[idx, c] : kappa) {
            std::size_t head = idx / tail_size, tail = idx % tail_size;
            Word w = m;
            w.push_back(static_cast<int>(head));
            by_qa[dst_qa.index.at(qa_nf(w, static_cast<int>(dh)))].add(tail, c);
          }
          SparseVector col;
          for (const auto &[q, v] : by_qa) {
            auto coords = echelon_coordinates(dst, v);
            if (!coords) {
              s.lands_in_complex = false;
              continue;
            }
            for (const auto &[k, c] : *coords)
              col.add(q * dst.rows.size() + k, c);
          }
          diff[i].push_back(std::move(col));
        }
    }
    s.ranks.assign(d + 2, 0);
    for (std::size_t i = 1; i <= d; ++i) {
      EchelonBasis e;
      for (const auto &c : diff[i])
        e.insert(c);
      s.ranks[i] = e.rank();
    }
    for (std::size_t i = 2; i <= d; ++i)
      for (const auto &c : diff[i]) {
        SparseVector acc;
        for (const auto &[k, v] : c)
          acc.axpy(v, diff[i - 1][k]);
        if (!acc.empty())
          s.d_squared_zero = false;
      }
    s.exact.assign(d + 1, false);
    for (std::size_t i = 1; i <= d; ++i)
      s.exact[i] = s.dims[i] == s.ranks[i] + s.ranks[i + 1];
    s.h0 = s.dims[0] - s.ranks[1];
    s.ranks.resize(d + 1);
    report.slices.push_back(std::move(s));
  }
  return report;
}

} // namespace pbwgate
