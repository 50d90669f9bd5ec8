#include "pbwgate/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace pbwgate {

Scalar parse_scalar(const std::string &text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      t += ch;
  auto valid_int = [](const std::string &s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+'))
      ++i;
    if (i == s.size())
      return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error("malformed rational '" + text + "'");
  if (num[0] == '+')
    num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0)
    throw Error("zero denominator in '" + text + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar &x) { return x.get_str(); }

bool is_zero(const Vector &v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return sgn(x) == 0; });
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw DimensionMismatch("matrix data does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector> &rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw DimensionMismatch("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector> &cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw DimensionMismatch("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i)
      m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionMismatch("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

bool Matrix::is_zero() const { return pbwgate::is_zero(data_); }

Matrix Matrix::operator+(const Matrix &o) const {
  Matrix r = *this;
  r += o;
  return r;
}

Matrix Matrix::operator-(const Matrix &o) const {
  Matrix r = *this;
  r -= o;
  return r;
}

Matrix &Matrix::operator+=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (sgn(o.data_[i]) != 0)
      data_[i] += o.data_[i];
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (sgn(o.data_[i]) != 0)
      data_[i] -= o.data_[i];
  return *this;
}

// Zero-skipping product: the operators in this project are mostly sparse.
Matrix Matrix::operator*(const Matrix &o) const {
  if (cols_ != o.rows_)
    throw DimensionMismatch("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  Scalar t;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar &a = (*this)(i, k);
      if (sgn(a) == 0)
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar &b = o(k, j);
        if (sgn(b) == 0)
          continue;
        t = a * b;
        r(i, j) += t;
      }
    }
  return r;
}

Matrix Matrix::operator*(const Scalar &s) const {
  Matrix r = *this;
  for (auto &x : r.data_)
    x *= s;
  return r;
}

Vector Matrix::operator*(const Vector &v) const {
  if (v.size() != cols_)
    throw DimensionMismatch("matrix-vector shape mismatch");
  Vector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn((*this)(i, k)) != 0 && sgn(v[k]) != 0)
        r[i] += (*this)(i, k) * v[k];
  return r;
}

bool Matrix::operator==(const Matrix &o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

RrefResult rref(const Matrix &m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0)
      ++p;
    if (p == a.rows())
      continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a(p, j), a(r, j));
    Scalar inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0)
        continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0)
          a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix &m) { return rref(m).pivots.size(); }

std::optional<Vector> solve(const Matrix &a, const Vector &b) {
  if (a.rows() != b.size())
    throw DimensionMismatch("solve: A has " + std::to_string(a.rows()) +
                            " rows but b has length " + std::to_string(b.size()));
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols())
    return std::nullopt;
  Vector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = red(r, a.cols());
  return x;
}

std::optional<Matrix> solve(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve: row count mismatch");
  Matrix aug(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      aug(i, a.cols() + j) = b(i, j);
  }
  auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() >= a.cols())
    return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x(pivots[r], j) = red(r, a.cols() + j);
  return x;
}

std::vector<Vector> kernel_basis(const Matrix &a) {
  auto [red, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots)
    is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free])
      continue;
    Vector v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -red(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> span_basis(const std::vector<Vector> &vectors, std::size_t ambient) {
  if (vectors.empty())
    return {};
  auto [red, pivots] = rref(Matrix::from_rows(vectors, ambient));
  std::vector<Vector> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    basis.push_back(red.row(r));
  return basis;
}

bool in_span(const std::vector<Vector> &basis, const Vector &v) {
  if (basis.empty())
    return is_zero(v);
  Matrix cols = Matrix::from_columns(basis, v.size());
  return solve(cols, v).has_value();
}

std::vector<Vector> subspace_intersection(const std::vector<Vector> &u,
                                          const std::vector<Vector> &v,
                                          std::size_t ambient) {
  for (const auto &x : u)
    if (x.size() != ambient)
      throw DimensionMismatch("subspace_intersection: ambient dimension mismatch");
  for (const auto &x : v)
    if (x.size() != ambient)
      throw DimensionMismatch("subspace_intersection: ambient dimension mismatch");
  if (u.empty() || v.empty())
    return {};
  Matrix stacked(ambient, u.size() + v.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i < ambient; ++i)
      stacked(i, j) = u[j][i];
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < ambient; ++i)
      stacked(i, u.size() + j) = -v[j][i];
  std::vector<Vector> images;
  for (const auto &k : kernel_basis(stacked)) {
    Vector w(ambient);
    for (std::size_t j = 0; j < u.size(); ++j)
      if (sgn(k[j]) != 0)
        for (std::size_t i = 0; i < ambient; ++i)
          w[i] += k[j] * u[j][i];
    images.push_back(std::move(w));
  }
  return span_basis(images, ambient);
}

Matrix tensor_map(const Matrix &f, const Matrix &g) {
  Matrix r(f.rows() * g.rows(), f.cols() * g.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (sgn(f(i, j)) == 0)
        continue;
      for (std::size_t k = 0; k < g.rows(); ++k)
        for (std::size_t l = 0; l < g.cols(); ++l)
          if (sgn(g(k, l)) != 0)
            r(i * g.rows() + k, j * g.cols() + l) = f(i, j) * g(k, l);
    }
  return r;
}

SparseVector SparseVector::from_dense(const Vector &v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0)
      s.entries_.emplace(i, v[i]);
  return s;
}

void SparseVector::add(std::size_t i, const Scalar &c) {
  if (sgn(c) == 0)
    return;
  auto [it, inserted] = entries_.emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0)
      entries_.erase(it);
  }
}

void SparseVector::axpy(const Scalar &c, const SparseVector &x) {
  if (sgn(c) == 0)
    return;
  for (const auto &[i, xi] : x.entries_)
    add(i, c * xi);
}

void SparseVector::scale(const Scalar &c) {
  if (sgn(c) == 0) {
    entries_.clear();
    return;
  }
  for (auto &[i, xi] : entries_)
    xi *= c;
}

Scalar SparseVector::get(std::size_t i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Scalar(0) : it->second;
}

Vector SparseVector::to_dense(std::size_t n) const {
  Vector v(n);
  for (const auto &[i, x] : entries_) {
    if (i >= n)
      throw DimensionMismatch("sparse vector index out of range");
    v[i] = x;
  }
  return v;
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  auto &e = v.entries();
  auto it = e.begin();
  while (it != e.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    Scalar c = it->second;
    for (const auto &[j, rj] : row->second)
      if (j != it->first)
        v.add(j, -c * rj);
    it = e.erase(it);
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty())
    return false;
  std::size_t lead = v.leading();
  Scalar inv = 1 / v.get(lead);
  v.scale(inv);
  rows_.emplace(lead, std::move(v));
  return true;
}

void SparseSystem::add_equation(const SparseVector &lhs, const Scalar &rhs) {
  if (!lhs.empty() && lhs.entries().rbegin()->first >= unknowns_)
    throw DimensionMismatch("equation references an unknown out of range");
  rows_.emplace_back(lhs, rhs);
}

std::optional<Vector> SparseSystem::solve() const {
  bool homogeneous = std::all_of(rows_.begin(), rows_.end(),
                                 [](const auto &r) { return sgn(r.second) == 0; });
  if (homogeneous)
    return Vector(unknowns_);
  EchelonBasis basis;
  for (const auto &[lhs, rhs] : rows_) {
    SparseVector aug = lhs;
    aug.add(unknowns_, rhs);
    basis.insert(std::move(aug));
  }
  if (basis.is_pivot(unknowns_))
    return std::nullopt;
  Vector x(unknowns_);
  const auto &rows = basis.rows();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    std::size_t p = it->first;
    Scalar value = it->second.get(unknowns_);
    for (const auto &[j, c] : it->second)
      if (j != p && j < unknowns_ && sgn(x[j]) != 0)
        value -= c * x[j];
    x[p] = value;
  }
  return x;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n)
    return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace pbwgate
