#pragma once

// Exact rational linear algebra: dense matrices for small operators and a
// sparse incremental echelon engine for the large filtered spaces.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pbwgate {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Parses "p", "p/q" or "-p/q"; throws Error on malformed input or q = 0.
Scalar parse_scalar(const std::string &text);
std::string to_string(const Scalar &x);

inline bool is_zero(const Scalar &x) { return sgn(x) == 0; }
bool is_zero(const Vector &v);

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix from_rows(const std::vector<Vector> &rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector> &cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_zero() const;

  Matrix operator+(const Matrix &o) const;
  Matrix operator-(const Matrix &o) const;
  Matrix operator*(const Matrix &o) const;
  Matrix operator*(const Scalar &s) const;
  Vector operator*(const Vector &v) const;
  Matrix &operator+=(const Matrix &o);
  Matrix &operator-=(const Matrix &o);
  bool operator==(const Matrix &o) const;
  bool operator!=(const Matrix &o) const { return !(*this == o); }

  /// Row-major flattening; the i-th entry is (i / cols, i % cols).
  const std::vector<Scalar> &data() const { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix commutator(const Matrix &a, const Matrix &b);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with leftmost-nonzero pivoting.
RrefResult rref(const Matrix &m);
std::size_t rank(const Matrix &m);

/// Some x with A x = b (free variables zero), or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix &a, const Vector &b);
/// Solves A X = B column by column; nullopt if any column is inconsistent.
std::optional<Matrix> solve(const Matrix &a, const Matrix &b);

std::vector<Vector> kernel_basis(const Matrix &a);

/// Basis of span(u) ∩ span(v), computed from the kernel of [U | -V].
std::vector<Vector> subspace_intersection(const std::vector<Vector> &u,
                                          const std::vector<Vector> &v,
                                          std::size_t ambient);

/// Kronecker product: (f ⊗ g)(e_i ⊗ e_j) = f(e_i) ⊗ g(e_j), first factor major.
Matrix tensor_map(const Matrix &f, const Matrix &g);

/// Independent subset basis (row-reduced) of the span of the given vectors.
std::vector<Vector> span_basis(const std::vector<Vector> &vectors, std::size_t ambient);
bool in_span(const std::vector<Vector> &basis, const Vector &v);

// ---------------------------------------------------------------------------
// Sparse side.

class SparseVector {
public:
  using Storage = std::map<std::size_t, Scalar>;

  SparseVector() = default;
  static SparseVector unit(std::size_t i) {
    SparseVector v;
    v.entries_.emplace(i, Scalar(1));
    return v;
  }
  static SparseVector from_dense(const Vector &v);

  void add(std::size_t i, const Scalar &c);
  void axpy(const Scalar &c, const SparseVector &x);
  void scale(const Scalar &c);
  Scalar get(std::size_t i) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t leading() const { return entries_.begin()->first; }
  const Storage &entries() const { return entries_; }
  Storage &entries() { return entries_; }
  Vector to_dense(std::size_t n) const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const SparseVector &o) const { return entries_ == o.entries_; }

private:
  Storage entries_;
};

/// Incrementally maintained echelon basis.  Rows are normalized to a leading
/// coefficient of one, so reduce() returns the canonical remainder supported
/// on non-pivot coordinates.
class EchelonBasis {
public:
  /// Returns true when v was independent of the current span.
  bool insert(SparseVector v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector &v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t i) const { return rows_.count(i) != 0; }
  const std::map<std::size_t, SparseVector> &rows() const { return rows_; }

private:
  std::map<std::size_t, SparseVector> rows_;
};

/// Sparse linear system A x = b assembled row by row.
class SparseSystem {
public:
  explicit SparseSystem(std::size_t unknowns) : unknowns_(unknowns) {}
  void add_equation(const SparseVector &lhs, const Scalar &rhs);
  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }
  /// Solution with free variables zero, or nullopt when inconsistent.
  std::optional<Vector> solve() const;

private:
  std::size_t unknowns_;
  std::vector<std::pair<SparseVector, Scalar>> rows_;
};

std::size_t binomial(std::size_t n, std::size_t k);

} // namespace pbwgate
