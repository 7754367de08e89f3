#pragma once

// Dense matrices over F_p with labelled columns: rank of a column subset,
// incremental independence testing, and the dual-matroid representation.
//
// Elimination always pivots on the lowest-index row holding a nonzero entry,
// scanning columns left to right. All arithmetic is exact mod p.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "octk/field.hpp"

namespace octk {

using Label = std::uint32_t;

class MatrixError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class FpMatrix {
public:
  FpMatrix() = default;

  FpMatrix(Prime p, std::size_t rows, std::vector<Label> labels)
      : p_(std::move(p)), rows_(rows), labels_(std::move(labels)),
        entries_(rows_ * labels_.size()) {
    index_labels();
  }

  FpMatrix(Prime p, std::size_t rows, std::vector<Label> labels, std::vector<mpz_class> entries)
      : p_(std::move(p)), rows_(rows), labels_(std::move(labels)), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * labels_.size())
      throw MatrixError("entry count does not match shape");
    for (const auto& e : entries_)
      if (e < 0 || e >= p_.p) throw MatrixError("matrix entry outside [0, p)");
    index_labels();
  }

  const Prime& prime() const { return p_; }
  const mpz_class& modulus() const { return p_.p; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<mpz_class>& entries() const { return entries_; }

  const mpz_class& at(std::size_t r, std::size_t c) const { return entries_[r * cols() + c]; }

  /// Stores `value` reduced into [0, p).
  void set(std::size_t r, std::size_t c, mpz_class value) {
    fp::reduce(value, p_.p);
    entries_.at(r * cols() + c) = std::move(value);
  }

  std::size_t column_of(Label label) const {
    auto it = column_index_.find(label);
    if (it == column_index_.end())
      throw MatrixError("unknown column label " + std::to_string(label));
    return it->second;
  }

  bool has_label(Label label) const { return column_index_.contains(label); }

  std::vector<mpz_class> column(std::size_t c) const {
    std::vector<mpz_class> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.labels_ == b.labels_ &&
           a.entries_ == b.entries_;
  }

private:
  void index_labels() {
    for (std::size_t c = 0; c < labels_.size(); ++c)
      if (!column_index_.emplace(labels_[c], c).second)
        throw MatrixError("duplicate column label " + std::to_string(labels_[c]));
  }

  Prime p_;
  std::size_t rows_ = 0;
  std::vector<Label> labels_;
  std::vector<mpz_class> entries_;
  std::unordered_map<Label, std::size_t> column_index_;
};

/// Column-by-column Gaussian elimination. Each accepted vector is kept
/// reduced against its predecessors with a unit pivot, so adding a column
/// answers "is it independent of everything accepted so far".
class IncrementalBasis {
public:
  IncrementalBasis(std::size_t dim, const mpz_class& p) : dim_(dim), p_(p), scratch_(dim) {}

  bool add(std::span<const mpz_class> v) {
    if (v.size() != dim_) throw MatrixError("vector dimension mismatch");
    std::copy(v.begin(), v.end(), scratch_.begin());
    for (const auto& b : basis_) {
      if (scratch_[b.pivot] == 0) continue;
      const mpz_class f = scratch_[b.pivot];
      for (std::size_t r = 0; r < dim_; ++r)
        if (b.vec[r] != 0) fp::sub_mul(scratch_[r], f, b.vec[r], p_);
    }
    std::size_t pivot = 0;
    while (pivot < dim_ && scratch_[pivot] == 0) ++pivot;
    if (pivot == dim_) return false;
    const mpz_class inv = fp::inverse(scratch_[pivot], p_);
    for (auto& x : scratch_)
      if (x != 0) fp::mul(x, inv, p_);
    basis_.push_back({pivot, scratch_});
    return true;
  }

  bool add_column(const FpMatrix& a, std::size_t c) {
    column_.resize(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) column_[r] = a.at(r, c);
    return add(column_);
  }

  std::size_t rank() const { return basis_.size(); }

private:
  struct Reduced {
    std::size_t pivot;
    std::vector<mpz_class> vec;
  };
  std::size_t dim_;
  mpz_class p_;
  std::vector<mpz_class> scratch_;
  std::vector<mpz_class> column_;
  std::vector<Reduced> basis_;
};

inline std::size_t rank_of_columns(const FpMatrix& a, std::span<const Label> cols) {
  IncrementalBasis basis(a.rows(), a.modulus());
  for (Label l : cols) basis.add_column(a, a.column_of(l));
  return basis.rank();
}

inline bool is_independent(const FpMatrix& a, std::span<const Label> cols) {
  return rank_of_columns(a, cols) == cols.size();
}

inline std::size_t rank(const FpMatrix& a) {
  return rank_of_columns(a, a.labels());
}

struct RowEchelon {
  std::vector<std::vector<mpz_class>> rows;  // nonzero rows only, reduced
  std::vector<std::size_t> pivot_cols;       // ascending
};

/// Reduced row echelon form of the whole matrix; zero rows are dropped.
inline RowEchelon reduced_row_echelon(const FpMatrix& a) {
  const auto& p = a.modulus();
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<mpz_class>> work(m, std::vector<mpz_class>(n));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) work[r][c] = a.at(r, c);

  RowEchelon out;
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < m; ++c) {
    std::size_t piv = top;
    while (piv < m && work[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(work[top], work[piv]);
    const mpz_class inv = fp::inverse(work[top][c], p);
    for (std::size_t j = c; j < n; ++j)
      if (work[top][j] != 0) fp::mul(work[top][j], inv, p);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == top || work[r][c] == 0) continue;
      const mpz_class f = work[r][c];
      for (std::size_t j = c; j < n; ++j)
        if (work[top][j] != 0) fp::sub_mul(work[r][j], f, work[top][j], p);
    }
    out.pivot_cols.push_back(c);
    ++top;
  }
  work.resize(top);
  out.rows = std::move(work);
  return out;
}

/// Representation of the dual matroid over the same field and labels.
/// With A row-equivalent to [I | B] (pivot columns P, the rest N), the
/// output places -B^T on P and the identity on N.
inline FpMatrix dual_representation(const FpMatrix& a) {
  const auto& p = a.modulus();
  RowEchelon ech = reduced_row_echelon(a);
  const std::size_t n = a.cols(), r = ech.pivot_cols.size();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  FpMatrix dual(a.prime(), n - r, a.labels());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    dual.set(i, free_cols[i], 1);
    for (std::size_t k = 0; k < r; ++k) {
      const mpz_class& b = ech.rows[k][free_cols[i]];
      if (b != 0) dual.set(i, ech.pivot_cols[k], p - b);
    }
  }
  return dual;
}

/// Keeps only the listed columns, in the order given.
inline FpMatrix restrict_columns(const FpMatrix& a, std::span<const Label> keep) {
  std::vector<std::size_t> idx;
  for (Label l : keep) idx.push_back(a.column_of(l));
  std::vector<mpz_class> entries;
  entries.reserve(a.rows() * keep.size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c : idx) entries.push_back(a.at(r, c));
  return FpMatrix(a.prime(), a.rows(), std::vector<Label>(keep.begin(), keep.end()),
                  std::move(entries));
}

/// Same matroid, row count reduced to the rank.
inline FpMatrix full_row_rank(const FpMatrix& a) {
  RowEchelon ech = reduced_row_echelon(a);
  std::vector<mpz_class> entries;
  for (auto& row : ech.rows)
    for (auto& x : row) entries.push_back(std::move(x));
  return FpMatrix(a.prime(), ech.rows.size(), a.labels(), std::move(entries));
}

}  // namespace octk
