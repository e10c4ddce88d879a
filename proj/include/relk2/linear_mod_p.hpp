#pragma once

// Dense linear algebra over F_p: row reduction, kernels, and an incremental
// echelon basis used for subspaces, quotients and relation streams.

#include "relk2/support.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace relk2 {

class MatrixModP {
 public:
  MatrixModP(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (!is_prime(p)) throw std::invalid_argument("MatrixModP: modulus must be prime");
  }

  static MatrixModP from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    MatrixModP m(p, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("MatrixModP: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = reduce_signed(rows[i][j], p);
    }
    return m;
  }

  static MatrixModP identity(std::uint32_t p, std::size_t n) {
    MatrixModP m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
  }

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<std::uint32_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void append_row(std::span<const std::uint32_t> r) {
    if (r.size() != cols_) throw std::invalid_argument("MatrixModP: row length mismatch");
    for (auto v : r) data_.push_back(v % p_);
    ++rows_;
  }

  friend bool operator==(const MatrixModP& a, const MatrixModP& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::uint32_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> data_;
};

struct RrefResult {
  MatrixModP reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; nonzero rows first, pivots normalized to 1.
inline RrefResult rref(MatrixModP m) {
  const std::uint32_t p = m.p();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    std::uint32_t inv = mod_inverse(m.at(r, c), p);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = mod_mul(m.at(r, j), inv, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      std::uint32_t f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) = mod_sub(m.at(i, j), mod_mul(f, m.at(r, j), p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

/// Basis of {v : M v = 0}; one vector per non-pivot column.
inline std::vector<ModVec> kernel_basis(const MatrixModP& m) {
  const std::uint32_t p = m.p();
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<ModVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ModVec v(m.cols(), 0);
    v[f] = 1 % p;
    for (std::size_t k = 0; k < rr.rank; ++k) v[rr.pivots[k]] = mod_sub(0, rr.reduced.at(k, f), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank(const MatrixModP& m) { return rref(m).rank; }

enum class PivotOrder { lowest, highest };

/// Subspace of F_p^dim kept in fully reduced echelon form.
///
/// With PivotOrder::highest the pivot of a row is its last nonzero column,
/// so column 0 is a pivot only when e_0 itself lies in the span.
class EchelonBasis {
 public:
  EchelonBasis(std::uint32_t p, std::size_t dim, PivotOrder order = PivotOrder::lowest)
      : p_(p), dim_(dim), order_(order), pivot_row_(dim, npos) {}

  std::uint32_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<ModVec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

  /// Reduces v against every pivot; the result vanishes on all pivot columns.
  void reduce_in_place(ModVec& v) const {
    check_length(v);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::uint32_t f = v[pivots_[k]];
      if (f == 0) continue;
      subtract_multiple(v, rows_[k], f);
    }
  }

  ModVec reduce(ModVec v) const {
    reduce_in_place(v);
    return v;
  }

  bool contains(const ModVec& v) const {
    ModVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
  }

  /// Adds v to the span; returns false when v was already dependent.
  bool insert(ModVec v) {
    reduce_in_place(v);
    std::optional<std::size_t> lead;
    if (order_ == PivotOrder::lowest) {
      for (std::size_t j = 0; j < dim_; ++j)
        if (v[j]) { lead = j; break; }
    } else {
      for (std::size_t j = dim_; j-- > 0;)
        if (v[j]) { lead = j; break; }
    }
    if (!lead) return false;
    const std::size_t c = *lead;
    std::uint32_t inv = mod_inverse(v[c], p_);
    for (auto& x : v) x = mod_mul(x, inv, p_);
    for (auto& row : rows_) {
      std::uint32_t f = row[c];
      if (f) subtract_multiple(row, v, f);
    }
    pivot_row_[c] = rows_.size();
    pivots_.push_back(c);
    rows_.push_back(std::move(v));
    return true;
  }

  /// Coordinates of v in the row basis; requires v in the span.
  std::optional<ModVec> coordinates(const ModVec& v) const {
    check_length(v);
    ModVec coords(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) coords[k] = v[pivots_[k]];
    ModVec check(dim_, 0);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (coords[k]) add_multiple(check, rows_[k], coords[k]);
    if (check != v) return std::nullopt;
    return coords;
  }

  /// Columns without a pivot, ascending; they index a basis of the quotient.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < dim_; ++j)
      if (pivot_row_[j] == npos) out.push_back(j);
    return out;
  }

  /// Coordinates of the class of v in F_p^dim / span, on free_columns().
  ModVec quotient_coordinates(const ModVec& v) const {
    ModVec r = reduce(v);
    ModVec out;
    out.reserve(dim_ - rank());
    for (std::size_t j = 0; j < dim_; ++j)
      if (pivot_row_[j] == npos) out.push_back(r[j]);
    return out;
  }

  MatrixModP to_matrix() const {
    MatrixModP m(p_, 0, dim_);
    for (const auto& r : rows_) m.append_row(r);
    return m;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void check_length(const ModVec& v) const {
    if (v.size() != dim_) throw MismatchError("EchelonBasis: vector length " + std::to_string(v.size()) + " != " + std::to_string(dim_));
  }

  void subtract_multiple(ModVec& v, const ModVec& row, std::uint32_t f) const {
    for (std::size_t j = 0; j < dim_; ++j)
      if (row[j]) v[j] = mod_sub(v[j], mod_mul(f, row[j], p_), p_);
  }

  void add_multiple(ModVec& v, const ModVec& row, std::uint32_t f) const {
    for (std::size_t j = 0; j < dim_; ++j)
      if (row[j]) v[j] = mod_add(v[j], mod_mul(f, row[j], p_), p_);
  }

  std::uint32_t p_;
  std::size_t dim_;
  PivotOrder order_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::size_t> pivots_;
  std::vector<ModVec> rows_;
};

inline ModVec vec_add(const ModVec& a, const ModVec& b, std::uint32_t p) {
  if (a.size() != b.size()) throw MismatchError("vector length mismatch");
  ModVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_add(a[i], b[i], p);
  return r;
}

inline ModVec vec_sub(const ModVec& a, const ModVec& b, std::uint32_t p) {
  if (a.size() != b.size()) throw MismatchError("vector length mismatch");
  ModVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_sub(a[i], b[i], p);
  return r;
}

inline ModVec vec_scale(const ModVec& a, std::uint32_t s, std::uint32_t p) {
  ModVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_mul(a[i], s % p, p);
  return r;
}

inline bool is_zero(const ModVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

}  // namespace relk2
