#pragma once

// Integer linear algebra with arbitrary-size entries: Hermite and Smith
// normal forms, finitely generated abelian group structure, and lattice
// intersection/membership. Lattices are row spans throughout.

#include "relk2/support.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <vector>

namespace relk2 {

class MatrixZ {
 public:
  MatrixZ() = default;
  MatrixZ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  MatrixZ(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("MatrixZ: ragged rows");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static MatrixZ identity(std::size_t n) {
    MatrixZ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static MatrixZ from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
    MatrixZ m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<BigInt> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  void append_row(const std::vector<BigInt>& r) {
    if (r.size() != cols_) throw std::invalid_argument("MatrixZ: row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }
  // row_a += f * row_b
  void add_row_multiple(std::size_t a, std::size_t b, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(b, j) != 0) at(a, j) += f * at(b, j);
  }
  // col_a += f * col_b
  void add_col_multiple(std::size_t a, std::size_t b, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (at(i, b) != 0) at(i, a) += f * at(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) = -at(a, j);
  }
  // (row_a, row_b) <- (x row_a + y row_b, u row_a + v row_b)
  void combine_rows(std::size_t a, std::size_t b, const BigInt& x, const BigInt& y, const BigInt& u, const BigInt& v) {
    for (std::size_t j = 0; j < cols_; ++j) {
      BigInt ra = at(a, j), rb = at(b, j);
      if (ra == 0 && rb == 0) continue;
      at(a, j) = x * ra + y * rb;
      at(b, j) = u * ra + v * rb;
    }
  }

  MatrixZ transpose() const {
    MatrixZ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  MatrixZ top_rows(std::size_t k) const {
    MatrixZ m(k, cols_);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
  }

  friend MatrixZ operator*(const MatrixZ& a, const MatrixZ& b) {
    if (a.cols_ != b.rows_) throw MismatchError("MatrixZ: product shape mismatch");
    MatrixZ c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& f = a.at(i, k);
        if (f == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b.at(k, j) != 0) c.at(i, j) += f * b.at(k, j);
      }
    return c;
  }

  friend bool operator==(const MatrixZ& a, const MatrixZ& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

struct ExtendedGcd {
  BigInt g, x, y;  // x a + y b = g >= 0
};

inline ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Fraction-free (Bareiss) determinant of a square matrix.
inline BigInt determinant(MatrixZ m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && m.at(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      m.swap_rows(k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

struct HermiteDecomposition {
  MatrixZ h;  // U * M, rank nonzero rows on top, zero rows below
  MatrixZ u;  // unimodular, rows x rows
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Row-style Hermite form: upper echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot).
inline HermiteDecomposition hermite_decompose(const MatrixZ& m) {
  MatrixZ h = m;
  MatrixZ u = MatrixZ::identity(m.rows());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h.at(i, c) == 0) continue;
      BigInt a = h.at(r, c), b = h.at(i, c);
      ExtendedGcd e = extended_gcd(a, b);
      BigInt ua = -b / e.g, ub = a / e.g;
      h.combine_rows(r, i, e.x, e.y, ua, ub);
      u.combine_rows(r, i, e.x, e.y, ua, ub);
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = floor_div(h.at(i, c), h.at(r, c));
      if (q != 0) {
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(h), std::move(u), r, std::move(pivots)};
}

/// Echelon basis of a growing row lattice, at most one row per pivot column.
/// Memory stays O(cols^2) however many rows are inserted.
class IntegerRowBasis {
 public:
  explicit IntegerRowBasis(std::size_t cols) : cols_(cols), rows_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rank_; }

  void insert(std::vector<BigInt> v) {
    if (v.size() != cols_) throw std::invalid_argument("IntegerRowBasis: row length mismatch");
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      if (!rows_[c]) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        rows_[c] = std::move(v);
        ++rank_;
        return;
      }
      auto& b = *rows_[c];
      ExtendedGcd e = extended_gcd(b[c], v[c]);
      BigInt ub = -v[c] / e.g, uv = b[c] / e.g;
      for (std::size_t j = c; j < cols_; ++j) {
        BigInt nb = e.x * b[j] + e.y * v[j];
        v[j] = ub * b[j] + uv * v[j];
        b[j] = std::move(nb);
      }
    }
  }

  /// Hermite form of the lattice spanned so far.
  MatrixZ hermite() const {
    std::vector<std::vector<BigInt>> rows;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < cols_; ++c)
      if (rows_[c]) {
        rows.push_back(*rows_[c]);
        piv.push_back(c);
      }
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t i = 0; i < k; ++i) {
        BigInt q = floor_div(rows[i][piv[k]], rows[k][piv[k]]);
        if (q == 0) continue;
        for (std::size_t j = piv[k]; j < cols_; ++j) rows[i][j] -= q * rows[k][j];
      }
    return MatrixZ::from_rows(rows, cols_);
  }

 private:
  std::size_t cols_;
  std::vector<std::optional<std::vector<BigInt>>> rows_;
  std::size_t rank_ = 0;
};

/// Hermite basis of the row lattice (zero rows dropped). Unique per lattice.
inline MatrixZ hnf(const MatrixZ& m) {
  IntegerRowBasis basis(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) basis.insert(m.row(i));
  return basis.hermite();
}

struct SmithDecomposition {
  MatrixZ d, u, v;  // u * m * v == d
};

/// Smith normal form by least-absolute-value pivoting.
inline SmithDecomposition snf(const MatrixZ& m) {
  MatrixZ d = m;
  MatrixZ u = MatrixZ::identity(m.rows());
  MatrixZ v = MatrixZ::identity(m.cols());
  const std::size_t rows = d.rows(), cols = d.cols();

  auto move_min_to = [&](std::size_t t, bool whole_block) -> bool {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (d.at(i, j) == 0) return;
      BigInt a = abs(d.at(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    };
    if (whole_block) {
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) consider(i, j);
    } else {
      for (std::size_t i = t; i < rows; ++i) consider(i, t);
      for (std::size_t j = t; j < cols; ++j) consider(t, j);
    }
    if (!best) return false;
    d.swap_rows(t, best->first);
    u.swap_rows(t, best->first);
    d.swap_cols(t, best->second);
    v.swap_cols(t, best->second);
    return true;
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    if (!move_min_to(t, true)) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d.at(i, t) == 0) continue;
        BigInt q = d.at(i, t) / d.at(t, t);
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d.at(t, j) == 0) continue;
        BigInt q = d.at(t, j) / d.at(t, t);
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to(t, false);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      d.add_row_multiple(t, *bad_row, 1);
      u.add_row_multiple(t, *bad_row, 1);
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

/// Finitely generated abelian group Z/d1 x ... x Z/dk x Z^f with d_i | d_{i+1}, d_i > 1.
struct AbelianGroupStructure {
  std::vector<BigInt> invariant_factors;
  std::size_t free_rank = 0;

  static AbelianGroupStructure trivial() { return {}; }

  static AbelianGroupStructure elementary(std::uint64_t p, std::size_t r) {
    return {std::vector<BigInt>(r, BigInt(p)), 0};
  }

  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }

  bool is_elementary_abelian(std::uint64_t p) const {
    return free_rank == 0 && std::all_of(invariant_factors.begin(), invariant_factors.end(), [p](const BigInt& d) { return d == p; });
  }

  /// Group order; requires a finite group.
  BigInt order() const {
    if (!is_finite()) throw std::logic_error("order of an infinite group");
    BigInt o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }

  std::size_t coordinate_count() const { return invariant_factors.size() + free_rank; }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    for (const auto& d : invariant_factors) s += (s.empty() ? "" : " x ") + ("Z/" + d.str());
    for (std::size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "" : " x ") + std::string("Z");
    return s;
  }

  friend bool operator==(const AbelianGroupStructure& a, const AbelianGroupStructure& b) {
    return a.invariant_factors == b.invariant_factors && a.free_rank == b.free_rank;
  }
};

/// Structure read off a Smith diagonal for a presentation with `generators` columns.
inline AbelianGroupStructure structure_from_smith(const MatrixZ& d, std::size_t generators) {
  AbelianGroupStructure s;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (d.at(i, i) == 0) continue;
    ++nonzero;
    if (d.at(i, i) != 1) s.invariant_factors.push_back(d.at(i, i));
  }
  s.free_rank = generators - nonzero;
  return s;
}

/// Z^generators / rowspan(relations).
inline AbelianGroupStructure cokernel_structure(const MatrixZ& relations, std::size_t generators) {
  if (relations.rows() == 0) return {{}, generators};
  if (relations.cols() != generators) throw MismatchError("cokernel_structure: relation length != generator count");
  return structure_from_smith(snf(relations).d, generators);
}

/// Row lattice membership via Hermite back-substitution.
inline bool lattice_contains(const MatrixZ& hermite_basis, std::vector<BigInt> v) {
  if (v.size() != hermite_basis.cols()) throw MismatchError("lattice_contains: dimension mismatch");
  std::size_t col = 0;
  for (std::size_t k = 0; k < hermite_basis.rows(); ++k) {
    while (col < v.size() && hermite_basis.at(k, col) == 0) {
      if (v[col] != 0) return false;
      ++col;
    }
    if (col == v.size()) break;
    const BigInt& piv = hermite_basis.at(k, col);
    if (v[col] % piv != 0) return false;
    BigInt q = v[col] / piv;
    for (std::size_t j = col; j < v.size(); ++j) v[j] -= q * hermite_basis.at(k, j);
    ++col;
  }
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

/// Hermite basis of rowspan(a) ∩ rowspan(b). Both inputs must have full row rank.
inline MatrixZ lattice_intersect(const MatrixZ& a, const MatrixZ& b) {
  if (a.cols() != b.cols()) throw MismatchError("lattice_intersect: ambient dimensions differ");
  if (hermite_decompose(a).rank != a.rows() || hermite_decompose(b).rank != b.rows())
    throw std::invalid_argument("lattice_intersect: generator matrix is rank deficient");
  // Left kernel of [a; -b]: u a = w b.
  MatrixZ stacked(0, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) stacked.append_row(a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto r = b.row(i);
    for (auto& x : r) x = -x;
    stacked.append_row(r);
  }
  HermiteDecomposition dec = hermite_decompose(stacked);
  MatrixZ gens(0, a.cols());
  for (std::size_t k = dec.rank; k < stacked.rows(); ++k) {
    std::vector<BigInt> point(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const BigInt& c = dec.u.at(k, i);
      if (c == 0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) point[j] += c * a.at(i, j);
    }
    gens.append_row(point);
  }
  return hnf(gens);
}

/// Hermite basis of rowspan(a) + rowspan(b).
inline MatrixZ lattice_sum(const MatrixZ& a, const MatrixZ& b) {
  if (a.cols() != b.cols()) throw MismatchError("lattice_sum: ambient dimensions differ");
  MatrixZ s = a;
  for (std::size_t i = 0; i < b.rows(); ++i) s.append_row(b.row(i));
  return hnf(s);
}

}  // namespace relk2
