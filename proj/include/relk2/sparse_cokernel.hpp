#pragma once

// Cokernel of a large, sparse integer relation stream.
//
// Relations with a unit coefficient eliminate a generator by substitution;
// what remains is handed to a dense Smith decomposition. A 64-bit fast path
// runs first and restarts on BigInt if any intermediate overflows.

#include "relk2/linear_z.hpp"

#include <limits>
#include <map>
#include <optional>
#include <type_traits>

namespace relk2 {

using SparseRelation = std::vector<std::pair<std::uint32_t, std::int64_t>>;

class IntegerOverflow : public std::overflow_error {
 public:
  IntegerOverflow() : std::overflow_error("64-bit overflow in sparse elimination") {}
};

namespace detail {

template <class Int>
Int checked_mul(const Int& a, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow();
    return r;
  } else {
    return a * b;
  }
}

template <class Int>
Int checked_add(const Int& a, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow();
    return r;
  } else {
    return a + b;
  }
}

template <class Int>
BigInt to_big(const Int& v) {
  return BigInt(v);
}

template <class Int>
class SparseEliminator {
 public:
  using Row = std::vector<std::pair<std::uint32_t, Int>>;

  explicit SparseEliminator(std::size_t generators)
      : generators_(generators), subst_(generators), resolved_at_(generators, 0), scratch_(generators), in_scratch_(generators, false) {}

  void add(const SparseRelation& rel) {
    Row r;
    r.reserve(rel.size());
    for (auto [c, v] : rel) r.emplace_back(c, Int(v));
    Row red = reduce(r);
    if (red.empty()) return;
    std::optional<std::size_t> unit;
    for (std::size_t k = 0; k < red.size(); ++k)
      if (red[k].second == 1 || red[k].second == -1) unit = k;
    if (!unit) {
      residual_.push_back(std::move(red));
      return;
    }
    const std::uint32_t c = red[*unit].first;
    const Int coef = red[*unit].second;
    // coef * e_c + rest = 0  =>  e_c = -coef * rest  (coef = +-1)
    Row expr;
    expr.reserve(red.size() - 1);
    for (std::size_t k = 0; k < red.size(); ++k)
      if (k != *unit) expr.emplace_back(red[k].first, checked_mul(Int(-coef), red[k].second));
    subst_[c] = std::move(expr);
    ++eliminations_;
    resolved_at_[c] = eliminations_;
  }

  /// Rewrites r in surviving generators only.
  Row reduce(const Row& r) {
    std::vector<std::uint32_t> touched;
    for (const auto& [c, v] : r) {
      if (subst_[c]) {
        for (const auto& [k, w] : resolved(c)) bump(k, checked_mul(v, w), touched);
      } else {
        bump(c, v, touched);
      }
    }
    Row out;
    std::sort(touched.begin(), touched.end());
    for (auto c : touched) {
      if (scratch_[c] != 0) out.emplace_back(c, scratch_[c]);
      scratch_[c] = 0;
      in_scratch_[c] = false;
    }
    return out;
  }

  bool eliminated(std::uint32_t c) const { return subst_[c].has_value(); }
  const std::vector<Row>& residual() const { return residual_; }
  std::size_t generators() const { return generators_; }

 private:
  void bump(std::uint32_t c, const Int& v, std::vector<std::uint32_t>& touched) {
    if (!in_scratch_[c]) {
      in_scratch_[c] = true;
      touched.push_back(c);
    }
    scratch_[c] = checked_add(scratch_[c], v);
  }

  // Substitution for c with every later elimination applied. Expressions
  // only mention generators eliminated after c, so the recursion is acyclic.
  const Row& resolved(std::uint32_t c) {
    Row& expr = *subst_[c];
    if (resolved_at_[c] == eliminations_) return expr;
    bool dirty = std::any_of(expr.begin(), expr.end(), [&](const auto& e) { return subst_[e.first].has_value(); });
    if (dirty) {
      std::map<std::uint32_t, Int> acc;
      for (const auto& [j, v] : expr) {
        if (subst_[j]) {
          for (const auto& [k, w] : resolved(j)) acc[k] = checked_add(acc[k], checked_mul(v, w));
        } else {
          acc[j] = checked_add(acc[j], v);
        }
      }
      Row fresh;
      for (auto& [k, w] : acc)
        if (w != 0) fresh.emplace_back(k, w);
      expr = std::move(fresh);
    }
    resolved_at_[c] = eliminations_;
    return expr;
  }

  std::size_t generators_;
  std::vector<std::optional<Row>> subst_;
  std::vector<std::size_t> resolved_at_;
  std::size_t eliminations_ = 0;
  std::vector<Int> scratch_;
  std::vector<bool> in_scratch_;
  std::vector<Row> residual_;
};

}  // namespace detail

/// Finitely generated abelian group presented by sparse relations, with
/// coordinates of arbitrary words in the invariant-factor decomposition.
class SparseCokernel {
 public:
  SparseCokernel(std::size_t generators, const std::vector<SparseRelation>& relations) : generators_(generators) {
    try {
      build<std::int64_t>(relations);
    } catch (const IntegerOverflow&) {
      used_bigint_ = true;
      build<BigInt>(relations);
    }
  }

  const AbelianGroupStructure& structure() const { return structure_; }
  std::size_t generators() const { return generators_; }
  std::size_t surviving_generators() const { return surviving_.size(); }
  bool used_bigint() const { return used_bigint_; }

  /// Coordinates of a word: one entry per invariant factor (reduced mod d_i)
  /// followed by one per free summand. The zero vector means identity.
  std::vector<BigInt> coordinates(const std::vector<std::pair<std::uint32_t, BigInt>>& word) const {
    std::vector<BigInt> dense(generators_);
    for (const auto& [c, v] : word) {
      if (c >= generators_) throw std::out_of_range("SparseCokernel: generator index out of range");
      dense[c] += v;
    }
    // final substitutions mention surviving generators only
    for (std::uint32_t c : eliminated_) {
      if (dense[c] == 0) continue;
      BigInt f = dense[c];
      dense[c] = 0;
      for (const auto& [j, v] : final_subst_[c]) dense[j] += f * v;
    }
    const std::size_t s = surviving_.size();
    std::vector<BigInt> y(s);
    for (std::size_t k = 0; k < s; ++k) {
      const BigInt& x = dense[surviving_[k]];
      if (x == 0) continue;
      for (std::size_t j = 0; j < s; ++j)
        if (smith_v_.at(k, j) != 0) y[j] += x * smith_v_.at(k, j);
    }
    std::vector<BigInt> out;
    for (std::size_t j = 0; j < s; ++j)
      if (diagonal_[j] > 1) out.push_back(floor_mod(y[j], diagonal_[j]));
    for (std::size_t j = 0; j < s; ++j)
      if (diagonal_[j] == 0) out.push_back(y[j]);
    return out;
  }

 private:
  template <class Int>
  void build(const std::vector<SparseRelation>& relations) {
    detail::SparseEliminator<Int> elim(generators_);
    for (const auto& rel : relations) elim.add(rel);

    surviving_.clear();
    std::vector<std::int64_t> local_index(generators_, -1);
    for (std::uint32_t c = 0; c < generators_; ++c)
      if (!elim.eliminated(c)) {
        local_index[c] = static_cast<std::int64_t>(surviving_.size());
        surviving_.push_back(c);
      }

    final_subst_.assign(generators_, {});
    eliminated_.clear();
    for (std::uint32_t c = 0; c < generators_; ++c) {
      if (!elim.eliminated(c)) continue;
      typename detail::SparseEliminator<Int>::Row single{{c, Int(1)}};
      auto red = elim.reduce(single);
      for (auto& [j, v] : red) final_subst_[c].emplace_back(j, detail::to_big(v));
      eliminated_.push_back(c);
    }

    IntegerRowBasis lattice(surviving_.size());
    for (const auto& row : elim.residual()) {
      auto red = elim.reduce(row);
      if (red.empty()) continue;
      std::vector<BigInt> r(surviving_.size());
      for (auto& [j, v] : red) r[static_cast<std::size_t>(local_index[j])] = detail::to_big(v);
      lattice.insert(std::move(r));
    }
    MatrixZ dense = lattice.hermite();
    if (dense.rows() == 0) {
      smith_v_ = MatrixZ::identity(surviving_.size());
      diagonal_.assign(surviving_.size(), BigInt(0));
    } else {
      SmithDecomposition sd = snf(dense);
      smith_v_ = sd.v;
      diagonal_.assign(surviving_.size(), BigInt(0));
      for (std::size_t i = 0; i < std::min(sd.d.rows(), sd.d.cols()); ++i) diagonal_[i] = sd.d.at(i, i);
    }
    structure_ = {};
    for (const auto& d : diagonal_) {
      if (d == 0) ++structure_.free_rank;
      else if (d != 1) structure_.invariant_factors.push_back(d);
    }
  }

  std::size_t generators_;
  bool used_bigint_ = false;
  std::vector<std::uint32_t> surviving_;
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> final_subst_;
  std::vector<std::uint32_t> eliminated_;
  MatrixZ smith_v_;
  std::vector<BigInt> diagonal_;
  AbelianGroupStructure structure_;
};

}  // namespace relk2
