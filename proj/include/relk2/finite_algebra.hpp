#pragma once

// Finite-dimensional commutative F_p-algebras given by structure constants,
// their ideals (as F_p-subspaces closed under multiplication) and quotients.

#include "relk2/linear_mod_p.hpp"

#include <memory>
#include <string>
#include <vector>

namespace relk2 {

using SparseModVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

class FiniteAlgebra {
 public:
  static constexpr std::size_t max_basis = 256;

  /// `table[i * n + j]` is the product of basis elements i and j. Basis
  /// element 0 must be the identity. `generators` generate the algebra
  /// multiplicatively; empty means "all basis elements".
  FiniteAlgebra(std::uint32_t p, std::vector<std::string> basis_names, std::vector<SparseModVec> table,
                std::vector<ModVec> generators = {})
      : p_(p), names_(std::move(basis_names)), table_(std::move(table)), generators_(std::move(generators)) {
    const std::size_t n = names_.size();
    if (!is_prime(p_)) throw std::invalid_argument("FiniteAlgebra: scalar modulus must be prime");
    if (n == 0) throw std::invalid_argument("FiniteAlgebra: empty basis");
    if (n > max_basis)
      throw BudgetError("FiniteAlgebra: basis size " + std::to_string(n) + " exceeds multiplication table limit " + std::to_string(max_basis));
    if (table_.size() != n * n) throw std::invalid_argument("FiniteAlgebra: table must have n^2 entries");
    for (auto& entry : table_) {
      for (auto& [idx, c] : entry) {
        if (idx >= n) throw std::invalid_argument("FiniteAlgebra: table index out of range");
        c %= p_;
      }
      std::erase_if(entry, [](const auto& e) { return e.second == 0; });
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = table_[i];
      if (e.size() != 1 || e[0].first != i || e[0].second != 1)
        throw std::invalid_argument("FiniteAlgebra: basis element 0 must be the identity");
    }
    if (generators_.empty())
      for (std::size_t i = 0; i < n; ++i) generators_.push_back(basis_vector(i));
    for (const auto& g : generators_)
      if (g.size() != n) throw std::invalid_argument("FiniteAlgebra: generator has wrong length");
  }

  std::uint32_t p() const { return p_; }
  std::size_t dim() const { return names_.size(); }
  const std::string& basis_name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const SparseModVec& basis_product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  const std::vector<ModVec>& generators() const { return generators_; }

  ModVec zero() const { return ModVec(dim(), 0); }
  ModVec one() const { return basis_vector(0); }
  ModVec basis_vector(std::size_t i) const {
    ModVec v(dim(), 0);
    v.at(i) = 1 % p_;
    return v;
  }

  ModVec add(const ModVec& a, const ModVec& b) const { return vec_add(check(a), check(b), p_); }
  ModVec sub(const ModVec& a, const ModVec& b) const { return vec_sub(check(a), check(b), p_); }
  ModVec scale(const ModVec& a, std::uint32_t s) const { return vec_scale(check(a), s, p_); }
  ModVec neg(const ModVec& a) const { return vec_sub(zero(), check(a), p_); }

  ModVec mul(const ModVec& a, const ModVec& b) const {
    check(a);
    check(b);
    const std::size_t n = dim();
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[j]) continue;
        std::uint64_t f = static_cast<std::uint64_t>(a[i]) * b[j] % p_;
        for (const auto& [k, c] : table_[i * n + j]) acc[k] = (acc[k] + f * c) % p_;
      }
    }
    return ModVec(acc.begin(), acc.end());
  }

  /// Multiplication-by-a as a dim x dim matrix acting on coordinate columns.
  MatrixModP multiplication_matrix(const ModVec& a) const {
    MatrixModP m(p_, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      ModVec col = mul(a, basis_vector(j));
      for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  bool is_unit(const ModVec& a) const { return rank(multiplication_matrix(a)) == dim(); }

  /// Same scalars, basis names and structure constants.
  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.p_ == b.p_ && a.names_ == b.names_ && a.table_ == b.table_;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (basis_product(i, j) != basis_product(j, i)) return false;
    return true;
  }

  std::string to_text(const ModVec& a) const {
    check(a);
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!a[i]) continue;
      if (!out.empty()) out += " + ";
      const std::string& name = names_[i];
      if (name == "1") out += std::to_string(a[i]);
      else if (a[i] == 1) out += name;
      else out += std::to_string(a[i]) + "*" + name;
    }
    return out.empty() ? "0" : out;
  }

 private:
  const ModVec& check(const ModVec& a) const {
    if (a.size() != dim()) throw MismatchError("algebra element has length " + std::to_string(a.size()) + ", expected " + std::to_string(dim()));
    return a;
  }

  std::uint32_t p_;
  std::vector<std::string> names_;
  std::vector<SparseModVec> table_;
  std::vector<ModVec> generators_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || (a && b && *a == *b); }

/// An ideal as an F_p-subspace. The echelon basis pivots on the highest
/// column so that the identity never becomes a pivot of a proper ideal.
class AlgebraIdeal {
 public:
  AlgebraIdeal(AlgebraPtr parent, EchelonBasis basis, std::vector<ModVec> generators)
      : parent_(std::move(parent)), basis_(std::move(basis)), generators_(std::move(generators)) {}

  const AlgebraPtr& parent() const { return parent_; }
  std::size_t dim() const { return basis_.rank(); }
  const std::vector<ModVec>& scalar_basis() const { return basis_.rows(); }
  const std::vector<ModVec>& generators() const { return generators_; }
  const EchelonBasis& echelon() const { return basis_; }

  bool contains(const ModVec& a) const { return basis_.contains(a); }
  bool is_whole_ring() const { return dim() == parent_->dim(); }

  /// Coordinates of a member relative to scalar_basis().
  ModVec coordinates(const ModVec& a) const {
    auto c = basis_.coordinates(a);
    if (!c) throw std::invalid_argument("element " + parent_->to_text(a) + " is not in the ideal");
    return *c;
  }

  ModVec element(const ModVec& coords) const {
    if (coords.size() != dim()) throw MismatchError("ideal coordinates have wrong length");
    ModVec v = parent_->zero();
    for (std::size_t k = 0; k < dim(); ++k)
      if (coords[k]) v = vec_add(v, vec_scale(basis_.rows()[k], coords[k], parent_->p()), parent_->p());
    return v;
  }

 private:
  AlgebraPtr parent_;
  EchelonBasis basis_;
  std::vector<ModVec> generators_;
};

/// Smallest ideal containing `gens`, by worklist closure under the algebra
/// generators. Deterministic: same inputs give the same basis.
inline AlgebraIdeal ideal_closure(const AlgebraPtr& alg, const std::vector<ModVec>& gens) {
  EchelonBasis basis(alg->p(), alg->dim(), PivotOrder::highest);
  std::vector<ModVec> queue;
  for (const auto& g : gens)
    if (basis.insert(g)) queue.push_back(g);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& a : alg->generators()) {
      ModVec prod = alg->mul(a, queue[head]);
      if (basis.insert(prod)) queue.push_back(std::move(prod));
    }
  }
  return AlgebraIdeal(alg, std::move(basis), gens);
}

/// Product ideal I * J.
inline AlgebraIdeal ideal_product(const AlgebraIdeal& a, const AlgebraIdeal& b) {
  if (!same_algebra(a.parent(), b.parent())) throw MismatchError("ideals live in different algebras");
  std::vector<ModVec> gens;
  for (const auto& x : a.scalar_basis())
    for (const auto& y : b.scalar_basis()) gens.push_back(a.parent()->mul(x, y));
  return ideal_closure(a.parent(), gens);
}

inline AlgebraIdeal ideal_sum(const AlgebraIdeal& a, const AlgebraIdeal& b) {
  if (!same_algebra(a.parent(), b.parent())) throw MismatchError("ideals live in different algebras");
  std::vector<ModVec> gens = a.scalar_basis();
  gens.insert(gens.end(), b.scalar_basis().begin(), b.scalar_basis().end());
  return ideal_closure(a.parent(), gens);
}

/// Quotient A / I with coset representatives on the non-pivot columns of I.
class QuotientAlgebra {
 public:
  QuotientAlgebra(AlgebraPtr parent, AlgebraIdeal ideal) : parent_(std::move(parent)), ideal_(std::move(ideal)) {
    if (!same_algebra(ideal_.parent(), parent_)) throw MismatchError("quotient_algebra: ideal belongs to another algebra");
    if (ideal_.is_whole_ring()) throw std::invalid_argument("quotient_algebra: ideal is the whole ring");
    reps_ = ideal_.echelon().free_columns();
    // Highest-column pivots keep the identity (column 0) as a representative.
    if (reps_.empty() || reps_.front() != 0) throw ArithmeticError("quotient_algebra: identity is not a coset representative");
    const std::size_t n = reps_.size();
    std::vector<std::string> names;
    for (auto c : reps_) names.push_back(parent_->basis_name(c));
    std::vector<SparseModVec> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ModVec prod = project(parent_->mul(parent_->basis_vector(reps_[i]), parent_->basis_vector(reps_[j])));
        for (std::uint32_t k = 0; k < n; ++k)
          if (prod[k]) table[i * n + j].emplace_back(k, prod[k]);
      }
    std::vector<ModVec> gens;
    for (const auto& g : parent_->generators()) gens.push_back(project(g));
    quotient_ = std::make_shared<const FiniteAlgebra>(parent_->p(), std::move(names), std::move(table), std::move(gens));
  }

  const AlgebraPtr& parent() const { return parent_; }
  const AlgebraPtr& algebra() const { return quotient_; }
  const AlgebraIdeal& ideal() const { return ideal_; }
  const std::vector<std::size_t>& representatives() const { return reps_; }

  ModVec project(const ModVec& a) const {
    ModVec r = ideal_.echelon().reduce(a);
    ModVec out(reps_.size());
    for (std::size_t k = 0; k < reps_.size(); ++k) out[k] = r[reps_[k]];
    return out;
  }

  ModVec lift(const ModVec& q) const {
    if (q.size() != reps_.size()) throw MismatchError("quotient element has wrong length");
    ModVec out = parent_->zero();
    for (std::size_t k = 0; k < reps_.size(); ++k) out[reps_[k]] = q[k];
    return out;
  }

  /// Image of an ideal of the parent.
  AlgebraIdeal project_ideal(const AlgebraIdeal& j) const {
    std::vector<ModVec> gens;
    for (const auto& v : j.scalar_basis()) gens.push_back(project(v));
    return ideal_closure(quotient_, gens);
  }

 private:
  AlgebraPtr parent_;
  AlgebraIdeal ideal_;
  std::vector<std::size_t> reps_;
  AlgebraPtr quotient_;
};

inline QuotientAlgebra quotient_algebra(const AlgebraPtr& alg, const AlgebraIdeal& ideal) { return QuotientAlgebra(alg, ideal); }

}  // namespace relk2
