#pragma once

// Modules over a finite algebra, realized at the scalar level: an ambient
// F_p-space with an action of each basis element, modulo a submodule W.

#include "relk2/finite_algebra.hpp"
#include "relk2/linear_z.hpp"

#include <functional>

namespace relk2 {

class AlgebraModule {
 public:
  /// `action[i][j]` is (basis element i) * (ambient basis vector j).
  /// `relations` is a list of ambient vectors whose span must already be
  /// closed under the action; `expand_relations` closes it.
  AlgebraModule(AlgebraPtr alg, std::size_t ambient_dim, std::vector<std::vector<SparseModVec>> action,
                const std::vector<ModVec>& relations, std::vector<std::string> ambient_names, bool expand_relations = true)
      : alg_(std::move(alg)),
        ambient_dim_(ambient_dim),
        action_(std::move(action)),
        names_(std::move(ambient_names)),
        w_(alg_->p(), ambient_dim) {
    if (action_.size() != alg_->dim()) throw MismatchError("AlgebraModule: action needs one entry per basis element");
    for (const auto& a : action_)
      if (a.size() != ambient_dim_) throw MismatchError("AlgebraModule: action entry has wrong length");
    if (names_.size() != ambient_dim_) throw MismatchError("AlgebraModule: ambient names have wrong length");
    for (const auto& r : relations) {
      if (expand_relations) {
        for (std::size_t i = 0; i < alg_->dim(); ++i) add_scalar_relation(act_basis(i, r));
      } else {
        add_scalar_relation(r);
      }
    }
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<std::string>& ambient_names() const { return names_; }
  const EchelonBasis& relations() const { return w_; }
  std::size_t dim() const { return ambient_dim_ - w_.rank(); }
  AbelianGroupStructure structure() const { return AbelianGroupStructure::elementary(alg_->p(), dim()); }

  /// One row per (relation, algebra basis element) pair, as supplied.
  const MatrixModP& scalar_expansion() const { return expansion_; }

  ModVec act_basis(std::size_t i, const ModVec& v) const {
    check(v);
    const std::uint32_t p = alg_->p();
    std::vector<std::uint64_t> acc(ambient_dim_, 0);
    for (std::size_t j = 0; j < ambient_dim_; ++j) {
      if (!v[j]) continue;
      for (const auto& [k, c] : action_[i][j]) acc[k] = (acc[k] + static_cast<std::uint64_t>(v[j]) * c) % p;
    }
    return ModVec(acc.begin(), acc.end());
  }

  ModVec act(const ModVec& a, const ModVec& v) const {
    if (a.size() != alg_->dim()) throw MismatchError("AlgebraModule: scalar from another algebra");
    ModVec out(ambient_dim_, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) out = vec_add(out, vec_scale(act_basis(i, v), a[i], alg_->p()), alg_->p());
    return out;
  }

  ModVec coordinates(const ModVec& v) const { return w_.quotient_coordinates(check(v)); }
  bool is_zero_class(const ModVec& v) const { return w_.contains(check(v)); }
  std::vector<std::size_t> basis_columns() const { return w_.free_columns(); }

  ModVec unit_vector(std::size_t j) const {
    ModVec v(ambient_dim_, 0);
    v.at(j) = 1;
    return v;
  }

  /// True when W is closed under the action, i.e. the quotient is a module.
  bool is_submodule_closed() const {
    for (const auto& r : w_.rows())
      for (std::size_t i = 0; i < alg_->dim(); ++i)
        if (!w_.contains(act_basis(i, r))) return false;
    return true;
  }

  const std::vector<SparseModVec>& action_of(std::size_t i) const { return action_[i]; }

 private:
  const ModVec& check(const ModVec& v) const {
    if (v.size() != ambient_dim_) throw MismatchError("AlgebraModule: vector has wrong length");
    return v;
  }

  void add_scalar_relation(const ModVec& r) {
    if (expansion_.cols() != ambient_dim_) expansion_ = MatrixModP(alg_->p(), 0, ambient_dim_);
    expansion_.append_row(r);
    w_.insert(r);
  }

  AlgebraPtr alg_;
  std::size_t ambient_dim_;
  std::vector<std::vector<SparseModVec>> action_;
  std::vector<std::string> names_;
  EchelonBasis w_;
  MatrixModP expansion_{2, 0, 0};
};

namespace detail {

inline SparseModVec sparse_of(const ModVec& v) {
  SparseModVec out;
  for (std::uint32_t k = 0; k < v.size(); ++k)
    if (v[k]) out.emplace_back(k, v[k]);
  return out;
}

}  // namespace detail

/// A^rank modulo the submodule generated by `relation_rows` (each row has
/// `rank` algebra-element entries). Ambient index = generator * dim + basis.
inline AlgebraModule free_module(const AlgebraPtr& alg, std::size_t rank, const std::vector<std::vector<ModVec>>& relation_rows,
                                 const std::vector<std::string>& generator_names) {
  const std::size_t n = alg->dim();
  if (generator_names.size() != rank) throw MismatchError("free_module: need one name per generator");
  std::vector<std::vector<SparseModVec>> action(n, std::vector<SparseModVec>(rank * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t g = 0; g < rank; ++g)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : alg->basis_product(i, j))
          action[i][g * n + j].emplace_back(static_cast<std::uint32_t>(g * n + k), c);
  std::vector<ModVec> rels;
  for (const auto& row : relation_rows) {
    if (row.size() != rank) throw MismatchError("free_module: relation row has wrong length");
    ModVec v(rank * n, 0);
    for (std::size_t g = 0; g < rank; ++g)
      for (std::size_t j = 0; j < n; ++j) v[g * n + j] = row[g].at(j);
    rels.push_back(std::move(v));
  }
  std::vector<std::string> names;
  for (std::size_t g = 0; g < rank; ++g)
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& b = alg->basis_name(j);
      names.push_back(b == "1" ? generator_names[g] : b + "*" + generator_names[g]);
    }
  return AlgebraModule(alg, rank * n, std::move(action), rels, std::move(names));
}

/// The ideal as a module over its parent, on the ideal's scalar basis.
inline AlgebraModule ideal_module(const AlgebraIdeal& ideal) {
  const auto& alg = ideal.parent();
  const std::size_t k = ideal.dim();
  std::vector<std::vector<SparseModVec>> action(alg->dim(), std::vector<SparseModVec>(k));
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      action[i][j] = detail::sparse_of(ideal.coordinates(alg->mul(alg->basis_vector(i), ideal.scalar_basis()[j])));
  std::vector<std::string> names;
  for (const auto& v : ideal.scalar_basis()) names.push_back(alg->to_text(v));
  return AlgebraModule(alg, k, std::move(action), {}, std::move(names));
}

/// Views M as a module over alg/K; requires K * M = 0.
inline AlgebraModule restrict_to_quotient(const AlgebraModule& m, const QuotientAlgebra& q) {
  if (!same_algebra(m.algebra(), q.parent())) throw MismatchError("restrict_to_quotient: module is over another algebra");
  for (const auto& k : q.ideal().scalar_basis())
    for (std::size_t j = 0; j < m.ambient_dim(); ++j)
      if (!m.is_zero_class(m.act(k, m.unit_vector(j))))
        throw HypothesisError("restrict_to_quotient: the ideal does not annihilate the module");
  const auto& qa = q.algebra();
  std::vector<std::vector<SparseModVec>> action;
  for (std::size_t i = 0; i < qa->dim(); ++i) action.push_back(m.action_of(q.representatives()[i]));
  return AlgebraModule(qa, m.ambient_dim(), std::move(action), m.relations().rows(), m.ambient_names(), false);
}

/// M / K M as a module over the same algebra.
inline AlgebraModule quotient_by_ideal_action(const AlgebraModule& m, const AlgebraIdeal& k) {
  if (!same_algebra(m.algebra(), k.parent())) throw MismatchError("quotient_by_ideal_action: ideal of another algebra");
  std::vector<ModVec> rels = m.relations().rows();
  for (const auto& a : k.scalar_basis())
    for (std::size_t j = 0; j < m.ambient_dim(); ++j) rels.push_back(m.act(a, m.unit_vector(j)));
  std::vector<std::vector<SparseModVec>> action;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) action.push_back(m.action_of(i));
  return AlgebraModule(m.algebra(), m.ambient_dim(), std::move(action), rels, m.ambient_names(), false);
}

/// M (x)_A N at the scalar level.
class TensorProduct {
 public:
  TensorProduct(const AlgebraModule& m, const AlgebraModule& n)
      : p_(m.algebra()->p()), dm_(m.ambient_dim()), dn_(n.ambient_dim()), w_(p_, dm_ * dn_) {
    if (!same_algebra(m.algebra(), n.algebra())) throw MismatchError("tensor_over_algebra: modules are over different algebras");
    for (const auto& r : m.relations().rows())
      for (std::size_t j = 0; j < dn_; ++j) w_.insert(outer(r, n.unit_vector(j)));
    for (const auto& r : n.relations().rows())
      for (std::size_t i = 0; i < dm_; ++i) w_.insert(outer(m.unit_vector(i), r));
    // Balancing against multiplicative generators suffices: the balanced
    // pairs form a subalgebra containing them.
    for (const auto& a : m.algebra()->generators())
      for (std::size_t i = 0; i < dm_; ++i) {
        ModVec au = m.act(a, m.unit_vector(i));
        for (std::size_t j = 0; j < dn_; ++j) {
          ModVec av = n.act(a, n.unit_vector(j));
          w_.insert(vec_sub(outer(au, n.unit_vector(j)), outer(m.unit_vector(i), av), p_));
        }
      }
    for (auto c : w_.free_columns()) {
      basis_.emplace_back(c / dn_, c % dn_);
      basis_names_.push_back(m.ambient_names()[c / dn_] + " (x) " + n.ambient_names()[c % dn_]);
    }
  }

  std::size_t dim() const { return basis_.size(); }
  AbelianGroupStructure structure() const { return AbelianGroupStructure::elementary(p_, dim()); }
  /// Pairs (i, j) of ambient indices whose pure tensors form a basis.
  const std::vector<std::pair<std::size_t, std::size_t>>& basis() const { return basis_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  std::size_t ambient_dim() const { return dm_ * dn_; }

  ModVec outer(const ModVec& u, const ModVec& v) const {
    if (u.size() != dm_ || v.size() != dn_) throw MismatchError("TensorProduct: factor has wrong length");
    ModVec out(dm_ * dn_, 0);
    for (std::size_t i = 0; i < dm_; ++i) {
      if (!u[i]) continue;
      for (std::size_t j = 0; j < dn_; ++j)
        if (v[j]) out[i * dn_ + j] = mod_mul(u[i], v[j], p_);
    }
    return out;
  }

  ModVec coordinates(const ModVec& t) const { return w_.quotient_coordinates(t); }
  bool is_zero(const ModVec& t) const { return w_.contains(t); }

 private:
  std::uint32_t p_;
  std::size_t dm_, dn_;
  EchelonBasis w_;
  std::vector<std::pair<std::size_t, std::size_t>> basis_;
  std::vector<std::string> basis_names_;
};

inline TensorProduct tensor_over_algebra(const AlgebraModule& m, const AlgebraModule& n) { return TensorProduct(m, n); }

/// True iff a bilinear map vanishes on every pair of basis vectors, which by
/// bilinearity means it vanishes identically. `vanishes(u, v)` tests one pair.
template <class Left, class Right, class Pred>
bool bilinear_map_trivial(const std::vector<Left>& left_basis, const std::vector<Right>& right_basis, Pred&& vanishes) {
  for (const auto& u : left_basis)
    for (const auto& v : right_basis)
      if (!vanishes(u, v)) return false;
  return true;
}

}  // namespace relk2
