#pragma once

// Presented F_p-algebras F_p[x_1..x_v]/(f_1..f_s), their Kahler differentials
// through the Jacobian presentation, and an independent check of the
// conormal sequence via the diagonal ideal of T (x) T.

#include "relk2/group_ring.hpp"
#include "relk2/module.hpp"

#include <functional>
#include <map>

namespace relk2 {

/// Sparse multivariate polynomial over F_p.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;

  Polynomial(std::uint32_t p, std::size_t vars) : p_(p), vars_(vars) {
    if (!is_prime(p)) throw std::invalid_argument("Polynomial: modulus must be prime");
  }

  static Polynomial constant(std::uint32_t p, std::size_t vars, std::int64_t c) {
    Polynomial f(p, vars);
    f.add_term(Exponents(vars, 0), reduce_signed(c, p));
    return f;
  }

  static Polynomial monomial(std::uint32_t p, Exponents e, std::int64_t c = 1) {
    Polynomial f(p, e.size());
    f.add_term(std::move(e), reduce_signed(c, p));
    return f;
  }

  static Polynomial variable(std::uint32_t p, std::size_t vars, std::size_t i, std::uint32_t power = 1) {
    Exponents e(vars, 0);
    e.at(i) = power;
    return monomial(p, std::move(e));
  }

  std::uint32_t p() const { return p_; }
  std::size_t variables() const { return vars_; }
  const std::map<Exponents, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, std::uint32_t c) {
    if (e.size() != vars_) throw MismatchError("Polynomial: exponent vector has wrong length");
    c %= p_;
    if (!c) return;
    auto [it, fresh] = terms_.try_emplace(std::move(e), c);
    if (!fresh) {
      it->second = mod_add(it->second, c, p_);
      if (!it->second) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    check(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    check(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, p_ - c);
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check(o);
    Polynomial r(p_, vars_);
    for (const auto& [e, c] : terms_)
      for (const auto& [f, d] : o.terms_) {
        Exponents s(vars_);
        for (std::size_t i = 0; i < vars_; ++i) s[i] = e[i] + f[i];
        r.add_term(std::move(s), mod_mul(c, d, p_));
      }
    return r;
  }

  Polynomial derivative(std::size_t i) const {
    Polynomial r(p_, vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(i) == 0) continue;
      Exponents s = e;
      --s[i];
      r.add_term(std::move(s), mod_mul(c, e[i] % p_, p_));
    }
    return r;
  }

  /// Variables that occur with positive exponent.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_; ++i)
      for (const auto& [e, c] : terms_)
        if (e[i]) {
          out.push_back(i);
          break;
        }
    return out;
  }

  /// Coefficients low to high, for a polynomial in variable i alone.
  std::vector<std::uint32_t> univariate(std::size_t i) const {
    std::vector<std::uint32_t> out;
    for (const auto& [e, c] : terms_) {
      for (std::size_t k = 0; k < vars_; ++k)
        if (k != i && e[k]) throw std::invalid_argument("Polynomial: not univariate");
      if (out.size() <= e[i]) out.resize(e[i] + 1, 0);
      out[e[i]] = c;
    }
    return out;
  }

  std::string to_text(const std::vector<std::string>& names) const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < vars_; ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(i);
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
      }
      if (!out.empty()) out += " + ";
      if (mono.empty()) out += std::to_string(c);
      else if (c == 1) out += mono;
      else out += std::to_string(c) + "*" + mono;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.p_ == b.p_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.p_ != p_ || o.vars_ != vars_) throw MismatchError("Polynomial: incompatible operands");
  }

  std::uint32_t p_;
  std::size_t vars_;
  std::map<Exponents, std::uint32_t> terms_;
};

namespace detail {

using UniPoly = std::vector<std::uint32_t>;

inline void trim_poly(UniPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of f modulo monic m.
inline UniPoly poly_mod(UniPoly f, const UniPoly& m, std::uint32_t p) {
  trim_poly(f);
  const std::size_t dm = m.size() - 1;
  while (f.size() > dm) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) f[shift + k] = mod_sub(f[shift + k], mod_mul(lead, m[k], p), p);
    trim_poly(f);
  }
  return f;
}

inline UniPoly make_monic(UniPoly f, std::uint32_t p) {
  trim_poly(f);
  if (f.empty()) return f;
  std::uint32_t inv = mod_inverse(f.back(), p);
  for (auto& c : f) c = mod_mul(c, inv, p);
  return f;
}

inline UniPoly poly_gcd(UniPoly a, UniPoly b, std::uint32_t p) {
  trim_poly(a);
  trim_poly(b);
  while (!b.empty()) {
    UniPoly r = poly_mod(a, make_monic(b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

inline UniPoly poly_mul_mod(const UniPoly& a, const UniPoly& b, const UniPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod_add(r[i + j], mod_mul(a[i], b[j], p), p);
  return poly_mod(std::move(r), m, p);
}

}  // namespace detail

/// Generators and relations; the relations need not define a finite algebra.
struct Presentation {
  std::uint32_t p = 2;
  std::vector<std::string> variables;
  std::vector<Polynomial> relations;
};

/// A presentation whose relations are univariate, one or more per variable,
/// so the quotient is a tensor product of F_p[x_i]/(m_i) and the monomials
/// x^e with e_i < deg m_i form a basis.
class PresentedAlgebra {
 public:
  explicit PresentedAlgebra(Presentation pres) : pres_(std::move(pres)) {
    const std::uint32_t p = pres_.p;
    const std::size_t v = pres_.variables.size();
    if (v == 0) throw std::invalid_argument("PresentedAlgebra: no variables");
    std::vector<std::optional<detail::UniPoly>> moduli(v);
    for (const auto& f : pres_.relations) {
      if (f.p() != p || f.variables() != v) throw MismatchError("PresentedAlgebra: relation over another polynomial ring");
      auto sup = f.support();
      if (sup.size() > 1)
        throw ScopeError("PresentedAlgebra: relation " + f.to_text(pres_.variables) + " mixes variables; only univariate relations are supported");
      if (sup.empty()) {
        if (!f.is_zero()) throw std::invalid_argument("PresentedAlgebra: a nonzero constant relation gives the zero ring");
        continue;
      }
      const std::size_t i = sup.front();
      auto u = f.univariate(i);
      moduli[i] = moduli[i] ? detail::poly_gcd(*moduli[i], u, p) : detail::make_monic(u, p);
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < v; ++i) {
      if (!moduli[i])
        throw ScopeError("PresentedAlgebra: variable " + pres_.variables[i] + " has no relation; the quotient is infinite-dimensional");
      if (moduli[i]->size() <= 1) throw std::invalid_argument("PresentedAlgebra: relations generate the unit ideal");
      moduli_.push_back(*moduli[i]);
      degrees_.push_back(moduli_.back().size() - 1);
      total *= degrees_.back();
      if (total > FiniteAlgebra::max_basis)
        throw BudgetError("PresentedAlgebra: quotient dimension exceeds " + std::to_string(FiniteAlgebra::max_basis));
    }
    strides_.assign(v, 1);
    for (std::size_t i = v - 1; i-- > 0;) strides_[i] = strides_[i + 1] * degrees_[i + 1];
    build_algebra(total);
  }

  PresentedAlgebra(std::uint32_t p, std::vector<std::string> variables, std::vector<Polynomial> relations)
      : PresentedAlgebra(Presentation{p, std::move(variables), std::move(relations)}) {}

  /// F_p[G] as F_p[g_1..g_r]/(g_i^{p^{n_i}} - 1).
  static PresentedAlgebra group_ring(const GroupSpec& spec) {
    const std::uint32_t p = static_cast<std::uint32_t>(spec.p());
    const std::size_t r = spec.rank();
    Presentation pres{p, {}, {}};
    for (std::size_t i = 0; i < r; ++i) {
      pres.variables.push_back("g" + std::to_string(i + 1));
      pres.relations.push_back(Polynomial::variable(p, r, i, static_cast<std::uint32_t>(spec.cyclic_order(i))) - Polynomial::constant(p, r, 1));
    }
    return PresentedAlgebra(std::move(pres));
  }

  std::uint32_t p() const { return pres_.p; }
  const Presentation& presentation() const { return pres_; }
  const std::vector<std::string>& variables() const { return pres_.variables; }
  const std::vector<Polynomial>& relations() const { return pres_.relations; }
  const std::vector<std::size_t>& degrees() const { return degrees_; }
  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t dim() const { return alg_->dim(); }

  std::vector<std::size_t> exponents_of(std::size_t index) const {
    std::vector<std::size_t> e(degrees_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = (index / strides_[i]) % degrees_[i];
    return e;
  }

  ModVec variable(std::size_t i) const { return normal_form(Polynomial::variable(p(), variables().size(), i)); }

  ModVec normal_form(const Polynomial& f) const {
    if (f.p() != p() || f.variables() != variables().size()) throw MismatchError("normal_form: polynomial over another ring");
    ModVec out = alg_->zero();
    for (const auto& [e, c] : f.terms()) out = vec_add(out, vec_scale(normal_form_raw(e, dim()), c, p()), p());
    return out;
  }

  /// d(a) with one coefficient per dx_i: the dx_i-coefficient of x^e is
  /// e_i * x^{e - delta_i}, extended linearly.
  std::vector<ModVec> d(const ModVec& a) const {
    if (a.size() != dim()) throw MismatchError("d: element of another algebra");
    std::vector<ModVec> out(variables().size(), alg_->zero());
    for (std::size_t idx = 0; idx < dim(); ++idx) {
      if (!a[idx]) continue;
      auto e = exponents_of(idx);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        std::uint32_t c = mod_mul(a[idx], static_cast<std::uint32_t>(e[i] % p()), p());
        std::size_t target = idx - strides_[i];
        out[i][target] = mod_add(out[i][target], c, p());
      }
    }
    return out;
  }

  /// Rows (df_j/dx_1, ..., df_j/dx_v) reduced into the quotient.
  std::vector<std::vector<ModVec>> jacobian() const {
    std::vector<std::vector<ModVec>> rows;
    for (const auto& f : relations()) {
      std::vector<ModVec> row;
      for (std::size_t i = 0; i < variables().size(); ++i) row.push_back(normal_form(f.derivative(i)));
      rows.push_back(std::move(row));
    }
    return rows;
  }

 private:
  detail::UniPoly power_remainder(std::size_t i, std::uint32_t e) const {
    const auto& cache = power_cache_[i];
    if (e < cache.size()) return cache[e];
    detail::UniPoly result = cache[0], base = cache[1];
    for (; e; e >>= 1) {
      if (e & 1) result = detail::poly_mul_mod(result, base, moduli_[i], p());
      base = detail::poly_mul_mod(base, base, moduli_[i], p());
    }
    return result;
  }

  void build_algebra(std::size_t n) {
    power_cache_.assign(degrees_.size(), {});
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      auto& cache = power_cache_[i];
      cache.push_back(detail::poly_mod({1}, moduli_[i], p()));
      while (cache.size() < 2 * degrees_[i] + 1) cache.push_back(detail::poly_mul_mod(cache.back(), {0, 1}, moduli_[i], p()));
    }
    std::vector<std::string> names;
    for (std::size_t idx = 0; idx < n; ++idx) {
      auto e = exponents_of(idx);
      std::string s;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += variables()[i];
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
      }
      names.push_back(s.empty() ? "1" : s);
    }
    const std::size_t v = variables().size();
    std::vector<SparseModVec> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto ea = exponents_of(a), eb = exponents_of(b);
        Polynomial::Exponents s(v);
        for (std::size_t i = 0; i < v; ++i) s[i] = static_cast<std::uint32_t>(ea[i] + eb[i]);
        ModVec prod = normal_form_raw(s, n);
        for (std::uint32_t k = 0; k < n; ++k)
          if (prod[k]) table[a * n + b].emplace_back(k, prod[k]);
      }
    std::vector<ModVec> gens;
    for (std::size_t i = 0; i < v; ++i) {
      ModVec x(n, 0);
      auto rem = power_remainder(i, 1);
      for (std::size_t k = 0; k < rem.size(); ++k) x[k * strides_[i]] = rem[k];
      gens.push_back(std::move(x));
    }
    alg_ = std::make_shared<const FiniteAlgebra>(p(), std::move(names), std::move(table), std::move(gens));
  }

  ModVec normal_form_raw(const Polynomial::Exponents& e, std::size_t n) const {
    std::vector<std::pair<std::size_t, std::uint32_t>> acc{{0, 1}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      detail::UniPoly rem = power_remainder(i, e[i]);
      std::vector<std::pair<std::size_t, std::uint32_t>> next;
      for (const auto& [idx, a] : acc)
        for (std::size_t k = 0; k < rem.size(); ++k)
          if (rem[k]) next.emplace_back(idx + k * strides_[i], mod_mul(a, rem[k], p()));
      acc = std::move(next);
    }
    ModVec out(n, 0);
    for (const auto& [idx, a] : acc) out[idx] = mod_add(out[idx], a, p());
    return out;
  }

  Presentation pres_;
  std::vector<detail::UniPoly> moduli_;
  std::vector<std::size_t> degrees_;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<detail::UniPoly>> power_cache_;
  AlgebraPtr alg_;
};

/// Coefficients of the differential on each generator dx_i.
using DiffForm = std::vector<ModVec>;

/// Omega of an algebra T, presented as T^v modulo the T-span of the rows.
struct DifferentialModule {
  AlgebraPtr algebra;
  std::vector<std::string> generators;
  std::vector<std::vector<ModVec>> relation_rows;
  AlgebraModule module;
  std::function<DiffForm(const ModVec&)> d;

  std::size_t rank() const { return generators.size(); }
  AbelianGroupStructure structure() const { return module.structure(); }

  bool relations_vanish() const {
    for (const auto& row : relation_rows)
      for (const auto& e : row)
        if (!is_zero(e)) return false;
    return true;
  }

  /// Free of rank v: dimension v * dim T.
  bool is_free() const { return module.dim() == rank() * algebra->dim(); }

  ModVec ambient(const DiffForm& w) const {
    if (w.size() != rank()) throw MismatchError("DiffForm has wrong length");
    const std::size_t n = algebra->dim();
    ModVec out(rank() * n, 0);
    for (std::size_t g = 0; g < rank(); ++g)
      for (std::size_t j = 0; j < n; ++j) out[g * n + j] = w[g].at(j);
    return out;
  }

  std::vector<std::pair<std::string, std::string>> to_pairs(const DiffForm& w) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t g = 0; g < rank(); ++g) out.emplace_back(generators[g], algebra->to_text(w.at(g)));
    return out;
  }
};

namespace detail {

inline std::vector<std::string> differential_names(const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back("d" + v);
  return out;
}

}  // namespace detail

/// Omega_T for T = S presented by the Jacobian of its relations.
inline DifferentialModule omega(const PresentedAlgebra& s) {
  auto names = detail::differential_names(s.variables());
  auto rows = s.jacobian();
  AlgebraModule m = free_module(s.algebra(), names.size(), rows, names);
  auto sp = std::make_shared<const PresentedAlgebra>(s);
  return DifferentialModule{s.algebra(), names, std::move(rows), std::move(m), [sp](const ModVec& a) { return sp->d(a); }};
}

/// Omega of S/K: the Jacobian of S together with d(K), over the quotient.
inline DifferentialModule omega(const PresentedAlgebra& s, const QuotientAlgebra& q) {
  if (!same_algebra(q.parent(), s.algebra())) throw MismatchError("omega: quotient of another algebra");
  auto names = detail::differential_names(s.variables());
  std::vector<std::vector<ModVec>> rows;
  for (const auto& row : s.jacobian()) {
    std::vector<ModVec> r;
    for (const auto& e : row) r.push_back(q.project(e));
    rows.push_back(std::move(r));
  }
  for (const auto& k : q.ideal().scalar_basis()) {
    std::vector<ModVec> r;
    for (const auto& e : s.d(k)) r.push_back(q.project(e));
    rows.push_back(std::move(r));
  }
  AlgebraModule m = free_module(q.algebra(), names.size(), rows, names);
  auto sp = std::make_shared<const PresentedAlgebra>(s);
  auto qp = std::make_shared<const QuotientAlgebra>(q);
  auto d = [sp, qp](const ModVec& a) {
    DiffForm w = sp->d(qp->lift(a));
    for (auto& e : w) e = qp->project(e);
    return w;
  };
  return DifferentialModule{q.algebra(), names, std::move(rows), std::move(m), d};
}

/// Omega of B/K from Omega_B: same generators, rows projected, plus d(K).
inline DifferentialModule omega(const DifferentialModule& base, const QuotientAlgebra& q) {
  if (!same_algebra(q.parent(), base.algebra)) throw MismatchError("omega: quotient of another algebra");
  std::vector<std::vector<ModVec>> rows;
  auto project_row = [&](const DiffForm& row) {
    std::vector<ModVec> r;
    for (const auto& e : row) r.push_back(q.project(e));
    rows.push_back(std::move(r));
  };
  for (const auto& row : base.relation_rows) project_row(row);
  for (const auto& k : q.ideal().scalar_basis()) project_row(base.d(k));
  AlgebraModule m = free_module(q.algebra(), base.rank(), rows, base.generators);
  auto qp = std::make_shared<const QuotientAlgebra>(q);
  auto d = [bd = base.d, qp](const ModVec& a) {
    DiffForm w = bd(qp->lift(a));
    for (auto& e : w) e = qp->project(e);
    return w;
  };
  return DifferentialModule{q.algebra(), base.generators, std::move(rows), std::move(m), d};
}

/// Omega of F_p[G]; the Jacobian rows must vanish, leaving a free module on
/// dg_1..dg_r.
inline DifferentialModule omega_group_ring(const GroupSpec& spec) {
  DifferentialModule w = omega(PresentedAlgebra::group_ring(spec));
  if (!w.relations_vanish() || !w.is_free())
    throw ArithmeticError("omega_group_ring: Jacobian rows of " + spec.name() + " do not vanish");
  return w;
}

/// Element of F_p[G] as an algebra vector (same monomial order).
inline ModVec to_algebra_vector(const RingElement& a) {
  if (a.modulus() != a.spec().p()) throw MismatchError("to_algebra_vector: coefficients must be mod p");
  ModVec v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint32_t>(a.coeffs()[i]);
  return v;
}

inline RingElement from_algebra_vector(const GroupSpec& spec, const ModVec& v) {
  std::vector<BigInt> c(v.begin(), v.end());
  return RingElement::from_coeffs(spec, spec.p(), std::move(c));
}

struct ConormalReport {
  std::size_t quotient_dim = 0;     // dim T
  std::size_t middle_dim = 0;       // dim T (x) Omega_S
  std::size_t image_d_dim = 0;      // dim of d(I/I^2) in the middle term
  std::size_t kernel_dpi_dim = 0;   // dim ker(D pi)
  std::size_t omega_dim = 0;        // dim I_D / I_D^2
  std::size_t image_dpi_dim = 0;
  bool d_composes_to_zero = false;  // D pi o d = 0
  bool exact_middle = false;
  bool surjective = false;
  bool ok() const { return d_composes_to_zero && exact_middle && surjective; }
};

/// Checks I/I^2 -> T (x) Omega_S -> Omega_T -> 0 for T = S/(ideal_gens).
/// Omega_T is computed independently as I_D/I_D^2 with I_D the kernel of
/// multiplication T (x)_{F_p} T -> T.
inline ConormalReport conormal_check(const Presentation& s, const std::vector<Polynomial>& ideal_gens) {
  Presentation tp = s;
  tp.relations.insert(tp.relations.end(), ideal_gens.begin(), ideal_gens.end());
  PresentedAlgebra t(tp);
  const auto& alg = t.algebra();
  const std::uint32_t p = t.p();
  const std::size_t n = t.dim(), v = t.variables().size();
  if (n > 32) throw BudgetError("conormal_check: dim T = " + std::to_string(n) + " exceeds 32");

  auto t_span = [&](const std::vector<Polynomial>& polys, EchelonBasis& into) {
    for (const auto& f : polys) {
      ModVec row(v * n, 0);
      for (std::size_t k = 0; k < v; ++k) {
        ModVec e = t.normal_form(f.derivative(k));
        for (std::size_t j = 0; j < n; ++j) row[k * n + j] = e[j];
      }
      for (std::size_t i = 0; i < n; ++i) {
        ModVec shifted(v * n, 0);
        for (std::size_t k = 0; k < v; ++k) {
          ModVec part(row.begin() + static_cast<std::ptrdiff_t>(k * n), row.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
          ModVec prod = alg->mul(alg->basis_vector(i), part);
          for (std::size_t j = 0; j < n; ++j) shifted[k * n + j] = prod[j];
        }
        into.insert(shifted);
      }
    }
  };
  EchelonBasis w_f(p, v * n), w_all(p, v * n);
  t_span(s.relations, w_f);
  t_span(s.relations, w_all);
  t_span(ideal_gens, w_all);

  // T (x) T with index i * n + j for b_i (x) b_j.
  auto tmul = [&](const ModVec& x, const ModVec& y) {
    std::vector<std::uint64_t> acc(n * n, 0);
    for (std::size_t a = 0; a < n * n; ++a) {
      if (!x[a]) continue;
      for (std::size_t b = 0; b < n * n; ++b) {
        if (!y[b]) continue;
        std::uint64_t f = static_cast<std::uint64_t>(x[a]) * y[b] % p;
        for (const auto& [s1, c1] : alg->basis_product(a / n, b / n))
          for (const auto& [s2, c2] : alg->basis_product(a % n, b % n))
            acc[s1 * n + s2] = (acc[s1 * n + s2] + f * c1 % p * c2) % p;
      }
    }
    return ModVec(acc.begin(), acc.end());
  };
  auto pure = [&](const ModVec& a, const ModVec& b) {
    ModVec out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = mod_mul(a[i], b[j], p);
    return out;
  };
  std::vector<ModVec> delta;
  for (std::size_t k = 0; k < v; ++k) {
    ModVec x = t.variable(k);
    delta.push_back(vec_sub(pure(alg->one(), x), pure(x, alg->one()), p));
  }

  EchelonBasis i_delta(p, n * n), i_delta_sq(p, n * n);
  for (std::size_t a = 0; a < n * n; ++a) {
    ModVec unit(n * n, 0);
    unit[a] = 1;
    for (std::size_t k = 0; k < v; ++k) {
      ModVec ud = tmul(unit, delta[k]);
      i_delta.insert(ud);
      for (std::size_t l = 0; l < v; ++l) i_delta_sq.insert(tmul(ud, delta[l]));
    }
  }
  if (i_delta.rank() != n * n - n) throw ArithmeticError("conormal_check: diagonal ideal has unexpected dimension");

  // D pi (b_i dx_k) = (b_i (x) 1) delta_k, modulo I_D^2.
  EchelonBasis image = i_delta_sq;
  std::vector<ModVec> dpi_columns;
  for (std::size_t k = 0; k < v; ++k)
    for (std::size_t i = 0; i < n; ++i) dpi_columns.push_back(tmul(pure(alg->basis_vector(i), alg->one()), delta[k]));
  for (const auto& c : dpi_columns) image.insert(c);

  ConormalReport rep;
  rep.quotient_dim = n;
  rep.middle_dim = v * n - w_f.rank();
  rep.image_d_dim = w_all.rank() - w_f.rank();
  rep.omega_dim = i_delta.rank() - i_delta_sq.rank();
  rep.image_dpi_dim = image.rank() - i_delta_sq.rank();
  rep.kernel_dpi_dim = v * n - rep.image_dpi_dim - w_f.rank();
  rep.surjective = rep.image_dpi_dim == rep.omega_dim;

  auto dpi = [&](const ModVec& row) {
    ModVec out(n * n, 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c]) out = vec_add(out, vec_scale(dpi_columns[c], row[c], p), p);
    return out;
  };
  rep.d_composes_to_zero = std::all_of(w_all.rows().begin(), w_all.rows().end(), [&](const ModVec& r) { return i_delta_sq.contains(dpi(r)); });
  // ker(D pi on T^v) has dimension v*n - rank; it contains W_all, so equal dimensions mean equality.
  rep.exact_middle = rep.d_composes_to_zero && (v * n - rep.image_dpi_dim == w_all.rank());
  return rep;
}

}  // namespace relk2
