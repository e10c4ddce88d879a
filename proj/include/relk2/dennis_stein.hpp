#pragma once

// Dennis-Stein symbols <a,b> for a square-zero ideal I of a finite ring R.
//
// Full mode enumerates every symbol and every DS1-DS3 instance over the
// enumerated ring. Reduced mode works with basis(R) x basis(I) and bilinear
// coordinates over F_p; it is only trusted where it matches full mode.

#include "relk2/kahler.hpp"
#include "relk2/sparse_cokernel.hpp"

#include <cstdlib>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace relk2 {

/// A finite commutative ring given by complete addition and multiplication
/// tables on element indices.
class EnumeratedRing {
 public:
  static constexpr std::size_t max_size = 4096;

  EnumeratedRing(std::size_t size, std::vector<std::uint32_t> add_table, std::vector<std::uint32_t> mul_table, std::uint32_t zero,
                 std::uint32_t one, std::function<std::string(std::uint32_t)> describe)
      : n_(size), add_(std::move(add_table)), mul_(std::move(mul_table)), zero_(zero), one_(one), describe_(std::move(describe)) {
    if (add_.size() != n_ * n_ || mul_.size() != n_ * n_) throw std::invalid_argument("EnumeratedRing: tables must be size^2");
    neg_.assign(n_, 0);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        if (add(a, b) == zero_) {
          neg_[a] = b;
          break;
        }
  }

  /// Elements of an F_p-algebra, indexed by base-p digits (basis 0 lowest).
  static EnumeratedRing from_algebra(const AlgebraPtr& alg) {
    const std::uint32_t p = alg->p();
    std::size_t n = 1;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
      n *= p;
      if (n > max_size) throw BudgetError("EnumeratedRing: algebra has more than " + std::to_string(max_size) + " elements");
    }
    std::vector<ModVec> elems(n);
    for (std::size_t x = 0; x < n; ++x) elems[x] = digits(x, p, alg->dim());
    std::vector<std::uint32_t> add(n * n), mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        add[a * n + b] = add[b * n + a] = static_cast<std::uint32_t>(index(alg->add(elems[a], elems[b]), p));
        mul[a * n + b] = mul[b * n + a] = static_cast<std::uint32_t>(index(alg->mul(elems[a], elems[b]), p));
      }
    EnumeratedRing r(n, std::move(add), std::move(mul), 0, static_cast<std::uint32_t>(index(alg->one(), p)),
                     [alg, p](std::uint32_t x) { return alg->to_text(digits(x, p, alg->dim())); });
    r.alg_ = alg;
    return r;
  }

  static ModVec digits(std::size_t x, std::uint32_t p, std::size_t dim) {
    ModVec v(dim);
    for (std::size_t i = 0; i < dim; ++i, x /= p) v[i] = static_cast<std::uint32_t>(x % p);
    return v;
  }

  static std::size_t index(const ModVec& v, std::uint32_t p) {
    std::size_t x = 0;
    for (std::size_t i = v.size(); i-- > 0;) x = x * p + v[i];
    return x;
  }

  std::size_t size() const { return n_; }
  std::uint32_t zero() const { return zero_; }
  std::uint32_t one() const { return one_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * n_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * n_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::string describe(std::uint32_t a) const { return describe_(a); }

  bool is_unit(std::uint32_t a) const {
    for (std::uint32_t b = 0; b < n_; ++b)
      if (mul(a, b) == one_) return true;
    return false;
  }

  /// The algebra this ring enumerates, if any.
  const AlgebraPtr& algebra() const { return alg_; }
  std::uint32_t index_of(const ModVec& v) const {
    if (!alg_) throw std::logic_error("EnumeratedRing: not backed by an algebra");
    if (v.size() != alg_->dim()) throw MismatchError("EnumeratedRing: element of another algebra");
    return static_cast<std::uint32_t>(index(v, alg_->p()));
  }
  ModVec element(std::uint32_t x) const {
    if (!alg_) throw std::logic_error("EnumeratedRing: not backed by an algebra");
    return digits(x, alg_->p(), alg_->dim());
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> add_, mul_, neg_;
  std::uint32_t zero_, one_;
  std::function<std::string(std::uint32_t)> describe_;
  AlgebraPtr alg_;
};

/// Oracle pair budget: RELK2_BUDGET_PAIRS if set, else 4096.
inline std::size_t default_budget_pairs() {
  if (const char* env = std::getenv("RELK2_BUDGET_PAIRS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

enum class RelationKind { ds1, ds2, ds3 };

/// One factor <a,b>^sign of a symbol word, on ring element indices.
struct IndexFactor {
  std::uint32_t a = 0, b = 0;
  int sign = 1;
};

/// D(R, I) from every DS1-DS3 instance. Stored generators are <a,b> with
/// b in I; <b,a> with b in I, a outside I is the inverse of <a,b> (DS1).
class FullPresentation {
 public:
  FullPresentation(const EnumeratedRing& ring, std::vector<std::uint32_t> ideal, std::size_t budget_pairs)
      : ring_(&ring), ideal_(std::move(ideal)), pos_(ring.size(), -1) {
    std::sort(ideal_.begin(), ideal_.end());
    ideal_.erase(std::unique(ideal_.begin(), ideal_.end()), ideal_.end());
    for (std::size_t k = 0; k < ideal_.size(); ++k) pos_.at(ideal_[k]) = static_cast<std::int64_t>(k);
    const std::size_t pairs = ring.size() * ideal_.size();
    if (pairs > budget_pairs)
      throw BudgetError("full presentation needs |R|*|I| = " + std::to_string(pairs) + " generator pairs, budget is " + std::to_string(budget_pairs));
    if (pos_[ring.zero()] < 0) throw std::invalid_argument("FullPresentation: ideal must contain 0");
    for (auto x : ideal_)
      for (auto y : ideal_)
        if (ring.mul(x, y) != ring.zero()) throw HypothesisError("FullPresentation: ideal is not square-zero");
    enumerate();
    cokernel_.emplace(generator_count(), relations_);
  }

  const EnumeratedRing& ring() const { return *ring_; }
  const std::vector<std::uint32_t>& ideal() const { return ideal_; }
  bool in_ideal(std::uint32_t x) const { return pos_.at(x) >= 0; }
  std::size_t generator_count() const { return ring_->size() * ideal_.size(); }
  const std::vector<SparseRelation>& relations() const { return relations_; }
  std::size_t relation_count(RelationKind k) const { return counts_[static_cast<int>(k)]; }
  const AbelianGroupStructure& structure() const { return cokernel_->structure(); }
  const SparseCokernel& cokernel() const { return *cokernel_; }

  /// The stored pair (a, b) with b in I behind a generator column.
  std::pair<std::uint32_t, std::uint32_t> generator(std::uint32_t col) const {
    return {static_cast<std::uint32_t>(col / ideal_.size()), ideal_[col % ideal_.size()]};
  }

  /// Column and sign representing <a,b>.
  std::pair<std::uint32_t, int> symbol(std::uint32_t a, std::uint32_t b) const {
    if (in_ideal(b)) return {column(a, b), 1};
    if (in_ideal(a)) return {column(b, a), -1};
    throw std::invalid_argument("symbol <" + ring_->describe(a) + "|" + ring_->describe(b) + "> has no entry in the ideal");
  }

  std::vector<BigInt> coordinates(const std::vector<IndexFactor>& word) const {
    std::vector<std::pair<std::uint32_t, BigInt>> w;
    for (const auto& f : word) {
      auto [c, s] = symbol(f.a, f.b);
      w.emplace_back(c, BigInt(s * f.sign));
    }
    return cokernel_->coordinates(w);
  }

 private:
  std::uint32_t column(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(a * ideal_.size() + static_cast<std::size_t>(pos_[b]));
  }

  struct RowHash {
    std::size_t operator()(const SparseRelation& r) const {
      std::size_t h = r.size();
      for (const auto& [c, v] : r) h = h * 1000003u ^ (static_cast<std::size_t>(c) * 31u + static_cast<std::size_t>(v + 7));
      return h;
    }
  };

  void push(RelationKind kind, std::initializer_list<std::pair<std::pair<std::uint32_t, std::uint32_t>, int>> terms) {
    SparseRelation row;
    for (const auto& [ab, coef] : terms) {
      auto [c, s] = symbol(ab.first, ab.second);
      row.emplace_back(c, static_cast<std::int64_t>(s * coef));
    }
    std::sort(row.begin(), row.end());
    SparseRelation merged;
    for (const auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c) merged.back().second += v;
      else merged.emplace_back(c, v);
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    if (merged.empty()) return;
    if (merged.front().second < 0)
      for (auto& e : merged) e.second = -e.second;
    if (!seen_.insert(merged).second) return;
    ++counts_[static_cast<int>(kind)];
    relations_.push_back(std::move(merged));
  }

  void enumerate() {
    const auto& R = *ring_;
    const std::uint32_t n = static_cast<std::uint32_t>(R.size());
    // DS1: <a,b><b,a> = 1 when both lie in I; other cases are the orientation.
    for (auto a : ideal_)
      for (auto b : ideal_)
        if (a <= b) push(RelationKind::ds1, {{{a, b}, 1}, {{b, a}, 1}});
    // DS2: <a,b><a,c> = <a, b + c - abc>, needing a in I or b, c in I.
    auto ds2 = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
      std::uint32_t rhs = R.sub(R.add(b, c), R.mul(R.mul(a, b), c));
      push(RelationKind::ds2, {{{a, b}, 1}, {{a, c}, 1}, {{a, rhs}, -1}});
    };
    for (std::uint32_t a = 0; a < n; ++a) {
      if (in_ideal(a)) {
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::uint32_t c = b; c < n; ++c) ds2(a, b, c);
      } else {
        for (auto b : ideal_)
          for (auto c : ideal_)
            if (b <= c) ds2(a, b, c);
      }
    }
    // DS3: <a,bc> = <ab,c><ac,b> with one of a, b, c in I; symmetric in b, c.
    auto ds3 = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
      push(RelationKind::ds3, {{{a, R.mul(b, c)}, 1}, {{R.mul(a, b), c}, -1}, {{R.mul(a, c), b}, -1}});
    };
    for (std::uint32_t a = 0; a < n; ++a) {
      if (in_ideal(a)) {
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::uint32_t c = b; c < n; ++c) ds3(a, b, c);
      } else {
        for (auto b : ideal_)
          for (std::uint32_t c = 0; c < n; ++c)
            if (!in_ideal(c) || c >= b) ds3(a, b, c);
      }
    }
    seen_.clear();
  }

  const EnumeratedRing* ring_;
  std::vector<std::uint32_t> ideal_;
  std::vector<std::int64_t> pos_;
  std::vector<SparseRelation> relations_;
  std::unordered_set<SparseRelation, RowHash> seen_;
  std::size_t counts_[3] = {0, 0, 0};
  std::optional<SparseCokernel> cokernel_;
};

/// A symbol <a,b>^sign on algebra elements.
struct SymbolFactor {
  ModVec a, b;
  int sign = 1;
};
using SymbolExpr = std::vector<SymbolFactor>;

inline bool check_square_zero(const FiniteAlgebra& r, const AlgebraIdeal& ideal) {
  for (const auto& x : ideal.scalar_basis())
    for (const auto& y : ideal.scalar_basis())
      if (!is_zero(r.mul(x, y))) return false;
  return true;
}

struct SquareZeroContext {
  AlgebraPtr ring;
  AlgebraIdeal ideal;
  std::vector<ModVec> factors;  // b_1..b_r with b_i * ideal = 0; may be empty
};

inline SquareZeroContext make_square_zero_context(const AlgebraIdeal& ideal, std::vector<ModVec> factors = {}) {
  const auto& r = ideal.parent();
  if (!check_square_zero(*r, ideal)) throw HypothesisError("ideal is not square-zero");
  for (const auto& b : factors)
    for (const auto& j : ideal.scalar_basis())
      if (!is_zero(r->mul(b, j))) throw HypothesisError("factor " + r->to_text(b) + " does not annihilate the ideal");
  return SquareZeroContext{r, ideal, std::move(factors)};
}

/// Bilinear model over basis(R) x basis(I), rows reduced over F_p.
class ReducedPresentation {
 public:
  static constexpr std::size_t max_basis = 64;

  explicit ReducedPresentation(const SquareZeroContext& ctx) : ring_(ctx.ring), ideal_(ctx.ideal) {
    const std::size_t n = ring_->dim(), k = ideal_.dim();
    if (n > max_basis) throw BudgetError("reduced presentation: dim R = " + std::to_string(n) + " exceeds " + std::to_string(max_basis));
    rows_.emplace(ring_->p(), n * k);
    const auto& ib = ideal_.scalar_basis();
    // DS1 on pairs of ideal basis vectors.
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = s; t < k; ++t) add_row(vec_add(encode(ib[s], ib[t]), encode(ib[t], ib[s]), p()));
    // DS2 with a in I reduces to <bca, a> = 1; quadratic in a, so a runs over
    // e_s and e_s + e_t, bilinear in b, c.
    std::vector<ModVec> quad = ib;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = s + 1; t < k; ++t) quad.push_back(vec_add(ib[s], ib[t], p()));
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) {
        ModVec bc = ring_->mul(ring_->basis_vector(b), ring_->basis_vector(c));
        for (const auto& a : quad) add_row(encode(ring_->mul(bc, a), a));
      }
    // DS3 with c in I (b in I is the same by symmetry) and with a in I.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (const auto& c : ib) add_row(ds3(ring_->basis_vector(a), ring_->basis_vector(b), c));
    for (const auto& a : ib)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = b; c < n; ++c) add_row(ds3(a, ring_->basis_vector(b), ring_->basis_vector(c)));
  }

  std::uint32_t p() const { return ring_->p(); }
  std::size_t generator_count() const { return ring_->dim() * ideal_.dim(); }
  std::size_t relation_count() const { return relation_count_; }
  std::size_t rank() const { return generator_count() - rows_->rank(); }
  AbelianGroupStructure structure() const { return AbelianGroupStructure::elementary(p(), rank()); }

  /// Bilinear coordinates of <a,b>.
  ModVec encode(const ModVec& a, const ModVec& b) const {
    if (ideal_.contains(b)) return outer(a, ideal_.coordinates(b));
    if (ideal_.contains(a)) return vec_scale(outer(b, ideal_.coordinates(a)), p() - 1, p());
    throw std::invalid_argument("symbol <" + ring_->to_text(a) + "|" + ring_->to_text(b) + "> has no entry in the ideal");
  }

  std::vector<BigInt> coordinates(const SymbolExpr& expr) const {
    ModVec v(generator_count(), 0);
    for (const auto& f : expr) {
      ModVec e = encode(f.a, f.b);
      v = f.sign > 0 ? vec_add(v, e, p()) : vec_sub(v, e, p());
    }
    ModVec q = rows_->quotient_coordinates(v);
    return std::vector<BigInt>(q.begin(), q.end());
  }

 private:
  ModVec outer(const ModVec& a, const ModVec& icoords) const {
    const std::size_t k = ideal_.dim();
    ModVec v(generator_count(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < k; ++j) v[i * k + j] = mod_mul(a[i], icoords[j], p());
    }
    return v;
  }

  ModVec ds3(const ModVec& a, const ModVec& b, const ModVec& c) const {
    ModVec row = encode(a, ring_->mul(b, c));
    row = vec_sub(row, encode(ring_->mul(a, b), c), p());
    return vec_sub(row, encode(ring_->mul(a, c), b), p());
  }

  void add_row(const ModVec& r) {
    ++relation_count_;
    rows_->insert(r);
  }

  AlgebraPtr ring_;
  AlgebraIdeal ideal_;
  std::optional<EchelonBasis> rows_;
  std::size_t relation_count_ = 0;
};

enum class PresentationMode { full, reduced };

inline std::string to_string(PresentationMode m) { return m == PresentationMode::full ? "full" : "reduced"; }

/// D(R, I) over an algebra context in either mode.
class SymbolPresentation {
 public:
  static SymbolPresentation build(const SquareZeroContext& ctx, PresentationMode mode, std::size_t budget_pairs = default_budget_pairs()) {
    SymbolPresentation sp(ctx, mode);
    if (mode == PresentationMode::full) {
      // Check the budget before tabulating the ring.
      BigInt ring_size = pow(BigInt(ctx.ring->p()), static_cast<unsigned>(ctx.ring->dim()));
      BigInt ideal_size = pow(BigInt(ctx.ring->p()), static_cast<unsigned>(ctx.ideal.dim()));
      if (ring_size * ideal_size > budget_pairs)
        throw BudgetError("full presentation needs |R|*|I| = " + to_string(ring_size * ideal_size) + " generator pairs, budget is " +
                          std::to_string(budget_pairs));
      sp.table_ = std::make_shared<EnumeratedRing>(EnumeratedRing::from_algebra(ctx.ring));
      std::vector<std::uint32_t> ideal;
      const std::size_t k = ctx.ideal.dim();
      std::size_t count = 1;
      for (std::size_t i = 0; i < k; ++i) count *= ctx.ring->p();
      for (std::size_t x = 0; x < count; ++x) ideal.push_back(sp.table_->index_of(ctx.ideal.element(EnumeratedRing::digits(x, ctx.ring->p(), k))));
      sp.full_ = std::make_shared<FullPresentation>(*sp.table_, std::move(ideal), budget_pairs);
    } else {
      sp.reduced_ = std::make_shared<ReducedPresentation>(ctx);
    }
    return sp;
  }

  PresentationMode mode() const { return mode_; }
  const SquareZeroContext& context() const { return ctx_; }
  AbelianGroupStructure structure() const { return full_ ? full_->structure() : reduced_->structure(); }
  const FullPresentation* full() const { return full_.get(); }
  const ReducedPresentation* reduced() const { return reduced_.get(); }
  const EnumeratedRing* ring_table() const { return table_.get(); }

  std::size_t generator_count() const { return full_ ? full_->generator_count() : reduced_->generator_count(); }
  std::size_t relation_count() const { return full_ ? full_->relations().size() : reduced_->relation_count(); }

  /// Coordinates of the word in the computed group; zero means identity.
  std::vector<BigInt> normalize(const SymbolExpr& expr) const {
    if (reduced_) return reduced_->coordinates(expr);
    std::vector<IndexFactor> word;
    for (const auto& f : expr) word.push_back({table_->index_of(f.a), table_->index_of(f.b), f.sign});
    return full_->coordinates(word);
  }

  bool is_identity(const SymbolExpr& expr) const {
    auto c = normalize(expr);
    return std::all_of(c.begin(), c.end(), [](const BigInt& x) { return x == 0; });
  }

  std::string to_text(const SymbolFactor& f) const {
    std::string s = "<" + ctx_.ring->to_text(f.a) + "|" + ctx_.ring->to_text(f.b) + ">";
    return f.sign < 0 ? s + "^-1" : s;
  }

 private:
  SymbolPresentation(SquareZeroContext ctx, PresentationMode mode) : ctx_(std::move(ctx)), mode_(mode) {}

  SquareZeroContext ctx_;
  PresentationMode mode_;
  std::shared_ptr<EnumeratedRing> table_;
  std::shared_ptr<FullPresentation> full_;
  std::shared_ptr<ReducedPresentation> reduced_;
};

/// Parses an algebra element written as a sum of `c*name`, `name` or `c`
/// terms, where names are basis names of the algebra.
inline ModVec parse_algebra_element(const FiniteAlgebra& alg, std::string_view text) {
  ModVec out = alg.zero();
  auto fail = [&](const std::string& why) { return std::invalid_argument("cannot parse element '" + std::string(text) + "': " + why); };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw fail("empty");
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail("expected + or -");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw fail("empty term");
    std::int64_t coef = 1;
    std::string name = term;
    std::size_t digits = 0;
    while (digits < term.size() && std::isdigit(static_cast<unsigned char>(term[digits]))) ++digits;
    if (digits == term.size()) {
      coef = std::stoll(term);
      name = "1";
    } else if (digits > 0 && term[digits] == '*') {
      coef = std::stoll(term.substr(0, digits));
      name = term.substr(digits + 1);
    }
    const auto& names = alg.basis_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw fail("unknown basis element '" + name + "'");
    std::size_t idx = static_cast<std::size_t>(it - names.begin());
    out[idx] = mod_add(out[idx], reduce_signed(sign * coef, alg.p()), alg.p());
    i = j;
  }
  return out;
}

/// Parses `<a|b>` factors, each optionally followed by `^-1`.
inline SymbolExpr parse_symbol_expr(const FiniteAlgebra& alg, std::string_view text) {
  SymbolExpr out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '<') throw std::invalid_argument("symbol expression: expected '<' at offset " + std::to_string(i));
    std::size_t bar = text.find('|', i), close = text.find('>', i);
    if (bar == std::string_view::npos || close == std::string_view::npos || bar > close)
      throw std::invalid_argument("symbol expression: malformed symbol at offset " + std::to_string(i));
    SymbolFactor f{parse_algebra_element(alg, text.substr(i + 1, bar - i - 1)), parse_algebra_element(alg, text.substr(bar + 1, close - bar - 1)), 1};
    i = close + 1;
    if (text.substr(i, 3) == "^-1") {
      f.sign = -1;
      i += 3;
    }
    out.push_back(std::move(f));
    skip();
  }
  return out;
}

/// prod_i <alpha_i, alpha_hat_i> where alpha_hat_i omits alpha_i. This word
/// equals <1, alpha_0...alpha_l>, which is trivial.
inline SymbolExpr scholium_expand(const FiniteAlgebra& r, const std::vector<ModVec>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("scholium_expand: empty tuple");
  ModVec prod = r.one();
  for (const auto& a : alphas) prod = r.mul(prod, a);
  if (!r.is_unit(r.sub(r.one(), prod))) throw HypothesisError("scholium_expand: 1 - alpha_0...alpha_l is not a unit");
  SymbolExpr out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    ModVec hat = r.one();
    for (std::size_t j = 0; j < alphas.size(); ++j)
      if (j != i) hat = r.mul(hat, alphas[j]);
    out.push_back({alphas[i], hat, 1});
  }
  return out;
}

/// Checks that <b s, b t> is trivial for b = b_1...b_r and all basis s, t.
inline bool psi_triviality_check(const SymbolPresentation& pres) {
  const auto& ctx = pres.context();
  const auto& r = *ctx.ring;
  if (ctx.factors.size() < 2) throw HypothesisError("psi check needs r > 1 factors, got " + std::to_string(ctx.factors.size()));
  ModVec b = r.one();
  for (const auto& f : ctx.factors) b = r.mul(b, f);
  AlgebraIdeal generated = ideal_closure(ctx.ring, {b});
  if (generated.dim() != ctx.ideal.dim() || !std::all_of(generated.scalar_basis().begin(), generated.scalar_basis().end(),
                                                         [&](const ModVec& v) { return ctx.ideal.contains(v); }))
    throw HypothesisError("ideal is not generated by b_1...b_r");
  std::vector<std::size_t> basis(r.dim());
  std::iota(basis.begin(), basis.end(), 0);
  return bilinear_map_trivial(basis, basis, [&](std::size_t s, std::size_t t) {
    ModVec bs = r.mul(b, r.basis_vector(s)), bt = r.mul(b, r.basis_vector(t));
    return pres.is_identity({{bs, bt, 1}});
  });
}

/// rho<a,b> = a (x) db if a in J, -b (x) da if b in J, landing in J (x)_R Omega_R.
class RhoMap {
 public:
  RhoMap(const AlgebraIdeal& ideal, const DifferentialModule& omega)
      : ideal_(ideal), omega_(omega), tensor_(ideal_module(ideal), omega.module) {
    if (!same_algebra(ideal.parent(), omega.algebra)) throw MismatchError("RhoMap: ideal and differentials over different algebras");
  }

  const TensorProduct& tensor() const { return tensor_; }
  const AlgebraIdeal& ideal() const { return ideal_; }

  ModVec image(const ModVec& a, const ModVec& b) const {
    const std::uint32_t p = omega_.algebra->p();
    if (ideal_.contains(a)) return tensor_.outer(ideal_.coordinates(a), omega_.ambient(omega_.d(b)));
    if (ideal_.contains(b)) return vec_scale(tensor_.outer(ideal_.coordinates(b), omega_.ambient(omega_.d(a))), p - 1, p);
    throw std::invalid_argument("rho: neither entry lies in the ideal");
  }

  ModVec image(const SymbolExpr& expr) const {
    const std::uint32_t p = omega_.algebra->p();
    ModVec out(tensor_.ambient_dim(), 0);
    for (const auto& f : expr) {
      ModVec v = image(f.a, f.b);
      out = f.sign > 0 ? vec_add(out, v, p) : vec_sub(out, v, p);
    }
    return out;
  }

  ModVec coordinates(const ModVec& t) const { return tensor_.coordinates(t); }
  bool is_zero(const ModVec& t) const { return tensor_.is_zero(t); }

 private:
  AlgebraIdeal ideal_;
  DifferentialModule omega_;
  TensorProduct tensor_;
};

struct RhoCheck {
  std::size_t relations_checked = 0;
  std::size_t failures = 0;
  std::optional<SparseRelation> first_failure;
  bool ok() const { return failures == 0; }
};

/// Pushes every stored relation of a full presentation through rho.
inline RhoCheck rho_well_defined(const SymbolPresentation& pres, const RhoMap& rho) {
  const FullPresentation* full = pres.full();
  if (!full) throw std::invalid_argument("rho_well_defined: needs a full-mode presentation");
  const EnumeratedRing& ring = *pres.ring_table();
  const std::uint32_t p = pres.context().ring->p();
  std::vector<ModVec> images(full->generator_count());
  for (std::uint32_t c = 0; c < images.size(); ++c) {
    auto [a, b] = full->generator(c);
    images[c] = rho.image(ring.element(a), ring.element(b));
  }
  RhoCheck out;
  for (const auto& row : full->relations()) {
    ModVec sum(rho.tensor().ambient_dim(), 0);
    for (const auto& [c, v] : row) sum = vec_add(sum, vec_scale(images[c], reduce_signed(v, p), p), p);
    ++out.relations_checked;
    if (!rho.is_zero(sum)) {
      ++out.failures;
      if (!out.first_failure) out.first_failure = row;
    }
  }
  return out;
}

}  // namespace relk2
