#pragma once

// Relative K2 of (F_p[G], (G~)) and its integral counterpart, checked by the
// tensor model and by brute-force presentations.

#include "relk2/integral_lattice.hpp"

#include <chrono>
#include <map>
#include <set>

namespace relk2 {

enum class Route { tensor, oracle, both };

inline std::string to_string(Route r) {
  switch (r) {
    case Route::tensor: return "tensor";
    case Route::oracle: return "oracle";
    default: return "both";
  }
}

inline Route parse_route(std::string_view s) {
  if (s == "tensor") return Route::tensor;
  if (s == "oracle") return Route::oracle;
  if (s == "both") return Route::both;
  throw std::invalid_argument("unknown route '" + std::string(s) + "'");
}

inline PresentationMode parse_mode(std::string_view s) {
  if (s == "full") return PresentationMode::full;
  if (s == "reduced") return PresentationMode::reduced;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

struct K2Report {
  GroupSpec spec;
  AbelianGroupStructure structure;
  std::vector<std::string> basis;
  Route route = Route::tensor;
  std::optional<bool> agreement;  // set only for Route::both
  std::vector<std::string> warnings;
  double ms = 0;
  std::optional<AbelianGroupStructure> tensor_structure, oracle_structure;
};

namespace detail {

class Stopwatch {
 public:
  double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string gtilde_text(const GroupSpec& spec) {
  std::string s;
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(j + 1);
    if (auto e = spec.cyclic_order(j) - 1; e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

/// Rank of a family of coordinate vectors inside sum Z/d_i: the subgroup
/// they generate has order |group| / |cokernel|.
inline AbelianGroupStructure generated_cokernel(const std::vector<std::vector<BigInt>>& coords, const AbelianGroupStructure& g) {
  const std::size_t k = g.coordinate_count();
  if (g.free_rank) throw std::invalid_argument("generated_cokernel: group is not finite");
  MatrixZ m(0, k);
  for (const auto& c : coords) m.append_row(c);
  for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
    std::vector<BigInt> row(k);
    row[i] = g.invariant_factors[i];
    m.append_row(row);
  }
  return cokernel_structure(m, k);
}

}  // namespace detail

/// Pieces shared by both routes for F_p[G] with the ideal (G~).
struct GroupRingContext {
  GroupSpec spec;
  PresentedAlgebra algebra;
  AlgebraIdeal ideal;
  ModVec gtilde;
  std::vector<ModVec> x;  // x_i = g_i - 1
};

inline GroupRingContext group_ring_context(const GroupSpec& spec) {
  auto s = PresentedAlgebra::group_ring(spec);
  ModVec gt = to_algebra_vector(gtilde(spec, spec.p()));
  std::vector<ModVec> x;
  for (std::size_t i = 1; i <= spec.rank(); ++i) x.push_back(to_algebra_vector(x_element(spec, spec.p(), i)));
  AlgebraIdeal ideal = ideal_closure(s.algebra(), {gt});
  return GroupRingContext{spec, std::move(s), std::move(ideal), std::move(gt), std::move(x)};
}

/// Symbols <x_i, G~> named as in the product form of G~.
inline SymbolExpr basis_symbol(const GroupRingContext& c, std::size_t i) { return {{c.x.at(i), c.gtilde, 1}}; }

inline std::string basis_symbol_text(const GroupSpec& spec, std::size_t i) {
  return "<x" + std::to_string(i + 1) + "|" + detail::gtilde_text(spec) + ">";
}

inline K2Report k2_relative_structure(const GroupSpec& spec, Route route, PresentationMode mode = PresentationMode::full,
                                      std::size_t budget_pairs = default_budget_pairs()) {
  detail::Stopwatch clock;
  K2Report rep{spec, {}, {}, route, std::nullopt, {}, 0, std::nullopt, std::nullopt};
  if (route != Route::oracle && spec.order() <= 2)
    throw HypothesisError("theorem hypothesis |G|>2 fails for " + spec.name() + "; use the oracle route");
  GroupRingContext c = group_ring_context(spec);
  const std::size_t r = spec.rank();

  if (route != Route::oracle) {
    DifferentialModule w = omega(c.algebra);
    RhoMap rho(c.ideal, w);
    rep.tensor_structure = rho.tensor().structure();
    // rho<x_i, G~> = -G~ (x) dx_i; these must be independent and span.
    EchelonBasis images(spec.p(), rho.tensor().dim());
    for (std::size_t i = 0; i < r; ++i) images.insert(rho.coordinates(rho.image(basis_symbol(c, i))));
    if (images.rank() != r || rho.tensor().dim() != r)
      rep.warnings.push_back("rho images of the basis symbols span rank " + std::to_string(images.rank()) + " in a tensor of dimension " +
                             std::to_string(rho.tensor().dim()));
    else
      for (std::size_t i = 0; i < r; ++i) rep.basis.push_back(basis_symbol_text(spec, i));
  }

  if (route != Route::tensor) {
    auto pres = SymbolPresentation::build(make_square_zero_context(c.ideal), mode, budget_pairs);
    rep.oracle_structure = pres.structure();
    if (route == Route::oracle && !pres.structure().is_trivial()) {
      std::vector<std::vector<BigInt>> coords;
      for (std::size_t i = 0; i < r; ++i) coords.push_back(pres.normalize(basis_symbol(c, i)));
      bool spans = detail::generated_cokernel(coords, pres.structure()).is_trivial();
      if (spans && pres.structure().coordinate_count() == r)
        for (std::size_t i = 0; i < r; ++i) rep.basis.push_back(basis_symbol_text(spec, i));
      else
        rep.warnings.push_back("the symbols <x_i, G~> do not form a basis of the computed group");
    }
  }

  rep.structure = rep.oracle_structure ? *rep.oracle_structure : *rep.tensor_structure;
  if (route == Route::both) {
    rep.agreement = *rep.oracle_structure == *rep.tensor_structure;
    if (!*rep.agreement) rep.warnings.push_back("tensor and oracle structures differ");
  }
  rep.ms = clock.ms();
  return rep;
}

struct Theorem1Report {
  std::size_t r = 0;
  std::optional<AbelianGroupStructure> oracle;  // D(A/I, J/I); absent over budget
  AbelianGroupStructure tensor_over_a_mod_i;     // J/I (x)_{A/I} Omega_{A/I}
  AbelianGroupStructure tensor_over_a_mod_j;     // J/I (x)_{A/J} Omega_{A/J}
  std::optional<bool> psi_trivial;
  bool delta_trivial = false;
  std::vector<std::string> warnings;
  double ms = 0;

  bool agree() const {
    return tensor_over_a_mod_i == tensor_over_a_mod_j && (!oracle || *oracle == tensor_over_a_mod_i);
  }
  bool ok() const { return agree() && delta_trivial && psi_trivial.value_or(true); }
};

/// Checks K2(A/I, J/I) = J/I (x)_{A/I} Omega_{A/I} on one instance, with
/// J = (b_1...b_r)A + I and b_i J in I.
inline Theorem1Report theorem1_check(const PresentedAlgebra& a, const std::vector<ModVec>& i_gens, const std::vector<ModVec>& j_gens,
                                     const std::vector<ModVec>& b, PresentationMode mode = PresentationMode::full,
                                     std::size_t budget_pairs = default_budget_pairs()) {
  detail::Stopwatch clock;
  const AlgebraPtr& alg = a.algebra();
  Theorem1Report rep;
  rep.r = b.size();
  if (rep.r <= 1) throw HypothesisError("need r > 1 factors b_1..b_r, got " + std::to_string(rep.r));
  AlgebraIdeal ii = ideal_closure(alg, i_gens), jj = ideal_closure(alg, j_gens);
  ModVec prod = alg->one();
  for (const auto& f : b) prod = alg->mul(prod, f);
  AlgebraIdeal expected = ideal_sum(ideal_closure(alg, {prod}), ii);
  auto inside = [](const AlgebraIdeal& x, const AlgebraIdeal& y) {
    return std::all_of(x.scalar_basis().begin(), x.scalar_basis().end(), [&](const ModVec& v) { return y.contains(v); });
  };
  if (!inside(expected, jj) || !inside(jj, expected)) throw HypothesisError("J is not (b_1...b_r)A + I");
  for (const auto& f : b)
    for (const auto& v : jj.scalar_basis())
      if (!ii.contains(alg->mul(f, v))) throw HypothesisError("b_i J is not contained in I for b_i = " + alg->to_text(f));

  QuotientAlgebra qi = quotient_algebra(alg, ii);
  const AlgebraPtr& ai = qi.algebra();
  AlgebraIdeal jbar = qi.project_ideal(jj);
  std::vector<ModVec> bbar;
  for (const auto& f : b) bbar.push_back(qi.project(f));
  SquareZeroContext ctx = make_square_zero_context(jbar, bbar);

  DifferentialModule w_ai = omega(a, qi);
  TensorProduct t_ai(ideal_module(jbar), w_ai.module);
  rep.tensor_over_a_mod_i = t_ai.structure();

  QuotientAlgebra qj = quotient_algebra(ai, jbar);
  DifferentialModule w_aj = omega(w_ai, qj);
  TensorProduct t_aj(restrict_to_quotient(ideal_module(jbar), qj), w_aj.module);
  rep.tensor_over_a_mod_j = t_aj.structure();

  // delta*(u (x) v) = v (x) du
  const auto& jb = jbar.scalar_basis();
  rep.delta_trivial = bilinear_map_trivial(jb, jb, [&](const ModVec& u, const ModVec& v) {
    return t_ai.is_zero(t_ai.outer(jbar.coordinates(v), w_ai.ambient(w_ai.d(u))));
  });

  try {
    auto pres = SymbolPresentation::build(ctx, mode, budget_pairs);
    rep.oracle = pres.structure();
    rep.psi_trivial = psi_triviality_check(pres);
  } catch (const BudgetError& e) {
    rep.warnings.push_back(std::string("oracle skipped, tensor sides only: ") + e.what());
  }
  rep.ms = clock.ms();
  return rep;
}

/// The group-ring instance: A = F_p[G], I = 0, J = (G~), b_j = x_j^{p^{n_j}-1}.
inline Theorem1Report theorem1_group_ring(const GroupSpec& spec, PresentationMode mode = PresentationMode::full,
                                          std::size_t budget_pairs = default_budget_pairs()) {
  GroupRingContext c = group_ring_context(spec);
  std::vector<ModVec> b;
  for (std::size_t j = 0; j < spec.rank(); ++j)
    b.push_back(to_algebra_vector(pow(x_element(spec, spec.p(), j + 1), spec.cyclic_order(j) - 1)));
  return theorem1_check(c.algebra, {}, {c.gtilde}, b, mode, budget_pairs);
}

struct ExcisionReport {
  GroupSpec spec;
  AbelianGroupStructure integral;  // D(Z[G]/I, J/I)
  AbelianGroupStructure modular;   // D(F_2[G], (G~))
  LatticeChecks lattice;
  BigInt ring_size_i, ring_size_j;
  std::size_t integral_relations = 0;
  bool map_well_defined = false;  // reduction mod 2 kills every relation
  bool map_surjective = false;
  std::vector<std::pair<std::string, std::string>> generator_images;  // source symbol -> target coordinates
  double ms = 0;

  bool equal() const { return integral == modular; }
  bool ok() const { return equal() && lattice.all() && map_well_defined && map_surjective; }
};

/// D(Z[G]/I, J/I) against D(F_2[G], (G~)), with the reduction map between
/// their generators.
inline ExcisionReport excision_check(const GroupSpec& spec, std::size_t budget_pairs = default_budget_pairs()) {
  detail::Stopwatch clock;
  require_excision_scope(spec, 4);
  CharacterLattice lat = build_lattices(spec);
  ExcisionReport rep{spec, {}, {}, relation_checks(lat), 0, 0, 0, false, false, {}, 0};
  FiniteQuotientRing zi = quotient_ring(lat, WhichIdeal::i), zj = quotient_ring(lat, WhichIdeal::j);
  rep.ring_size_i = zi.size();
  rep.ring_size_j = zj.size();

  EnumeratedRing src_ring = zi.enumerate();
  std::vector<std::uint32_t> src_ideal;
  for (std::uint32_t x = 0; x < src_ring.size(); ++x)
    if (zj.contains(zi.element(x))) src_ideal.push_back(x);
  FullPresentation src(src_ring, src_ideal, budget_pairs);
  rep.integral = src.structure();
  rep.integral_relations = src.relations().size();

  GroupRingContext c = group_ring_context(spec);
  auto tgt = SymbolPresentation::build(make_square_zero_context(c.ideal), PresentationMode::full, budget_pairs);
  rep.modular = tgt.structure();
  const EnumeratedRing& tgt_ring = *tgt.ring_table();
  const FullPresentation& tf = *tgt.full();

  auto reduce_mod2 = [&](std::uint32_t x) {
    auto v = zi.element(x);
    ModVec m(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) m[k] = static_cast<std::uint32_t>(floor_mod(v[k], BigInt(2)));
    return tgt_ring.index_of(m);
  };
  std::vector<std::uint32_t> image_of(src_ring.size());
  for (std::uint32_t x = 0; x < src_ring.size(); ++x) image_of[x] = reduce_mod2(x);
  for (auto x : src_ideal)
    if (!tf.in_ideal(image_of[x])) throw ArithmeticError("excision_check: J/I does not reduce into (G~)");

  const auto& tstruct = tf.structure();
  const std::size_t k = tstruct.coordinate_count();
  std::vector<std::vector<BigInt>> images(src.generator_count());
  for (std::uint32_t col = 0; col < images.size(); ++col) {
    auto [a, bb] = src.generator(col);
    images[col] = tf.coordinates({{image_of[a], image_of[bb], 1}});
  }
  for (auto x : src_ideal) {
    if (x == src_ring.zero()) continue;
    std::string coords;
    for (const auto& v : images[src.symbol(src_ring.one(), x).first]) coords += (coords.empty() ? "" : ",") + to_string(v);
    rep.generator_images.emplace_back("<1|" + src_ring.describe(x) + ">", "(" + coords + ")");
  }

  rep.map_well_defined = true;
  for (const auto& row : src.relations()) {
    std::vector<BigInt> sum(k);
    for (const auto& [col, v] : row)
      for (std::size_t i = 0; i < k; ++i) sum[i] += images[col][i] * v;
    for (std::size_t i = 0; i < k; ++i)
      if (floor_mod(sum[i], tstruct.invariant_factors.at(i)) != 0) rep.map_well_defined = false;
    if (!rep.map_well_defined) break;
  }
  rep.map_surjective = k == 0 || detail::generated_cokernel(images, tstruct).is_trivial();
  rep.ms = clock.ms();
  return rep;
}

struct SquareCorner {
  std::string name;
  bool concrete = false;
  std::optional<BigInt> size;          // number of elements
  std::optional<std::size_t> fp_dim;  // F_p-dimension where it applies
  std::string description;
};

struct SquareReport {
  GroupSpec spec;
  SquareCorner top_left, top_right, bottom_left, bottom_right;  // Z[G]/I, Z[G]/J, F_p[G], F_p[G]/(G~)
  std::optional<bool> commutes, pullback;
  std::vector<std::string> notes;
};

/// Z[G]/I -> Z[G]/J over F_p[G] -> F_p[G]/(G~).
inline SquareReport cartesian_square(const GroupSpec& spec) {
  const std::size_t n = spec.order();
  SquareReport rep{spec, {}, {}, {}, {}, std::nullopt, std::nullopt, {}};
  GroupRingContext c = group_ring_context(spec);
  QuotientAlgebra fq = quotient_algebra(c.algebra.algebra(), c.ideal);
  const std::uint32_t p = spec.p();
  rep.bottom_left = {"F_p[G]", true, pow(BigInt(p), static_cast<unsigned>(n)), n, "group algebra, monomial basis"};
  rep.bottom_right = {"F_p[G]/(G~)", true, pow(BigInt(p), static_cast<unsigned>(n - 1)), n - 1, "quotient by the line spanned by G~"};

  bool concrete = p == 2 && spec.is_elementary() && spec.rank() <= 3;
  if (!concrete) {
    rep.top_left = {"Z[G]/I", false, std::nullopt, std::nullopt, "I = J meet pZ[G], J = |G| Gamma, Gamma the maximal order of Q[G]"};
    rep.top_right = {"Z[G]/J", false, std::nullopt, std::nullopt, "J = |G| Gamma"};
    rep.notes.push_back("integral corners are symbolic outside elementary abelian 2-groups of rank <= 3");
    return rep;
  }
  CharacterLattice lat = build_lattices(spec);
  FiniteQuotientRing zi = quotient_ring(lat, WhichIdeal::i), zj = quotient_ring(lat, WhichIdeal::j);
  rep.top_left = {"Z[G]/I", true, zi.size(), std::nullopt, "additive group " + zi.additive_structure().to_string()};
  rep.top_right = {"Z[G]/J", true, zj.size(), std::nullopt, "additive group " + zj.additive_structure().to_string()};

  auto mod_p = [&](const std::vector<BigInt>& v) {
    ModVec m(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) m[k] = static_cast<std::uint32_t>(floor_mod(v[k], BigInt(p)));
    return m;
  };
  auto to_d = [&](const ModVec& m) { return EnumeratedRing::index(fq.project(m), p); };

  // Fibre sizes over each element of the bottom-right corner.
  std::map<std::size_t, std::uint64_t> from_j, from_fp;
  const auto size_j = static_cast<std::uint64_t>(zj.size());
  for (std::uint64_t y = 0; y < size_j; ++y) ++from_j[to_d(mod_p(zj.element(y)))];
  const std::uint64_t size_fp = static_cast<std::uint64_t>(*rep.bottom_left.size);
  for (std::uint64_t y = 0; y < size_fp; ++y) ++from_fp[to_d(EnumeratedRing::digits(y, p, n))];
  BigInt fibre = 0;
  for (const auto& [d, cnt] : from_j)
    if (auto it = from_fp.find(d); it != from_fp.end()) fibre += BigInt(cnt) * it->second;

  bool commutes = true;
  std::set<std::pair<std::uint64_t, std::size_t>> seen;
  const auto size_i = static_cast<std::uint64_t>(zi.size());
  for (std::uint64_t x = 0; x < size_i; ++x) {
    auto v = zi.element(x);
    std::uint64_t right = zj.index_of(v);
    ModVec down = mod_p(v);
    if (to_d(mod_p(zj.element(right))) != to_d(down)) commutes = false;
    seen.emplace(right, EnumeratedRing::index(down, p));
  }
  rep.commutes = commutes;
  rep.pullback = commutes && BigInt(seen.size()) == zi.size() && fibre == zi.size();
  return rep;
}

/// The decomposition of K2(Z[G]/I) quoted as a statement next to a computed
/// relative group.
inline std::string decomposition_statement(const K2Report& rep) {
  std::string s = "K2(Z[G]/I) = K2(Z[G]/J) + K2(F_p[G],(G~))";
  if (rep.spec.rank() <= 1) return s + " is stated for r > 1 only";
  return s + ", with K2(F_p[G],(G~)) = " + rep.structure.to_string() + " computed here";
}

}  // namespace relk2
