#pragma once

// Self-checking suites behind `relk2 verify` and the acceptance binary.

#include "relk2/k2.hpp"

#include <atomic>
#include <random>
#include <thread>

namespace relk2 {

struct VerifyConfig {
  std::vector<std::uint32_t> p_list{2, 3, 5};
  std::size_t max_rank = 3;
  std::uint64_t max_order = 125;
  std::uint64_t seed = 20240917;
  std::size_t samples = 100;
  std::size_t budget_pairs = default_budget_pairs();
  std::size_t jobs = 1;
  std::string inject_fault;  // name of a suite to sabotage
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  double ms = 0;
  bool passed() const { return failures.empty() && checks > 0; }
};

namespace detail {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(std::string name) { res_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++res_.checks;
    if (!ok) res_.failures.push_back(what);
  }

  template <class F>
  void guarded(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      ++res_.checks;
      res_.failures.push_back(what + ": " + e.what());
    }
  }

  SuiteResult finish() {
    res_.ms = clock_.ms();
    return std::move(res_);
  }

 private:
  SuiteResult res_;
  Stopwatch clock_;
};

inline void exponent_tuples(std::uint32_t p, std::size_t max_rank, std::uint64_t max_order, std::vector<unsigned>& cur, unsigned min_e,
                            std::uint64_t order, std::vector<GroupSpec>& out) {
  if (!cur.empty()) out.emplace_back(p, cur);
  if (cur.size() == max_rank) return;
  std::uint64_t o = order;
  for (unsigned e = 1;; ++e) {
    o *= p;
    if (o > max_order) break;
    if (e >= min_e) {
      cur.push_back(e);
      exponent_tuples(p, max_rank, max_order, cur, e, o, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

/// Every abelian p-group with at most max_rank cyclic factors and order at
/// most max_order, exponents non-decreasing, for each p in turn.
inline std::vector<GroupSpec> sweep_specs(const std::vector<std::uint32_t>& p_list, std::size_t max_rank, std::uint64_t max_order) {
  std::vector<GroupSpec> out;
  for (auto p : p_list) {
    std::vector<unsigned> cur;
    detail::exponent_tuples(p, max_rank, max_order, cur, 1, 1, out);
  }
  return out;
}

/// Group rings small enough for the full presentation under the default budget.
inline std::vector<GroupSpec> full_mode_specs() {
  return {GroupSpec(2, {1}), GroupSpec(2, {2}), GroupSpec(2, {1, 1}), GroupSpec(3, {1}), GroupSpec(2, {1, 2}), GroupSpec(2, {1, 1, 1}),
          GroupSpec(2, {3})};
}

inline SymbolPresentation group_ring_presentation(const GroupSpec& spec, PresentationMode mode, std::size_t budget_pairs) {
  return SymbolPresentation::build(make_square_zero_context(group_ring_context(spec).ideal), mode, budget_pairs);
}

/// A random scholium tuple of length 2..4 for the relative group: one entry
/// is drawn from the ideal so every symbol of the expansion is relative.
inline std::vector<ModVec> random_scholium_tuple(const SquareZeroContext& ctx, std::mt19937_64& rng) {
  const auto& r = *ctx.ring;
  const std::size_t len = 2 + rng() % 3, in_ideal = rng() % len;
  std::vector<ModVec> out;
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t dim = i == in_ideal ? ctx.ideal.dim() : r.dim();
    ModVec v(dim);
    for (auto& c : v) c = static_cast<std::uint32_t>(rng() % r.p());
    out.push_back(i == in_ideal ? ctx.ideal.element(v) : v);
  }
  return out;
}

inline SuiteResult suite_factorization(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("factorization");
  const bool fault = cfg.inject_fault == "factorization";
  for (const auto& spec : sweep_specs(cfg.p_list, cfg.max_rank, cfg.max_order)) {
    bool ok = fault ? gtilde_product_form(spec) == gtilde(spec, spec.p()) + RingElement::one(spec, spec.p())
                    : gtilde_factorization_check(spec);
    rec.check(ok, "G~ factorization fails for " + spec.name() + " at p=" + std::to_string(spec.p()));
  }
  return rec.finish();
}

/// F_2[x]/(x^3 - 1): the order of x is prime to p.
inline PresentedAlgebra coprime_contrast_algebra() {
  return PresentedAlgebra(2, {"x"}, {Polynomial::variable(2, 1, 0, 3) - Polynomial::constant(2, 1, 1)});
}

inline SuiteResult suite_omega(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("omega");
  for (const auto& spec : sweep_specs(cfg.p_list, cfg.max_rank, cfg.max_order))
    rec.guarded("omega " + spec.name(), [&] {
      DifferentialModule w = omega_group_ring(spec);
      rec.check(w.rank() == spec.rank() && w.module.dim() == spec.rank() * spec.order(), "Omega of " + spec.name() + " is not free of rank r");
    });
  DifferentialModule c = omega(coprime_contrast_algebra());
  const std::size_t expected = cfg.inject_fault == "omega" ? 1 : 0;
  rec.check(!c.relations_vanish() && c.module.dim() == expected, "Omega of F_2[x]/(x^3-1) is not trivial");
  return rec.finish();
}

inline SuiteResult suite_tensor(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("tensor");
  const std::size_t bump = cfg.inject_fault == "tensor" ? 1 : 0;
  for (const auto& spec : sweep_specs(cfg.p_list, cfg.max_rank, cfg.max_order)) {
    if (spec.order() <= 2) continue;
    rec.guarded("tensor " + spec.name(), [&] {
      K2Report rep = k2_relative_structure(spec, Route::tensor);
      rec.check(rep.structure == AbelianGroupStructure::elementary(spec.p(), spec.rank() + bump) && rep.basis.size() == spec.rank(),
                "tensor route for " + spec.name() + " gives " + rep.structure.to_string());
    });
  }
  rec.guarded("C2 oracle", [&] {
    K2Report rep = k2_relative_structure(GroupSpec(2, {1}), Route::oracle, PresentationMode::full, cfg.budget_pairs);
    rec.check(rep.structure.is_trivial(), "oracle for C2 is " + rep.structure.to_string());
  });
  try {
    k2_relative_structure(GroupSpec(2, {1}), Route::tensor);
    rec.check(false, "tensor route accepted C2");
  } catch (const HypothesisError&) {
    rec.check(true, "");
  }
  return rec.finish();
}

inline SuiteResult suite_oracle(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("oracle");
  const bool fault = cfg.inject_fault == "oracle";
  for (const auto& spec : full_mode_specs())
    rec.guarded("oracle " + spec.name(), [&] {
      auto full = group_ring_presentation(spec, PresentationMode::full, cfg.budget_pairs);
      auto red = group_ring_presentation(spec, PresentationMode::reduced, cfg.budget_pairs);
      rec.check(full.structure() == red.structure(), "full and reduced differ on " + spec.name());
      auto expected = spec.order() <= 2 ? AbelianGroupStructure::trivial() : AbelianGroupStructure::elementary(spec.p(), spec.rank() + fault);
      rec.check(full.structure() == expected, "oracle for " + spec.name() + " gives " + full.structure().to_string());
      if (spec.order() > 2) {
        K2Report both = k2_relative_structure(spec, Route::both, PresentationMode::full, cfg.budget_pairs);
        rec.check(both.agreement.value_or(false), "routes disagree on " + spec.name());
      }
    });
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(2, {1, 2})})
    rec.guarded("theorem instance " + spec.name(), [&] {
      Theorem1Report t = theorem1_group_ring(spec, PresentationMode::full, cfg.budget_pairs);
      rec.check(t.ok() && t.oracle.has_value(), "theorem instance fails on " + spec.name());
    });
  return rec.finish();
}

inline SuiteResult suite_scholium(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("scholium");
  std::mt19937_64 rng(cfg.seed);
  for (const auto& spec : full_mode_specs())
    rec.guarded("scholium " + spec.name(), [&] {
      auto pres = group_ring_presentation(spec, PresentationMode::full, cfg.budget_pairs);
      const auto& ctx = pres.context();
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        auto alphas = random_scholium_tuple(ctx, rng);
        SymbolExpr word = scholium_expand(*ctx.ring, alphas);
        // Sabotage: swap in <G~, g_1>, which survives.
        if (cfg.inject_fault == "scholium" && s == 0 && !pres.structure().is_trivial())
          word = {{ctx.ideal.scalar_basis()[0], ctx.ring->basis_vector(1), 1}};
        rec.check(pres.is_identity(word), "scholium word not trivial in " + spec.name());
      }
    });
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(2, {1, 2})})
    rec.guarded("psi " + spec.name(), [&] {
      GroupRingContext c = group_ring_context(spec);
      std::vector<ModVec> b;
      for (std::size_t j = 0; j < spec.rank(); ++j)
        b.push_back(to_algebra_vector(pow(x_element(spec, spec.p(), j + 1), spec.cyclic_order(j) - 1)));
      auto pres = SymbolPresentation::build(make_square_zero_context(c.ideal, b), PresentationMode::full, cfg.budget_pairs);
      rec.check(psi_triviality_check(pres), "psi is not trivial on " + spec.name());
    });
  return rec.finish();
}

inline SuiteResult suite_rho(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("rho");
  for (const auto& spec : full_mode_specs()) {
    if (spec.order() <= 2) continue;  // rho needs |G| > 2
    rec.guarded("rho " + spec.name(), [&] {
      GroupRingContext c = group_ring_context(spec);
      auto pres = SymbolPresentation::build(make_square_zero_context(c.ideal), PresentationMode::full, cfg.budget_pairs);
      RhoMap rho(c.ideal, omega(c.algebra));
      RhoCheck rc = rho_well_defined(pres, rho);
      if (cfg.inject_fault == "rho") ++rc.failures;
      rec.check(rc.ok() && rc.relations_checked == pres.relation_count(),
                "rho sends " + std::to_string(rc.failures) + " relations of " + spec.name() + " to nonzero elements");
    });
  }
  return rec.finish();
}

inline SuiteResult suite_excision(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("excision");
  for (unsigned r = 1; r <= 2; ++r) {
    GroupSpec spec(2, std::vector<unsigned>(r, 1));
    rec.guarded("excision " + spec.name(), [&] {
      ExcisionReport e = excision_check(spec, cfg.budget_pairs);
      auto expected = r == 1 ? AbelianGroupStructure::trivial() : AbelianGroupStructure::elementary(2, r);
      if (cfg.inject_fault == "excision") expected = AbelianGroupStructure::elementary(2, r + 1);
      rec.check(e.ok(), "excision report for " + spec.name() + " is not consistent");
      rec.check(e.integral == expected && e.modular == expected, "excision structures for " + spec.name() + ": " + e.integral.to_string() + " vs " +
                                                                    e.modular.to_string());
    });
  }
  try {
    excision_check(GroupSpec(3, {1, 1}));
    rec.check(false, "excision accepted p=3");
  } catch (const ScopeError&) {
    rec.check(true, "");
  }
  return rec.finish();
}

/// The lattice with one generator of I dropped.
inline CharacterLattice tamper_lattice(CharacterLattice lat) {
  MatrixZ i(0, lat.i.cols());
  for (std::size_t r = 0; r + 1 < lat.i.rows(); ++r) i.append_row(lat.i.row(r));
  lat.i = i;
  return lat;
}

inline SuiteResult suite_lattice(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("lattice");
  for (unsigned r = 1; r <= 4; ++r) {
    GroupSpec spec(2, std::vector<unsigned>(r, 1));
    rec.guarded("lattice " + spec.name(), [&] {
      CharacterLattice lat = build_lattices(spec);
      if (cfg.inject_fault == "lattice") lat = tamper_lattice(lat);
      rec.check(relation_checks(lat).all(), "relation checks fail for " + spec.name());
      rec.check(!relation_checks(tamper_lattice(lat)).all(), "tampered lattice passes for " + spec.name());
      // |det| of the character matrix is |G|^{|G|/2}
      rec.check(lattice_index(lat.zg) == pow(BigInt(spec.order()), static_cast<unsigned>(spec.order() / 2)),
                "[Gamma : Z[G]] is wrong for " + spec.name());
    });
  }
  return rec.finish();
}

inline SuiteResult suite_square(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("square");
  for (unsigned r = 1; r <= 3; ++r) {
    GroupSpec spec(2, std::vector<unsigned>(r, 1));
    rec.guarded("square " + spec.name(), [&] {
      SquareReport s = cartesian_square(spec);
      bool ok = s.commutes.value_or(false) && s.pullback.value_or(false);
      if (cfg.inject_fault == "square") ok = !ok;
      rec.check(ok, "square for " + spec.name() + " is not a commuting pullback");
    });
  }
  SquareReport odd = cartesian_square(GroupSpec(3, {1, 1}));
  rec.check(!odd.top_left.concrete && odd.bottom_left.fp_dim == 9u && odd.bottom_right.fp_dim == 8u, "square for p=3 has wrong corners");
  return rec.finish();
}

inline MatrixZ random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::int64_t bound) {
  MatrixZ m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
  return m;
}

inline bool is_unimodular(const MatrixZ& m) {
  BigInt d = determinant(m);
  return d == 1 || d == -1;
}

inline bool is_smith_diagonal(const MatrixZ& d) {
  BigInt prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const BigInt& x = d.at(i, j);
      if (i != j) {
        if (x != 0) return false;
        continue;
      }
      if (x < 0) return false;
      if (x == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen || x % prev != 0) return false;
      prev = x;
    }
  return true;
}

inline SuiteResult suite_linear(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("linear");
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t n = std::max<std::size_t>(cfg.samples * 2, 1);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    MatrixZ m = random_matrix(rng, rows, cols, 20);
    SmithDecomposition sd = snf(m);
    MatrixZ d = sd.d;
    if (cfg.inject_fault == "linear" && s == 0) d.at(0, 0) += 1;
    rec.check(sd.u * m * sd.v == d && is_unimodular(sd.u) && is_unimodular(sd.v) && is_smith_diagonal(d),
              "SNF reconstruction fails on " + m.to_string());
    // Same lattice from a unimodular mix of the rows plus redundant sums.
    MatrixZ mix = MatrixZ::identity(rows);
    for (std::size_t k = 0; k < 3 * rows; ++k) {
      std::size_t a = rng() % rows, b = rng() % rows;
      if (a != b) mix.add_row_multiple(a, b, static_cast<std::int64_t>(rng() % 7) - 3);
      else mix.negate_row(a);
    }
    MatrixZ other = mix * m;
    other.append_row(m.row(0));
    if (rows > 1) {
      auto extra = m.row(0);
      for (std::size_t j = 0; j < cols; ++j) extra[j] += 2 * m.at(rows - 1, j);
      other.append_row(extra);
    }
    rec.check(hnf(m) == hnf(other), "HNF differs across generator sets of " + m.to_string());
  }
  return rec.finish();
}

inline SuiteResult suite_conormal(const VerifyConfig& cfg) {
  detail::SuiteRecorder rec("conormal");
  struct Case {
    std::uint32_t p;
    std::vector<unsigned> s_degrees;  // S = F_p[x_i]/(x_i^{d_i} - 1)
    std::vector<unsigned> t_degrees;  // T adds x_i^{e_i} - 1
  };
  const std::vector<Case> cases{{2, {4}, {2}}, {2, {2, 2}, {1, 2}}, {3, {3}, {1}}, {2, {8}, {4}}, {3, {9}, {3}}, {2, {4, 2}, {2, 2}}};
  for (const auto& c : cases) {
    const std::size_t v = c.s_degrees.size();
    Presentation s{c.p, {}, {}};
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < v; ++i) {
      s.variables.push_back("x" + std::to_string(i + 1));
      s.relations.push_back(Polynomial::variable(c.p, v, i, c.s_degrees[i]) - Polynomial::constant(c.p, v, 1));
      gens.push_back(Polynomial::variable(c.p, v, i, c.t_degrees[i]) - Polynomial::constant(c.p, v, 1));
    }
    rec.guarded("conormal", [&] {
      ConormalReport rep = conormal_check(s, gens);
      bool ok = rep.ok();
      if (cfg.inject_fault == "conormal") ok = !ok;
      rec.check(ok, "conormal sequence is not exact for p=" + std::to_string(c.p));
    });
  }
  return rec.finish();
}

using SuiteFn = SuiteResult (*)(const VerifyConfig&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg{
      {"factorization", suite_factorization}, {"omega", suite_omega}, {"tensor", suite_tensor},   {"oracle", suite_oracle},
      {"scholium", suite_scholium},           {"rho", suite_rho},     {"excision", suite_excision}, {"lattice", suite_lattice},
      {"square", suite_square},               {"linear", suite_linear}, {"conormal", suite_conormal}};
  return reg;
}

/// Runs the named suites (all when empty) on up to cfg.jobs threads; results
/// come back in registry order.
inline std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const VerifyConfig& cfg) {
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (const auto& [n, f] : suite_registry())
    if (names.empty() || std::find(names.begin(), names.end(), n) != names.end()) chosen.emplace_back(n, f);
  for (const auto& n : names)
    if (std::none_of(chosen.begin(), chosen.end(), [&](const auto& e) { return e.first == n; }))
      throw std::invalid_argument("unknown suite '" + n + "'");
  std::vector<SuiteResult> out(chosen.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < chosen.size();) {
      try {
        out[i] = chosen[i].second(cfg);
      } catch (const std::exception& e) {
        out[i].name = chosen[i].first;
        out[i].checks = 1;
        out[i].failures.push_back(e.what());
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.jobs, 1, chosen.size() ? chosen.size() : 1);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace relk2
