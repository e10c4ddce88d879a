#include "relk2/verify.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

namespace relk2 {
namespace {

// Unoriented D(F_p[G], (G~)): one generator per admissible pair, every
// DS1-DS3 instance, cokernel by Hermite reduction and a dense Smith form.
AbelianGroupStructure brute_force_relative_group(const GroupSpec& spec) {
  const std::uint32_t p = spec.p();
  const std::size_t n = spec.order();
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= p;
  std::vector<RingElement> elems;
  std::map<std::vector<BigInt>, std::uint32_t> index;
  for (std::size_t x = 0; x < size; ++x) {
    std::vector<BigInt> c(n);
    std::size_t y = x;
    for (std::size_t k = 0; k < n; ++k, y /= p) c[k] = y % p;
    index[c] = static_cast<std::uint32_t>(x);
    elems.push_back(RingElement::from_coeffs(spec, p, c));
  }
  auto id = [&](const RingElement& e) { return index.at(e.coeffs()); };
  std::vector<std::uint32_t> mul(size * size), add(size * size), neg(size);
  for (std::size_t a = 0; a < size; ++a) {
    neg[a] = id(-elems[a]);
    for (std::size_t b = 0; b < size; ++b) {
      mul[a * size + b] = id(elems[a] * elems[b]);
      add[a * size + b] = id(elems[a] + elems[b]);
    }
  }
  std::vector<bool> in_ideal(size, false);
  RingElement gt = gtilde(spec, p);
  for (std::uint32_t c = 0; c < p; ++c) in_ideal[id(gt.scaled(c))] = true;

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> col;
  for (std::uint32_t a = 0; a < size; ++a)
    for (std::uint32_t b = 0; b < size; ++b)
      if (in_ideal[a] || in_ideal[b]) col.emplace(std::make_pair(a, b), col.size());
  IntegerRowBasis rows(col.size());
  auto rel = [&](std::initializer_list<std::pair<std::pair<std::uint32_t, std::uint32_t>, int>> terms) {
    std::vector<BigInt> r(col.size());
    for (const auto& [ab, c] : terms) r[col.at(ab)] += c;
    rows.insert(std::move(r));
  };
  for (std::uint32_t a = 0; a < size; ++a)
    for (std::uint32_t b = 0; b < size; ++b) {
      if (in_ideal[a] || in_ideal[b]) rel({{{a, b}, 1}, {{b, a}, 1}});
      for (std::uint32_t c = 0; c < size; ++c) {
        if (in_ideal[a] || (in_ideal[b] && in_ideal[c])) {
          std::uint32_t abc = mul[mul[a * size + b] * size + c];
          rel({{{a, b}, 1}, {{a, c}, 1}, {{a, add[add[b * size + c] * size + neg[abc]]}, -1}});
        }
        if (in_ideal[a] || in_ideal[b] || in_ideal[c])
          rel({{{a, mul[b * size + c]}, 1}, {{mul[a * size + b], c}, -1}, {{mul[a * size + c], b}, -1}});
      }
    }
  MatrixZ h = rows.hermite();
  return cokernel_structure(h.rows() ? h : MatrixZ(1, col.size()), col.size());
}

AbelianGroupStructure cyclic(long long d) { return AbelianGroupStructure{{BigInt(d)}, 0}; }

// Frozen from brute_force_relative_group.
TEST(DennisStein, FullModeMatchesBruteForceOracle) {
  const std::vector<std::pair<GroupSpec, AbelianGroupStructure>> cases{
      {GroupSpec(2, {1}), AbelianGroupStructure::trivial()},
      {GroupSpec(2, {2}), cyclic(2)},
      {GroupSpec(3, {1}), cyclic(3)},
      {GroupSpec(2, {1, 1}), AbelianGroupStructure::elementary(2, 2)},
  };
  for (const auto& [spec, frozen] : cases) {
    EXPECT_EQ(brute_force_relative_group(spec), frozen) << spec.name();
    EXPECT_EQ(group_ring_presentation(spec, PresentationMode::full, 4096).structure(), frozen) << spec.name();
  }
}

TEST(DennisStein, ReducedModeAgreesWithFull) {
  for (const auto& spec : full_mode_specs()) {
    auto full = group_ring_presentation(spec, PresentationMode::full, 4096);
    auto red = group_ring_presentation(spec, PresentationMode::reduced, 4096);
    EXPECT_EQ(full.structure(), red.structure()) << spec.name();
  }
  // beyond the full-mode budget only the reduced model is available
  EXPECT_THROW(group_ring_presentation(GroupSpec(3, {1, 1}), PresentationMode::full, 4096), BudgetError);
  EXPECT_EQ(group_ring_presentation(GroupSpec(3, {1, 1}), PresentationMode::reduced, 4096).structure(), AbelianGroupStructure::elementary(3, 2));
}

TEST(DennisStein, RelationKindsArePresent) {
  auto pres = group_ring_presentation(GroupSpec(2, {1, 1}), PresentationMode::full, 4096);
  const FullPresentation* f = pres.full();
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->generator_count(), 32u);
  EXPECT_GT(f->relation_count(RelationKind::ds1), 0u);
  EXPECT_GT(f->relation_count(RelationKind::ds2), 0u);
  EXPECT_GT(f->relation_count(RelationKind::ds3), 0u);
}

TEST(DennisStein, SymbolParsingAndNormalization) {
  auto ctx = group_ring_context(GroupSpec(2, {1, 1}));
  auto pres = SymbolPresentation::build(make_square_zero_context(ctx.ideal), PresentationMode::full, 4096);
  const auto& alg = *ctx.algebra.algebra();
  // skew symmetry and bilinearity in the square-zero case
  std::string gt = alg.to_text(ctx.gtilde), x1 = alg.to_text(ctx.x[0]);
  EXPECT_TRUE(pres.is_identity(parse_symbol_expr(alg, "<" + x1 + "|" + gt + "> <" + gt + "|" + x1 + ">")));
  EXPECT_TRUE(pres.is_identity(parse_symbol_expr(alg, "<" + x1 + "|" + gt + "> <" + x1 + "|" + gt + ">")));
  EXPECT_FALSE(pres.is_identity(basis_symbol(ctx, 0)));
  EXPECT_FALSE(pres.is_identity({basis_symbol(ctx, 0)[0], basis_symbol(ctx, 1)[0]}));
  EXPECT_THROW(parse_symbol_expr(alg, "<1|"), std::invalid_argument);
  EXPECT_THROW(parse_symbol_expr(alg, "<q|1>"), std::invalid_argument);
}

TEST(DennisStein, ScholiumWordsAreTrivial) {
  std::mt19937_64 rng(53);
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(3, {1}), GroupSpec(2, {2})})
    for (auto mode : {PresentationMode::full, PresentationMode::reduced}) {
      auto pres = group_ring_presentation(spec, mode, 4096);
      const auto& ctx = pres.context();
      for (int t = 0; t < 30; ++t) EXPECT_TRUE(pres.is_identity(scholium_expand(*ctx.ring, random_scholium_tuple(ctx, rng))));
    }
}

TEST(DennisStein, ScholiumNeedsUnit) {
  auto ctx = group_ring_context(GroupSpec(2, {1}));
  const auto& r = *ctx.algebra.algebra();
  EXPECT_THROW(scholium_expand(r, {r.one(), r.one()}), HypothesisError);
  EXPECT_THROW(scholium_expand(r, {}), std::invalid_argument);
}

TEST(DennisStein, PsiNeedsSeveralFactors) {
  auto c = group_ring_context(GroupSpec(2, {1, 1}));
  auto single = SymbolPresentation::build(make_square_zero_context(c.ideal, {c.gtilde}), PresentationMode::full, 4096);
  EXPECT_THROW(psi_triviality_check(single), HypothesisError);
  auto pair = SymbolPresentation::build(make_square_zero_context(c.ideal, c.x), PresentationMode::full, 4096);
  EXPECT_TRUE(psi_triviality_check(pair));
}

TEST(DennisStein, SquareZeroRequired) {
  auto a = PresentedAlgebra(2, {"x"}, {Polynomial::variable(2, 1, 0, 4)});
  auto ideal = ideal_closure(a.algebra(), {a.variable(0)});
  EXPECT_THROW(make_square_zero_context(ideal), HypothesisError);
}

TEST(Rho, KillsRelationsOnlyAboveOrderTwo) {
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(3, {1}), GroupSpec(2, {2})}) {
    auto c = group_ring_context(spec);
    auto pres = SymbolPresentation::build(make_square_zero_context(c.ideal), PresentationMode::full, 4096);
    RhoMap rho(c.ideal, omega(c.algebra));
    EXPECT_TRUE(rho_well_defined(pres, rho).ok()) << spec.name();
  }
  auto c2 = group_ring_context(GroupSpec(2, {1}));
  auto pres = SymbolPresentation::build(make_square_zero_context(c2.ideal), PresentationMode::full, 4096);
  auto check = rho_well_defined(pres, RhoMap(c2.ideal, omega(c2.algebra)));
  EXPECT_FALSE(check.ok());
  EXPECT_EQ(check.failures, 3u);
  EXPECT_EQ(check.relations_checked, 34u);
}

}  // namespace
}  // namespace relk2
