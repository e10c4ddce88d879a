#include "relk2/kahler.hpp"

#include <gtest/gtest.h>

#include <random>

namespace relk2 {
namespace {

ModVec random_elem(const FiniteAlgebra& a, std::mt19937_64& rng) {
  ModVec v(a.dim());
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % a.p());
  return v;
}

void expect_leibniz(const DifferentialModule& w, std::mt19937_64& rng, int samples) {
  const auto& alg = *w.algebra;
  const std::uint32_t p = alg.p();
  for (int t = 0; t < samples; ++t) {
    ModVec a = random_elem(alg, rng), b = random_elem(alg, rng);
    DiffForm lhs = w.d(alg.mul(a, b)), da = w.d(a), db = w.d(b), sum = w.d(vec_add(a, b, p));
    DiffForm rhs(w.rank()), lin(w.rank());
    for (std::size_t g = 0; g < w.rank(); ++g) {
      rhs[g] = vec_add(alg.mul(a, db[g]), alg.mul(b, da[g]), p);
      lin[g] = vec_add(da[g], db[g], p);
    }
    EXPECT_TRUE(w.module.is_zero_class(vec_sub(w.ambient(lhs), w.ambient(rhs), p)));
    EXPECT_TRUE(w.module.is_zero_class(vec_sub(w.ambient(sum), w.ambient(lin), p)));
  }
  EXPECT_TRUE(w.module.is_zero_class(w.ambient(w.d(alg.one()))));
}

TEST(Omega, GroupRingIsFree) {
  for (const auto& spec : {GroupSpec(3, {1}), GroupSpec(2, {1, 1}), GroupSpec(5, {1}), GroupSpec(2, {1, 2, 1})}) {
    auto w = omega_group_ring(spec);
    EXPECT_TRUE(w.relations_vanish());
    EXPECT_EQ(w.structure(), AbelianGroupStructure::elementary(spec.p(), spec.rank() * spec.order()));
  }
}

TEST(Omega, LeibnizAndLinearity) {
  std::mt19937_64 rng(47);
  expect_leibniz(omega_group_ring(GroupSpec(2, {1, 2})), rng, 30);
  expect_leibniz(omega(PresentedAlgebra(3, {"x"}, {Polynomial::variable(3, 1, 0, 4)})), rng, 30);
}

TEST(Omega, CoprimeCharacteristicKillsDifferentials) {
  // over F_2, d(x^3 - 1) = x^2 dx and x^2 is a unit
  auto w = omega(PresentedAlgebra(2, {"x"}, {Polynomial::variable(2, 1, 0, 3) - Polynomial::constant(2, 1, 1)}));
  EXPECT_FALSE(w.relations_vanish());
  EXPECT_TRUE(w.structure().is_trivial());
}

TEST(Omega, TruncatedPolynomial) {
  // F_3[x]/(x^2): d(x^2) = 2x dx, so Omega = T/(x)
  auto w3 = omega(PresentedAlgebra(3, {"x"}, {Polynomial::variable(3, 1, 0, 2)}));
  EXPECT_EQ(w3.module.dim(), 1u);
  // F_2[x]/(x^2): the relation differentiates to 0
  auto w2 = omega(PresentedAlgebra(2, {"x"}, {Polynomial::variable(2, 1, 0, 2)}));
  EXPECT_TRUE(w2.is_free());
}

TEST(Omega, QuotientMatchesDirectPresentation) {
  // Omega of F_2[C4]/(x^2) two ways
  GroupSpec spec(2, {2});
  auto s = PresentedAlgebra::group_ring(spec);
  ModVec x = to_algebra_vector(x_element(spec, 2, 1));
  auto q = quotient_algebra(s.algebra(), ideal_closure(s.algebra(), {s.algebra()->mul(x, x)}));
  auto via_s = omega(s, q);
  auto via_base = omega(omega(s), q);
  EXPECT_EQ(via_s.module.dim(), via_base.module.dim());
  // direct: F_2[g]/(g^4 - 1, (g - 1)^2) = F_2[g]/(g^2 + 1) and d(g^2 + 1) = 0
  EXPECT_EQ(via_s.module.dim(), 2u);
}

TEST(Conormal, SequenceIsExact) {
  Presentation s{2, {"x"}, {Polynomial::variable(2, 1, 0, 4)}};
  auto r = conormal_check(s, {Polynomial::variable(2, 1, 0, 2)});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.quotient_dim, 2u);
  EXPECT_EQ(r.omega_dim, 2u);
  Presentation g{3, {"a", "b"}, {Polynomial::variable(3, 2, 0, 3) - Polynomial::constant(3, 2, 1), Polynomial::variable(3, 2, 1, 3) - Polynomial::constant(3, 2, 1)}};
  auto r2 = conormal_check(g, {Polynomial::variable(3, 2, 0, 1) - Polynomial::constant(3, 2, 1)});
  EXPECT_TRUE(r2.ok());
  EXPECT_EQ(r2.omega_dim, 3u);  // F_3[b]/(b^3 - 1), free of rank 1
}

TEST(PresentedAlgebra, RejectsMixedRelations) {
  auto xy = Polynomial::variable(2, 2, 0) * Polynomial::variable(2, 2, 1);
  EXPECT_THROW(PresentedAlgebra(2, {"x", "y"}, {xy, Polynomial::variable(2, 2, 0, 2), Polynomial::variable(2, 2, 1, 2)}), ScopeError);
  EXPECT_THROW(PresentedAlgebra(2, {"x"}, {}), ScopeError);
}

}  // namespace
}  // namespace relk2
