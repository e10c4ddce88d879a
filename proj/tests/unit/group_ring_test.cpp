#include "relk2/group_ring.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace relk2 {
namespace {

RingElement random_element(const GroupSpec& spec, const BigInt& modulus, std::mt19937_64& rng) {
  std::vector<BigInt> c(spec.order());
  for (auto& x : c) x = modulus == 0 ? BigInt(static_cast<int>(rng() % 11) - 5) : BigInt(rng() % static_cast<std::uint64_t>(modulus));
  return RingElement::from_coeffs(spec, modulus, c);
}

// Convolution over exponent tuples, without the index arithmetic.
RingElement convolve_oracle(const RingElement& a, const RingElement& b) {
  const GroupSpec& spec = a.spec();
  std::map<std::vector<std::uint64_t>, BigInt> acc;
  for (std::size_t i = 0; i < spec.order(); ++i)
    for (std::size_t j = 0; j < spec.order(); ++j) {
      auto e = spec.exponents_of(i), f = spec.exponents_of(j);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = (e[k] + f[k]) % spec.cyclic_order(k);
      acc[e] += a.coeff(i) * b.coeff(j);
    }
  RingElement out(spec, a.modulus());
  for (const auto& [e, c] : acc) out += RingElement::monomial(spec, a.modulus(), e, c);
  return out;
}

TEST(GroupSpec, IndexRoundTrip) {
  GroupSpec spec(3, {1, 2});
  EXPECT_EQ(spec.order(), 27u);
  EXPECT_EQ(spec.name(), "C3 x C9");
  for (std::size_t i = 0; i < spec.order(); ++i) EXPECT_EQ(spec.index_of(spec.exponents_of(i)), i);
  // lexicographic with g1 most significant
  EXPECT_EQ(spec.generator_index(0), 9u);
  EXPECT_EQ(spec.generator_index(1), 1u);
}

TEST(GroupSpec, RejectsBadInput) {
  EXPECT_THROW(GroupSpec(4, {1}), std::invalid_argument);
  EXPECT_THROW(GroupSpec(2, {}), std::invalid_argument);
  EXPECT_THROW(GroupSpec(2, {0}), std::invalid_argument);
  EXPECT_THROW(GroupSpec(2, {17}), BudgetError);
}

TEST(RingElement, MultiplicationMatchesConvolutionOracle) {
  std::mt19937_64 rng(7);
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(3, {1}), GroupSpec(2, {2, 1}), GroupSpec(5, {1})})
    for (const BigInt& m : {BigInt(0), BigInt(spec.p()), BigInt(8)})
      for (int t = 0; t < 10; ++t) {
        auto a = random_element(spec, m, rng), b = random_element(spec, m, rng);
        EXPECT_EQ(a * b, convolve_oracle(a, b)) << spec.name() << " mod " << m;
      }
}

TEST(RingElement, RingAxiomsOnRandomSamples) {
  std::mt19937_64 rng(11);
  for (const auto& spec : {GroupSpec(2, {1, 2}), GroupSpec(3, {1, 1})})
    for (const BigInt& m : {BigInt(0), BigInt(spec.p())}) {
      auto one = RingElement::one(spec, m);
      for (int t = 0; t < 25; ++t) {
        auto a = random_element(spec, m, rng), b = random_element(spec, m, rng), c = random_element(spec, m, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * one, a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(augmentation(a * b), m == 0 ? augmentation(a) * augmentation(b) : floor_mod(augmentation(a) * augmentation(b), m));
      }
    }
}

TEST(RingElement, TextRoundTrip) {
  GroupSpec spec(3, {1, 2});
  auto a = RingElement::parse(spec, 3, "1 + 2*g1*g2^4 - g2");
  EXPECT_EQ(a.to_text(), "1 + 2*g2 + 2*g1*g2^4");
  EXPECT_EQ(RingElement::parse(spec, 3, a.to_text()), a);
  EXPECT_EQ(RingElement::parse(spec, 3, "g1^3"), RingElement::one(spec, 3));
  EXPECT_THROW(RingElement::parse(spec, 3, "g3"), std::out_of_range);
  EXPECT_THROW(RingElement::parse(spec, 3, "2*h"), std::invalid_argument);
  EXPECT_EQ(RingElement(spec, 3).to_text(), "0");
}

TEST(RingElement, MismatchedOperandsThrow) {
  auto a = RingElement::one(GroupSpec(2, {1}), 2), b = RingElement::one(GroupSpec(2, {2}), 2);
  EXPECT_THROW(a + b, MismatchError);
  EXPECT_THROW(a * RingElement::one(GroupSpec(2, {1}), 4), MismatchError);
}

TEST(Gtilde, FactorizationExamples) {
  // F_2[C2]: G~ = 1 + g = g - 1 = x.
  GroupSpec c2(2, {1});
  EXPECT_EQ(gtilde(c2, 2), x_element(c2, 2, 1));
  EXPECT_TRUE(gtilde_factorization_check(c2));
  // F_3[C3]: (g - 1)^2 = g^2 - 2g + 1 = 1 + g + g^2.
  GroupSpec c3(3, {1});
  EXPECT_EQ(pow(x_element(c3, 3, 1), 2).to_text(), "1 + g1 + g1^2");
  EXPECT_TRUE(gtilde_factorization_check(GroupSpec(2, {1, 2})));
  EXPECT_TRUE(gtilde_factorization_check(GroupSpec(5, {1, 1})));
}

TEST(Gtilde, FailsOverTheIntegers) {
  GroupSpec spec(2, {1, 1});
  RingElement prod = RingElement::one(spec, 0);
  for (std::size_t j = 1; j <= 2; ++j) prod = prod * x_element(spec, 0, j);
  EXPECT_NE(prod, gtilde(spec, 0));
}

TEST(Gtilde, AnnihilatedByX) {
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(3, {2}), GroupSpec(5, {1})})
    for (std::size_t i = 1; i <= spec.rank(); ++i) EXPECT_TRUE((x_element(spec, spec.p(), i) * gtilde(spec, spec.p())).is_zero());
}

}  // namespace
}  // namespace relk2
