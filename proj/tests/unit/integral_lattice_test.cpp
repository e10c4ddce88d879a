#include "relk2/integral_lattice.hpp"

#include <gtest/gtest.h>

#include <random>

namespace relk2 {
namespace {

// [Z^n : I] by counting members of I in the box [0, N)^n. A vector v of
// Z[G] lies in |G| * Gamma exactly when X v = 0 mod |G| (X the character
// table, X^2 = |G| * Id); I adds the condition v = 0 mod 2.
std::uint64_t index_by_box(std::size_t r, long long box) {
  const std::size_t n = std::size_t{1} << r;
  std::vector<long long> v(n, 0);
  std::uint64_t members = 0, total = 0;
  for (;;) {
    bool in = true;
    for (std::size_t c = 0; c < n && in; ++c) {
      long long s = 0;
      for (std::size_t g = 0; g < n; ++g) s += (std::popcount(c & g) % 2 ? -1 : 1) * v[g];
      in = s % static_cast<long long>(n) == 0;
    }
    for (std::size_t g = 0; g < n && in; ++g) in = v[g] % 2 == 0;
    members += in;
    ++total;
    std::size_t i = 0;
    while (i < n && ++v[i] == box) v[i++] = 0;
    if (i == n) break;
  }
  return total / members;
}

TEST(CharacterLattice, CharacterTableIsOrthogonal) {
  auto lat = build_lattices(GroupSpec(2, {1, 1}));
  EXPECT_EQ(lat.char_matrix * lat.char_matrix.transpose(), [] {
    MatrixZ m = MatrixZ::identity(4);
    for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = 4;
    return m;
  }());
  // first character is trivial
  for (std::size_t g = 0; g < 4; ++g) EXPECT_EQ(lat.char_matrix.at(0, g), 1);
}

TEST(CharacterLattice, IndicesMatchBoxCount) {
  EXPECT_EQ(index_by_box(1, 4), 4u);
  EXPECT_EQ(index_by_box(2, 8), 32u);
  for (std::size_t r = 1; r <= 2; ++r) {
    std::vector<unsigned> e(r, 1);
    GroupSpec spec(2, e);
    auto ri = quotient_ring(build_lattices(spec), WhichIdeal::i);
    EXPECT_EQ(ri.size(), BigInt(index_by_box(r, r == 1 ? 4 : 8)));
  }
}

TEST(CharacterLattice, RingSizes) {
  // frozen from the box count for r <= 2
  const std::vector<std::pair<long long, long long>> sizes{{4, 2}, {32, 16}, {8192, 4096}};
  for (std::size_t r = 1; r <= 3; ++r) {
    auto lat = build_lattices(GroupSpec(2, std::vector<unsigned>(r, 1)));
    EXPECT_EQ(quotient_ring(lat, WhichIdeal::i).size(), sizes[r - 1].first);
    EXPECT_EQ(quotient_ring(lat, WhichIdeal::j).size(), sizes[r - 1].second);
    EXPECT_TRUE(relation_checks(lat).all());
    // [Gamma : Z[G]] = n^(n/2)
    const std::size_t n = lat.dim();
    EXPECT_EQ(lattice_index(lat.zg), boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n / 2)));
  }
}

TEST(CharacterLattice, Scope) {
  EXPECT_THROW(build_lattices(GroupSpec(3, {1})), ScopeError);
  EXPECT_THROW(build_lattices(GroupSpec(2, {2})), ScopeError);
  EXPECT_THROW(build_lattices(GroupSpec(2, {1, 1, 1, 1, 1})), ScopeError);
}

TEST(CharacterLattice, CoordinateRoundTrip) {
  auto lat = build_lattices(GroupSpec(2, {1, 1}));
  std::mt19937_64 rng(59);
  for (int t = 0; t < 20; ++t) {
    std::vector<BigInt> v(4);
    for (auto& x : v) x = static_cast<long long>(rng() % 21) - 10;
    EXPECT_EQ(to_group(lat, to_characters(lat, v)), v);
  }
  EXPECT_THROW(to_group(lat, {1, 0, 0, 0}), ArithmeticError);
}

void expect_ring_axioms(const FiniteQuotientRing& q) {
  const auto n = static_cast<std::uint64_t>(q.size());
  std::vector<BigInt> one(q.spec().order());
  one[0] = 1;
  for (std::uint64_t a = 0; a < n; ++a) {
    auto x = q.element(a);
    EXPECT_EQ(q.index_of(x), a);
    EXPECT_EQ(q.mul(x, q.reduce(one)), x);
    for (std::uint64_t b = 0; b < n; ++b) {
      auto y = q.element(b);
      EXPECT_EQ(q.mul(x, y), q.mul(y, x));
      for (std::uint64_t c = 0; c < n; c += 3) {
        auto z = q.element(c);
        ASSERT_EQ(q.mul(q.mul(x, y), z), q.mul(x, q.mul(y, z)));
        ASSERT_EQ(q.mul(x, q.add(y, z)), q.add(q.mul(x, y), q.mul(x, z)));
      }
    }
  }
}

TEST(FiniteQuotientRing, RingAxioms) {
  auto lat1 = build_lattices(GroupSpec(2, {1}));
  expect_ring_axioms(quotient_ring(lat1, WhichIdeal::i));
  auto lat2 = build_lattices(GroupSpec(2, {1, 1}));
  expect_ring_axioms(quotient_ring(lat2, WhichIdeal::j));
  expect_ring_axioms(quotient_ring(lat2, WhichIdeal::i));
}

TEST(FiniteQuotientRing, EnumerationMatchesArithmetic) {
  auto q = quotient_ring(build_lattices(GroupSpec(2, {1, 1})), WhichIdeal::i);
  auto e = q.enumerate();
  ASSERT_EQ(e.size(), 32u);
  for (std::uint32_t a = 0; a < 32; ++a)
    for (std::uint32_t b = 0; b < 32; ++b) EXPECT_EQ(e.mul(a, b), q.index_of(q.mul(q.element(a), q.element(b))));
  EXPECT_THROW(quotient_ring(build_lattices(GroupSpec(2, {1, 1, 1})), WhichIdeal::i).enumerate(), BudgetError);
}

}  // namespace
}  // namespace relk2
