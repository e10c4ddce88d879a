#include "relk2/sparse_cokernel.hpp"

#include <gtest/gtest.h>

#include <random>

namespace relk2 {
namespace {

MatrixZ dense_of(const std::vector<SparseRelation>& rels, std::size_t gens) {
  MatrixZ m(rels.size(), gens);
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (const auto& [c, v] : rels[i]) m.at(i, c) += v;
  return m;
}

TEST(SparseCokernel, AgreesWithDenseSmith) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    std::size_t gens = 1 + rng() % 8, nrel = rng() % 10;
    std::vector<SparseRelation> rels(nrel);
    for (auto& r : rels) {
      std::size_t terms = 1 + rng() % 3;
      for (std::size_t k = 0; k < terms; ++k) r.emplace_back(rng() % gens, static_cast<std::int64_t>(rng() % 9) - 4);
    }
    SparseCokernel sc(gens, rels);
    AbelianGroupStructure expect;
    expect.free_rank = gens;
    if (nrel) expect = cokernel_structure(dense_of(rels, gens), gens);
    EXPECT_EQ(sc.structure(), expect);
  }
}

TEST(SparseCokernel, CoordinatesDetectRelations) {
  // <a, b | 2a, 3b, a + b - c> : Z/6 on c.
  std::vector<SparseRelation> rels{{{0, 2}}, {{1, 3}}, {{0, 1}, {1, 1}, {2, -1}}};
  SparseCokernel sc(3, rels);
  EXPECT_EQ(sc.structure().to_string(), "Z/6");
  for (const auto& r : rels) {
    std::vector<std::pair<std::uint32_t, BigInt>> w;
    for (auto [c, v] : r) w.emplace_back(c, v);
    for (const auto& x : sc.coordinates(w)) EXPECT_EQ(x, 0);
  }
  auto c = sc.coordinates({{2, 1}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NE(c[0], 0);
  EXPECT_EQ(sc.coordinates({{2, 6}})[0], 0);
}

TEST(SparseCokernel, OverflowFallsBackToBigInt) {
  const std::int64_t big = std::int64_t(1) << 40;
  std::vector<SparseRelation> rels{{{0, big}, {1, big + 1}}, {{0, big - 1}, {1, big}}, {{0, 3}}};
  SparseCokernel sc(2, rels);
  EXPECT_EQ(sc.structure(), cokernel_structure(dense_of(rels, 2), 2));
}

}  // namespace
}  // namespace relk2
