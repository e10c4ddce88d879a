#include "relk2/linear_mod_p.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace relk2 {
namespace {

ModVec random_vec(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
  ModVec v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
  return v;
}

// All p^k combinations of the given vectors.
std::set<ModVec> span_by_enumeration(std::uint32_t p, std::size_t n, const std::vector<ModVec>& gens) {
  std::set<ModVec> out{ModVec(n, 0)};
  for (const auto& g : gens) {
    std::set<ModVec> next;
    for (const auto& v : out)
      for (std::uint32_t c = 0; c < p; ++c) next.insert(vec_add(v, vec_scale(g, c, p), p));
    out = std::move(next);
  }
  return out;
}

TEST(Rref, RankAndKernelAgainstEnumeration) {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 20; ++t) {
      std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      MatrixModP m(p, rows, cols);
      std::vector<ModVec> rs;
      for (std::size_t i = 0; i < rows; ++i) {
        rs.push_back(random_vec(p, cols, rng));
        std::copy(rs.back().begin(), rs.back().end(), m.row(i).begin());
      }
      std::size_t r = rank(m);
      std::size_t expect = 0;
      for (std::size_t s = span_by_enumeration(p, cols, rs).size(); s > 1; s /= p) ++expect;
      EXPECT_EQ(r, expect);
      auto ker = kernel_basis(m);
      EXPECT_EQ(ker.size(), cols - r);
      for (const auto& v : ker)
        for (const auto& row : rs) {
          std::uint64_t acc = 0;
          for (std::size_t j = 0; j < cols; ++j) acc += static_cast<std::uint64_t>(row[j]) * v[j];
          EXPECT_EQ(acc % p, 0u);
        }
    }
}

TEST(EchelonBasis, MembershipMatchesEnumeratedSpan) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u})
    for (auto order : {PivotOrder::lowest, PivotOrder::highest})
      for (int t = 0; t < 10; ++t) {
        const std::size_t n = 4;
        std::vector<ModVec> gens;
        EchelonBasis b(p, n, order);
        for (int k = 0; k < 3; ++k) {
          gens.push_back(random_vec(p, n, rng));
          b.insert(gens.back());
        }
        auto span = span_by_enumeration(p, n, gens);
        EXPECT_EQ(std::size_t(std::pow(p, b.rank()) + 0.5), span.size());
        for (const auto& v : span_by_enumeration(p, n, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})) {
          EXPECT_EQ(b.contains(v), span.count(v) == 1);
          if (auto c = b.coordinates(v)) {
            ModVec back(n, 0);
            for (std::size_t k = 0; k < c->size(); ++k) back = vec_add(back, vec_scale(b.rows()[k], (*c)[k], p), p);
            EXPECT_EQ(back, v);
          }
          // v and its reduction differ by a member
          EXPECT_TRUE(b.contains(vec_sub(v, b.reduce(v), p)));
        }
        EXPECT_EQ(b.free_columns().size(), n - b.rank());
      }
}

TEST(EchelonBasis, HighestPivotLeavesIdentityFree) {
  EchelonBasis b(2, 3, PivotOrder::highest);
  b.insert({1, 1, 0});
  b.insert({0, 1, 1});
  EXPECT_FALSE(b.is_pivot(0));
  EXPECT_EQ(b.free_columns(), std::vector<std::size_t>{0});
}

TEST(MatrixModP, RejectsCompositeModulus) { EXPECT_THROW(MatrixModP(6, 1, 1), std::invalid_argument); }

}  // namespace
}  // namespace relk2
