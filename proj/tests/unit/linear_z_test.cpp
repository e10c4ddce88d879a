#include "relk2/linear_z.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace relk2 {
namespace {

MatrixZ random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  MatrixZ m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

bool unimodular(const MatrixZ& m) {
  BigInt d = determinant(m);
  return d == 1 || d == -1;
}

// Order of Z^n / rowspan(M) for full-rank M by counting residues in a box:
// each coset meets [0, N)^n in exactly N^n / index points when N is a
// multiple of the exponent.
std::size_t cokernel_order_by_box(const MatrixZ& m, long long box) {
  std::size_t n = m.cols();
  MatrixZ h = hnf(m);
  std::set<std::vector<BigInt>> reps;
  std::vector<long long> x(n, 0);
  std::size_t total = 0;
  for (;;) {
    std::vector<BigInt> v(x.begin(), x.end());
    // canonical representative: reduce by the Hermite basis
    for (std::size_t k = 0; k < h.rows(); ++k) {
      std::size_t c = 0;
      while (h.at(k, c) == 0) ++c;
      BigInt q = floor_div(v[c], h.at(k, c));
      for (std::size_t j = 0; j < n; ++j) v[j] -= q * h.at(k, j);
    }
    reps.insert(v);
    ++total;
    std::size_t i = 0;
    while (i < n && ++x[i] == box) x[i++] = 0;
    if (i == n) break;
  }
  (void)total;
  return reps.size();
}

TEST(Smith, SmallExample) {
  MatrixZ m{{2, 0}, {0, 3}};
  auto s = snf(m);
  EXPECT_EQ(s.d, (MatrixZ{{1, 0}, {0, 6}}));
  EXPECT_EQ(s.u * m * s.v, s.d);
  EXPECT_EQ(cokernel_structure(m, 2).to_string(), "Z/6");
}

TEST(Smith, RandomDecompositionsAreValid) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 20);
    auto s = snf(m);
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_TRUE(unimodular(s.u));
    EXPECT_TRUE(unimodular(s.v));
    for (std::size_t i = 0; i < s.d.rows(); ++i)
      for (std::size_t j = 0; j < s.d.cols(); ++j)
        if (i != j) {
          EXPECT_EQ(s.d.at(i, j), 0);
        }
    std::size_t k = std::min(s.d.rows(), s.d.cols());
    for (std::size_t i = 0; i + 1 < k; ++i) {
      EXPECT_GE(s.d.at(i, i), 0);
      if (s.d.at(i, i) != 0) {
        EXPECT_EQ(s.d.at(i + 1, i + 1) % s.d.at(i, i), 0);
      } else {
        EXPECT_EQ(s.d.at(i + 1, i + 1), 0);
      }
    }
  }
}

TEST(Cokernel, OrderMatchesBoxEnumeration) {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 15) {
    auto m = random_matrix(rng, 2, 2, 4);
    BigInt det = determinant(m);
    if (det == 0) continue;
    auto s = cokernel_structure(m, 2);
    ASSERT_TRUE(s.is_finite());
    long long box = static_cast<long long>(det < 0 ? BigInt(-det) : det);
    EXPECT_EQ(BigInt(cokernel_order_by_box(m, box)), s.order());
    ++checked;
  }
}

TEST(Cokernel, FreePartAndTrivial) {
  EXPECT_EQ(cokernel_structure(MatrixZ{{2, 4, 0}}, 3).to_string(), "Z/2 x Z x Z");
  EXPECT_TRUE(cokernel_structure(MatrixZ{{1, 0}, {0, -1}}, 2).is_trivial());
}

TEST(Hermite, IndependentOfGeneratingSet) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    auto m = random_matrix(rng, 3, 4, 9);
    // mix rows by a random unimodular matrix and append a redundant row
    MatrixZ u = MatrixZ::identity(3);
    for (int k = 0; k < 6; ++k) {
      std::size_t a = rng() % 3, b = rng() % 3;
      if (a != b) u.add_row_multiple(a, b, static_cast<long long>(rng() % 7) - 3);
    }
    MatrixZ mixed = u * m;
    std::vector<BigInt> extra(4);
    for (std::size_t j = 0; j < 4; ++j) extra[j] = 2 * m.at(0, j) - m.at(2, j);
    mixed.append_row(extra);
    EXPECT_EQ(hnf(m), hnf(mixed));
    EXPECT_EQ(hnf(m), hermite_decompose(m).h.top_rows(hermite_decompose(m).rank));
  }
}

TEST(Hermite, DecompositionTracksTransform) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 10);
    auto h = hermite_decompose(m);
    EXPECT_EQ(h.u * m, h.h);
    EXPECT_TRUE(unimodular(h.u));
  }
}

TEST(Lattice, IntersectionMatchesBoxMembership) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 10; ++t) {
    MatrixZ a = random_matrix(rng, 2, 2, 5), b = random_matrix(rng, 2, 2, 5);
    if (determinant(a) == 0 || determinant(b) == 0) continue;
    MatrixZ ha = hnf(a), hb = hnf(b), hi = hnf(lattice_intersect(a, b));
    for (long long x = -12; x <= 12; ++x)
      for (long long y = -12; y <= 12; ++y) {
        std::vector<BigInt> v{x, y};
        EXPECT_EQ(lattice_contains(hi, v), lattice_contains(ha, v) && lattice_contains(hb, v));
      }
    MatrixZ hs = hnf(lattice_sum(a, b));
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_TRUE(lattice_contains(hs, a.row(i)));
      EXPECT_TRUE(lattice_contains(hs, b.row(i)));
    }
  }
}

TEST(ExtendedGcd, Bezout) {
  for (long long a = -15; a <= 15; ++a)
    for (long long b = -15; b <= 15; ++b) {
      auto e = extended_gcd(a, b);
      EXPECT_EQ(e.x * a + e.y * b, e.g);
      EXPECT_EQ(e.g, boost::multiprecision::gcd(BigInt(a), BigInt(b)));
    }
}

}  // namespace
}  // namespace relk2
