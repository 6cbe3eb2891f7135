#include "itphi/exact_linalg.hpp"
#include "itphi/polynomial.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace itphi;

namespace {

FpMatrix random_matrix(std::uint32_t p, Index r, Index c, std::mt19937_64& rng, int zero_bias = 0) {
  std::uniform_int_distribution<Residue> dist(0, p - 1 + zero_bias);
  FpMatrix m(p, r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) {
      Residue v = dist(rng);
      m.set(i, j, v >= static_cast<Residue>(p) ? 0 : v);
    }
  return m;
}

// Determinant by cofactor expansion; only used on tiny matrices.
Residue det_cofactor(const FpMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  const Residue p = m.prime();
  Residue acc = 0;
  for (Index j = 0; j < n; ++j) {
    std::vector<Index> rows, cols;
    for (Index i = 1; i < n; ++i) rows.push_back(i);
    for (Index k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Residue minor = det_cofactor(m.select_rows(rows).select_cols(cols));
    Residue term = m(0, j) * minor % p;
    acc = (j % 2 == 0) ? (acc + term) % p : (acc - term + p) % p;
  }
  return acc;
}

}  // namespace

TEST(RankFp, IdentityAndZero) {
  EXPECT_EQ(rank_fp(FpMatrix::identity(5, 3)), 3u);
  EXPECT_EQ(rank_fp(FpMatrix(7, 2, 4)), 0u);
}

TEST(RankFp, AllOnesOverF2) {
  EXPECT_EQ(rank_fp(FpMatrix::from_rows(2, {{1, 1}, {1, 1}})), 1u);
}

TEST(RankFp, RejectsCompositeModulus) {
  EXPECT_THROW(FpMatrix(4, 2, 2), std::invalid_argument);
  EXPECT_THROW(FpMatrix(65537, 1, 1), std::invalid_argument);
}

TEST(RankFp, TransposeInvariant) {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 65521u}) {
    for (int t = 0; t < 60; ++t) {
      std::uniform_int_distribution<int> dim(0, 7);
      FpMatrix m = random_matrix(p, dim(rng), dim(rng), rng, t % 3 == 0 ? 4 : 0);
      EXPECT_EQ(rank_fp(m), rank_fp(m.transpose()));
    }
  }
}

TEST(SolveFp, IdentitySystem) {
  FpMatrix b = FpMatrix::from_rows(5, {{1, 4}, {2, 0}, {3, 3}});
  auto sol = solve_fp(FpMatrix::identity(5, 3), b);
  ASSERT_TRUE(sol.consistent());
  EXPECT_EQ(sol.solution_block(), b);
  EXPECT_EQ(sol.nullspace.cols(), 0);
}

TEST(SolveFp, ZeroSystem) {
  auto sol = solve_fp(FpMatrix(3, 2, 3), FpMatrix(3, 2, 1));
  ASSERT_TRUE(sol.consistent());
  EXPECT_TRUE(sol.particular[0]->is_zero());
  EXPECT_EQ(sol.nullspace.cols(), 3);
  EXPECT_EQ(Subspace::span(sol.nullspace), Subspace::span(FpMatrix::identity(3, 3)));
}

TEST(SolveFp, HandEliminationOverF3) {
  auto sol = solve_fp(FpMatrix::from_rows(3, {{1, 1}, {0, 0}}), FpMatrix::vector(3, {2, 0}));
  ASSERT_TRUE(sol.consistent());
  EXPECT_EQ(*sol.particular[0], FpMatrix::vector(3, {2, 0}));
  EXPECT_EQ(Subspace::span(sol.nullspace), Subspace::span(FpMatrix::vector(3, {1, 2})));
}

TEST(SolveFp, InconsistentColumnIsAbsent) {
  auto sol = solve_fp(FpMatrix::from_rows(3, {{1, 1}, {0, 0}}),
                      FpMatrix::from_rows(3, {{1, 1}, {0, 1}}));
  EXPECT_TRUE(sol.particular[0].has_value());
  EXPECT_FALSE(sol.particular[1].has_value());
  EXPECT_FALSE(sol.consistent());
}

TEST(SolveFp, ShapeMismatchThrows) {
  EXPECT_THROW(solve_fp(FpMatrix(3, 2, 2), FpMatrix(3, 3, 1)), std::invalid_argument);
}

TEST(SolveFp, ParticularSolutionsReproduceRhs) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    for (int t = 0; t < 50; ++t) {
      FpMatrix a = random_matrix(p, 5, 6, rng, 2);
      FpMatrix x = random_matrix(p, 6, 3, rng);
      FpMatrix b = a * x;
      auto sol = solve_fp(a, b);
      ASSERT_TRUE(sol.consistent());
      EXPECT_EQ(a * sol.solution_block(), b);
      EXPECT_TRUE((a * sol.nullspace).is_zero());
      EXPECT_EQ(static_cast<std::size_t>(sol.nullspace.cols()) + rank_fp(a), 6u);
    }
  }
}

TEST(Subspace, IntersectionDimensionFormula) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    Subspace a = Subspace::span(random_matrix(3, 6, 3, rng));
    Subspace b = Subspace::span(random_matrix(3, 6, 4, rng));
    Subspace sum = a;
    for (Index j = 0; j < b.dim(); ++j) sum.insert(b.basis().col(j));
    EXPECT_EQ(intersect(a, b).dim(), a.dim() + b.dim() - sum.dim());
  }
}

TEST(CoordinateMap, RoundTrip) {
  std::mt19937_64 rng(5);
  FpMatrix basis = column_space(random_matrix(5, 7, 4, rng));
  CoordinateMap map(basis);
  FpMatrix c = random_matrix(5, basis.cols(), 2, rng);
  EXPECT_EQ(map.coordinates(basis * c), c);
}

TEST(RankInt, Examples) {
  IntMatrix id = IntMatrix::Identity(4, 4);
  EXPECT_EQ(rank_int(id), 4u);
  EXPECT_EQ(rank_int(int_matrix({{1, -1}, {-2, 2}})), 1u);
  EXPECT_EQ(rank_int(int_matrix({{1, 0}, {0, 1}, {1, 1}})), 2u);
}

TEST(RankInt, LargeEntriesStayExact) {
  IntMatrix m(2, 2);
  BigInt big = BigInt(1) << 200;
  m << big, big + 1, big * 3, big * 3 + 3;
  EXPECT_EQ(rank_int(m), 1u);
}

TEST(RankInt, RowSubsetMonotone) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m(6, 5);
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 5; ++j) m(i, j) = (t % 2 == 0 && j > 2) ? 0 : dist(rng);
    IntMatrix sub = m.topRows(3);
    EXPECT_GE(rank_int(m), rank_int(sub));
  }
}

TEST(IntegerLeftKernel, AnnihilatesAndHasComplementaryRank) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> dist(-2, 2);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m(5, 4);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 4; ++j) m(i, j) = dist(rng);
    if (t % 3 == 0) m.row(4) = m.row(0) - 2 * m.row(1);
    IntMatrix k = integer_left_kernel(m);
    IntMatrix prod = multiply(k, m);
    for (Index i = 0; i < prod.rows(); ++i)
      for (Index j = 0; j < prod.cols(); ++j) EXPECT_EQ(prod(i, j), 0);
    EXPECT_EQ(static_cast<std::size_t>(k.rows()) + rank_int(m), 5u);
    EXPECT_EQ(rank_int(k), static_cast<std::size_t>(k.rows()));
  }
}

TEST(IntegerLeftKernel, SaturatedLattice) {
  // rows (2,0) and (1,0): kernel lattice generated by (1,-2), not (2,-4).
  IntMatrix k = integer_left_kernel(int_matrix({{2, 0}, {1, 0}}));
  ASSERT_EQ(k.rows(), 1);
  EXPECT_EQ(abs(k(0, 0)), 1);
  EXPECT_EQ(abs(k(0, 1)), 2);
}

TEST(Polynomial, CharacteristicPolynomialMatchesDeterminant) {
  std::mt19937_64 rng(29);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 20; ++t) {
      const Index n = 1 + t % 5;
      FpMatrix m = random_matrix(p, n, n, rng, t % 2);
      FpPoly chi = characteristic_polynomial(m);
      EXPECT_EQ(chi.degree(), n);
      EXPECT_EQ(chi.leading(), 1);
      for (Residue c = 0; c < static_cast<Residue>(p); ++c) {
        FpMatrix shifted = FpMatrix::identity(p, n).scaled(c) - m;
        Residue expected = det_cofactor(shifted);
        Residue value = 0;
        for (int i = chi.degree(); i >= 0; --i)
          value = (value * c + chi.coeff(static_cast<std::size_t>(i))) % p;
        EXPECT_EQ(value, expected);
      }
      EXPECT_TRUE(evaluate(chi, m).is_zero());
    }
  }
}

TEST(Polynomial, FactorisationMultipliesBack) {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int t = 0; t < 30; ++t) {
      std::uniform_int_distribution<Residue> dist(0, p - 1);
      FpPoly f = FpPoly::constant(p, 1);
      const int pieces = 1 + t % 4;
      for (int k = 0; k < pieces; ++k) {
        std::vector<Residue> c(static_cast<std::size_t>(1 + (t + k) % 4));
        for (auto& v : c) v = dist(rng);
        c.push_back(1);
        FpPoly g(p, c);
        f = f * g * (k % 2 == 0 ? g : FpPoly::constant(p, 1));
      }
      auto parts = factor(f, rng);
      FpPoly prod = FpPoly::constant(p, 1);
      for (const auto& fp : parts) {
        EXPECT_TRUE(is_irreducible(fp.factor));
        for (int i = 0; i < fp.multiplicity; ++i) prod = prod * fp.factor;
      }
      EXPECT_EQ(prod, f.monic());
    }
  }
}

TEST(Polynomial, IrreducibilityOverF2) {
  EXPECT_TRUE(is_irreducible(FpPoly(2, {1, 1, 1})));       // x^2+x+1
  EXPECT_FALSE(is_irreducible(FpPoly(2, {1, 0, 1})));      // (x+1)^2
  EXPECT_TRUE(is_irreducible(FpPoly(2, {1, 1, 0, 1})));    // x^3+x+1
  EXPECT_FALSE(is_irreducible(FpPoly(2, {0, 1, 1, 1, 1})));
}
