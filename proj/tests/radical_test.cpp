#include "itphi/radical.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace itphi;

namespace {

FpMatrix unit_matrix(std::uint32_t p, Index n, Index i, Index j) {
  FpMatrix m(p, n, n);
  m.set(i, j, 1);
  return m;
}

bool nilpotent(const FpMatrix& x) {
  FpMatrix y = x;
  for (Index k = 0; k < x.rows(); ++k) y = y * x;
  return y.is_zero();
}

// Over F2, x lies in the radical iff x*y is nilpotent for every y in the algebra.
Index brute_force_radical_dim(const std::vector<FpMatrix>& basis) {
  const std::uint32_t p = 2;
  const std::size_t s = basis.size();
  std::vector<FpMatrix> elements;
  for (std::uint64_t mask = 0; mask < (1ull << s); ++mask) {
    FpMatrix x(p, basis[0].rows(), basis[0].cols());
    for (std::size_t k = 0; k < s; ++k)
      if (mask >> k & 1) x += basis[k];
    elements.push_back(x);
  }
  Index count = 0;
  for (const auto& x : elements) {
    bool in = true;
    for (const auto& y : elements)
      if (!nilpotent(x * y)) {
        in = false;
        break;
      }
    count += in;
  }
  Index dim = 0;
  while ((Index{1} << dim) < count) ++dim;
  return dim;
}

std::vector<FpMatrix> upper_triangular(std::uint32_t p, Index n) {
  std::vector<FpMatrix> b;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) b.push_back(unit_matrix(p, n, i, j));
  return b;
}

}  // namespace

TEST(Radical, FullMatrixAlgebraIsSemisimple) {
  for (std::uint32_t p : {2u, 3u}) {
    std::vector<FpMatrix> b;
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) b.push_back(unit_matrix(p, 2, i, j));
    EXPECT_EQ(matrix_algebra_radical(b).coordinates.cols(), 0);
  }
}

TEST(Radical, UpperTriangular) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = matrix_algebra_radical(upper_triangular(p, 3));
    EXPECT_EQ(r.coordinates.cols(), 3);
    for (const auto& x : r.elements) EXPECT_TRUE(nilpotent(x));
  }
}

TEST(Radical, TruncatedPolynomialInCharacteristicP) {
  // F_p[x]/(x^n) in its regular representation; n > p exercises the higher trace levels.
  for (std::uint32_t p : {2u, 3u}) {
    for (Index n : {2, 3, 4, 5, 7}) {
      FpMatrix shift(p, n, n);
      for (Index i = 0; i + 1 < n; ++i) shift.set(i + 1, i, 1);
      std::vector<FpMatrix> b{FpMatrix::identity(p, n)};
      for (Index k = 1; k < n; ++k) b.push_back(b.back() * shift);
      EXPECT_EQ(matrix_algebra_radical(b).coordinates.cols(), n - 1) << "p=" << p << " n=" << n;
    }
  }
}

TEST(Radical, GroupAlgebraOfCyclicGroupOrderP) {
  // F_2[C_4]: local, radical of codimension 1; F_3[C_2] is semisimple.
  auto group_algebra = [](std::uint32_t p, Index n) {
    FpMatrix g(p, n, n);
    for (Index i = 0; i < n; ++i) g.set((i + 1) % n, i, 1);
    std::vector<FpMatrix> b{FpMatrix::identity(p, n)};
    for (Index k = 1; k < n; ++k) b.push_back(b.back() * g);
    return b;
  };
  EXPECT_EQ(matrix_algebra_radical(group_algebra(2, 4)).coordinates.cols(), 3);
  EXPECT_EQ(matrix_algebra_radical(group_algebra(3, 2)).coordinates.cols(), 0);
  EXPECT_EQ(matrix_algebra_radical(group_algebra(2, 3)).coordinates.cols(), 0);
}

TEST(Radical, AgreesWithBruteForceOverF2) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 25; ++t) {
    // subalgebra generated by random upper-block-triangular matrices
    const Index n = 4;
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<FpMatrix> gens{FpMatrix::identity(2, n)};
    for (int g = 0; g < 2; ++g) {
      FpMatrix m(2, n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          if (!(i >= 2 && j < 2)) m.set(i, j, coin(rng));
      gens.push_back(m);
    }
    std::vector<FpMatrix> flat, basis;
    Subspace span = Subspace::span(FpMatrix(2, n * n, 0));
    std::vector<FpMatrix> queue = gens;
    while (!queue.empty()) {
      FpMatrix x = queue.back();
      queue.pop_back();
      if (!span.insert(flatten(x))) continue;
      basis.push_back(x);
      for (const auto& g : gens) queue.push_back(x * g);
    }
    if (basis.size() > 12) continue;
    EXPECT_EQ(matrix_algebra_radical(basis).coordinates.cols(), brute_force_radical_dim(basis));
  }
}

TEST(Locality, ExtensionFieldIsLocal) {
  // F_2[x]/(x^2+x+1) is a field.
  FpMatrix c = FpMatrix::from_rows(2, {{0, 1}, {1, 1}});
  std::vector<FpMatrix> b{FpMatrix::identity(2, 2), c};
  std::mt19937_64 rng(1);
  auto rad = matrix_algebra_radical(b);
  auto cert = locality_certificate(b, rad, FpMatrix::identity(2, 2), rng);
  EXPECT_TRUE(cert.local);
  EXPECT_EQ(cert.minimal_polynomial.degree(), 2);
}

TEST(Locality, SplitAlgebraIsNotLocal) {
  // F_2 x F_2 as diagonal matrices.
  std::vector<FpMatrix> b{unit_matrix(2, 2, 0, 0), unit_matrix(2, 2, 1, 1)};
  std::mt19937_64 rng(1);
  auto rad = matrix_algebra_radical(b);
  EXPECT_FALSE(locality_certificate(b, rad, FpMatrix::identity(2, 2), rng).local);
}
