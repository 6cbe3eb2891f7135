#include "itphi/krull_schmidt.hpp"
#include "itphi/errors.hpp"
#include "itphi/quiver.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace itphi;
using namespace itphi::fixtures;

namespace {

std::vector<AlgebraPtr> test_algebras() {
  return {fix1(), fix2(), fix3(), fix4(), fix5(), fix1(3), fix3(5),
          to_algebra(nakayama_from_kupisch({false, {3, 2, 2, 1}}, 3))};
}

FpMatrix random_invertible(std::uint32_t p, Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> d(0, p - 1);
  for (;;) {
    FpMatrix g(p, n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) g.set(i, j, d(rng));
    if (inverse(g)) return g;
  }
}

std::vector<int> dims_of(const Decomposition& d) {
  std::vector<int> out;
  for (const auto& s : d.summands)
    for (int c = 0; c < s.multiplicity; ++c) out.push_back(static_cast<int>(s.module.dim()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(EndomorphismRing, SimpleHasZeroRadical) {
  for (auto a : test_algebras())
    for (int v = 0; v < a->vertex_count(); ++v) {
      auto e = endomorphism_ring(simple_module(a, v));
      EXPECT_EQ(e.basis.size(), 1u);
      EXPECT_EQ(e.radical.coordinates.cols(), 0);
    }
}

TEST(EndomorphismRing, ProjectiveOfThreeVertexQuiver) {
  auto a = fix3();
  auto e = endomorphism_ring(projective_module(a, 0));
  EXPECT_EQ(e.basis.size(), 1u);
  auto b = fix1();
  auto loop = endomorphism_ring(projective_module(b, 0));
  EXPECT_EQ(loop.basis.size(), 2u);
  EXPECT_EQ(loop.radical.coordinates.cols(), 1);
}

TEST(EndomorphismRing, SquareOfSimpleIsSemisimple) {
  auto a = fix1();
  auto e = endomorphism_ring(power(simple_module(a, 0), 2));
  EXPECT_EQ(e.basis.size(), 4u);
  EXPECT_EQ(e.radical.coordinates.cols(), 0);
}

TEST(Indecomposable, Examples) {
  auto a = fix2();
  EXPECT_TRUE(is_indecomposable(interval(a, 1, 3)).indecomposable);
  EXPECT_TRUE(is_indecomposable(projective_module(a, 1)).indecomposable);
  EXPECT_FALSE(is_indecomposable(direct_sum(simple_module(a, 0), simple_module(a, 1))).indecomposable);
  EXPECT_FALSE(is_indecomposable(regular_module(a)).indecomposable);
  EXPECT_TRUE(is_indecomposable(regular_module(fix1())).indecomposable);
  EXPECT_THROW(is_indecomposable(Module::zero(a)), std::invalid_argument);
}

TEST(Decompose, RegularModuleOfLinearQuiver) {
  auto a = fix2();
  auto d = decompose(regular_module(a));
  ASSERT_EQ(d.summands.size(), 3u);
  IsoRegistry reg(a);
  std::vector<int> got, want;
  for (const auto& s : d.summands) {
    EXPECT_EQ(s.multiplicity, 1);
    got.push_back(reg.class_of(s.module));
  }
  for (int v = 0; v < 3; ++v) want.push_back(reg.class_of(projective_module(a, v)));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Decompose, SquareHasMultiplicityTwo) {
  for (auto a : test_algebras()) {
    Module m = projective_module(a, 0);
    auto d = decompose(power(m, 2));
    ASSERT_EQ(d.summands.size(), 1u);
    EXPECT_EQ(d.summands[0].multiplicity, 2);
  }
}

TEST(Decompose, TwoClasses) {
  auto a = fix3();
  auto d = decompose(direct_sum(simple_module(a, 0), projective_module(a, 2)));
  EXPECT_EQ(d.summands.size(), 2u);
}

TEST(Decompose, ReassemblyIsIsomorphism) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (auto a : test_algebras())
    for (int t = 0; t < 8; ++t) {
      Module m = random_quotient_module(a, rng, 3, 2);
      if (m.dim() == 0) continue;
      auto d = decompose(m, t);
      ASSERT_EQ(d.reassembly.rows(), m.dim());
      ASSERT_EQ(d.reassembly.cols(), m.dim());
      EXPECT_TRUE(inverse(d.reassembly).has_value());
      std::vector<Module> copies;
      for (const auto& s : d.summands) {
        EXPECT_TRUE(s.certificate.indecomposable);
        for (const auto& inc : s.inclusions) {
          EXPECT_TRUE(is_homomorphism(s.module, m, inc));
          copies.push_back(s.module);
        }
      }
      EXPECT_TRUE(is_homomorphism(direct_sum(copies, a), m, d.reassembly));
      ++checked;
    }
  EXPECT_GT(checked, 40);
}

TEST(Decompose, SeedIndependentMultiset) {
  std::mt19937_64 rng(12);
  for (auto a : test_algebras()) {
    IsoRegistry reg(a);
    for (int t = 0; t < 4; ++t) {
      Module m = random_quotient_module(a, rng, 3, 2);
      if (m.dim() == 0) continue;
      std::map<int, int> first;
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto d = decompose(m, seed);
        std::map<int, int> classes;
        for (const auto& s : d.summands) classes[reg.class_of(s.module, &s.certificate)] += s.multiplicity;
        if (seed == 1) first = classes;
        EXPECT_EQ(classes, first);
      }
    }
  }
}

TEST(Decompose, ListOfParts) {
  auto a = fix2();
  auto d = decompose({simple_module(a, 0), interval(a, 1, 2), simple_module(a, 0)}, a);
  EXPECT_EQ(dims_of(d), (std::vector<int>{1, 1, 2}));
  EXPECT_TRUE(inverse(d.reassembly).has_value());
}

TEST(Isomorphism, RandomConjugate) {
  std::mt19937_64 rng(13);
  for (auto a : test_algebras())
    for (int t = 0; t < 4; ++t) {
      Module m = random_quotient_module(a, rng, 3, 2);
      if (m.dim() == 0) continue;
      Module n = conjugate(m, random_invertible(a->prime(), m.dim(), rng));
      auto f = find_isomorphism(m, n);
      ASSERT_TRUE(f.has_value());
      EXPECT_TRUE(is_homomorphism(m, n, *f));
      EXPECT_TRUE(inverse(*f).has_value());
    }
}

TEST(Isomorphism, Examples) {
  auto a = fix2();
  EXPECT_FALSE(are_isomorphic(simple_module(a, 0), simple_module(a, 1)));
  EXPECT_TRUE(are_isomorphic(interval(a, 1, 3), projective_module(a, 0)));
  EXPECT_FALSE(are_isomorphic(direct_sum(simple_module(a, 0), simple_module(a, 1)), interval(a, 1, 2)));
  EXPECT_TRUE(are_isomorphic({simple_module(a, 0), interval(a, 2, 3)},
                             {direct_sum(interval(a, 2, 3), simple_module(a, 0))}));
  EXPECT_FALSE(are_isomorphic({simple_module(a, 0)}, {simple_module(a, 2)}));
}

TEST(Isomorphism, EquivalenceRelation) {
  std::mt19937_64 rng(14);
  auto a = fix3();
  std::vector<Module> mods;
  for (int t = 0; t < 10; ++t) mods.push_back(random_quotient_module(a, rng, 2, 2));
  for (const auto& x : mods) {
    EXPECT_TRUE(are_isomorphic(x, x));
    for (const auto& y : mods) {
      bool xy = are_isomorphic(x, y);
      EXPECT_EQ(xy, are_isomorphic(y, x));
      if (!xy) continue;
      for (const auto& z : mods)
        if (are_isomorphic(y, z)) EXPECT_TRUE(are_isomorphic(x, z));
    }
  }
}

TEST(Registry, Examples) {
  auto a = fix2();
  IsoRegistry reg(a);
  EXPECT_TRUE(reg.register_module(projective_module(a, 0)).is_zero());
  EXPECT_TRUE(reg.register_module(regular_module(a)).is_zero());
  KVector s1 = reg.register_module(simple_module(a, 0));
  ASSERT_EQ(s1.coeffs.size(), 1u);
  const int c1 = s1.coeffs.begin()->first;
  EXPECT_EQ(s1[c1], 1);
  KVector mix = reg.register_module(direct_sum(power(simple_module(a, 0), 2), simple_module(a, 1)));
  const int c2 = reg.class_of(simple_module(a, 1));
  EXPECT_EQ(mix[c1], 2);
  EXPECT_EQ(mix[c2], 1);
  EXPECT_EQ(mix.coeffs.size(), 2u);
}

TEST(Registry, OmegaIsAdditive) {
  std::mt19937_64 rng(15);
  for (auto a : test_algebras()) {
    IsoRegistry reg(a);
    for (int t = 0; t < 4; ++t) {
      Module m = random_quotient_module(a, rng, 3, 2);
      if (m.dim() == 0) continue;
      KVector v = reg.register_module(m);
      KVector predicted;
      for (const auto& [c, k] : v.coeffs) predicted.add(reg.omega(c), k);
      EXPECT_EQ(reg.register_module(syzygy(m)), predicted);
    }
  }
}

TEST(Registry, FingerprintsAgreeOnIsomorphicModules) {
  std::mt19937_64 rng(16);
  auto a = fix4();
  IsoRegistry reg(a);
  for (int t = 0; t < 6; ++t) {
    Module m = random_quotient_module(a, rng, 1, 1);
    if (m.dim() == 0 || !is_indecomposable(m).indecomposable) continue;
    Module n = conjugate(m, random_invertible(a->prime(), m.dim(), rng));
    EXPECT_EQ(reg.fingerprint_of(m, is_indecomposable(m)), reg.fingerprint_of(n, is_indecomposable(n)));
    EXPECT_EQ(reg.class_of(m), reg.class_of(n));
  }
}

TEST(Registry, MergeTranslatesClasses) {
  auto a = fix3();
  IsoRegistry left(a), right(a);
  left.class_of(simple_module(a, 1));
  right.class_of(simple_module(a, 0));
  right.class_of(simple_module(a, 1));
  right.omega(0);
  auto map = left.merge(right);
  EXPECT_EQ(map.at(1), 0);
  EXPECT_EQ(left.size(), 2);
  EXPECT_TRUE(left.omega_known(map.at(0)));
  EXPECT_THROW(left.omega(left.class_of(projective_module(a, 2))), std::invalid_argument);
}
