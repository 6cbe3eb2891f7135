#include "itphi/module.hpp"
#include "itphi/quiver.hpp"

#include <gtest/gtest.h>

using namespace itphi;
using namespace itphi::fixtures;

namespace {

Index hom_dim(const Module& m, const Module& n) { return static_cast<Index>(hom_matrices(m, n).size()); }

std::vector<AlgebraPtr> test_algebras() {
  return {fix1(), fix2(), fix3(), fix4(), fix5(), fix1(3), fix3(5),
          to_algebra(nakayama_from_kupisch({false, {3, 2, 2, 1}}, 3))};
}

}  // namespace

TEST(HomBasis, Examples) {
  auto a = fix2();
  EXPECT_EQ(hom_dim(projective_module(a, 0), interval(a, 1, 2)), 1);
  EXPECT_EQ(hom_dim(simple_module(a, 0), simple_module(a, 1)), 0);
  auto b = fix1();
  EXPECT_EQ(hom_dim(simple_module(b, 0), simple_module(b, 0)), 1);
}

TEST(HomBasis, HomFromProjectiveIsVertexSpace) {
  std::mt19937_64 rng(2);
  for (auto a : test_algebras())
    for (int t = 0; t < 6; ++t) {
      Module n = random_quotient_module(a, rng, 3, 2);
      for (int v = 0; v < a->vertex_count(); ++v)
        EXPECT_EQ(hom_dim(projective_module(a, v), n), n.dimension_vector()[static_cast<std::size_t>(v)]);
    }
}

TEST(HomBasis, AgreesWithDirectIntertwinerSystem) {
  std::mt19937_64 rng(3);
  for (auto a : test_algebras())
    for (int t = 0; t < 8; ++t) {
      Module m = random_quotient_module(a, rng, 2, 2);
      Module n = random_quotient_module(a, rng, 2, 2);
      auto fast = hom_matrices(m, n);
      auto direct = hom_matrices_direct(m, n);
      ASSERT_EQ(fast.size(), direct.size());
      std::vector<FpMatrix> flat;
      for (const auto& f : fast) {
        EXPECT_TRUE(is_homomorphism(m, n, f));
        flat.push_back(flatten(f));
      }
      if (!flat.empty()) EXPECT_EQ(rank_fp(hstack(flat, a->prime(), m.dim() * n.dim())), fast.size());
    }
}

TEST(HomBasis, AlgebraMismatch) {
  EXPECT_THROW(hom_matrices(simple_module(fix2(), 0), simple_module(fix3(), 0)), std::exception);
}

TEST(TopAndRadical, Examples) {
  auto a3 = fix3();
  auto r = top_and_radical(projective_module(a3, 0));
  EXPECT_EQ(r.radical.dimension_vector(), (std::vector<Index>{0, 1, 0}));
  EXPECT_EQ(top_and_radical(simple_module(a3, 1)).radical.dim(), 0);
  auto a1 = fix1();
  auto reg = top_and_radical(regular_module(a1));
  EXPECT_EQ(reg.radical.dim(), 1);
  EXPECT_EQ(reg.top.dim(), 1);
  EXPECT_EQ(reg.top_multiplicities, (std::vector<int>{1}));
}

TEST(ProjectiveCover, Examples) {
  auto a2 = fix2();
  const auto& c = projective_cover(simple_module(a2, 0));
  EXPECT_EQ(c.cover.dim(), 3);
  EXPECT_EQ(c.kernel.cols(), 2);
  const auto& cp = projective_cover(projective_module(a2, 1));
  EXPECT_EQ(cp.cover.dim(), 2);
  EXPECT_EQ(cp.kernel.cols(), 0);
  auto a1 = fix1();
  Module s = simple_module(a1, 0);
  const auto& css = projective_cover(direct_sum(s, s));
  EXPECT_EQ(css.cover.dim(), 4);
  EXPECT_EQ(css.vertices.size(), 2u);
}

TEST(ProjectiveCover, MinimalAndExact) {
  std::mt19937_64 rng(5);
  for (auto a : test_algebras())
    for (int t = 0; t < 10; ++t) {
      Module m = random_quotient_module(a, rng, 3, 3);
      const auto& pres = projective_cover(m);
      EXPECT_EQ(pres.epimorphism * pres.section, FpMatrix::identity(a->prime(), m.dim()));
      EXPECT_TRUE(is_homomorphism(pres.cover, m, pres.epimorphism));
      EXPECT_EQ(syzygy(m).dim(), pres.cover.dim() - m.dim());
      // top isomorphism: the cover has the same top as m
      EXPECT_EQ(top_and_radical(pres.cover).top_multiplicities, top_and_radical(m).top_multiplicities);
      EXPECT_TRUE(check_module(syzygy(m)).valid);
    }
}

TEST(Syzygy, Examples) {
  auto a1 = fix1();
  Module s = simple_module(a1, 0);
  EXPECT_EQ(syzygy(s).dim(), 1);
  EXPECT_EQ(syzygy_iter(s, 3).dim(), 1);
  EXPECT_EQ(syzygy_iter(s, 0).dim(), 1);
  auto a2 = fix2();
  EXPECT_EQ(syzygy(projective_module(a2, 1)).dim(), 0);
  auto a3 = fix3();
  Module s1 = simple_module(a3, 0);
  EXPECT_EQ(syzygy(s1).dimension_vector(), (std::vector<Index>{0, 1, 0}));
  Module o2 = syzygy_iter(s1, 2);
  EXPECT_EQ(o2.dimension_vector(), (std::vector<Index>{0, 0, 1}));
  EXPECT_TRUE(is_projective(o2));
}

TEST(IsProjective, Examples) {
  auto a2 = fix2();
  EXPECT_TRUE(is_projective(projective_module(a2, 1)));
  EXPECT_FALSE(is_projective(simple_module(a2, 0)));
  EXPECT_TRUE(is_projective(Module::zero(a2)));
  EXPECT_TRUE(is_projective(regular_module(fix5())));
}

TEST(PdBounded, Examples) {
  auto a3 = fix3();
  auto pd = pd_bounded(simple_module(a3, 0), 10);
  EXPECT_TRUE(pd.finite);
  EXPECT_EQ(pd.value, 2);
  auto inf = pd_bounded(simple_module(fix1(), 0), 10);
  EXPECT_FALSE(inf.finite);
  EXPECT_EQ(inf.value, 10);
  for (auto a : test_algebras()) {
    auto zero = pd_bounded(regular_module(a), 10);
    EXPECT_TRUE(zero.finite);
    EXPECT_EQ(zero.value, 0);
  }
}

TEST(ExtDim, Examples) {
  auto a2 = fix2();
  EXPECT_EQ(ext_dim(simple_module(a2, 0), simple_module(a2, 1), 1), 1);
  auto a3 = fix3();
  EXPECT_EQ(ext_dim(simple_module(a3, 0), simple_module(a3, 2), 2), 1);
  std::mt19937_64 rng(7);
  for (auto a : test_algebras()) {
    Module n = random_quotient_module(a, rng, 2, 2);
    for (int v = 0; v < a->vertex_count(); ++v)
      for (int i = 1; i <= 3; ++i) EXPECT_EQ(ext_dim(projective_module(a, v), n, i), 0);
  }
}

TEST(ExtDim, DegreeZeroIsHom) {
  std::mt19937_64 rng(8);
  for (auto a : test_algebras())
    for (int t = 0; t < 6; ++t) {
      Module m = random_quotient_module(a, rng, 2, 2);
      Module n = random_quotient_module(a, rng, 2, 2);
      EXPECT_EQ(ext_dim(m, n, 0), hom_dim(m, n));
    }
}

TEST(ExtDim, DimensionShift) {
  std::mt19937_64 rng(9);
  for (auto a : test_algebras())
    for (int t = 0; t < 6; ++t) {
      Module m = random_quotient_module(a, rng, 2, 2);
      Module n = random_quotient_module(a, rng, 2, 2);
      for (int i = 1; i <= 3; ++i) EXPECT_EQ(ext_dim(m, n, i + 1), ext_dim(syzygy(m), n, i));
    }
}

TEST(DualModule, Examples) {
  auto a2 = fix2();
  auto op = opposite_algebra(*a2);
  Module s1 = simple_module(a2, 0);
  Module d = dual_module(s1, op);
  EXPECT_EQ(d.dim(), 1);
  EXPECT_EQ(d.dimension_vector(), (std::vector<Index>{1, 0, 0}));
  EXPECT_TRUE(check_module(d).valid);
  Module m = interval(a2, 1, 2);
  Module dd = dual_module(dual_module(m, op), a2);
  EXPECT_EQ(dd.actions(), m.actions());
}

TEST(TorDim, Examples) {
  auto a2 = fix2();
  auto op2 = opposite_algebra(*a2);
  EXPECT_EQ(tor_dim(dual_module(simple_module(a2, 1), op2), simple_module(a2, 0), 1), 1);
  auto a1 = fix1();
  auto op1 = opposite_algebra(*a1);
  EXPECT_EQ(tor_dim(dual_module(simple_module(a1, 0), op1), simple_module(a1, 0), 0), 1);
  std::mt19937_64 rng(10);
  for (auto a : test_algebras()) {
    auto op = opposite_algebra(*a);
    Module x = random_quotient_module(op, rng, 2, 2);
    for (int v = 0; v < a->vertex_count(); ++v)
      for (int i = 1; i <= 3; ++i) EXPECT_EQ(tor_dim(x, projective_module(a, v), i), 0);
  }
}

TEST(TorDim, CartanEilenbergSmallSample) {
  std::mt19937_64 rng(11);
  for (auto a : test_algebras()) {
    auto op = opposite_algebra(*a);
    for (int t = 0; t < 4; ++t) {
      Module m = random_quotient_module(a, rng, 2, 2);
      Module n = random_quotient_module(a, rng, 2, 2);
      for (int i = 0; i <= 4; ++i) EXPECT_EQ(tor_dim(dual_module(m, op), n, i), ext_dim(n, m, i));
    }
  }
}

TEST(Submodule, RejectsNonInvariantSubspace) {
  auto a2 = fix2();
  Module p1 = projective_module(a2, 0);
  // e_1 alone does not span a submodule of P1
  FpMatrix top = FpMatrix(2, p1.dim(), 1);
  const FpMatrix e = p1.idempotent_action(0);
  for (Index c = 0; c < p1.dim(); ++c)
    if (!e.col(c).is_zero()) top = e.col(c);
  EXPECT_THROW(submodule(p1, top), std::invalid_argument);
}
