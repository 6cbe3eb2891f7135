#include "itphi/igusa_todorov.hpp"
#include "itphi/errors.hpp"
#include "itphi/quiver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace itphi;
using namespace itphi::fixtures;

namespace {

using Trace = std::vector<std::size_t>;

std::vector<AlgebraPtr> test_algebras() {
  return {fix1(), fix2(), fix3(), fix4(), fix5(), fix1(3), fix3(5),
          to_algebra(nakayama_from_kupisch({false, {3, 2, 2, 1}}, 3)),
          to_algebra(nakayama_from_kupisch({true, {3, 2}}, 2))};
}

KVector unit(int c) {
  KVector v;
  v.add(c, 1);
  return v;
}

}  // namespace

TEST(OmegaOnClasses, Examples) {
  auto a = fix1();
  IsoRegistry r1(a);
  const int s = r1.class_of(simple_module(a, 0));
  EXPECT_EQ(omega_on_classes(r1, s), unit(s));

  auto b = fix3();
  IsoRegistry r3(b);
  const int s1 = r3.class_of(simple_module(b, 0));
  const int s2 = r3.class_of(simple_module(b, 1));
  EXPECT_EQ(omega_on_classes(r3, s1), unit(s2));
  EXPECT_TRUE(omega_on_classes(r3, s2).is_zero());
  EXPECT_THROW(omega_on_classes(r3, r3.class_of(projective_module(b, 2))), std::invalid_argument);
}

TEST(Phi, SimpleOverDualNumbers) {
  auto out = phi(simple_module(fix1(), 0));
  EXPECT_TRUE(out.exact());
  EXPECT_EQ(out.value, 0);
  EXPECT_EQ(out.certificate, PhiCertificate::OmegaClosedFinite);
  EXPECT_EQ(out.closure.size(), 1u);
  EXPECT_EQ(out.rank_trace, (Trace{1, 1}));
}

TEST(Phi, SimplesWithCommutativityRelation) {
  auto a = fix3();
  auto out = phi(direct_sum(simple_module(a, 0), simple_module(a, 1)));
  EXPECT_TRUE(out.exact());
  EXPECT_EQ(out.value, 2);
  EXPECT_EQ(out.rank_trace, (Trace{2, 1, 0}));
  EXPECT_EQ(out.certificate, PhiCertificate::RankZero);
}

TEST(Phi, ProjectivesGiveZero) {
  for (auto a : test_algebras()) {
    auto out = phi(direct_sum(projective_module(a, 0), regular_module(a)));
    EXPECT_TRUE(out.exact());
    EXPECT_EQ(out.value, 0);
  }
}

TEST(Phi, CyclicSelfInjectivePermutesSimples) {
  auto a = fix4();
  auto out = phi(direct_sum(simple_module(a, 0), simple_module(a, 1)));
  EXPECT_TRUE(out.exact());
  EXPECT_EQ(out.value, 0);
  EXPECT_EQ(out.certificate, PhiCertificate::OmegaClosedFinite);
  for (auto r : out.rank_trace) EXPECT_EQ(r, 2u);
}

TEST(Phi, TraceIsNonIncreasingAndValueIsLastDrop) {
  std::mt19937_64 rng(21);
  for (auto a : test_algebras())
    for (int t = 0; t < 5; ++t) {
      auto out = phi(random_quotient_module(a, rng, 3, 2));
      for (std::size_t k = 1; k < out.rank_trace.size(); ++k) EXPECT_LE(out.rank_trace[k], out.rank_trace[k - 1]);
      EXPECT_EQ(out.value, stable_index(out.rank_trace));
      if (out.certificate == PhiCertificate::RankZero) EXPECT_EQ(out.rank_trace.back(), 0u);
    }
}

TEST(Phi, CutoffIsALowerBound) {
  IsoRegistry r(fix4());
  PhiLimits tight;
  tight.max_classes = 1;
  tight.n_max = 3;
  auto out = phi(r, direct_sum(simple_module(fix4(), 0), simple_module(fix4(), 1)), tight);
  EXPECT_EQ(out.kind, PhiKind::LowerBound);
  EXPECT_EQ(out.certificate, PhiCertificate::Cutoff);
  EXPECT_EQ(out.cutoff, 3);
  EXPECT_EQ(out.value, 0);
}

TEST(StableIso, Examples) {
  auto a = fix1();
  auto s = simple_module(a, 0);
  EXPECT_TRUE(stable_iso(s, direct_sum(s, regular_module(a))));
  EXPECT_TRUE(stable_iso(s, s));
  auto b = fix3();
  EXPECT_FALSE(stable_iso(simple_module(b, 0), simple_module(b, 1)));
  EXPECT_THROW(stable_iso(simple_module(b, 0), s), AlgebraMismatch);
}

TEST(StableIso, AgreesWithClassEquality) {
  std::mt19937_64 rng(22);
  for (auto a : test_algebras()) {
    IsoRegistry r(a);
    std::vector<Module> mods;
    for (int t = 0; t < 4; ++t) mods.push_back(random_quotient_module(a, rng, 2, 2));
    mods.push_back(direct_sum(mods[0], projective_module(a, 0)));
    for (const auto& x : mods)
      for (const auto& y : mods) EXPECT_EQ(stable_iso(x, y), r.register_module(x) == r.register_module(y));
  }
}

TEST(ExtFunctorIso, Examples) {
  auto a = fix3();
  auto s1 = simple_module(a, 0);
  auto s2 = simple_module(a, 1);
  EXPECT_TRUE(ext_functor_iso(s1, s2, 3));
  EXPECT_FALSE(ext_functor_iso(s1, s2, 1));
  EXPECT_FALSE(ext_functor_iso(s1, s2, 2));
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(ext_functor_iso(s1, s1, i));
  EXPECT_THROW(ext_functor_iso(s1, s2, 0), std::invalid_argument);
}

TEST(ExtFunctorIso, ProbeDimensionsAgree) {
  std::mt19937_64 rng(23);
  for (auto a : test_algebras()) {
    IsoRegistry r(a);
    std::vector<Module> probes;
    for (int v = 0; v < a->vertex_count(); ++v) {
      probes.push_back(simple_module(a, v));
      probes.push_back(projective_module(a, v));
    }
    for (int t = 0; t < 3; ++t) probes.push_back(random_quotient_module(a, rng, 2, 2));
    for (const auto& m : probes)
      for (const auto& n : probes)
        for (int i = 1; i <= 2; ++i) {
          if (!ext_functor_iso(r, m, n, i)) continue;
          for (const auto& x : probes) EXPECT_EQ(ext_dim(m, x, i), ext_dim(n, x, i));
        }
  }
}

TEST(Division, Examples) {
  auto a = fix3();
  auto s1 = simple_module(a, 0);
  auto s2 = simple_module(a, 1);
  auto m = direct_sum(s1, s2);
  EXPECT_TRUE(is_d_division(s1, s2, 2, m));
  EXPECT_FALSE(is_d_division(s1, s2, 1, m));
  EXPECT_TRUE(is_d_division(s1, Module::zero(a), 2, m));
  EXPECT_FALSE(is_d_division(s1, s1, 2, m));
  EXPECT_THROW(is_d_division(s1, simple_module(a, 2), 1, m), std::invalid_argument);
}

TEST(PhiViaDivisions, Examples) {
  auto a = fix3();
  auto out = phi_via_divisions(direct_sum(simple_module(a, 0), simple_module(a, 1)));
  EXPECT_TRUE(out.outcome.exact());
  EXPECT_EQ(out.outcome.value, 2);
  ASSERT_FALSE(out.witnesses.empty());
  const auto& w = out.witnesses.back();
  EXPECT_EQ(w.d, 2);
  EXPECT_TRUE(is_d_division(w.x, w.y, 2, direct_sum(simple_module(a, 0), simple_module(a, 1))));

  auto s = phi_via_divisions(simple_module(fix1(), 0));
  EXPECT_TRUE(s.outcome.exact());
  EXPECT_EQ(s.outcome.value, 0);
  EXPECT_TRUE(s.witnesses.empty());

  auto p = phi_via_divisions(regular_module(fix2()));
  EXPECT_EQ(p.outcome.value, 0);
}

TEST(PhiViaDivisions, AgreesWithPhi) {
  std::mt19937_64 rng(24);
  int compared = 0;
  for (auto a : test_algebras())
    for (int t = 0; t < 5; ++t) {
      Module m = random_quotient_module(a, rng, 3, 2);
      IsoRegistry r(a);
      auto x = phi(r, m);
      auto y = phi_via_divisions(r, m);
      if (!x.exact() || !y.outcome.exact()) continue;
      EXPECT_EQ(x.value, y.outcome.value);
      for (const auto& w : y.witnesses) EXPECT_TRUE(is_d_division(r, w.x, w.y, w.d, m));
      ++compared;
    }
  EXPECT_GT(compared, 30);
}

TEST(PhiProperties, EqualsProjectiveDimensionWhenFinite) {
  std::mt19937_64 rng(25);
  for (auto a : test_algebras())
    for (int t = 0; t < 5; ++t) {
      Module m = random_quotient_module(a, rng, 3, 2);
      auto pd = pd_bounded(m, 12);
      if (!pd.finite) continue;
      auto out = phi(m);
      EXPECT_TRUE(out.exact());
      EXPECT_EQ(out.value, pd.value);
    }
}

TEST(PhiProperties, IndecomposableOfInfiniteDimensionIsZero) {
  for (auto a : test_algebras())
    for (int v = 0; v < a->vertex_count(); ++v) {
      Module s = simple_module(a, v);
      if (pd_bounded(s, 12).finite) continue;
      auto out = phi(s);
      if (out.exact()) EXPECT_EQ(out.value, 0);
    }
}

TEST(PhiProperties, MonotoneAddInvariantAndBlindToProjectives) {
  std::mt19937_64 rng(26);
  for (auto a : test_algebras())
    for (int t = 0; t < 4; ++t) {
      IsoRegistry r(a);
      Module m = random_quotient_module(a, rng, 2, 2);
      Module n = random_quotient_module(a, rng, 2, 2);
      auto pm = phi(r, m);
      auto pmn = phi(r, direct_sum(n, m));
      if (pm.exact() && pmn.exact()) EXPECT_LE(pm.value, pmn.value);
      auto doubled = phi(r, direct_sum(power(m, 2), m));
      if (pm.exact() && doubled.exact()) EXPECT_EQ(pm.value, doubled.value);
      auto with_p = phi(r, direct_sum(m, projective_module(a, 0)));
      if (pm.exact() && with_p.exact()) EXPECT_EQ(pm.value, with_p.value);
      auto om = phi(r, syzygy(m));
      if (pm.exact() && om.exact()) EXPECT_LE(pm.value, om.value + 1);
    }
}

TEST(Duality, Examples) {
  auto a = fix2();
  auto r = ce_duality_check(simple_module(a, 1), simple_module(a, 0), 3);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.ext, (std::vector<Index>{0, 1, 0, 0}));
  auto q = ce_duality_check(simple_module(a, 0), projective_module(a, 1), 3);
  EXPECT_TRUE(q.ok);
  for (std::size_t i = 1; i < q.ext.size(); ++i) EXPECT_EQ(q.ext[i], 0);
  auto b = fix1();
  auto s = ce_duality_check(simple_module(b, 0), simple_module(b, 0), 3);
  EXPECT_TRUE(s.ok);
  EXPECT_EQ(s.tor, (std::vector<Index>{1, 1, 1, 1}));
}

TEST(Duality, RandomPairs) {
  std::mt19937_64 rng(27);
  for (auto a : test_algebras())
    for (int t = 0; t < 3; ++t) {
      auto r = ce_duality_check(random_quotient_module(a, rng, 2, 2), random_quotient_module(a, rng, 2, 2), 3);
      EXPECT_TRUE(r.ok);
    }
}

TEST(RegistryProjDim, AgreesWithHonestSyzygies) {
  std::mt19937_64 rng(5);
  for (auto a : {fix1(), fix2(), fix3(), fix4(), fix5()}) {
    IsoRegistry r(a, 3);
    std::vector<Module> ms;
    for (int v = 0; v < a->vertex_count(); ++v) {
      ms.push_back(simple_module(a, v));
      ms.push_back(projective_module(a, v));
    }
    for (int k = 0; k < 6; ++k) ms.push_back(random_quotient_module(a, rng, 2, 2));
    for (const auto& m : ms) {
      if (m.dim() == 0) continue;
      const ProjDim honest = pd_bounded(m, 10);
      const ProjDim fast = pd_bounded(r, m, 10);
      EXPECT_EQ(honest.finite, fast.finite);
      EXPECT_EQ(honest.value, fast.value);
    }
  }
}

TEST(RegistryProjDim, PeriodicSupportStopsEarly) {
  auto a = fix1();
  IsoRegistry r(a);
  auto pd = pd_bounded(r, simple_module(a, 0), 1000000);
  EXPECT_FALSE(pd.finite);
  EXPECT_EQ(pd.value, 1000000);
  EXPECT_EQ(pd_bounded(r, regular_module(a), 5).value, 0);
}
