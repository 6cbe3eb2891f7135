#include "itphi/corpus.hpp"
#include "itphi/igusa_todorov.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

using namespace itphi;

TEST(Corpus, DeterministicAndBounded) {
  CorpusConfig config;
  config.algebras = 6;
  config.modules_per_algebra = 4;
  auto a = generate_corpus(7, config);
  auto b = generate_corpus(7, config);
  ASSERT_EQ(a.size(), 11u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].algebra->structure(), b[i].algebra->structure());
    ASSERT_EQ(a[i].modules.size(), b[i].modules.size());
    for (std::size_t j = 0; j < a[i].modules.size(); ++j) {
      EXPECT_EQ(a[i].modules[j].actions(), b[i].modules[j].actions());
      EXPECT_LE(a[i].modules[j].dim(), config.max_module_dim);
      EXPECT_GT(a[i].modules[j].dim(), 0);
      EXPECT_TRUE(check_module(a[i].modules[j]).valid);
    }
    EXPECT_LE(a[i].algebra->dim(), config.max_algebra_dim);
    EXPECT_TRUE(validate_algebra(*a[i].algebra).valid);
  }
}

TEST(Corpus, FixturesAlwaysPresent) {
  CorpusConfig config;
  config.algebras = 1;
  config.modules_per_algebra = 2;
  for (std::uint64_t seed : {1u, 99u}) {
    auto c = generate_corpus(seed, config);
    for (int k = 0; k < 5; ++k) EXPECT_EQ(c[static_cast<std::size_t>(k)].name, "FIX" + std::to_string(k + 1));
  }
}
