#pragma once

#include "itphi/module.hpp"
#include "itphi/quiver.hpp"

#include <string>
#include <vector>

namespace itphi {

struct CorpusConfig {
  /// Random algebras on top of the five fixtures.
  int algebras = 25;
  std::vector<std::uint32_t> primes = {2, 3, 5};
  Index max_algebra_dim = 12;
  Index max_module_dim = 20;
  int modules_per_algebra = 8;
  int min_vertices = 2;
  int max_vertices = 4;
  int min_arrows = 2;
  int max_arrows = 5;
};

struct CorpusEntry {
  std::string name;
  QuiverSpec spec;
  AlgebraPtr algebra;
  std::vector<Module> modules;
};

/// Deterministic in (seed, config): fixtures FIX1..FIX5 first, then random
/// monomial bound quivers with representation-sampled modules.
std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, const CorpusConfig& config = {});

/// Random monomial bound quiver within the config bounds; throws
/// RetryExhausted after many rejected draws.
QuiverSpec random_monomial_spec(std::mt19937_64& rng, const CorpusConfig& config);

/// Representation with random vertex dimensions and random maps, rejected
/// until the relations hold; falls back to a random quotient of a projective.
Module random_representation(const AlgebraPtr& a, const QuiverSpec& spec, std::mt19937_64& rng, Index max_dim);

}  // namespace itphi
