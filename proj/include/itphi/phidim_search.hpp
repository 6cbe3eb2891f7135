#pragma once

#include "itphi/igusa_todorov.hpp"
#include "itphi/quiver.hpp"

#include <string>
#include <vector>

namespace itphi {

/// Arrow counts of the Gabriel quiver: arrows[i][j] = number of arrows i -> j
/// between class representatives i and j (indexed by vertex).
std::vector<std::vector<int>> gabriel_quiver(const AlgebraPtr& a);

/// At most one arrow into and out of every vertex of the Gabriel quiver.
bool is_nakayama(const AlgebraPtr& a);

/// P(i)/rad^j P(i) for every class representative i and 1 <= j <= Loewy length.
/// Throws std::invalid_argument if a is not Nakayama.
std::vector<Module> nakayama_indecomposables(const AlgebraPtr& a);
std::vector<Module> enumerate_indecomposables_nakayama(const KupischSeries& k, std::uint32_t p);

struct SamplerConfig {
  int count = 400;
  /// Sampling stops as complete after this many consecutive samples with no
  /// new class.
  int patience = 120;
  Index dim_bound = 16;
  std::uint64_t seed = 0;
};

struct Enumeration {
  std::vector<Module> modules;
  std::string method;  // "nakayama" or "sampled"
  /// Nakayama lists are complete; sampled lists are complete only in the
  /// saturation sense of SamplerConfig::patience.
  bool complete = false;
  int samples = 0;
};
Enumeration enumerate_indecomposables(const AlgebraPtr& a, const SamplerConfig& config = {});

/// phi of the sum of a trusted complete list of indecomposables. Throws
/// std::invalid_argument on decomposable entries or repeated classes.
PhiOutcome phidim_exact(const AlgebraPtr& a, const std::vector<Module>& indecomposables, int n_max = 32,
                        std::uint64_t seed = 0);

struct PhidimResult {
  PhiOutcome outcome;
  std::string method;
  std::size_t indecomposables = 0;
};
/// Exact only when the enumeration is complete and phi is exact.
PhidimResult phidim(const AlgebraPtr& a, const SamplerConfig& config = {}, int n_max = 32);

struct LowerBoundResult {
  int value = 0;
  PhiOutcome outcome;
  Module witness;
};
LowerBoundResult phidim_lower_bound(const AlgebraPtr& a, const SamplerConfig& sampler, int n_max = 32);

/// Max pd over the simples; finite == false means at least the cutoff.
ProjDim gldim_report(const AlgebraPtr& a, int n_max = 32);

struct DimensionReport {
  int findim_lower = 0;
  PhidimResult phidim;
  ProjDim gldim;
  bool consistent = true;
  std::string verdict;
};
DimensionReport inequality_report(const AlgebraPtr& a, const SamplerConfig& config = {}, int n_max = 32);

}  // namespace itphi
