#pragma once

#include "itphi/krull_schmidt.hpp"

#include <string>
#include <vector>

namespace itphi {

enum class PhiKind { Exact, LowerBound };
enum class PhiCertificate { RankZero, OmegaClosedFinite, Cutoff };
const char* to_string(PhiKind k);
const char* to_string(PhiCertificate c);

struct PhiOutcome {
  PhiKind kind = PhiKind::Exact;
  int value = 0;
  std::vector<std::size_t> rank_trace;
  PhiCertificate certificate = PhiCertificate::RankZero;
  /// OmegaClosedFinite: the closed class set and the number of steps past the
  /// start that were computed. Cutoff: the last level reached.
  std::vector<int> closure;
  int extra_steps = 0;
  int cutoff = 0;

  bool exact() const { return kind == PhiKind::Exact; }
};

struct PhiLimits {
  int n_max = 32;
  /// Closure search gives up past this many classes or this syzygy dimension.
  int max_classes = 96;
  Index max_dim = 120;
};

/// Index after the last strict drop.
int stable_index(const std::vector<std::size_t>& trace);

/// register(syzygy(representative of c)), memoized in the registry.
const KVector& omega_on_classes(IsoRegistry& r, int c);

/// Distinct non-projective indecomposable classes of m, in id order.
std::vector<int> nonprojective_classes(IsoRegistry& r, const Module& m);

/// Class vector of Omega^k of the module with class vector v.
KVector omega_power(IsoRegistry& r, KVector v, int k);

/// pd through memoized syzygies of indecomposable classes, tracking only the
/// support of Omega^k M; stops early once a support repeats.
ProjDim pd_bounded(IsoRegistry& r, const Module& m, int n_max);

PhiOutcome phi(IsoRegistry& r, const Module& m, const PhiLimits& limits = {});
PhiOutcome phi(const Module& m, int n_max = 32, std::uint64_t seed = 0);
/// phi of the direct sum of the given distinct non-projective classes.
PhiOutcome phi_of_classes(IsoRegistry& r, const std::vector<int>& classes, const PhiLimits& limits = {});

/// M + P0(N) isomorphic to N + P0(M).
bool stable_iso(const Module& m, const Module& n, std::uint64_t seed = 0);

/// Ext^i(m, -) and Ext^i(n, -) isomorphic, decided by the classes of the
/// (i-1)-th syzygies computed through the memoized class syzygies. When both
/// honest syzygies have dimension at most 24 the answer is repeated with
/// stable_iso; a disagreement throws VerificationMismatch.
bool ext_functor_iso(IsoRegistry& r, const Module& m, const Module& n, int i);
bool ext_functor_iso(const Module& m, const Module& n, int i, std::uint64_t seed = 0);

/// Throws std::invalid_argument when x or y is not in add(m).
bool is_d_division(IsoRegistry& r, const Module& x, const Module& y, int d, const Module& m);
bool is_d_division(const Module& x, const Module& y, int d, const Module& m, std::uint64_t seed = 0);

struct DivisionWitness {
  int d = 0;
  Module x;
  Module y;
  std::vector<std::pair<int, std::int64_t>> combination;
  std::string transcript;
};

struct DivisionOutcome {
  PhiOutcome outcome;
  std::vector<DivisionWitness> witnesses;
};

/// phi recomputed from integer kernels, each division verified on explicit
/// syzygies. Throws VerificationMismatch if a predicted division fails.
DivisionOutcome phi_via_divisions(IsoRegistry& r, const Module& m, const PhiLimits& limits = {});
DivisionOutcome phi_via_divisions(const Module& m, int n_max = 32, std::uint64_t seed = 0);

struct DualityReport {
  bool ok = true;
  std::vector<Index> tor;
  std::vector<Index> ext;
  std::vector<int> violations;
};
/// Tor_i(D m, n) against Ext^i(n, m) for 0 <= i <= i_max.
DualityReport ce_duality_check(const Module& m, const Module& n, int i_max);

}  // namespace itphi
