#pragma once

#include "itphi/phidim_search.hpp"

#include <string>
#include <vector>

namespace itphi {

struct Approximation {
  Module target;
  /// dim target x dim source.
  FpMatrix map;
  /// Index into `summands` for each copy in target, in order.
  std::vector<int> copy_of;
  std::vector<Module> summands;
};

/// Minimal left add(t)-approximation of x: the copies of each indecomposable
/// summand t_j correspond to a complement of the maps x -> t_j that factor
/// through a radical map inside add(t).
Approximation left_add_approximation(const Module& x, const Module& t, std::uint64_t seed = 0);

struct TiltingCertificate {
  int pd = 0;
  /// dim Ext^i(T, T) for 1 <= i <= pd.
  std::vector<Index> rigidity;
  /// 0 -> A -> T_0 -> ... -> T_m -> 0; maps[0] : A -> T_0, maps[i] : T_{i-1} -> T_i.
  std::vector<Module> terms;
  std::vector<FpMatrix> maps;
  int m = 0;
};

/// Throws NotFiniteProjDim, NotRigid or CoresolutionStalled. m_max < 0 means
/// pd T + 2.
TiltingCertificate verify_tilting(const Module& t, int m_max = -1, int n_max = 32, std::uint64_t seed = 0);

/// Ranks confirm 0 -> A -> T_0 -> ... -> T_m -> 0 is exact.
bool coresolution_exact(const TiltingCertificate& c, const AlgebraPtr& a);

struct EndoAlgebra {
  AlgebraPtr algebra;
  /// Basis element k of the algebra is hom[k] : t -> t.
  std::vector<FpMatrix> hom;
  /// Summand (index into decomposition.summands) behind each idempotent.
  std::vector<int> idempotent_summand;
  Decomposition decomposition;
};

/// B = End(t)^op: b_i * b_j is the composite hom[j] o hom[i].
EndoAlgebra endomorphism_algebra(const Module& t, std::uint64_t seed = 0);

struct BongartzReport {
  int pd = 0;
  PhidimResult phidim_a;
  PhidimResult phidim_b;
  Index dim_b = 0;
  bool b_valid = false;
  bool exact = false;
  bool holds = false;
  std::string verdict;
};
/// phidim(A) - pd T <= phidim(B) <= phidim(A) + pd T, asserted when both sides
/// are exact.
BongartzReport bongartz_bound_check(const AlgebraPtr& a, const Module& t, const SamplerConfig& config = {},
                                    int n_max = 32);

struct OnePointExtension {
  AlgebraPtr algebra;
  AlgebraPtr base;
  /// Basis layout: algebra basis of A first, then M, then the new idempotent.
  Index a_dim = 0;
  Index m_dim = 0;
  int new_vertex = 0;
};

/// A[M]: a * m is the module action, m * e = m for the new idempotent e,
/// every other mixed product is zero.
OnePointExtension one_point_extension(const AlgebraPtr& a, const Module& m);

/// An A-module viewed over A[M], with M and the new idempotent acting as zero.
Module inflate(const OnePointExtension& ext, const Module& x);

struct OpeReport {
  PhidimResult phidim_a;
  PhidimResult phidim_ext;
  Index dim_ext = 0;
  bool exact = false;
  bool holds = false;
  std::string verdict;
};
/// phidim(A) <= phidim(A[M]) <= phidim(A) + 1, asserted when both are exact.
OpeReport ope_bound_check(const AlgebraPtr& a, const Module& m, const SamplerConfig& config = {}, int n_max = 32);

}  // namespace itphi
