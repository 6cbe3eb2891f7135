#pragma once

#include "itphi/module.hpp"
#include "itphi/polynomial.hpp"
#include "itphi/radical.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace itphi {

/// Endomorphism algebra of a module as a matrix algebra.
struct EndomorphismRing {
  std::vector<FpMatrix> basis;
  RadicalResult radical;
};
EndomorphismRing endomorphism_ring(const Module& m);

/// Jacobson radical of the algebra spanned by `basis` (closed under products).
RadicalResult radical_of_endo(const std::vector<FpMatrix>& basis);

struct IndecomposabilityCertificate {
  bool indecomposable = false;
  Index dim_end = 0;
  Index dim_rad_end = 0;
  FpPoly minimal_polynomial;
};
/// Throws std::invalid_argument on the zero module.
IndecomposabilityCertificate is_indecomposable(const Module& m, std::uint64_t seed = 0);

struct Summand {
  Module module;
  int multiplicity = 0;
  /// One inclusion (m.dim x module.dim) per copy.
  std::vector<FpMatrix> inclusions;
  IndecomposabilityCertificate certificate;
};

struct Decomposition {
  std::vector<Summand> summands;
  /// Columns: the inclusions of all copies, in order; an isomorphism from the
  /// direct sum of the copies onto the input.
  FpMatrix reassembly;
};

/// Throws RetryExhausted if no splitting endomorphism is found.
Decomposition decompose(const Module& m, std::uint64_t seed = 0);
/// Decomposes each part separately; inclusions land in the direct sum.
Decomposition decompose(const std::vector<Module>& parts, const AlgebraPtr& a, std::uint64_t seed = 0);

/// Isomorphism between indecomposables (f: m -> n), if any.
std::optional<FpMatrix> indecomposable_isomorphism(const Module& m, const Module& n);

std::optional<FpMatrix> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed = 0);
bool are_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 0);
/// Compares two direct sums given as lists of parts.
bool are_isomorphic(const std::vector<Module>& m, const std::vector<Module>& n, std::uint64_t seed = 0);

struct Fingerprint {
  Index dim = 0;
  std::vector<Index> dimension_vector;
  Index dim_end = 0;
  Index dim_rad_end = 0;
  std::vector<Index> hom_from_simples;
  std::vector<Index> hom_to_simples;
  auto operator<=>(const Fingerprint&) const = default;
};

/// Integer combination of registered classes; projective classes never appear.
struct KVector {
  std::map<int, std::int64_t> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  std::int64_t operator[](int c) const;
  void add(int c, std::int64_t v);
  void add(const KVector& other, std::int64_t scale = 1);
  friend bool operator==(const KVector&, const KVector&) = default;
};

/// Store of indecomposable iso-classes for one algebra. Class ids are assigned
/// in insertion order. Not safe for concurrent writers.
class IsoRegistry {
 public:
  explicit IsoRegistry(AlgebraPtr algebra, std::uint64_t seed = 0);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::uint64_t seed() const { return seed_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const Module& representative(int c) const { return classes_.at(static_cast<std::size_t>(c)).module; }
  bool is_projective(int c) const { return classes_.at(static_cast<std::size_t>(c)).projective; }
  const Fingerprint& fingerprint(int c) const { return classes_.at(static_cast<std::size_t>(c)).fingerprint; }

  /// Class of an indecomposable module, inserting it when unseen.
  int class_of(const Module& indecomposable, const IndecomposabilityCertificate* cert = nullptr);
  /// Multiplicities of every class (projective ones included).
  std::map<int, int> classes_in(const Module& m);
  std::map<int, int> classes_in(const std::vector<Module>& parts);
  /// Multiplicity vector over non-projective classes.
  KVector register_module(const Module& m);
  KVector register_module(const std::vector<Module>& parts);

  /// K-vector of the syzygy of class c (memoized). Throws std::invalid_argument
  /// on a projective class.
  const KVector& omega(int c);
  bool omega_known(int c) const { return omega_.count(c) > 0; }

  /// Inserts the classes of `other`; returns the id translation.
  std::map<int, int> merge(const IsoRegistry& other);

  Fingerprint fingerprint_of(const Module& indecomposable, const IndecomposabilityCertificate& cert);

 private:
  struct Entry {
    Module module;
    Fingerprint fingerprint;
    bool projective = false;
  };
  AlgebraPtr algebra_;
  std::uint64_t seed_;
  std::vector<Entry> classes_;
  std::multimap<Fingerprint, int> by_fingerprint_;
  std::map<int, KVector> omega_;
  std::map<const void*, std::pair<Module, std::map<int, int>>> seen_;
  std::vector<Module> simples_;
};

}  // namespace itphi
