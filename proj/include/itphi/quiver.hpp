#pragma once

#include "itphi/algebra.hpp"
#include "itphi/module.hpp"

#include <map>
#include <string>
#include <vector>

namespace itphi {

/// Paths are lists of arrow labels in application order: {"a", "b"} is the
/// composite b o a (first a, then b).
struct QuiverSpec {
  struct Arrow {
    int from = 0;
    int to = 0;
    std::string label;
  };
  struct Term {
    Residue coeff = 1;
    std::vector<std::string> path;
  };
  using Relation = std::vector<Term>;

  std::uint32_t prime = 2;
  int vertices = 0;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  int length_bound = 12;
};

struct KupischSeries {
  bool cyclic = false;
  std::vector<int> lengths;
};

/// Throws std::invalid_argument with a description when the spec is malformed.
void check_quiver_spec(const QuiverSpec& q);

/// Path basis of kQ/I. Throws EmptyQuiver or NotAdmissibleWithinBound.
AlgebraPtr to_algebra(const QuiverSpec& q);

/// Module from a representation: `dims[v]` per vertex and one matrix per arrow
/// label (dims[to] x dims[from]). Throws RelationViolated.
Module module_from_representation(const AlgebraPtr& a, const std::vector<Index>& dims,
                                  const std::map<std::string, FpMatrix>& arrows);

struct Representation {
  std::vector<Index> dims;
  std::map<std::string, FpMatrix> arrows;
};
/// Reads the vertex spaces and arrow maps back, in a basis adapted to the
/// vertex decomposition.
Representation representation_of(const Module& m);

/// Throws InadmissibleSeries.
void check_kupisch(const KupischSeries& k);
QuiverSpec nakayama_from_kupisch(const KupischSeries& k, std::uint32_t p);

namespace fixtures {

QuiverSpec fix1_spec(std::uint32_t p = 2);
QuiverSpec fix2_spec(std::uint32_t p = 2);
QuiverSpec fix3_spec(std::uint32_t p = 2);
QuiverSpec fix4_spec(std::uint32_t p = 2);
/// Quiver omega -> 1 (arrow c) with loop x at 1, relations x^2 and x o c.
QuiverSpec fix5_spec(std::uint32_t p = 2);

AlgebraPtr fix1(std::uint32_t p = 2);
AlgebraPtr fix2(std::uint32_t p = 2);
AlgebraPtr fix3(std::uint32_t p = 2);
AlgebraPtr fix4(std::uint32_t p = 2);
AlgebraPtr fix5(std::uint32_t p = 2);

/// Interval module of the linear quiver 1 -> 2 -> 3 supported on [lo, hi]
/// (1-based vertices, as in the fixture descriptions).
Module interval(const AlgebraPtr& linear_a3, int lo, int hi);

}  // namespace fixtures

}  // namespace itphi
