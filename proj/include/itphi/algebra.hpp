#pragma once

#include "itphi/exact_linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace itphi {

enum class Provenance { QuiverDerived, Endomorphism, Product, OnePointExtension };

std::string to_string(Provenance p);

/// Quiver metadata carried by algebras compiled from a bound quiver. Basis
/// elements are path residues; vertex v is basis element `vertex_basis[v]`.
struct QuiverData {
  struct Arrow {
    std::string label;
    int from = 0;
    int to = 0;
    Index basis_index = 0;
  };
  int vertices = 0;
  std::vector<Arrow> arrows;
  std::vector<Index> vertex_basis;
  /// Paths (arrow indices in application order) naming each basis element.
  std::vector<std::vector<int>> basis_paths;
  /// Defining relations as (coefficient, path) terms.
  std::vector<std::vector<std::pair<Residue, std::vector<int>>>> relations;
  int length_bound = 2;
};

/// A finite-dimensional algebra over F_p given by structure constants, with a
/// complete set of orthogonal idempotents and a radical basis.
class AlgebraPresentation {
 public:
  /// `structure[(i * dim + j) * dim + k]` is the coefficient of b_k in b_i b_j.
  AlgebraPresentation(std::uint32_t prime, Index dim, std::vector<Residue> structure,
                      FpMatrix unit, std::vector<FpMatrix> idempotents, FpMatrix radical,
                      Provenance provenance, std::optional<QuiverData> quiver = std::nullopt);

  std::uint32_t prime() const { return p_; }
  Index dim() const { return dim_; }
  Provenance provenance() const { return provenance_; }
  const std::vector<Residue>& structure() const { return structure_; }
  Residue structure_constant(Index i, Index j, Index k) const {
    return structure_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
  }
  const FpMatrix& unit() const { return unit_; }
  const std::vector<FpMatrix>& idempotents() const { return idempotents_; }
  int vertex_count() const { return static_cast<int>(idempotents_.size()); }
  /// Radical basis as columns.
  const FpMatrix& radical() const { return radical_; }
  const std::optional<QuiverData>& quiver() const { return quiver_; }

  /// Coordinates of b_i * b_j.
  FpMatrix basis_product(Index i, Index j) const;
  FpMatrix multiply(const FpMatrix& x, const FpMatrix& y) const;
  /// Matrix of y -> x * y.
  FpMatrix left_multiplication(const FpMatrix& x) const;
  /// Matrix of y -> y * x.
  FpMatrix right_multiplication(const FpMatrix& x) const;
  const FpMatrix& left_basis_multiplication(Index i) const { return left_[static_cast<std::size_t>(i)]; }

  FpMatrix basis_vector(Index i) const;

  /// Basis (columns) of A e_v.
  const FpMatrix& projective_basis(int v) const { return projective_basis_[static_cast<std::size_t>(v)]; }
  /// Representative idempotent index of the class of v (A e_v ~ A e_w).
  int idempotent_class(int v) const { return idempotent_class_[static_cast<std::size_t>(v)]; }
  /// One idempotent per isomorphism class of indecomposable projectives.
  std::vector<int> class_representatives() const;

  /// Basis of J^2 (columns).
  const FpMatrix& radical_square() const { return radical_square_; }

 private:
  std::uint32_t p_;
  Index dim_;
  std::vector<Residue> structure_;
  FpMatrix unit_;
  std::vector<FpMatrix> idempotents_;
  FpMatrix radical_;
  Provenance provenance_;
  std::optional<QuiverData> quiver_;

  std::vector<FpMatrix> left_;
  std::vector<FpMatrix> projective_basis_;
  std::vector<int> idempotent_class_;
  FpMatrix radical_square_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

/// Same prime, dimension and structure constants (identity, or equal data).
bool same_algebra(const AlgebraPresentation& a, const AlgebraPresentation& b);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> problems;
  int idempotents = 0;
  Index radical_dim = 0;
};

ValidationReport validate_algebra(const AlgebraPresentation& a);

AlgebraPtr opposite_algebra(const AlgebraPresentation& a);

/// Block-diagonal product; throws std::invalid_argument on a prime mismatch or
/// a zero-dimensional factor.
AlgebraPtr product_algebra(const AlgebraPresentation& a, const AlgebraPresentation& b);

/// The ground field F_p as a one-dimensional algebra.
AlgebraPtr ground_field(std::uint32_t p);

/// Corner algebra e A e as a matrix algebra (left-regular action on e A e);
/// `unit_out` receives the matrix of e, i.e. the identity of that algebra.
std::vector<FpMatrix> corner_matrix_algebra(const AlgebraPresentation& a, const FpMatrix& e,
                                            FpMatrix* unit_out);

}  // namespace itphi
