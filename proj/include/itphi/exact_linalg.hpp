#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace itphi {

using Index = Eigen::Index;
using Residue = std::int64_t;
using ResidueMatrix =
    Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

bool is_prime(std::uint32_t p);

// Primes are restricted to p < 2^16 so that a dot product of residues fits in
// 64 bits for any dimension reachable here.
inline constexpr std::uint32_t kMaxPrime = 1u << 16;

Residue inverse_mod(Residue a, std::uint32_t p);

/// Dense matrix over the prime field F_p. Entries are always kept in [0, p).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, Index rows, Index cols);
  /// Reduces every entry of `entries` modulo p.
  FpMatrix(std::uint32_t p, ResidueMatrix entries);

  static FpMatrix identity(std::uint32_t p, Index n);
  static FpMatrix from_rows(
      std::uint32_t p, std::initializer_list<std::initializer_list<Residue>> rows);
  /// Column vector.
  static FpMatrix vector(std::uint32_t p, const std::vector<Residue>& values);

  std::uint32_t prime() const { return p_; }
  Index rows() const { return data_.rows(); }
  Index cols() const { return data_.cols(); }
  bool empty() const { return data_.size() == 0; }

  Residue operator()(Index r, Index c) const { return data_(r, c); }
  void set(Index r, Index c, Residue v);
  const ResidueMatrix& entries() const { return data_; }

  FpMatrix transpose() const;
  FpMatrix col(Index c) const;
  FpMatrix row(Index r) const;
  FpMatrix cols_range(Index start, Index count) const;
  FpMatrix rows_range(Index start, Index count) const;
  FpMatrix block(Index r, Index c, Index nr, Index nc) const;
  void set_block(Index r, Index c, const FpMatrix& b);
  FpMatrix select_cols(const std::vector<Index>& idx) const;
  FpMatrix select_rows(const std::vector<Index>& idx) const;

  bool is_zero() const;
  FpMatrix scaled(Residue s) const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
  friend bool operator==(const FpMatrix& a, const FpMatrix& b);

  FpMatrix& operator+=(const FpMatrix& b);

  /// Adds s * b in place.
  void axpy(Residue s, const FpMatrix& b);

 private:
  std::uint32_t p_ = 2;
  ResidueMatrix data_;
};

FpMatrix hstack(const std::vector<FpMatrix>& parts, std::uint32_t p, Index rows);
FpMatrix vstack(const std::vector<FpMatrix>& parts, std::uint32_t p, Index cols);
FpMatrix block_diagonal(const std::vector<FpMatrix>& parts, std::uint32_t p);
FpMatrix matrix_power(const FpMatrix& m, std::uint64_t e);

struct RowEchelon {
  FpMatrix reduced;            // reduced row echelon form, zero rows removed
  std::vector<Index> pivots;   // pivot column of each row
};

RowEchelon row_echelon(const FpMatrix& m);

std::size_t rank_fp(const FpMatrix& m);

/// Columns forming a basis of ker(a).
FpMatrix nullspace(const FpMatrix& a);

/// Columns forming a basis of the left kernel {x : x^T a = 0}.
FpMatrix left_nullspace(const FpMatrix& a);

struct SolveResult {
  std::vector<std::optional<FpMatrix>> particular;  // one per column of b
  FpMatrix nullspace;                               // basis of ker(a)
  bool consistent() const;
  /// Particular solutions as one block; requires every column consistent.
  FpMatrix solution_block() const;
};

/// Solves a x = b column by column. Throws std::invalid_argument on a shape
/// mismatch.
SolveResult solve_fp(const FpMatrix& a, const FpMatrix& b);

/// Basis (as columns) of the column space of m, in reduced form.
FpMatrix column_space(const FpMatrix& m);

/// Indices of a maximal set of independent columns, scanning left to right.
std::vector<Index> independent_columns(const FpMatrix& m);

std::optional<FpMatrix> inverse(const FpMatrix& m);

/// A subspace of F_p^n, stored as a reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::uint32_t p, Index ambient);
  /// Span of the columns of `generators`.
  static Subspace span(const FpMatrix& generators);

  std::uint32_t prime() const { return p_; }
  Index ambient() const { return n_; }
  Index dim() const { return static_cast<Index>(pivots_.size()); }

  bool contains(const FpMatrix& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of each column of v in the basis returned by basis().
  /// Requires containment.
  FpMatrix coordinates(const FpMatrix& v) const;
  /// Basis vectors as columns.
  FpMatrix basis() const;
  /// Reduces v modulo the subspace (normal form with zero pivot entries).
  FpMatrix reduce(const FpMatrix& v) const;

  /// Adds a vector, returning true if the dimension grew.
  bool insert(const FpMatrix& v);

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::uint32_t p_ = 2;
  Index n_ = 0;
  ResidueMatrix rows_;          // dim x n, reduced
  std::vector<Index> pivots_;
};

/// Columns of `candidates` extending a basis of span(sub) to one of
/// span(sub) + span(candidates), picked greedily left to right.
FpMatrix extend_basis(const Subspace& sub, const FpMatrix& candidates);

Subspace intersect(const Subspace& a, const Subspace& b);

/// Fast coordinates with respect to a fixed set of independent columns.
class CoordinateMap {
 public:
  CoordinateMap() = default;
  explicit CoordinateMap(const FpMatrix& basis);

  Index dim() const { return basis_.cols(); }
  const FpMatrix& basis() const { return basis_; }
  /// Coordinates of each column of v, or nullopt if some column is outside
  /// the span.
  std::optional<FpMatrix> try_coordinates(const FpMatrix& v) const;
  FpMatrix coordinates(const FpMatrix& v) const;

 private:
  FpMatrix basis_;
  std::vector<Index> rows_;
  FpMatrix inverse_;
};

/// Column-major flattening of a matrix into a single column.
FpMatrix flatten(const FpMatrix& m);
FpMatrix unflatten(const FpMatrix& v, Index rows, Index cols);

// Integer matrices.

/// Rank over Q by fraction-free (Bareiss) elimination.
template <class Derived>
std::size_t rank_int(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = m;
  const Index rows = a.rows();
  const Index cols = a.cols();
  Scalar prev = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        Scalar v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        a(i, j) = v / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return static_cast<std::size_t>(r);
}

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);

/// Plain triple-loop product; Eigen's lazy product does not compose with
/// cpp_int expression templates.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Hermite-reduced basis (as rows) of the lattice {x in Z^rows : x^T m = 0}.
IntMatrix integer_left_kernel(const IntMatrix& m);

}  // namespace itphi
