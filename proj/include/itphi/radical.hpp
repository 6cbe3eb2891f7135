#pragma once

#include "itphi/exact_linalg.hpp"
#include "itphi/polynomial.hpp"

#include <random>
#include <vector>

namespace itphi {

/// Jacobson radical of a subalgebra of M_n(F_p).
struct RadicalResult {
  /// Columns: coefficient vectors of a radical basis in terms of the input
  /// basis.
  FpMatrix coordinates;
  /// The same radical basis as matrices.
  std::vector<FpMatrix> elements;
};

/// `basis` must be linearly independent n x n matrices spanning an algebra
/// closed under multiplication. Uses the iterated generalized-trace kernels
/// I_{-1} = A, I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}, where
/// g_i(x) = Tr(x~^(p^i)) / p^i mod p for an integral lift x~, stopping at
/// i = floor(log_p n). Throws std::logic_error if the result fails the
/// nilpotency/ideal certification.
RadicalResult matrix_algebra_radical(const std::vector<FpMatrix>& basis);

struct LocalityCertificate {
  Index algebra_dim = 0;
  Index radical_dim = 0;
  /// Minimal polynomial of a generator of the quotient by the radical; the
  /// quotient is a field exactly when this is irreducible of degree
  /// algebra_dim - radical_dim.
  FpPoly minimal_polynomial;
  bool local = false;
};

/// Locality test for a unital matrix algebra with identity `unit`.
LocalityCertificate locality_certificate(const std::vector<FpMatrix>& basis,
                                         const RadicalResult& radical, const FpMatrix& unit,
                                         std::mt19937_64& rng);

}  // namespace itphi
