#pragma once

#include "itphi/exact_linalg.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace itphi {

/// Univariate polynomial over F_p; coefficients stored low degree first and
/// kept trimmed (no trailing zeros; the zero polynomial is empty).
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint32_t p, std::vector<Residue> coeffs);
  static FpPoly monomial(std::uint32_t p, std::size_t degree, Residue c = 1);
  static FpPoly constant(std::uint32_t p, Residue c);

  std::uint32_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Residue coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Residue leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Residue>& coeffs() const { return c_; }

  FpPoly monic() const;
  FpPoly derivative() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) = default;

 private:
  void trim();
  std::uint32_t p_ = 2;
  std::vector<Residue> c_;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const FpPoly& a, const FpPoly& b);
FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& modulus);

/// Evaluates the polynomial at a square matrix (Horner).
FpMatrix evaluate(const FpPoly& f, const FpMatrix& m);

/// Characteristic polynomial det(xI - m) via Hessenberg reduction.
FpPoly characteristic_polynomial(const FpMatrix& m);

struct FactorPower {
  FpPoly factor;  // monic irreducible
  int multiplicity;
};

/// Complete factorisation into monic irreducibles (square-free split,
/// distinct-degree split, then randomised equal-degree split).
std::vector<FactorPower> factor(const FpPoly& f, std::mt19937_64& rng);

/// Irreducibility test by distinct-degree factorisation.
bool is_irreducible(const FpPoly& f);

}  // namespace itphi
