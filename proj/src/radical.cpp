#include "itphi/radical.hpp"

#include <stdexcept>

namespace itphi {

namespace {

ResidueMatrix mul_mod(const ResidueMatrix& a, const ResidueMatrix& b, Residue mod) {
  ResidueMatrix c = a * b;
  for (Index i = 0; i < c.size(); ++i) c.data()[i] %= mod;
  return c;
}

// Tr(x^(p^i)) / p^i mod p, with x lifted to [0, p).
Residue generalized_trace(const FpMatrix& x, int i) {
  const Residue p = x.prime();
  if (i == 0) {
    Residue t = 0;
    for (Index k = 0; k < x.rows(); ++k) t += x(k, k);
    return t % p;
  }
  Residue pi = 1;
  for (int k = 0; k < i; ++k) pi *= p;
  const Residue mod = pi * p;
  ResidueMatrix y = x.entries();
  for (int k = 0; k < i; ++k) {
    // y <- y^p
    ResidueMatrix acc = y;
    for (Residue e = 1; e < p; ++e) acc = mul_mod(acc, y, mod);
    y = std::move(acc);
  }
  Residue t = 0;
  for (Index k = 0; k < y.rows(); ++k) t = (t + y(k, k)) % mod;
  if (t % pi != 0) throw std::logic_error("generalized trace not divisible; input is not an ideal member");
  return (t / pi) % p;
}

bool is_nilpotent(const FpMatrix& x) {
  FpMatrix y = x;
  for (Index k = 1; k < x.rows() + 1; k *= 2) {
    if (y.is_zero()) return true;
    y = y * y;
  }
  return y.is_zero();
}

FpMatrix combine(const std::vector<FpMatrix>& basis, const FpMatrix& coeffs, Index col) {
  FpMatrix out(basis.front().prime(), basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k) out.axpy(coeffs(static_cast<Index>(k), col), basis[k]);
  return out;
}

}  // namespace

RadicalResult matrix_algebra_radical(const std::vector<FpMatrix>& basis) {
  RadicalResult result;
  if (basis.empty()) {
    result.coordinates = FpMatrix(2, 0, 0);
    return result;
  }
  const std::uint32_t p = basis.front().prime();
  const Index n = basis.front().rows();
  const Index s = static_cast<Index>(basis.size());

  int levels = 0;  // floor(log_p n)
  for (Index q = p; q <= n; q *= p) ++levels;

  FpMatrix coords = FpMatrix::identity(p, s);  // current ideal, columns
  std::vector<FpMatrix> current = basis;
  for (int i = 0; i <= levels && !current.empty(); ++i) {
    const Index m = static_cast<Index>(current.size());
    FpMatrix gram(p, m, s);
    for (Index k = 0; k < m; ++k)
      for (Index j = 0; j < s; ++j)
        gram.set(k, j, generalized_trace(current[static_cast<std::size_t>(k)] * basis[static_cast<std::size_t>(j)], i));
    FpMatrix keep = left_nullspace(gram);  // m x m'
    std::vector<FpMatrix> next;
    for (Index c = 0; c < keep.cols(); ++c) next.push_back(combine(current, keep, c));
    coords = coords * keep;
    current = std::move(next);
  }
  result.coordinates = coords;
  result.elements = current;

  // Certification: nilpotent two-sided ideal.
  std::vector<FpMatrix> flat;
  for (const auto& x : result.elements) {
    if (!is_nilpotent(x)) throw std::logic_error("radical certification failed: non-nilpotent element");
    flat.push_back(flatten(x));
  }
  if (!result.elements.empty()) {
    Subspace span = Subspace::span(hstack(flat, p, n * n));
    for (const auto& x : result.elements)
      for (const auto& b : basis)
        if (!span.contains(flatten(x * b)) || !span.contains(flatten(b * x)))
          throw std::logic_error("radical certification failed: not a two-sided ideal");
  }
  return result;
}

LocalityCertificate locality_certificate(const std::vector<FpMatrix>& basis,
                                         const RadicalResult& radical, const FpMatrix& unit,
                                         std::mt19937_64& rng) {
  LocalityCertificate cert;
  cert.algebra_dim = static_cast<Index>(basis.size());
  cert.radical_dim = radical.coordinates.cols();
  const Index k = cert.algebra_dim - cert.radical_dim;
  if (basis.empty() || k <= 0) throw std::invalid_argument("locality_certificate: zero algebra");
  const std::uint32_t p = basis.front().prime();
  if (k == 1) {
    cert.minimal_polynomial = FpPoly(p, {p - 1, 1});
    cert.local = true;
    return cert;
  }
  const Index n = basis.front().rows();
  std::vector<FpMatrix> flat;
  for (const auto& b : basis) flat.push_back(flatten(b));
  CoordinateMap coords(hstack(flat, p, n * n));
  const Subspace rad = Subspace::span(radical.coordinates);

  std::uniform_int_distribution<Residue> coin(0, p - 1);
  for (int attempt = 0; attempt < 32; ++attempt) {
    FpMatrix x(p, n, n);
    for (const auto& b : basis) x.axpy(coin(rng), b);
    Subspace seen = rad;
    std::vector<FpMatrix> reduced_powers;
    FpMatrix power = unit;
    for (Index j = 0; j <= k; ++j) {
      FpMatrix c = rad.reduce(coords.coordinates(flatten(power)));
      if (!seen.insert(c)) {
        // power_j = sum_i a_i power_i  (mod radical)
        FpMatrix prev = hstack(reduced_powers, p, c.rows());
        auto sol = solve_fp(prev, c);
        std::vector<Residue> poly(static_cast<std::size_t>(j + 1), 0);
        for (Index i = 0; i < j; ++i) poly[static_cast<std::size_t>(i)] = -(*sol.particular[0])(i, 0);
        poly[static_cast<std::size_t>(j)] = 1;
        FpPoly mu(p, poly);
        if (j == k && is_irreducible(mu)) {
          cert.minimal_polynomial = mu;
          cert.local = true;
          return cert;
        }
        cert.minimal_polynomial = mu;
        break;
      }
      reduced_powers.push_back(c);
      power = power * x;
    }
  }
  cert.local = false;
  return cert;
}

}  // namespace itphi
