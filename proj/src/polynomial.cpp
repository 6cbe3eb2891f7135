#include "itphi/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace itphi {

namespace {

Residue norm(Residue v, std::uint32_t p) {
  v %= static_cast<Residue>(p);
  return v < 0 ? v + p : v;
}

void check(const FpPoly& a, const FpPoly& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("FpPoly: prime mismatch");
}

}  // namespace

FpPoly::FpPoly(std::uint32_t p, std::vector<Residue> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& v : c_) v = norm(v, p_);
  trim();
}

FpPoly FpPoly::monomial(std::uint32_t p, std::size_t degree, Residue c) {
  std::vector<Residue> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::constant(std::uint32_t p, Residue c) { return FpPoly(p, {c}); }

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  const Residue inv = inverse_mod(c_.back(), p_);
  std::vector<Residue> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * inv % p_;
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return FpPoly(p_, {});
  std::vector<Residue> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<Residue>(i % p_) % p_;
  return FpPoly(p_, std::move(out));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  check(a, b);
  std::vector<Residue> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  check(a, b);
  std::vector<Residue> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  check(a, b);
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  std::vector<Residue> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = (out[i + j] + a.c_[i] * b.c_[j]) % a.p_;
  }
  return FpPoly(a.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  check(a, b);
  if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
  const std::uint32_t p = a.prime();
  std::vector<Residue> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {FpPoly(p, {}), a};
  std::vector<Residue> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const Residue inv = inverse_mod(b.leading(), p);
  for (int k = a.degree() - db; k >= 0; --k) {
    const Residue c = rem[static_cast<std::size_t>(k + db)] * inv % p;
    quo[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& r = rem[static_cast<std::size_t>(k + j)];
      r = norm(r - c * b.coeff(static_cast<std::size_t>(j)), p);
    }
  }
  return {FpPoly(p, std::move(quo)), FpPoly(p, std::move(rem))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& modulus) {
  FpPoly result = FpPoly::constant(base.prime(), 1) % modulus;
  FpPoly b = base % modulus;
  BigInt k = e;
  while (k > 0) {
    if ((k & 1) != 0) result = (result * b) % modulus;
    k >>= 1;
    if (k > 0) b = (b * b) % modulus;
  }
  return result;
}

FpMatrix evaluate(const FpPoly& f, const FpMatrix& m) {
  const std::uint32_t p = m.prime();
  FpMatrix acc(p, m.rows(), m.cols());
  const FpMatrix id = FpMatrix::identity(p, m.rows());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * m;
    acc.axpy(f.coeff(static_cast<std::size_t>(i)), id);
  }
  return acc;
}

FpPoly characteristic_polynomial(const FpMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic_polynomial: not square");
  const std::uint32_t p = m.prime();
  const Residue q = p;
  const Index n = m.rows();
  ResidueMatrix h = m.entries();

  // Similarity transform to upper Hessenberg form.
  for (Index col = 0; col + 2 < n; ++col) {
    const Index target = col + 1;
    Index piv = target;
    while (piv < n && h(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != target) {
      h.row(piv).swap(h.row(target));
      h.col(piv).swap(h.col(target));
    }
    const Residue inv = inverse_mod(h(target, col), p);
    for (Index i = target + 1; i < n; ++i) {
      const Residue u = h(i, col) * inv % q;
      if (u == 0) continue;
      for (Index j = 0; j < n; ++j) h(i, j) = norm(h(i, j) - u * h(target, j), p);
      for (Index j = 0; j < n; ++j) h(j, target) = (h(j, target) + u * h(j, i)) % q;
    }
  }

  // Recurrence on leading principal minors.
  std::vector<FpPoly> chars;
  chars.emplace_back(FpPoly::constant(p, 1));
  const FpPoly x = FpPoly::monomial(p, 1);
  for (Index k = 0; k < n; ++k) {
    FpPoly next = (x - FpPoly::constant(p, h(k, k))) * chars[static_cast<std::size_t>(k)];
    Residue t = 1;
    for (Index i = 1; i <= k; ++i) {
      t = t * h(k - i + 1, k - i) % q;
      const Residue c = t * h(k - i, k) % q;
      if (c == 0) continue;
      next = next - FpPoly::constant(p, c) * chars[static_cast<std::size_t>(k - i)];
    }
    chars.push_back(std::move(next));
  }
  return chars.back();
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
FpPoly pth_root(const FpPoly& f) {
  const std::uint32_t p = f.prime();
  std::vector<Residue> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f.coeffs()[i]);
  return FpPoly(p, std::move(out));
}

void squarefree(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  if (f.degree() < 1) return;
  const std::uint32_t p = f.prime();
  FpPoly df = f.derivative();
  if (df.is_zero()) {
    squarefree(pth_root(f), mult * static_cast<int>(p), out);
    return;
  }
  FpPoly c = gcd(f, df);
  FpPoly w = f / c;
  int i = 1;
  while (w.degree() >= 1) {
    FpPoly y = gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() >= 1) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() >= 1) squarefree(pth_root(c), mult * static_cast<int>(p), out);
}

void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  const int n = f.degree();
  if (n <= d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint32_t p = f.prime();
  std::uniform_int_distribution<Residue> coin(0, p - 1);
  BigInt q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  for (;;) {
    std::vector<Residue> a(static_cast<std::size_t>(n));
    for (auto& v : a) v = coin(rng);
    FpPoly r(p, std::move(a));
    if (r.degree() < 1) continue;
    FpPoly g;
    if (p == 2) {
      // trace map r + r^2 + ... + r^(2^(d-1))
      FpPoly acc = r % f, term = r % f;
      for (int i = 1; i < d; ++i) {
        term = (term * term) % f;
        acc = acc + term;
      }
      g = gcd(f, acc);
    } else {
      FpPoly e = powmod(r, (q - 1) / 2, f) - FpPoly::constant(p, 1);
      g = gcd(f, e);
    }
    if (g.degree() >= 1 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FactorPower> factor(const FpPoly& f, std::mt19937_64& rng) {
  std::vector<FactorPower> result;
  if (f.degree() < 1) return result;
  const std::uint32_t p = f.prime();
  std::vector<std::pair<FpPoly, int>> sqf;
  squarefree(f.monic(), 1, sqf);
  const FpPoly x = FpPoly::monomial(p, 1);
  for (auto& [g0, mult] : sqf) {
    FpPoly g = g0;
    FpPoly h = x % g;
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = powmod(h, BigInt(p), g);
      FpPoly common = gcd(g, h - x);
      if (common.degree() >= 1) {
        std::vector<FpPoly> parts;
        equal_degree(common, d, rng, parts);
        for (auto& q : parts) result.push_back({q, mult});
        g = g / common;
        h = h % g;
      }
    }
    if (g.degree() >= 1) result.push_back({g.monic(), mult});
  }
  // Merge equal factors that arrived from different square-free layers.
  std::sort(result.begin(), result.end(), [](const FactorPower& a, const FactorPower& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    return a.factor.coeffs() < b.factor.coeffs();
  });
  std::vector<FactorPower> merged;
  for (auto& fp : result) {
    if (!merged.empty() && merged.back().factor == fp.factor)
      merged.back().multiplicity += fp.multiplicity;
    else
      merged.push_back(fp);
  }
  return merged;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  const std::uint32_t p = f.prime();
  const FpPoly g = f.monic();
  const FpPoly x = FpPoly::monomial(p, 1);
  FpPoly h = x % g;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = powmod(h, BigInt(p), g);
    if (gcd(g, h - x).degree() >= 1) return false;
  }
  return true;
}

}  // namespace itphi
