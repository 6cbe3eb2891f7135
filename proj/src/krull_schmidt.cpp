#include "itphi/krull_schmidt.hpp"

#include "itphi/errors.hpp"

#include <random>
#include <stdexcept>

namespace itphi {

namespace {

constexpr int kRandomSplitBudget = 64;
constexpr int kEagerSplits = 8;

struct Piece {
  Module module;
  FpMatrix inclusion;
  IndecomposabilityCertificate certificate;
};

// Endomorphism of m with a nontrivial Fitting splitting, as (kernel, image) bases.
std::optional<std::pair<FpMatrix, FpMatrix>> fitting_split(const FpMatrix& f, std::mt19937_64& rng) {
  const auto factors = factor(characteristic_polynomial(f), rng);
  if (factors.size() < 2) return std::nullopt;
  FpPoly q = FpPoly::constant(f.prime(), 1);
  for (int i = 0; i < factors.front().multiplicity; ++i) q = q * factors.front().factor;
  const FpMatrix g = evaluate(q, f);
  return std::make_pair(nullspace(g), column_space(g));
}

void split(const Module& m, const FpMatrix& inclusion, std::mt19937_64& rng, std::vector<Piece>& out) {
  if (m.dim() == 0) return;
  const auto homs = hom_matrices(m, m);
  const std::uint32_t p = m.prime();
  std::uniform_int_distribution<Residue> coeff(0, p - 1);
  auto attempt = [&](const FpMatrix& f) {
    auto parts = fitting_split(f, rng);
    if (!parts) return false;
    split(submodule(m, parts->first), inclusion * parts->first, rng, out);
    split(submodule(m, parts->second), inclusion * parts->second, rng, out);
    return true;
  };
  auto random_endo = [&] {
    FpMatrix f(p, m.dim(), m.dim());
    for (const auto& h : homs) f.axpy(coeff(rng), h);
    return f;
  };
  if (homs.size() > 1)
    for (int t = 0; t < kEagerSplits; ++t)
      if (attempt(random_endo())) return;
  const auto cert = is_indecomposable(m, rng());
  if (cert.indecomposable) {
    out.push_back({m, inclusion, cert});
    return;
  }
  for (int t = 0; t < kRandomSplitBudget; ++t) {
    if (attempt(random_endo())) return;
  }
  for (const auto& h : homs)
    if (attempt(h)) return;
  for (std::size_t i = 0; i < homs.size(); ++i)
    for (std::size_t j = i + 1; j < homs.size(); ++j)
      if (attempt(homs[i] + homs[j])) return;
  throw RetryExhausted("no splitting endomorphism found for a decomposable module of dimension " +
                       std::to_string(m.dim()));
}

bool quick_match(const Summand& s, const Piece& piece) {
  return s.module.dim() == piece.module.dim() && s.certificate.dim_end == piece.certificate.dim_end &&
         s.certificate.dim_rad_end == piece.certificate.dim_rad_end &&
         s.module.dimension_vector() == piece.module.dimension_vector();
}

void add_piece(std::vector<Summand>& summands, const Piece& piece) {
  for (auto& s : summands) {
    if (!quick_match(s, piece)) continue;
    if (auto f = indecomposable_isomorphism(s.module, piece.module)) {
      s.inclusions.push_back(piece.inclusion * *f);
      ++s.multiplicity;
      return;
    }
  }
  summands.push_back({piece.module, 1, {piece.inclusion}, piece.certificate});
}

FpMatrix reassembly_of(const std::vector<Summand>& summands, std::uint32_t p, Index dim) {
  std::vector<FpMatrix> cols;
  for (const auto& s : summands)
    for (const auto& inc : s.inclusions) cols.push_back(inc);
  return hstack(cols, p, dim);
}

// Matches summands of two decompositions; returns an isomorphism when they agree.
std::optional<FpMatrix> match(const Decomposition& a, const Decomposition& b, std::uint32_t p, Index dim) {
  if (a.summands.size() != b.summands.size()) return std::nullopt;
  std::vector<bool> used(b.summands.size(), false);
  FpMatrix iso(p, dim, dim);
  const FpMatrix inv = dim == 0 ? FpMatrix(p, 0, 0) : *inverse(a.reassembly);
  Index offset = 0;
  for (const auto& s : a.summands) {
    bool found = false;
    for (std::size_t j = 0; j < b.summands.size() && !found; ++j) {
      const Summand& t = b.summands[j];
      if (used[j] || t.multiplicity != s.multiplicity || t.module.dim() != s.module.dim() ||
          t.certificate.dim_end != s.certificate.dim_end)
        continue;
      auto f = indecomposable_isomorphism(s.module, t.module);
      if (!f) continue;
      used[j] = true;
      found = true;
      const Index k = s.module.dim();
      for (int c = 0; c < s.multiplicity; ++c) {
        iso += t.inclusions[static_cast<std::size_t>(c)] * *f * inv.rows_range(offset, k);
        offset += k;
      }
    }
    if (!found) return std::nullopt;
  }
  return iso;
}

}  // namespace

EndomorphismRing endomorphism_ring(const Module& m) {
  EndomorphismRing out;
  out.basis = hom_matrices(m, m);
  out.radical = radical_of_endo(out.basis);
  return out;
}

RadicalResult radical_of_endo(const std::vector<FpMatrix>& basis) { return matrix_algebra_radical(basis); }

IndecomposabilityCertificate is_indecomposable(const Module& m, std::uint64_t seed) {
  if (m.dim() == 0) throw std::invalid_argument("is_indecomposable: zero module");
  const EndomorphismRing end = endomorphism_ring(m);
  IndecomposabilityCertificate cert;
  cert.dim_end = static_cast<Index>(end.basis.size());
  cert.dim_rad_end = end.radical.coordinates.cols();
  std::mt19937_64 rng(seed);
  const auto local = locality_certificate(end.basis, end.radical, FpMatrix::identity(m.prime(), m.dim()), rng);
  cert.indecomposable = local.local;
  cert.minimal_polynomial = local.minimal_polynomial;
  return cert;
}

Decomposition decompose(const Module& m, std::uint64_t seed) {
  Decomposition out;
  std::mt19937_64 rng(seed);
  std::vector<Piece> pieces;
  split(m, FpMatrix::identity(m.prime(), m.dim()), rng, pieces);
  for (const auto& piece : pieces) add_piece(out.summands, piece);
  out.reassembly = reassembly_of(out.summands, m.prime(), m.dim());
  return out;
}

Decomposition decompose(const std::vector<Module>& parts, const AlgebraPtr& a, std::uint64_t seed) {
  Index total = 0;
  for (const auto& m : parts) {
    if (!same_algebra(*m.algebra(), *a)) throw AlgebraMismatch("decompose: part over a different algebra");
    total += m.dim();
  }
  Decomposition out;
  Index offset = 0;
  for (const auto& m : parts) {
    const Decomposition d = decompose(m, seed);
    for (const auto& s : d.summands)
      for (const auto& inc : s.inclusions) {
        FpMatrix placed(a->prime(), total, inc.cols());
        placed.set_block(offset, 0, inc);
        add_piece(out.summands, {s.module, placed, s.certificate});
      }
    offset += m.dim();
  }
  out.reassembly = reassembly_of(out.summands, a->prime(), total);
  return out;
}

std::optional<FpMatrix> indecomposable_isomorphism(const Module& m, const Module& n) {
  if (m.dim() != n.dim() || m.dimension_vector() != n.dimension_vector()) return std::nullopt;
  const auto forward = hom_matrices(m, n);
  if (forward.empty()) return std::nullopt;
  const auto backward = hom_matrices(n, m);
  for (const auto& f : forward)
    for (const auto& g : backward)
      if (rank_fp(g * f) == static_cast<std::size_t>(m.dim())) return f;
  return std::nullopt;
}

std::optional<FpMatrix> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed) {
  require_same_algebra(m, n, "are_isomorphic");
  if (m.dim() != n.dim() || m.dimension_vector() != n.dimension_vector()) return std::nullopt;
  if (m.dim() == 0) return FpMatrix(m.prime(), 0, 0);
  return match(decompose(m, seed), decompose(n, seed), m.prime(), m.dim());
}

bool are_isomorphic(const Module& m, const Module& n, std::uint64_t seed) {
  return find_isomorphism(m, n, seed).has_value();
}

bool are_isomorphic(const std::vector<Module>& m, const std::vector<Module>& n, std::uint64_t seed) {
  if (m.empty() && n.empty()) return true;
  const AlgebraPtr& a = m.empty() ? n.front().algebra() : m.front().algebra();
  Index dm = 0, dn = 0;
  for (const auto& x : m) dm += x.dim();
  for (const auto& x : n) dn += x.dim();
  if (dm != dn) return false;
  if (dm == 0) return true;
  return match(decompose(m, a, seed), decompose(n, a, seed), a->prime(), dm).has_value();
}

std::int64_t KVector::operator[](int c) const {
  auto it = coeffs.find(c);
  return it == coeffs.end() ? 0 : it->second;
}

void KVector::add(int c, std::int64_t v) {
  if (v == 0) return;
  auto& slot = coeffs[c];
  slot += v;
  if (slot == 0) coeffs.erase(c);
}

void KVector::add(const KVector& other, std::int64_t scale) {
  for (const auto& [c, v] : other.coeffs) add(c, v * scale);
}

IsoRegistry::IsoRegistry(AlgebraPtr algebra, std::uint64_t seed) : algebra_(std::move(algebra)), seed_(seed) {}

Fingerprint IsoRegistry::fingerprint_of(const Module& m, const IndecomposabilityCertificate& cert) {
  if (simples_.empty())
    for (int v = 0; v < algebra_->vertex_count(); ++v)
      if (algebra_->idempotent_class(v) == v) simples_.push_back(simple_module(algebra_, v));
  Fingerprint f;
  f.dim = m.dim();
  f.dimension_vector = m.dimension_vector();
  f.dim_end = cert.dim_end;
  f.dim_rad_end = cert.dim_rad_end;
  for (const auto& s : simples_) {
    f.hom_from_simples.push_back(static_cast<Index>(hom_matrices(s, m).size()));
    f.hom_to_simples.push_back(static_cast<Index>(hom_matrices(m, s).size()));
  }
  return f;
}

int IsoRegistry::class_of(const Module& m, const IndecomposabilityCertificate* cert) {
  if (!same_algebra(*m.algebra(), *algebra_)) throw AlgebraMismatch("IsoRegistry: module over a different algebra");
  IndecomposabilityCertificate local;
  if (cert == nullptr) {
    local = is_indecomposable(m, seed_);
    if (!local.indecomposable) throw std::invalid_argument("IsoRegistry::class_of: module is decomposable");
    cert = &local;
  }
  const Fingerprint f = fingerprint_of(m, *cert);
  auto [lo, hi] = by_fingerprint_.equal_range(f);
  for (auto it = lo; it != hi; ++it)
    if (indecomposable_isomorphism(classes_[static_cast<std::size_t>(it->second)].module, m)) return it->second;
  const int id = size();
  classes_.push_back({m, f, itphi::is_projective(m)});
  by_fingerprint_.emplace(f, id);
  return id;
}

std::map<int, int> IsoRegistry::classes_in(const Module& m) {
  auto it = seen_.find(m.identity());
  if (it != seen_.end()) return it->second.second;
  std::map<int, int> out = classes_in(std::vector<Module>{m});
  seen_.emplace(m.identity(), std::make_pair(m, out));
  return out;
}

std::map<int, int> IsoRegistry::classes_in(const std::vector<Module>& parts) {
  std::map<int, int> out;
  for (const auto& part : parts) {
    if (part.dim() == 0) continue;
    auto it = seen_.find(part.identity());
    if (it != seen_.end()) {
      for (const auto& [c, k] : it->second.second) out[c] += k;
      continue;
    }
    const Decomposition d = decompose(part, seed_);
    for (const auto& s : d.summands) out[class_of(s.module, &s.certificate)] += s.multiplicity;
  }
  return out;
}

KVector IsoRegistry::register_module(const Module& m) { return register_module(std::vector<Module>{m}); }

KVector IsoRegistry::register_module(const std::vector<Module>& parts) {
  KVector v;
  for (const auto& [c, mult] : classes_in(parts))
    if (!is_projective(c)) v.add(c, mult);
  return v;
}

const KVector& IsoRegistry::omega(int c) {
  if (is_projective(c)) throw std::invalid_argument("omega: class " + std::to_string(c) + " is projective");
  auto it = omega_.find(c);
  if (it != omega_.end()) return it->second;
  KVector v = register_module(syzygy(representative(c)));
  return omega_.emplace(c, std::move(v)).first->second;
}

std::map<int, int> IsoRegistry::merge(const IsoRegistry& other) {
  std::map<int, int> translate;
  for (int c = 0; c < other.size(); ++c) translate[c] = class_of(other.representative(c));
  for (const auto& [c, v] : other.omega_) {
    const int here = translate.at(c);
    if (omega_.count(here)) continue;
    KVector moved;
    for (const auto& [d, x] : v.coeffs) moved.add(translate.at(d), x);
    omega_.emplace(here, std::move(moved));
  }
  return translate;
}

}  // namespace itphi
