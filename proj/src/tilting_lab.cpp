#include "itphi/tilting_lab.hpp"

#include "itphi/errors.hpp"

#include <stdexcept>

namespace itphi {

namespace {

FpMatrix embed(const FpMatrix& v, Index size, Index offset) {
  FpMatrix out(v.prime(), size, v.cols());
  out.set_block(offset, 0, v);
  return out;
}

std::string bound_verdict(bool exact, bool holds) {
  if (!exact) return holds ? "insufficient evidence" : "violated";
  return holds ? "holds" : "violated";
}

}  // namespace

Approximation left_add_approximation(const Module& x, const Module& t, std::uint64_t seed) {
  require_same_algebra(x, t, "left_add_approximation");
  const std::uint32_t p = x.prime();
  Approximation out;
  for (const auto& s : decompose(t, seed).summands) out.summands.push_back(s.module);
  const std::size_t k = out.summands.size();

  std::vector<std::vector<FpMatrix>> from_x(k);
  for (std::size_t j = 0; j < k; ++j) from_x[j] = hom_matrices(x, out.summands[j]);

  std::vector<Module> copies;
  std::vector<FpMatrix> components;
  for (std::size_t j = 0; j < k; ++j) {
    const Module& tj = out.summands[j];
    Subspace factored(p, tj.dim() * x.dim());
    for (std::size_t l = 0; l < k; ++l) {
      if (from_x[l].empty()) continue;
      const std::vector<FpMatrix> radical_maps =
          l == j ? endomorphism_ring(tj).radical.elements : hom_matrices(out.summands[l], tj);
      for (const auto& g : radical_maps)
        for (const auto& h : from_x[l]) factored.insert(flatten(g * h));
    }
    for (const auto& h : from_x[j]) {
      if (!factored.insert(flatten(h))) continue;
      copies.push_back(tj);
      components.push_back(h);
      out.copy_of.push_back(static_cast<int>(j));
    }
  }
  out.target = direct_sum(copies, x.algebra());
  out.map = components.empty() ? FpMatrix(p, 0, x.dim()) : vstack(components, p, x.dim());
  return out;
}

TiltingCertificate verify_tilting(const Module& t, int m_max, int n_max, std::uint64_t seed) {
  if (t.dim() == 0) throw std::invalid_argument("verify_tilting: zero module");
  const AlgebraPtr& a = t.algebra();
  TiltingCertificate cert;
  IsoRegistry r(a, seed);
  const ProjDim pd = pd_bounded(r, t, n_max);
  if (!pd.finite) throw NotFiniteProjDim("projective dimension exceeds " + std::to_string(n_max));
  cert.pd = pd.value;
  for (int i = 1; i <= cert.pd; ++i) {
    cert.rigidity.push_back(ext_dim(t, t, i));
    if (cert.rigidity.back() != 0)
      throw NotRigid(i, "Ext^" + std::to_string(i) + "(T, T) has dimension " + std::to_string(cert.rigidity.back()));
  }
  if (m_max < 0) m_max = cert.pd + 2;

  Module current = regular_module(a);
  FpMatrix projection = FpMatrix::identity(a->prime(), a->dim());
  for (int step = 0; step <= m_max; ++step) {
    const Approximation appr = left_add_approximation(current, t, seed);
    if (static_cast<Index>(rank_fp(appr.map)) != current.dim())
      throw CoresolutionStalled("cokernel " + std::to_string(step) + " of dimension " + std::to_string(current.dim()) +
                                " does not embed in add(T)");
    cert.terms.push_back(appr.target);
    cert.maps.push_back(appr.map * projection);
    const Quotient q = quotient(appr.target, column_space(appr.map));
    if (q.module.dim() == 0) {
      cert.m = step;
      return cert;
    }
    current = q.module;
    projection = q.projection;
  }
  throw CoresolutionStalled("no zero cokernel within " + std::to_string(m_max) + " steps");
}

bool coresolution_exact(const TiltingCertificate& c, const AlgebraPtr& a) {
  if (c.maps.empty() || c.maps.size() != c.terms.size()) return false;
  if (static_cast<Index>(rank_fp(c.maps[0])) != a->dim()) return false;
  for (std::size_t i = 0; i < c.maps.size(); ++i) {
    const Index rows = c.terms[i].dim();
    if (c.maps[i].rows() != rows) return false;
    if (i + 1 < c.maps.size()) {
      if (!(c.maps[i + 1] * c.maps[i]).is_zero()) return false;
      if (rank_fp(c.maps[i]) + rank_fp(c.maps[i + 1]) != static_cast<std::size_t>(rows)) return false;
    } else if (static_cast<Index>(rank_fp(c.maps[i])) != rows) {
      return false;
    }
  }
  return true;
}

EndoAlgebra endomorphism_algebra(const Module& t, std::uint64_t seed) {
  if (t.dim() == 0) throw std::invalid_argument("endomorphism_algebra: zero module");
  const std::uint32_t p = t.prime();
  EndoAlgebra out;
  out.hom = hom_matrices(t, t);
  const Index n = static_cast<Index>(out.hom.size());
  std::vector<FpMatrix> flat;
  for (const auto& h : out.hom) flat.push_back(flatten(h));
  const CoordinateMap coords(hstack(flat, p, t.dim() * t.dim()));

  std::vector<Residue> structure(static_cast<std::size_t>(n * n * n), 0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const FpMatrix c = coords.coordinates(flatten(out.hom[static_cast<std::size_t>(j)] *
                                                    out.hom[static_cast<std::size_t>(i)]));
      for (Index k = 0; k < n; ++k) structure[static_cast<std::size_t>((i * n + j) * n + k)] = c(k, 0);
    }

  out.decomposition = decompose(t, seed);
  const FpMatrix inv = *inverse(out.decomposition.reassembly);
  std::vector<FpMatrix> idempotents;
  Index offset = 0;
  for (std::size_t s = 0; s < out.decomposition.summands.size(); ++s) {
    const Summand& sm = out.decomposition.summands[s];
    for (const auto& inc : sm.inclusions) {
      const FpMatrix e = inc * inv.rows_range(offset, sm.module.dim());
      idempotents.push_back(coords.coordinates(flatten(e)));
      out.idempotent_summand.push_back(static_cast<int>(s));
      offset += sm.module.dim();
    }
  }
  const FpMatrix unit = coords.coordinates(flatten(FpMatrix::identity(p, t.dim())));
  const FpMatrix radical = matrix_algebra_radical(out.hom).coordinates;
  out.algebra = std::make_shared<AlgebraPresentation>(p, n, std::move(structure), unit, std::move(idempotents),
                                                      radical, Provenance::Endomorphism);
  return out;
}

BongartzReport bongartz_bound_check(const AlgebraPtr& a, const Module& t, const SamplerConfig& config, int n_max) {
  if (!same_algebra(*t.algebra(), *a)) throw AlgebraMismatch("bongartz_bound_check: T over a different algebra");
  BongartzReport out;
  out.pd = verify_tilting(t, -1, n_max, config.seed).pd;
  const EndoAlgebra b = endomorphism_algebra(t, config.seed);
  out.dim_b = b.algebra->dim();
  out.b_valid = validate_algebra(*b.algebra).valid;
  out.phidim_a = phidim(a, config, n_max);
  out.phidim_b = phidim(b.algebra, config, n_max);
  const int va = out.phidim_a.outcome.value;
  const int vb = out.phidim_b.outcome.value;
  out.exact = out.phidim_a.outcome.exact() && out.phidim_b.outcome.exact();
  if (out.exact) {
    out.holds = va - out.pd <= vb && vb <= va + out.pd;
  } else {
    // Lower bounds can only refute the upper inequalities.
    out.holds = (!out.phidim_a.outcome.exact() || vb <= va + out.pd) &&
                (!out.phidim_b.outcome.exact() || va <= vb + out.pd);
  }
  out.verdict = bound_verdict(out.exact, out.holds);
  return out;
}

OnePointExtension one_point_extension(const AlgebraPtr& a, const Module& m) {
  if (!same_algebra(*m.algebra(), *a)) throw AlgebraMismatch("one_point_extension: module over a different algebra");
  const std::uint32_t p = a->prime();
  OnePointExtension out;
  out.base = a;
  out.a_dim = a->dim();
  out.m_dim = m.dim();
  out.new_vertex = a->vertex_count();
  const Index da = out.a_dim;
  const Index dm = out.m_dim;
  const Index n = da + dm + 1;
  const Index omega = n - 1;
  std::vector<Residue> structure(static_cast<std::size_t>(n * n * n), 0);
  auto at = [&](Index i, Index j, Index k) -> Residue& { return structure[static_cast<std::size_t>((i * n + j) * n + k)]; };
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < da; ++k) at(i, j, k) = a->structure_constant(i, j, k);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < dm; ++j)
      for (Index k = 0; k < dm; ++k) at(i, da + j, da + k) = m.action(i)(k, j);
  for (Index j = 0; j < dm; ++j) at(da + j, omega, da + j) = 1;
  at(omega, omega, omega) = 1;

  FpMatrix e(p, n, 1);
  e.set(omega, 0, 1);
  const FpMatrix unit = embed(a->unit(), n, 0) + e;
  std::vector<FpMatrix> idempotents;
  for (const auto& f : a->idempotents()) idempotents.push_back(embed(f, n, 0));
  idempotents.push_back(e);
  FpMatrix radical(p, n, a->radical().cols() + dm);
  radical.set_block(0, 0, a->radical());
  for (Index j = 0; j < dm; ++j) radical.set(da + j, a->radical().cols() + j, 1);
  out.algebra = std::make_shared<AlgebraPresentation>(p, n, std::move(structure), unit, std::move(idempotents),
                                                      radical, Provenance::OnePointExtension);
  return out;
}

Module inflate(const OnePointExtension& ext, const Module& x) {
  if (!same_algebra(*x.algebra(), *ext.base)) throw AlgebraMismatch("inflate: module over a different algebra");
  std::vector<FpMatrix> action(x.actions().begin(), x.actions().end());
  for (Index k = ext.a_dim; k < ext.algebra->dim(); ++k) action.emplace_back(x.prime(), x.dim(), x.dim());
  return Module(ext.algebra, x.dim(), std::move(action));
}

OpeReport ope_bound_check(const AlgebraPtr& a, const Module& m, const SamplerConfig& config, int n_max) {
  const OnePointExtension ext = one_point_extension(a, m);
  OpeReport out;
  out.dim_ext = ext.algebra->dim();
  out.phidim_a = phidim(a, config, n_max);
  out.phidim_ext = phidim(ext.algebra, config, n_max);
  const int va = out.phidim_a.outcome.value;
  const int ve = out.phidim_ext.outcome.value;
  out.exact = out.phidim_a.outcome.exact() && out.phidim_ext.outcome.exact();
  if (out.exact)
    out.holds = va <= ve && ve <= va + 1;
  else
    out.holds = (!out.phidim_a.outcome.exact() || ve <= va + 1) && (!out.phidim_ext.outcome.exact() || va <= ve);
  out.verdict = bound_verdict(out.exact, out.holds);
  return out;
}

}  // namespace itphi
