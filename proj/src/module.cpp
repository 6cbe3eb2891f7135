#include "itphi/module.hpp"

#include "itphi/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace itphi {

namespace {

FpMatrix empty_cols(std::uint32_t p, Index rows) { return FpMatrix(p, rows, 0); }

// dim e_v S_v: the top of P(v) seen at v.
Index simple_corner_dim(const AlgebraPresentation& a, int v) {
  const FpMatrix& e = a.idempotents()[static_cast<std::size_t>(v)];
  const FpMatrix corner = a.left_multiplication(e) * a.right_multiplication(e);
  const auto full = rank_fp(corner);
  const auto rad = a.radical().cols() == 0 ? 0 : rank_fp(corner * a.radical());
  return static_cast<Index>(full - rad);
}

FpMatrix radical_span(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  std::vector<FpMatrix> images;
  for (Index c = 0; c < a->radical().cols(); ++c) images.push_back(m.act(a->radical().col(c)));
  if (images.empty() || m.dim() == 0) return FpMatrix(a->prime(), m.dim(), 0);
  return column_space(hstack(images, a->prime(), m.dim()));
}

std::shared_ptr<const ProjectivePresentation> compute_presentation(const Module& m) {
  auto out = std::make_shared<ProjectivePresentation>();
  const AlgebraPtr& a = m.algebra();
  const std::uint32_t p = a->prime();
  const Index n = m.dim();
  const Index d = a->dim();

  Subspace covered(p, n);
  const FpMatrix rad = radical_span(m);
  for (Index c = 0; c < rad.cols(); ++c) covered.insert(rad.col(c));
  std::vector<FpMatrix> gens;
  for (int v : a->class_representatives()) {
    const FpMatrix& e = m.idempotent_action(v);
    for (Index j = 0; j < n && covered.dim() < n; ++j) {
      const FpMatrix x = e.col(j);
      if (covered.contains(x)) continue;
      out->vertices.push_back(v);
      gens.push_back(x);
      for (Index i = 0; i < d; ++i) covered.insert(m.action(i) * x);
    }
  }
  out->generators = hstack(gens, p, n);

  std::vector<Module> parts;
  std::vector<FpMatrix> pi_cols;
  Index offset = 0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const int v = out->vertices[k];
    parts.push_back(projective_module(a, v));
    out->offsets.push_back(offset);
    std::vector<FpMatrix> images;
    for (Index i = 0; i < d; ++i) images.push_back(m.action(i) * gens[k]);
    const FpMatrix basis_images = hstack(images, p, n);
    pi_cols.push_back(basis_images * a->projective_basis(v));
    offset += a->projective_basis(v).cols();
  }
  out->cover = direct_sum(parts, a);
  out->epimorphism = hstack(pi_cols, p, n);
  out->section = n == 0 ? FpMatrix(p, offset, 0)
                        : solve_fp(out->epimorphism, FpMatrix::identity(p, n)).solution_block();
  out->kernel = offset == 0 ? FpMatrix(p, 0, 0) : nullspace(out->epimorphism);
  out->syzygy = submodule(out->cover, out->kernel);
  return out;
}

struct VertexSpaces {
  std::vector<FpMatrix> basis;
  std::vector<CoordinateMap> coords;
  explicit VertexSpaces(const Module& n) {
    for (int v = 0; v < n.algebra()->vertex_count(); ++v) {
      basis.push_back(n.dim() == 0 ? FpMatrix(n.prime(), 0, 0) : column_space(n.idempotent_action(v)));
      coords.emplace_back(basis.back());
    }
  }
  Index size(int v) const { return basis[static_cast<std::size_t>(v)].cols(); }
};

Index total_size(const VertexSpaces& s, const std::vector<int>& vertices) {
  Index t = 0;
  for (int v : vertices) t += s.size(v);
  return t;
}

// Hom(P_{i-1}, N) -> Hom(P_i, N).
FpMatrix cochain_map(const ResolutionStep& step, const std::vector<int>& prev_vertices,
                     const Module& n, const VertexSpaces& s) {
  const std::uint32_t p = n.prime();
  FpMatrix out(p, total_size(s, step.vertices), total_size(s, prev_vertices));
  Index row = 0;
  for (std::size_t k = 0; k < step.vertices.size(); ++k) {
    const int vk = step.vertices[k];
    Index col = 0;
    for (std::size_t j = 0; j < prev_vertices.size(); ++j) {
      const int vj = prev_vertices[j];
      if (s.size(vk) > 0 && s.size(vj) > 0) {
        const FpMatrix image = n.act(step.z[k][j]) * s.basis[static_cast<std::size_t>(vj)];
        out.set_block(row, col, s.coords[static_cast<std::size_t>(vk)].coordinates(image));
      }
      col += s.size(vj);
    }
    row += s.size(vk);
  }
  return out;
}

// P_i (x) N -> P_{i-1} (x) N.
FpMatrix chain_map(const ResolutionStep& step, const std::vector<int>& prev_vertices,
                   const Module& n, const VertexSpaces& s) {
  const std::uint32_t p = n.prime();
  FpMatrix out(p, total_size(s, prev_vertices), total_size(s, step.vertices));
  Index col = 0;
  for (std::size_t k = 0; k < step.vertices.size(); ++k) {
    const int vk = step.vertices[k];
    Index row = 0;
    for (std::size_t j = 0; j < prev_vertices.size(); ++j) {
      const int vj = prev_vertices[j];
      if (s.size(vk) > 0 && s.size(vj) > 0) {
        const FpMatrix image = n.act(step.z[k][j]) * s.basis[static_cast<std::size_t>(vk)];
        out.set_block(row, col, s.coords[static_cast<std::size_t>(vj)].coordinates(image));
      }
      row += s.size(vj);
    }
    col += s.size(vk);
  }
  return out;
}

Index rank_of(const FpMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : static_cast<Index>(rank_fp(m)); }

}  // namespace

Module::Module(AlgebraPtr algebra, Index dim, std::vector<FpMatrix> action) {
  if (!algebra) throw std::invalid_argument("Module: null algebra");
  if (static_cast<Index>(action.size()) != algebra->dim())
    throw std::invalid_argument("Module: need one action matrix per algebra basis element");
  for (const auto& m : action)
    if (m.rows() != dim || m.cols() != dim || m.prime() != algebra->prime())
      throw std::invalid_argument("Module: action matrix has the wrong shape or prime");
  auto data = std::make_shared<Data>();
  data->algebra = std::move(algebra);
  data->dim = dim;
  data->action = std::move(action);
  data_ = data;
  for (const auto& e : data_->algebra->idempotents()) data->idempotent_action.push_back(act(e));
}

Module Module::zero(AlgebraPtr algebra) {
  const std::uint32_t p = algebra->prime();
  std::vector<FpMatrix> action(static_cast<std::size_t>(algebra->dim()), FpMatrix(p, 0, 0));
  return Module(std::move(algebra), 0, std::move(action));
}

FpMatrix Module::act(const FpMatrix& x) const {
  FpMatrix out(prime(), dim(), dim());
  for (Index i = 0; i < x.rows(); ++i)
    if (x(i, 0) != 0) out.axpy(x(i, 0), action(i));
  return out;
}

const FpMatrix& Module::idempotent_action(int v) const {
  return data_->idempotent_action.at(static_cast<std::size_t>(v));
}

std::vector<Index> Module::dimension_vector() const {
  std::vector<Index> dims;
  for (const auto& e : data_->idempotent_action) dims.push_back(rank_of(e));
  return dims;
}

const ProjectivePresentation& Module::presentation() const {
  std::call_once(data_->cover_once, [this] { data_->cover = compute_presentation(*this); });
  return *data_->cover;
}

ModuleCheck check_module(const Module& m) {
  ModuleCheck check;
  const AlgebraPresentation& a = *m.algebra();
  if (!(m.act(a.unit()) == FpMatrix::identity(m.prime(), m.dim()))) {
    check.valid = false;
    check.problem = "unit does not act as the identity";
    return check;
  }
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      if (!(m.action(i) * m.action(j) == m.act(a.basis_product(i, j)))) {
        check.valid = false;
        check.problem = "action fails on basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
        return check;
      }
  return check;
}

bool same_algebra(const Module& a, const Module& b) {
  return a.algebra() == b.algebra() || same_algebra(*a.algebra(), *b.algebra());
}

void require_same_algebra(const Module& a, const Module& b, const char* where) {
  if (!same_algebra(a, b)) throw AlgebraMismatch(std::string(where) + ": modules over different algebras");
}

Module regular_module(const AlgebraPtr& a) {
  std::vector<FpMatrix> action;
  for (Index i = 0; i < a->dim(); ++i) action.push_back(a->left_basis_multiplication(i));
  return Module(a, a->dim(), std::move(action));
}

Module projective_module(const AlgebraPtr& a, int v) {
  if (v < 0 || v >= a->vertex_count()) throw std::out_of_range("projective_module: idempotent index out of range");
  return submodule(regular_module(a), a->projective_basis(v));
}

Module simple_module(const AlgebraPtr& a, int v) { return top_and_radical(projective_module(a, v)).top; }

Module direct_sum(const Module& a, const Module& b) {
  require_same_algebra(a, b, "direct_sum");
  return direct_sum({a, b}, a.algebra());
}

Module direct_sum(const std::vector<Module>& parts, const AlgebraPtr& a) {
  Index dim = 0;
  for (const auto& m : parts) dim += m.dim();
  std::vector<FpMatrix> action;
  for (Index i = 0; i < a->dim(); ++i) {
    std::vector<FpMatrix> blocks;
    for (const auto& m : parts) blocks.push_back(m.action(i));
    action.push_back(blocks.empty() ? FpMatrix(a->prime(), 0, 0) : block_diagonal(blocks, a->prime()));
  }
  return Module(a, dim, std::move(action));
}

Module power(const Module& m, int k) { return direct_sum(std::vector<Module>(static_cast<std::size_t>(k), m), m.algebra()); }

Module submodule(const Module& m, const FpMatrix& basis) {
  const AlgebraPtr& a = m.algebra();
  if (basis.rows() != m.dim()) throw std::invalid_argument("submodule: basis has the wrong length");
  const Index k = basis.cols();
  std::vector<FpMatrix> action;
  if (k == 0) return Module::zero(a);
  CoordinateMap coords(basis);
  if (coords.dim() != k || rank_fp(basis) != static_cast<std::size_t>(k))
    throw std::invalid_argument("submodule: basis is not independent");
  for (Index i = 0; i < a->dim(); ++i) {
    auto c = coords.try_coordinates(m.action(i) * basis);
    if (!c) throw std::invalid_argument("submodule: subspace is not invariant");
    action.push_back(std::move(*c));
  }
  return Module(a, k, std::move(action));
}

FpMatrix generated_submodule(const Module& m, const FpMatrix& generators) {
  if (generators.cols() == 0 || m.dim() == 0) return empty_cols(m.prime(), m.dim());
  std::vector<FpMatrix> images;
  for (Index i = 0; i < m.algebra()->dim(); ++i) images.push_back(m.action(i) * generators);
  return column_space(hstack(images, m.prime(), m.dim()));
}

Quotient quotient(const Module& m, const FpMatrix& sub_basis) {
  const std::uint32_t p = m.prime();
  const Index n = m.dim();
  const Subspace sub = Subspace::span(sub_basis.cols() == 0 ? FpMatrix(p, n, 0) : sub_basis);
  const FpMatrix complement = n == 0 ? FpMatrix(p, 0, 0) : extend_basis(sub, FpMatrix::identity(p, n));
  const Index q = complement.cols();
  Quotient out;
  if (q == 0) {
    out.module = Module::zero(m.algebra());
    out.projection = FpMatrix(p, 0, n);
    return out;
  }
  const FpMatrix full = hstack({sub.basis(), complement}, p, n);
  const FpMatrix inv = *inverse(full);
  out.projection = inv.rows_range(sub.dim(), q);
  std::vector<FpMatrix> action;
  for (Index i = 0; i < m.algebra()->dim(); ++i) action.push_back(out.projection * m.action(i) * complement);
  out.module = Module(m.algebra(), q, std::move(action));
  return out;
}

Module conjugate(const Module& m, const FpMatrix& g) {
  auto inv = inverse(g);
  if (!inv) throw std::invalid_argument("conjugate: matrix is not invertible");
  std::vector<FpMatrix> action;
  for (const auto& x : m.actions()) action.push_back(g * x * *inv);
  return Module(m.algebra(), m.dim(), std::move(action));
}

bool is_homomorphism(const Module& source, const Module& target, const FpMatrix& f) {
  if (f.rows() != target.dim() || f.cols() != source.dim()) return false;
  for (Index i = 0; i < source.algebra()->dim(); ++i)
    if (!(f * source.action(i) == target.action(i) * f)) return false;
  return true;
}

std::vector<FpMatrix> hom_matrices(const Module& m, const Module& n) {
  require_same_algebra(m, n, "hom_basis");
  if (m.dim() == 0 || n.dim() == 0) return {};
  const AlgebraPtr& a = m.algebra();
  const std::uint32_t p = a->prime();
  const ProjectivePresentation& pres = m.presentation();
  const ProjectivePresentation& next = pres.syzygy.presentation();
  const VertexSpaces spaces(n);

  const std::size_t g = pres.vertices.size();
  std::vector<Index> unknown_offset;
  Index unknowns = 0;
  for (int v : pres.vertices) {
    unknown_offset.push_back(unknowns);
    unknowns += spaces.size(v);
  }
  if (unknowns == 0) return {};

  const FpMatrix relations = next.generators.cols() == 0 ? FpMatrix(p, pres.cover.dim(), 0)
                                                         : pres.kernel * next.generators;
  FpMatrix system(p, relations.cols() * n.dim(), unknowns);
  for (Index l = 0; l < relations.cols(); ++l)
    for (std::size_t k = 0; k < g; ++k) {
      const int v = pres.vertices[k];
      if (spaces.size(v) == 0) continue;
      const FpMatrix& pb = a->projective_basis(v);
      const FpMatrix z = pb * relations.block(pres.offsets[k], l, pb.cols(), 1);
      system.set_block(l * n.dim(), unknown_offset[k], n.act(z) * spaces.basis[static_cast<std::size_t>(v)]);
    }
  const FpMatrix solutions = system.rows() == 0 ? FpMatrix::identity(p, unknowns) : nullspace(system);

  std::vector<std::vector<FpMatrix>> basis_actions(g);
  for (std::size_t k = 0; k < g; ++k) {
    const FpMatrix& pb = a->projective_basis(pres.vertices[k]);
    for (Index c = 0; c < pb.cols(); ++c) basis_actions[k].push_back(n.act(pb.col(c)));
  }
  std::vector<FpMatrix> out;
  for (Index s = 0; s < solutions.cols(); ++s) {
    FpMatrix phi(p, n.dim(), pres.cover.dim());
    for (std::size_t k = 0; k < g; ++k) {
      const int v = pres.vertices[k];
      if (spaces.size(v) == 0) continue;
      const FpMatrix y = spaces.basis[static_cast<std::size_t>(v)] *
                         solutions.block(unknown_offset[k], s, spaces.size(v), 1);
      for (std::size_t c = 0; c < basis_actions[k].size(); ++c)
        phi.set_block(0, pres.offsets[k] + static_cast<Index>(c), basis_actions[k][c] * y);
    }
    out.push_back(phi * pres.section);
  }
  return out;
}

std::vector<ModuleMap> hom_basis(const Module& m, const Module& n) {
  std::vector<ModuleMap> out;
  for (auto& f : hom_matrices(m, n)) out.push_back({m, n, std::move(f)});
  return out;
}

std::vector<FpMatrix> hom_matrices_direct(const Module& m, const Module& n) {
  require_same_algebra(m, n, "hom_matrices_direct");
  const std::uint32_t p = m.prime();
  const Index a = m.dim(), b = n.dim();
  if (a == 0 || b == 0) return {};
  // vec(f x - y f) with f column-major: (x^T (x) I_b - I_a (x) y) vec f.
  std::vector<FpMatrix> rows;
  for (Index i = 0; i < m.algebra()->dim(); ++i) {
    const FpMatrix& x = m.action(i);
    const FpMatrix& y = n.action(i);
    FpMatrix eq(p, a * b, a * b);
    for (Index r = 0; r < a; ++r)
      for (Index c = 0; c < a; ++c) {
        const Residue xv = x(c, r);
        for (Index t = 0; t < b; ++t) {
          if (xv != 0) eq.set(r * b + t, c * b + t, (eq(r * b + t, c * b + t) + xv) % p);
          if (r == c)
            for (Index u = 0; u < b; ++u)
              if (y(t, u) != 0) eq.set(r * b + t, c * b + u, (eq(r * b + t, c * b + u) + p - y(t, u)) % p);
        }
      }
    rows.push_back(eq);
  }
  const FpMatrix kernel = nullspace(vstack(rows, p, a * b));
  std::vector<FpMatrix> out;
  for (Index s = 0; s < kernel.cols(); ++s) out.push_back(unflatten(kernel.col(s), b, a));
  return out;
}

TopAndRadical top_and_radical(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  TopAndRadical out;
  out.radical_basis = radical_span(m);
  out.radical = submodule(m, out.radical_basis);
  out.top = quotient(m, out.radical_basis).module;
  out.top_multiplicities.assign(static_cast<std::size_t>(a->vertex_count()), 0);
  if (out.top.dim() > 0)
    for (int v : a->class_representatives())
      out.top_multiplicities[static_cast<std::size_t>(v)] =
          static_cast<int>(rank_of(out.top.idempotent_action(v)) / simple_corner_dim(*a, v));
  return out;
}

const ProjectivePresentation& projective_cover(const Module& m) { return m.presentation(); }

Module syzygy(const Module& m) { return m.presentation().syzygy; }

Module syzygy_iter(const Module& m, int n) {
  if (n < 0) throw std::invalid_argument("syzygy_iter: negative count");
  Module out = m;
  for (int i = 0; i < n && !out.is_zero(); ++i) out = syzygy(out);
  return out;
}

bool is_projective(const Module& m) { return m.presentation().cover.dim() == m.dim(); }

ProjDim pd_bounded(const Module& m, int n_max) {
  if (n_max < 0) throw std::invalid_argument("pd_bounded: negative cutoff");
  Module cur = m;
  for (int d = 0; d <= n_max; ++d) {
    if (is_projective(cur)) return {true, d};
    cur = syzygy(cur);
  }
  return {false, n_max};
}

std::vector<ResolutionStep> minimal_resolution(const Module& m, int length) {
  const AlgebraPtr& a = m.algebra();
  std::vector<ResolutionStep> steps;
  Module cur = m;
  steps.push_back({cur.presentation().vertices, {}});
  for (int i = 1; i <= length; ++i) {
    const ProjectivePresentation& prev = cur.presentation();
    cur = prev.syzygy;
    const ProjectivePresentation& here = cur.presentation();
    ResolutionStep step;
    step.vertices = here.vertices;
    const FpMatrix gens = here.generators.cols() == 0 ? FpMatrix(a->prime(), prev.cover.dim(), 0)
                                                      : prev.kernel * here.generators;
    for (Index k = 0; k < gens.cols(); ++k) {
      std::vector<FpMatrix> row;
      for (std::size_t j = 0; j < prev.vertices.size(); ++j) {
        const FpMatrix& pb = a->projective_basis(prev.vertices[j]);
        row.push_back(pb * gens.block(prev.offsets[j], k, pb.cols(), 1));
      }
      step.z.push_back(std::move(row));
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

Index ext_dim(const Module& m, const Module& n, int i) {
  require_same_algebra(m, n, "ext_dim");
  if (i < 0) throw std::invalid_argument("ext_dim: negative degree");
  if (m.dim() == 0 || n.dim() == 0) return 0;
  const auto res = minimal_resolution(m, i + 1);
  const VertexSpaces spaces(n);
  const Index ci = total_size(spaces, res[static_cast<std::size_t>(i)].vertices);
  const Index out_rank = rank_of(cochain_map(res[static_cast<std::size_t>(i + 1)],
                                             res[static_cast<std::size_t>(i)].vertices, n, spaces));
  const Index in_rank = i == 0 ? 0
                               : rank_of(cochain_map(res[static_cast<std::size_t>(i)],
                                                     res[static_cast<std::size_t>(i - 1)].vertices, n, spaces));
  return ci - out_rank - in_rank;
}

bool is_opposite(const AlgebraPresentation& a, const AlgebraPresentation& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim() || a.idempotents() != b.idempotents()) return false;
  const Index d = a.dim();
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        if (a.structure_constant(i, j, k) != b.structure_constant(j, i, k)) return false;
  return true;
}

Module dual_module(const Module& m, const AlgebraPtr& op) {
  if (!is_opposite(*m.algebra(), *op)) throw AlgebraMismatch("dual_module: algebra is not the opposite");
  std::vector<FpMatrix> action;
  for (const auto& x : m.actions()) action.push_back(x.transpose());
  return Module(op, m.dim(), std::move(action));
}

Module dual_module(const Module& m) { return dual_module(m, opposite_algebra(*m.algebra())); }

Index tor_dim(const Module& x, const Module& n, int i) {
  if (!is_opposite(*n.algebra(), *x.algebra())) throw AlgebraMismatch("tor_dim: first argument must be over the opposite algebra");
  if (i < 0) throw std::invalid_argument("tor_dim: negative degree");
  if (x.dim() == 0 || n.dim() == 0) return 0;
  const auto res = minimal_resolution(x, i + 1);
  const VertexSpaces spaces(n);
  const Index ci = total_size(spaces, res[static_cast<std::size_t>(i)].vertices);
  const Index out_rank = i == 0 ? 0
                                : rank_of(chain_map(res[static_cast<std::size_t>(i)],
                                                    res[static_cast<std::size_t>(i - 1)].vertices, n, spaces));
  const Index in_rank = rank_of(chain_map(res[static_cast<std::size_t>(i + 1)],
                                          res[static_cast<std::size_t>(i)].vertices, n, spaces));
  return ci - out_rank - in_rank;
}

Module random_quotient_module(const AlgebraPtr& a, std::mt19937_64& rng, int max_summands, int max_generators) {
  const std::uint32_t p = a->prime();
  std::uniform_int_distribution<int> count(1, std::max(1, max_summands));
  std::uniform_int_distribution<int> vertex(0, a->vertex_count() - 1);
  std::uniform_int_distribution<int> gens(0, std::max(0, max_generators));
  std::uniform_int_distribution<Residue> coeff(0, p - 1);
  std::vector<Module> parts;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) parts.push_back(projective_module(a, vertex(rng)));
  const Module cover = direct_sum(parts, a);
  const FpMatrix rad = radical_span(cover);
  const int g = rad.cols() == 0 ? 0 : gens(rng);
  FpMatrix chosen(p, cover.dim(), g);
  for (int j = 0; j < g; ++j) {
    FpMatrix v(p, rad.cols(), 1);
    for (Index r = 0; r < rad.cols(); ++r) v.set(r, 0, coeff(rng));
    chosen.set_block(0, j, rad * v);
  }
  return quotient(cover, generated_submodule(cover, chosen)).module;
}

}  // namespace itphi
