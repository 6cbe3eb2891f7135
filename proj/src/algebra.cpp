#include "itphi/algebra.hpp"

#include "itphi/radical.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace itphi {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::QuiverDerived: return "quiver-derived";
    case Provenance::Endomorphism: return "endomorphism";
    case Provenance::Product: return "product";
    case Provenance::OnePointExtension: return "one-point-extension";
  }
  return "unknown";
}

AlgebraPresentation::AlgebraPresentation(std::uint32_t prime, Index dim,
                                         std::vector<Residue> structure, FpMatrix unit,
                                         std::vector<FpMatrix> idempotents, FpMatrix radical,
                                         Provenance provenance, std::optional<QuiverData> quiver)
    : p_(prime),
      dim_(dim),
      structure_(std::move(structure)),
      unit_(std::move(unit)),
      idempotents_(std::move(idempotents)),
      radical_(std::move(radical)),
      provenance_(provenance),
      quiver_(std::move(quiver)) {
  if (dim_ < 0 || structure_.size() != static_cast<std::size_t>(dim_ * dim_ * dim_))
    throw std::invalid_argument("AlgebraPresentation: structure constant count must be dim^3");
  if (unit_.rows() != dim_ || unit_.cols() != 1)
    throw std::invalid_argument("AlgebraPresentation: unit must be a dim x 1 column");
  for (const auto& e : idempotents_)
    if (e.rows() != dim_ || e.cols() != 1)
      throw std::invalid_argument("AlgebraPresentation: idempotents must be dim x 1 columns");
  if (radical_.rows() != dim_) throw std::invalid_argument("AlgebraPresentation: radical basis has wrong length");
  for (auto& v : structure_) {
    v %= static_cast<Residue>(p_);
    if (v < 0) v += p_;
  }

  left_.reserve(static_cast<std::size_t>(dim_));
  for (Index i = 0; i < dim_; ++i) {
    FpMatrix l(p_, dim_, dim_);
    for (Index j = 0; j < dim_; ++j)
      for (Index k = 0; k < dim_; ++k) l.set(k, j, structure_constant(i, j, k));
    left_.push_back(std::move(l));
  }

  for (const auto& e : idempotents_) projective_basis_.push_back(column_space(right_multiplication(e)));

  const Subspace rad = Subspace::span(radical_);
  const int m = vertex_count();
  idempotent_class_.assign(static_cast<std::size_t>(m), -1);
  for (int v = 0; v < m; ++v) {
    idempotent_class_[static_cast<std::size_t>(v)] = v;
    const FpMatrix right = right_multiplication(idempotents_[static_cast<std::size_t>(v)]);
    for (int w = 0; w < v; ++w) {
      if (idempotent_class_[static_cast<std::size_t>(w)] != w) continue;
      const FpMatrix corner = left_multiplication(idempotents_[static_cast<std::size_t>(w)]) * right;
      if (!rad.contains(column_space(corner))) {
        idempotent_class_[static_cast<std::size_t>(v)] = w;
        break;
      }
    }
  }

  std::vector<FpMatrix> squares;
  for (Index a = 0; a < radical_.cols(); ++a)
    squares.push_back(left_multiplication(radical_.col(a)) * radical_);
  radical_square_ = squares.empty() ? FpMatrix(p_, dim_, 0) : column_space(hstack(squares, p_, dim_));
}

FpMatrix AlgebraPresentation::basis_vector(Index i) const {
  FpMatrix v(p_, dim_, 1);
  v.set(i, 0, 1);
  return v;
}

FpMatrix AlgebraPresentation::basis_product(Index i, Index j) const {
  return left_[static_cast<std::size_t>(i)].col(j);
}

FpMatrix AlgebraPresentation::left_multiplication(const FpMatrix& x) const {
  FpMatrix out(p_, dim_, dim_);
  for (Index i = 0; i < dim_; ++i) out.axpy(x(i, 0), left_[static_cast<std::size_t>(i)]);
  return out;
}

FpMatrix AlgebraPresentation::right_multiplication(const FpMatrix& x) const {
  FpMatrix out(p_, dim_, dim_);
  for (Index j = 0; j < dim_; ++j) out.set_block(0, j, left_[static_cast<std::size_t>(j)] * x);
  return out;
}

FpMatrix AlgebraPresentation::multiply(const FpMatrix& x, const FpMatrix& y) const {
  return left_multiplication(x) * y;
}

std::vector<int> AlgebraPresentation::class_representatives() const {
  std::vector<int> reps;
  for (int v = 0; v < vertex_count(); ++v)
    if (idempotent_class(v) == v) reps.push_back(v);
  return reps;
}

bool same_algebra(const AlgebraPresentation& a, const AlgebraPresentation& b) {
  if (&a == &b) return true;
  return a.prime() == b.prime() && a.dim() == b.dim() && a.structure() == b.structure() &&
         a.idempotents() == b.idempotents();
}

std::vector<FpMatrix> corner_matrix_algebra(const AlgebraPresentation& a, const FpMatrix& e,
                                            FpMatrix* unit_out) {
  const FpMatrix corner = column_space(a.left_multiplication(e) * a.right_multiplication(e));
  const CoordinateMap coords(corner);
  std::vector<FpMatrix> basis;
  for (Index c = 0; c < corner.cols(); ++c)
    basis.push_back(coords.coordinates(a.left_multiplication(corner.col(c)) * corner));
  if (unit_out != nullptr) *unit_out = coords.coordinates(a.left_multiplication(e) * corner);
  return basis;
}

ValidationReport validate_algebra(const AlgebraPresentation& a) {
  ValidationReport report;
  const std::uint32_t p = a.prime();
  const Index d = a.dim();
  report.idempotents = a.vertex_count();
  report.radical_dim = a.radical().cols();
  auto fail = [&report](std::string msg) {
    report.valid = false;
    report.problems.push_back(std::move(msg));
  };

  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const FpMatrix lhs = a.left_multiplication(a.basis_product(i, j));
      const FpMatrix rhs = a.left_basis_multiplication(i) * a.left_basis_multiplication(j);
      if (lhs == rhs) continue;
      for (Index k = 0; k < d; ++k)
        if (!(lhs.col(k) == rhs.col(k))) {
          std::ostringstream os;
          os << "associativity fails on basis triple (" << i << ", " << j << ", " << k << ")";
          fail(os.str());
          return report;
        }
    }

  const FpMatrix id = FpMatrix::identity(p, d);
  if (!(a.left_multiplication(a.unit()) == id) || !(a.right_multiplication(a.unit()) == id))
    fail("unit is not a two-sided identity");

  FpMatrix sum(p, d, 1);
  const Subspace rad = Subspace::span(a.radical());
  for (int i = 0; i < a.vertex_count(); ++i) {
    const FpMatrix& e = a.idempotents()[static_cast<std::size_t>(i)];
    sum += e;
    if (!(a.multiply(e, e) == e)) fail("idempotent " + std::to_string(i) + " is not idempotent");
    if (rad.contains(e)) fail("idempotent " + std::to_string(i) + " lies in the radical");
    for (int j = 0; j < a.vertex_count(); ++j)
      if (i != j && !a.multiply(e, a.idempotents()[static_cast<std::size_t>(j)]).is_zero())
        fail("idempotents " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
  }
  if (!(sum == a.unit())) fail("idempotents do not sum to the unit");

  const FpMatrix& r = a.radical();
  if (rank_fp(r) != static_cast<std::size_t>(r.cols())) fail("radical basis is linearly dependent");
  for (Index c = 0; c < r.cols(); ++c)
    for (Index i = 0; i < d; ++i) {
      if (!rad.contains(a.multiply(a.basis_vector(i), r.col(c))) ||
          !rad.contains(a.multiply(r.col(c), a.basis_vector(i)))) {
        fail("radical is not a two-sided ideal (basis element " + std::to_string(i) +
             ", radical vector " + std::to_string(c) + ")");
        c = r.cols();
        break;
      }
    }
  if (report.valid && r.cols() > 0) {
    FpMatrix power = r;
    bool nilpotent = false;
    for (Index step = 0; step <= d; ++step) {
      std::vector<FpMatrix> next;
      for (Index c = 0; c < r.cols(); ++c) next.push_back(a.left_multiplication(r.col(c)) * power);
      FpMatrix stacked = hstack(next, p, d);
      if (stacked.is_zero()) {
        nilpotent = true;
        break;
      }
      power = column_space(stacked);
    }
    if (!nilpotent) fail("radical is not nilpotent");
  }
  if (d - r.cols() < a.vertex_count()) fail("dim(A/J) is smaller than the number of idempotents");

  if (report.valid) {
    std::vector<FpMatrix> regular;
    for (Index i = 0; i < d; ++i) regular.push_back(a.left_basis_multiplication(i));
    const RadicalResult full = matrix_algebra_radical(regular);
    if (full.coordinates.cols() != r.cols())
      fail("supplied radical has dimension " + std::to_string(r.cols()) +
           " but the Jacobson radical has dimension " + std::to_string(full.coordinates.cols()));
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < a.vertex_count(); ++i) {
      FpMatrix unit;
      auto corner = corner_matrix_algebra(a, a.idempotents()[static_cast<std::size_t>(i)], &unit);
      const RadicalResult crad = matrix_algebra_radical(corner);
      if (!locality_certificate(corner, crad, unit, rng).local)
        fail("idempotent " + std::to_string(i) + " is not primitive (corner algebra is not local)");
    }
  }
  return report;
}

AlgebraPtr opposite_algebra(const AlgebraPresentation& a) {
  const Index d = a.dim();
  std::vector<Residue> c(a.structure().size());
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        c[static_cast<std::size_t>((i * d + j) * d + k)] = a.structure_constant(j, i, k);
  std::optional<QuiverData> q = a.quiver();
  if (q) {
    for (auto& arrow : q->arrows) std::swap(arrow.from, arrow.to);
    for (auto& path : q->basis_paths) std::reverse(path.begin(), path.end());
    for (auto& rel : q->relations)
      for (auto& term : rel) std::reverse(term.second.begin(), term.second.end());
  }
  return std::make_shared<AlgebraPresentation>(a.prime(), d, std::move(c), a.unit(), a.idempotents(),
                                               a.radical(), a.provenance(), std::move(q));
}

AlgebraPtr product_algebra(const AlgebraPresentation& a, const AlgebraPresentation& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("product_algebra: prime mismatch");
  if (a.dim() == 0 || b.dim() == 0) throw std::invalid_argument("product_algebra: zero-dimensional factor");
  const std::uint32_t p = a.prime();
  const Index da = a.dim(), db = b.dim(), d = da + db;
  std::vector<Residue> c(static_cast<std::size_t>(d * d * d), 0);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < da; ++k) c[static_cast<std::size_t>((i * d + j) * d + k)] = a.structure_constant(i, j, k);
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < db; ++k)
        c[static_cast<std::size_t>(((da + i) * d + (da + j)) * d + (da + k))] = b.structure_constant(i, j, k);
  auto embed = [&](const FpMatrix& v, Index offset) {
    FpMatrix out(p, d, v.cols());
    out.set_block(offset, 0, v);
    return out;
  };
  FpMatrix unit = embed(a.unit(), 0) + embed(b.unit(), da);
  std::vector<FpMatrix> idem;
  for (const auto& e : a.idempotents()) idem.push_back(embed(e, 0));
  for (const auto& e : b.idempotents()) idem.push_back(embed(e, da));
  FpMatrix rad = hstack({embed(a.radical(), 0), embed(b.radical(), da)}, p, d);

  std::optional<QuiverData> q;
  if (a.quiver() && b.quiver()) {
    QuiverData merged = *a.quiver();
    const QuiverData& qb = *b.quiver();
    const int arrow_offset = static_cast<int>(merged.arrows.size());
    for (auto arrow : qb.arrows) {
      arrow.from += merged.vertices;
      arrow.to += merged.vertices;
      arrow.basis_index += da;
      merged.arrows.push_back(arrow);
    }
    for (Index v : qb.vertex_basis) merged.vertex_basis.push_back(v + da);
    for (auto path : qb.basis_paths) {
      for (auto& x : path) x += arrow_offset;
      merged.basis_paths.push_back(path);
    }
    for (auto rel : qb.relations) {
      for (auto& term : rel)
        for (auto& x : term.second) x += arrow_offset;
      merged.relations.push_back(rel);
    }
    merged.length_bound = std::max(merged.length_bound, qb.length_bound);
    merged.vertices += qb.vertices;
    q = std::move(merged);
  }
  return std::make_shared<AlgebraPresentation>(p, d, std::move(c), std::move(unit), std::move(idem),
                                               std::move(rad), Provenance::Product, std::move(q));
}

AlgebraPtr ground_field(std::uint32_t p) {
  QuiverData q;
  q.vertices = 1;
  q.vertex_basis = {0};
  q.basis_paths = {{}};
  return std::make_shared<AlgebraPresentation>(p, 1, std::vector<Residue>{1}, FpMatrix::vector(p, {1}),
                                               std::vector<FpMatrix>{FpMatrix::vector(p, {1})},
                                               FpMatrix(p, 1, 0), Provenance::QuiverDerived, q);
}

}  // namespace itphi
