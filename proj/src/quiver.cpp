#include "itphi/quiver.hpp"

#include "itphi/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace itphi {

namespace {

// Paths are kept as (source vertex, arrow indices in application order).
struct Path {
  int source = 0;
  std::vector<int> arrows;
  auto operator<=>(const Path&) const = default;
};

constexpr std::size_t kMaxPaths = 20000;

bool contains_pattern(const std::vector<int>& path, const std::vector<std::vector<int>>& zeros) {
  for (const auto& z : zeros)
    if (z.size() <= path.size() && std::search(path.begin(), path.end(), z.begin(), z.end()) != path.end())
      return true;
  return false;
}

std::string describe(const std::vector<int>& arrows, const QuiverSpec& q) {
  std::ostringstream os;
  for (std::size_t i = 0; i < arrows.size(); ++i) os << (i ? "," : "") << q.arrows[static_cast<std::size_t>(arrows[i])].label;
  return "[" + os.str() + "]";
}

std::vector<int> arrow_indices(const std::vector<std::string>& labels, const QuiverSpec& q) {
  std::vector<int> out;
  for (const auto& l : labels) {
    auto it = std::find_if(q.arrows.begin(), q.arrows.end(), [&](const auto& a) { return a.label == l; });
    if (it == q.arrows.end()) throw std::invalid_argument("unknown arrow label '" + l + "'");
    out.push_back(static_cast<int>(it - q.arrows.begin()));
  }
  return out;
}

}  // namespace

void check_quiver_spec(const QuiverSpec& q) {
  if (!is_prime(q.prime) || q.prime >= kMaxPrime) throw std::invalid_argument("prime must be a prime below 65536");
  if (q.vertices < 0) throw std::invalid_argument("negative vertex count");
  if (q.length_bound < 2) throw std::invalid_argument("length bound must be at least 2");
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    const auto& a = q.arrows[i];
    if (a.from < 0 || a.from >= q.vertices || a.to < 0 || a.to >= q.vertices)
      throw std::invalid_argument("arrow '" + a.label + "' has an endpoint out of range");
    if (a.label.empty()) throw std::invalid_argument("arrow " + std::to_string(i) + " has an empty label");
    for (std::size_t j = 0; j < i; ++j)
      if (q.arrows[j].label == a.label) throw std::invalid_argument("duplicate arrow label '" + a.label + "'");
  }
  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    int source = -1, target = -1;
    for (const auto& t : q.relations[r]) {
      const auto idx = arrow_indices(t.path, q);
      if (idx.size() < 2)
        throw std::invalid_argument("relation " + std::to_string(r) + " has a term of length below 2");
      for (std::size_t k = 0; k + 1 < idx.size(); ++k)
        if (q.arrows[static_cast<std::size_t>(idx[k])].to != q.arrows[static_cast<std::size_t>(idx[k + 1])].from)
          throw std::invalid_argument("relation " + std::to_string(r) + " contains a non-composable path");
      const int s = q.arrows[static_cast<std::size_t>(idx.front())].from;
      const int e = q.arrows[static_cast<std::size_t>(idx.back())].to;
      if (source == -1) {
        source = s;
        target = e;
      } else if (s != source || e != target) {
        throw std::invalid_argument("relation " + std::to_string(r) + " mixes non-parallel paths");
      }
    }
  }
}

AlgebraPtr to_algebra(const QuiverSpec& q) {
  check_quiver_spec(q);
  if (q.vertices == 0) throw EmptyQuiver("quiver has no vertices");
  const std::uint32_t p = q.prime;
  const int L = q.length_bound;
  auto target = [&](const Path& path) {
    return path.arrows.empty() ? path.source : q.arrows[static_cast<std::size_t>(path.arrows.back())].to;
  };

  // Relations with combined coefficients; single-term ones become zero patterns.
  std::vector<std::vector<std::pair<Residue, std::vector<int>>>> relations;
  std::vector<std::vector<int>> zeros;
  for (const auto& rel : q.relations) {
    std::map<std::vector<int>, Residue> terms;
    for (const auto& t : rel) {
      Residue& c = terms[arrow_indices(t.path, q)];
      c = ((c + t.coeff) % static_cast<Residue>(p) + p) % p;
    }
    std::vector<std::pair<Residue, std::vector<int>>> cleaned;
    for (const auto& [path, c] : terms)
      if (c != 0) cleaned.emplace_back(c, path);
    if (cleaned.empty()) continue;
    if (cleaned.size() == 1) zeros.push_back(cleaned.front().second);
    relations.push_back(std::move(cleaned));
  }

  std::vector<Path> paths;
  std::map<Path, Index> index;
  for (int v = 0; v < q.vertices; ++v) paths.push_back({v, {}});
  std::size_t level_start = 0;
  for (int len = 1; len <= L; ++len) {
    const std::size_t level_end = paths.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].from != target(paths[i])) continue;
        Path next = paths[i];
        if (len == 1) next.source = q.arrows[a].from;
        next.arrows.push_back(static_cast<int>(a));
        if (contains_pattern(next.arrows, zeros)) continue;
        paths.push_back(std::move(next));
        if (paths.size() > kMaxPaths)
          throw NotAdmissibleWithinBound("more than " + std::to_string(kMaxPaths) +
                                         " surviving paths up to the length bound");
      }
    }
    level_start = level_end;
  }
  const Index n = static_cast<Index>(paths.size());
  for (Index i = 0; i < n; ++i) index[paths[static_cast<std::size_t>(i)]] = i;
  // Longest paths get the leading coordinates so that they are eliminated first.
  auto coord = [n](Index path_index) { return n - 1 - path_index; };

  auto lookup = [&](const Path& path) -> std::optional<Index> {
    if (static_cast<int>(path.arrows.size()) > L || contains_pattern(path.arrows, zeros)) return std::nullopt;
    auto it = index.find(path);
    if (it == index.end()) throw std::logic_error("to_algebra: path enumeration is incomplete");
    return it->second;
  };

  Subspace ideal(p, n);
  std::deque<FpMatrix> queue;
  auto push = [&](const FpMatrix& v) {
    if (!v.is_zero() && ideal.insert(v)) queue.push_back(v);
  };
  for (const auto& rel : relations) {
    FpMatrix v(p, n, 1);
    for (const auto& [c, arrows] : rel) {
      const Path path{q.arrows[static_cast<std::size_t>(arrows.front())].from, arrows};
      if (auto i = lookup(path)) v.set(coord(*i), 0, (v(coord(*i), 0) + c) % p);
    }
    push(v);
  }
  while (!queue.empty()) {
    const FpMatrix v = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      FpMatrix after(p, n, 1), before(p, n, 1);
      for (Index r = 0; r < n; ++r) {
        if (v(r, 0) == 0) continue;
        const Path& path = paths[static_cast<std::size_t>(n - 1 - r)];
        if (target(path) == q.arrows[a].from) {
          Path ext = path;
          ext.arrows.push_back(static_cast<int>(a));
          if (auto i = lookup(ext)) after.set(coord(*i), 0, (after(coord(*i), 0) + v(r, 0)) % p);
        }
        if (path.source == q.arrows[a].to) {
          Path ext{q.arrows[a].from, {static_cast<int>(a)}};
          ext.arrows.insert(ext.arrows.end(), path.arrows.begin(), path.arrows.end());
          if (auto i = lookup(ext)) before.set(coord(*i), 0, (before(coord(*i), 0) + v(r, 0)) % p);
        }
      }
      push(after);
      push(before);
    }
  }

  auto unit_vector = [&](Index path_index) {
    FpMatrix e(p, n, 1);
    e.set(coord(path_index), 0, 1);
    return e;
  };
  for (Index i = 0; i < n; ++i) {
    const Path& path = paths[static_cast<std::size_t>(i)];
    if (static_cast<int>(path.arrows.size()) == L && !ideal.contains(unit_vector(i)))
      throw NotAdmissibleWithinBound("path " + describe(path.arrows, q) + " of length " + std::to_string(L) +
                                     " is not in the ideal generated by the relations");
  }

  std::vector<Index> basis;            // path indices
  std::vector<Index> basis_of(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const FpMatrix e = unit_vector(i);
    if (ideal.reduce(e) == e) {
      basis_of[static_cast<std::size_t>(i)] = static_cast<Index>(basis.size());
      basis.push_back(i);
    }
  }
  const Index d = static_cast<Index>(basis.size());
  auto normal_form = [&](const Path& path) {
    FpMatrix out(p, d, 1);
    auto i = lookup(path);
    if (!i) return out;
    const FpMatrix r = ideal.reduce(unit_vector(*i));
    for (Index c = 0; c < n; ++c)
      if (r(c, 0) != 0) {
        const Index b = basis_of[static_cast<std::size_t>(n - 1 - c)];
        if (b < 0) throw std::logic_error("to_algebra: reduction left a non-basis path");
        out.set(b, 0, r(c, 0));
      }
    return out;
  };

  std::vector<Residue> structure(static_cast<std::size_t>(d * d * d), 0);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const Path& left = paths[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
      const Path& right = paths[static_cast<std::size_t>(basis[static_cast<std::size_t>(j)])];
      if (target(right) != left.source) continue;
      Path prod{right.source, right.arrows};
      prod.arrows.insert(prod.arrows.end(), left.arrows.begin(), left.arrows.end());
      const FpMatrix nf = normal_form(prod);
      for (Index k = 0; k < d; ++k) structure[static_cast<std::size_t>((i * d + j) * d + k)] = nf(k, 0);
    }

  QuiverData data;
  data.vertices = q.vertices;
  data.length_bound = L;
  data.relations = relations;
  FpMatrix unit(p, d, 1);
  std::vector<FpMatrix> idempotents;
  std::vector<FpMatrix> radical;
  for (Index b = 0; b < d; ++b) {
    const Path& path = paths[static_cast<std::size_t>(basis[static_cast<std::size_t>(b)])];
    data.basis_paths.push_back(path.arrows);
    FpMatrix e(p, d, 1);
    e.set(b, 0, 1);
    if (path.arrows.empty()) {
      unit.set(b, 0, 1);
      idempotents.push_back(e);
      data.vertex_basis.push_back(b);
    } else {
      radical.push_back(e);
    }
  }
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Path path{q.arrows[a].from, {static_cast<int>(a)}};
    data.arrows.push_back({q.arrows[a].label, q.arrows[a].from, q.arrows[a].to,
                           basis_of[static_cast<std::size_t>(index.at(path))]});
  }
  return std::make_shared<AlgebraPresentation>(p, d, std::move(structure), std::move(unit), std::move(idempotents),
                                               hstack(radical, p, d), Provenance::QuiverDerived, std::move(data));
}

Module module_from_representation(const AlgebraPtr& a, const std::vector<Index>& dims,
                                  const std::map<std::string, FpMatrix>& arrows) {
  if (!a->quiver()) throw std::invalid_argument("module_from_representation: algebra has no quiver data");
  const QuiverData& q = *a->quiver();
  const std::uint32_t p = a->prime();
  if (static_cast<int>(dims.size()) != q.vertices)
    throw std::invalid_argument("module_from_representation: need one dimension per vertex");
  std::vector<Index> offset;
  Index n = 0;
  for (Index d : dims) {
    if (d < 0) throw std::invalid_argument("module_from_representation: negative dimension");
    offset.push_back(n);
    n += d;
  }
  for (const auto& [label, m] : arrows)
    if (std::none_of(q.arrows.begin(), q.arrows.end(), [&](const auto& x) { return x.label == label; }))
      throw std::invalid_argument("module_from_representation: unknown arrow '" + label + "'");

  std::vector<FpMatrix> arrow_maps;  // full n x n
  for (const auto& arrow : q.arrows) {
    const Index rows = dims[static_cast<std::size_t>(arrow.to)];
    const Index cols = dims[static_cast<std::size_t>(arrow.from)];
    FpMatrix block(p, rows, cols);
    auto it = arrows.find(arrow.label);
    if (it != arrows.end()) {
      if (it->second.rows() != rows || it->second.cols() != cols)
        throw std::invalid_argument("module_from_representation: arrow '" + arrow.label + "' should be " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
      block = FpMatrix(p, it->second.entries());
    } else if (rows > 0 && cols > 0) {
      throw std::invalid_argument("module_from_representation: missing arrow '" + arrow.label + "'");
    }
    FpMatrix full(p, n, n);
    full.set_block(offset[static_cast<std::size_t>(arrow.to)], offset[static_cast<std::size_t>(arrow.from)], block);
    arrow_maps.push_back(full);
  }
  auto path_matrix = [&](const std::vector<int>& path, int source) {
    FpMatrix m(p, n, n);
    if (path.empty()) {
      const Index d = dims[static_cast<std::size_t>(source)];
      m.set_block(offset[static_cast<std::size_t>(source)], offset[static_cast<std::size_t>(source)],
                  FpMatrix::identity(p, d));
      return m;
    }
    m = arrow_maps[static_cast<std::size_t>(path.front())];
    for (std::size_t k = 1; k < path.size(); ++k) m = arrow_maps[static_cast<std::size_t>(path[k])] * m;
    return m;
  };

  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    FpMatrix total(p, n, n);
    std::ostringstream text;
    for (const auto& [c, path] : q.relations[r]) {
      total.axpy(c, path_matrix(path, 0));
      text << (text.tellp() > 0 ? " + " : "") << c << "*[";
      for (std::size_t k = 0; k < path.size(); ++k)
        text << (k ? "," : "") << q.arrows[static_cast<std::size_t>(path[k])].label;
      text << "]";
    }
    if (!total.is_zero()) {
      Index col = 0;
      while (total.col(col).is_zero()) ++col;
      std::ostringstream os;
      os << "relation " << text.str() << " does not vanish; witness basis vector " << col;
      throw RelationViolated(os.str());
    }
  }

  std::vector<FpMatrix> action;
  for (Index b = 0; b < a->dim(); ++b) {
    const auto& path = q.basis_paths[static_cast<std::size_t>(b)];
    int source = 0;
    if (path.empty())
      source = static_cast<int>(std::find(q.vertex_basis.begin(), q.vertex_basis.end(), b) - q.vertex_basis.begin());
    action.push_back(path_matrix(path, source));
  }
  Module m(a, n, std::move(action));
  if (auto check = check_module(m); !check.valid)
    throw RelationViolated("representation does not define a module: " + check.problem);
  return m;
}

Representation representation_of(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  if (!a->quiver()) throw std::invalid_argument("representation_of: algebra has no quiver data");
  const QuiverData& q = *a->quiver();
  Representation out;
  std::vector<FpMatrix> bases;
  for (int v = 0; v < q.vertices; ++v) {
    bases.push_back(m.dim() == 0 ? FpMatrix(m.prime(), 0, 0) : column_space(m.idempotent_action(v)));
    out.dims.push_back(bases.back().cols());
  }
  for (const auto& arrow : q.arrows) {
    const FpMatrix& src = bases[static_cast<std::size_t>(arrow.from)];
    const FpMatrix& dst = bases[static_cast<std::size_t>(arrow.to)];
    if (src.cols() == 0 || dst.cols() == 0) {
      out.arrows[arrow.label] = FpMatrix(m.prime(), dst.cols(), src.cols());
      continue;
    }
    out.arrows[arrow.label] = CoordinateMap(dst).coordinates(m.action(arrow.basis_index) * src);
  }
  return out;
}

void check_kupisch(const KupischSeries& k) {
  const int n = static_cast<int>(k.lengths.size());
  if (n == 0) throw InadmissibleSeries("empty Kupisch series");
  for (int c : k.lengths)
    if (c < 1) throw InadmissibleSeries("Kupisch entries must be positive");
  if (k.cyclic) {
    for (int i = 0; i < n; ++i) {
      if (k.lengths[static_cast<std::size_t>(i)] < 2) throw InadmissibleSeries("cyclic Kupisch entries must be at least 2");
      if (k.lengths[static_cast<std::size_t>((i + 1) % n)] < k.lengths[static_cast<std::size_t>(i)] - 1)
        throw InadmissibleSeries("entry " + std::to_string((i + 1) % n + 1) + " drops by more than one");
    }
    return;
  }
  if (k.lengths.back() != 1) throw InadmissibleSeries("linear Kupisch series must end in 1");
  for (int i = 0; i + 1 < n; ++i)
    if (k.lengths[static_cast<std::size_t>(i + 1)] < k.lengths[static_cast<std::size_t>(i)] - 1)
      throw InadmissibleSeries("entry " + std::to_string(i + 2) + " drops by more than one");
}

QuiverSpec nakayama_from_kupisch(const KupischSeries& k, std::uint32_t p) {
  check_kupisch(k);
  const int n = static_cast<int>(k.lengths.size());
  QuiverSpec q;
  q.prime = p;
  q.vertices = n;
  std::vector<std::string> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!k.cyclic && (i + 1 == n || k.lengths[static_cast<std::size_t>(i)] < 2)) continue;
    label[static_cast<std::size_t>(i)] = "a" + std::to_string(i + 1);
    q.arrows.push_back({i, (i + 1) % n, label[static_cast<std::size_t>(i)]});
  }
  int longest = 2;
  for (int i = 0; i < n; ++i) {
    const int c = k.lengths[static_cast<std::size_t>(i)];
    longest = std::max(longest, c);
    if (c < 2) continue;
    if (!k.cyclic && i + c > n - 1) continue;  // the path would leave the quiver
    QuiverSpec::Term t;
    for (int s = 0; s < c; ++s) t.path.push_back(label[static_cast<std::size_t>((i + s) % n)]);
    q.relations.push_back({t});
  }
  q.length_bound = longest;
  return q;
}

namespace fixtures {

QuiverSpec fix1_spec(std::uint32_t p) {
  QuiverSpec q;
  q.prime = p;
  q.vertices = 1;
  q.arrows = {{0, 0, "a"}};
  q.relations = {{{1, {"a", "a"}}}};
  q.length_bound = 3;
  return q;
}

QuiverSpec fix2_spec(std::uint32_t p) {
  QuiverSpec q;
  q.prime = p;
  q.vertices = 3;
  q.arrows = {{0, 1, "a"}, {1, 2, "b"}};
  q.length_bound = 4;
  return q;
}

QuiverSpec fix3_spec(std::uint32_t p) {
  QuiverSpec q = fix2_spec(p);
  q.relations = {{{1, {"a", "b"}}}};
  return q;
}

QuiverSpec fix4_spec(std::uint32_t p) { return nakayama_from_kupisch({true, {2, 2}}, p); }

QuiverSpec fix5_spec(std::uint32_t p) {
  QuiverSpec q;
  q.prime = p;
  q.vertices = 2;
  q.arrows = {{0, 0, "x"}, {1, 0, "c"}};
  q.relations = {{{1, {"x", "x"}}}, {{1, {"c", "x"}}}};
  q.length_bound = 3;
  return q;
}

AlgebraPtr fix1(std::uint32_t p) { return to_algebra(fix1_spec(p)); }
AlgebraPtr fix2(std::uint32_t p) { return to_algebra(fix2_spec(p)); }
AlgebraPtr fix3(std::uint32_t p) { return to_algebra(fix3_spec(p)); }
AlgebraPtr fix4(std::uint32_t p) { return to_algebra(fix4_spec(p)); }
AlgebraPtr fix5(std::uint32_t p) { return to_algebra(fix5_spec(p)); }

Module interval(const AlgebraPtr& linear_a3, int lo, int hi) {
  const std::uint32_t p = linear_a3->prime();
  std::vector<Index> dims(3, 0);
  for (int v = lo; v <= hi; ++v) dims[static_cast<std::size_t>(v - 1)] = 1;
  std::map<std::string, FpMatrix> arrows;
  arrows["a"] = FpMatrix(p, dims[1], dims[0]);
  arrows["b"] = FpMatrix(p, dims[2], dims[1]);
  if (dims[0] && dims[1]) arrows["a"] = FpMatrix::identity(p, 1);
  if (dims[1] && dims[2]) arrows["b"] = FpMatrix::identity(p, 1);
  return module_from_representation(linear_a3, dims, arrows);
}

}  // namespace fixtures

}  // namespace itphi
