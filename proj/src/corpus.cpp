#include "itphi/corpus.hpp"

#include "itphi/errors.hpp"

#include <array>
#include <functional>

namespace itphi {

namespace {

constexpr int kSpecAttempts = 2000;
constexpr int kRepresentationAttempts = 200;

// All paths (as label lists) of exactly `length` arrows avoiding the given
// zero patterns as subpaths.
std::vector<std::vector<std::string>> surviving_paths(const QuiverSpec& q, int length,
                                                      const std::vector<std::vector<std::string>>& zeros) {
  std::vector<std::vector<std::string>> out;
  std::vector<int> path;
  auto avoids = [&](const std::vector<int>& p) {
    for (const auto& z : zeros) {
      if (z.size() > p.size()) continue;
      for (std::size_t s = 0; s + z.size() <= p.size(); ++s) {
        bool hit = true;
        for (std::size_t k = 0; k < z.size() && hit; ++k) hit = q.arrows[static_cast<std::size_t>(p[s + k])].label == z[k];
        if (hit) return false;
      }
    }
    return true;
  };
  std::function<void()> grow = [&] {
    if (!avoids(path)) return;
    if (static_cast<int>(path.size()) == length) {
      std::vector<std::string> labels;
      for (int a : path) labels.push_back(q.arrows[static_cast<std::size_t>(a)].label);
      out.push_back(std::move(labels));
      return;
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (!path.empty() && q.arrows[static_cast<std::size_t>(path.back())].to != q.arrows[a].from) continue;
      path.push_back(static_cast<int>(a));
      grow();
      path.pop_back();
    }
  };
  grow();
  return out;
}

Module representation_once(const AlgebraPtr& a, const QuiverSpec& spec, std::mt19937_64& rng, Index max_dim) {
  const std::uint32_t p = spec.prime;
  std::uniform_int_distribution<Index> dim(0, 3);
  std::uniform_int_distribution<Residue> value(1, p - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Index> dims(static_cast<std::size_t>(spec.vertices));
  Index total = 0;
  for (auto& d : dims) total += (d = dim(rng));
  if (total == 0 || total > max_dim) return Module::zero(a);
  const double density = std::array<double, 3>{0.25, 0.5, 0.8}[rng() % 3];
  std::map<std::string, FpMatrix> maps;
  for (const auto& arrow : spec.arrows) {
    FpMatrix m(p, dims[static_cast<std::size_t>(arrow.to)], dims[static_cast<std::size_t>(arrow.from)]);
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (unit(rng) < density) m.set(i, j, value(rng));
    maps[arrow.label] = m;
  }
  return module_from_representation(a, dims, maps);
}

}  // namespace

QuiverSpec random_monomial_spec(std::mt19937_64& rng, const CorpusConfig& config) {
  std::uniform_int_distribution<int> vertices(config.min_vertices, config.max_vertices);
  std::uniform_int_distribution<int> arrows(config.min_arrows, config.max_arrows);
  std::uniform_int_distribution<std::size_t> prime(0, config.primes.size() - 1);
  std::uniform_int_distribution<int> truncation(2, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < kSpecAttempts; ++attempt) {
    QuiverSpec q;
    q.prime = config.primes[prime(rng)];
    q.vertices = vertices(rng);
    const int m = arrows(rng);
    std::uniform_int_distribution<int> vertex(0, q.vertices - 1);
    for (int k = 0; k < m; ++k) q.arrows.push_back({vertex(rng), vertex(rng), "a" + std::to_string(k)});

    std::vector<std::vector<std::string>> zeros;
    const double density = unit(rng);
    for (const auto& path : surviving_paths(q, 2, {}))
      if (unit(rng) < density) zeros.push_back(path);
    const int t = truncation(rng);
    for (auto& path : surviving_paths(q, t, zeros)) zeros.push_back(std::move(path));
    for (const auto& z : zeros) q.relations.push_back({{1, z}});
    q.length_bound = t;
    try {
      const AlgebraPtr a = to_algebra(q);
      if (a->dim() > config.max_algebra_dim) continue;
      int longest = 0;
      for (const auto& path : a->quiver()->basis_paths) longest = std::max(longest, static_cast<int>(path.size()));
      QuiverSpec tight = q;
      tight.length_bound = longest + 1;
      tight.relations.clear();
      for (const auto& rel : q.relations)
        if (static_cast<int>(rel.front().path.size()) <= tight.length_bound) tight.relations.push_back(rel);
      try {
        if (to_algebra(tight)->dim() == a->dim()) return tight;
      } catch (const NotAdmissibleWithinBound&) {
      }
      return q;
    } catch (const NotAdmissibleWithinBound&) {
      continue;
    }
  }
  throw RetryExhausted("no random monomial algebra within the bounds");
}

Module random_representation(const AlgebraPtr& a, const QuiverSpec& spec, std::mt19937_64& rng, Index max_dim) {
  for (int attempt = 0; attempt < kRepresentationAttempts; ++attempt) {
    try {
      Module m = representation_once(a, spec, rng, max_dim);
      if (m.dim() > 0) return m;
    } catch (const RelationViolated&) {
    }
  }
  for (;;) {
    Module m = random_quotient_module(a, rng, 2, 2);
    if (m.dim() > 0 && m.dim() <= max_dim) return m;
  }
}

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, const CorpusConfig& config) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  const std::vector<std::pair<std::string, QuiverSpec>> fixtures = {
      {"FIX1", fixtures::fix1_spec()}, {"FIX2", fixtures::fix2_spec()}, {"FIX3", fixtures::fix3_spec()},
      {"FIX4", fixtures::fix4_spec()}, {"FIX5", fixtures::fix5_spec()}};
  for (const auto& [name, spec] : fixtures) {
    CorpusEntry e{name, spec, to_algebra(spec), {}};
    for (int v = 0; v < e.algebra->vertex_count(); ++v) {
      e.modules.push_back(simple_module(e.algebra, v));
      e.modules.push_back(projective_module(e.algebra, v));
    }
    while (static_cast<int>(e.modules.size()) < config.modules_per_algebra)
      e.modules.push_back(random_representation(e.algebra, spec, rng, config.max_module_dim));
    out.push_back(std::move(e));
  }
  for (int k = 0; k < config.algebras; ++k) {
    CorpusEntry e;
    e.name = "R" + std::to_string(k);
    e.spec = random_monomial_spec(rng, config);
    e.algebra = to_algebra(e.spec);
    for (int j = 0; j < config.modules_per_algebra; ++j)
      e.modules.push_back(random_representation(e.algebra, e.spec, rng, config.max_module_dim));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace itphi
