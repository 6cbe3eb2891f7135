#include "itphi/phidim_search.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace itphi {

namespace {

struct Sampling {
  int samples = 0;
  bool saturated = false;
};

void absorb(IsoRegistry& r, const Module& m, bool& grew) {
  if (m.dim() == 0) return;
  const int before = r.size();
  r.classes_in(m);
  if (r.size() > before) grew = true;
}

Sampling sample_classes(IsoRegistry& r, const SamplerConfig& config) {
  const AlgebraPtr& a = r.algebra();
  const AlgebraPtr op = opposite_algebra(*a);
  std::mt19937_64 rng(config.seed);
  bool grew = false;
  for (int v : a->class_representatives()) {
    absorb(r, simple_module(a, v), grew);
    absorb(r, projective_module(a, v), grew);
    absorb(r, dual_module(projective_module(op, v), a), grew);
  }
  Sampling out;
  int quiet = 0;
  while (out.samples < config.count && quiet < config.patience) {
    Module m;
    switch (out.samples % 3) {
      case 0:
        m = random_quotient_module(a, rng, 3, 3);
        break;
      case 1:
        m = dual_module(random_quotient_module(op, rng, 3, 3), a);
        break;
      default:
        m = syzygy(random_quotient_module(a, rng, 3, 3));
        break;
    }
    ++out.samples;
    grew = false;
    if (m.dim() <= config.dim_bound) absorb(r, m, grew);
    quiet = grew ? 0 : quiet + 1;
  }
  out.saturated = quiet >= config.patience;
  return out;
}

std::vector<Module> representatives(const IsoRegistry& r) {
  std::vector<Module> out;
  for (int c = 0; c < r.size(); ++c) out.push_back(r.representative(c));
  return out;
}

std::vector<int> all_nonprojective(const IsoRegistry& r) {
  std::vector<int> out;
  for (int c = 0; c < r.size(); ++c)
    if (!r.is_projective(c)) out.push_back(c);
  return out;
}

PhiLimits limits_for(int n_max) {
  PhiLimits l;
  l.n_max = n_max;
  return l;
}

}  // namespace

std::vector<std::vector<int>> gabriel_quiver(const AlgebraPtr& a) {
  const int n = a->vertex_count();
  std::vector<std::vector<int>> arrows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i : a->class_representatives()) {
    const Module rad = top_and_radical(projective_module(a, i)).radical;
    if (rad.dim() == 0) continue;
    const auto top = top_and_radical(rad).top_multiplicities;
    for (int j = 0; j < n; ++j) arrows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = top[static_cast<std::size_t>(j)];
  }
  return arrows;
}

bool is_nakayama(const AlgebraPtr& a) {
  const auto q = gabriel_quiver(a);
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    int out = 0, in = 0;
    for (std::size_t j = 0; j < n; ++j) {
      out += q[i][j];
      in += q[j][i];
    }
    if (out > 1 || in > 1) return false;
  }
  return true;
}

std::vector<Module> nakayama_indecomposables(const AlgebraPtr& a) {
  if (!is_nakayama(a)) throw std::invalid_argument("nakayama_indecomposables: algebra is not Nakayama");
  std::vector<Module> out;
  for (int v : a->class_representatives()) {
    const Module p = projective_module(a, v);
    FpMatrix layer = top_and_radical(p).radical_basis;
    for (;;) {
      out.push_back(quotient(p, layer).module);
      if (layer.cols() == 0) break;
      layer = layer * top_and_radical(submodule(p, layer)).radical_basis;
    }
  }
  return out;
}

std::vector<Module> enumerate_indecomposables_nakayama(const KupischSeries& k, std::uint32_t p) {
  check_kupisch(k);
  return nakayama_indecomposables(to_algebra(nakayama_from_kupisch(k, p)));
}

Enumeration enumerate_indecomposables(const AlgebraPtr& a, const SamplerConfig& config) {
  Enumeration out;
  if (is_nakayama(a)) {
    out.modules = nakayama_indecomposables(a);
    out.method = "nakayama";
    out.complete = true;
    return out;
  }
  IsoRegistry r(a, config.seed);
  const Sampling s = sample_classes(r, config);
  out.modules = representatives(r);
  out.method = "sampled";
  out.complete = s.saturated;
  out.samples = s.samples;
  return out;
}

PhiOutcome phidim_exact(const AlgebraPtr& a, const std::vector<Module>& indecomposables, int n_max,
                        std::uint64_t seed) {
  IsoRegistry r(a, seed);
  std::vector<int> classes;
  std::set<int> seen;
  for (const auto& m : indecomposables) {
    if (m.dim() == 0) throw std::invalid_argument("phidim_exact: zero module in the list");
    const auto cert = is_indecomposable(m, seed);
    if (!cert.indecomposable) throw std::invalid_argument("phidim_exact: decomposable module in the list");
    const int c = r.class_of(m, &cert);
    if (!seen.insert(c).second) throw std::invalid_argument("phidim_exact: repeated class in the list");
    if (!r.is_projective(c)) classes.push_back(c);
  }
  std::sort(classes.begin(), classes.end());
  return phi_of_classes(r, classes, limits_for(n_max));
}

PhidimResult phidim(const AlgebraPtr& a, const SamplerConfig& config, int n_max) {
  const Enumeration e = enumerate_indecomposables(a, config);
  PhidimResult out;
  out.method = e.method;
  out.indecomposables = e.modules.size();
  out.outcome = phidim_exact(a, e.modules, n_max, config.seed);
  if (!e.complete) out.outcome.kind = PhiKind::LowerBound;
  return out;
}

LowerBoundResult phidim_lower_bound(const AlgebraPtr& a, const SamplerConfig& sampler, int n_max) {
  IsoRegistry r(a, sampler.seed);
  sample_classes(r, sampler);
  const int sampled = r.size();
  for (int c = 0; c < sampled; ++c) {
    if (r.is_projective(c)) continue;
    Module m = r.representative(c);
    for (int k = 0; k < 3 && m.dim() > 0; ++k) {
      m = syzygy(m);
      r.classes_in(m);
    }
  }
  const PhiLimits limits = limits_for(n_max);
  LowerBoundResult out;
  out.witness = Module::zero(a);
  out.outcome.rank_trace = {0};
  for (int c : all_nonprojective(r)) {
    const PhiOutcome one = phi_of_classes(r, {c}, limits);
    if (one.value > out.value) {
      out.value = one.value;
      out.outcome = one;
      out.witness = r.representative(c);
    }
  }
  const std::vector<int> all = all_nonprojective(r);
  if (!all.empty()) {
    const PhiOutcome joint = phi_of_classes(r, all, limits);
    if (joint.value > out.value) {
      std::vector<Module> parts;
      for (int c : all) parts.push_back(r.representative(c));
      out.value = joint.value;
      out.outcome = joint;
      out.witness = direct_sum(parts, a);
    }
  }
  return out;
}

ProjDim gldim_report(const AlgebraPtr& a, int n_max) {
  if (n_max < 1) throw std::invalid_argument("gldim_report: n_max must be at least 1");
  ProjDim out{true, 0};
  IsoRegistry r(a);
  for (int v : a->class_representatives()) {
    const ProjDim pd = pd_bounded(r, simple_module(a, v), n_max);
    if (!pd.finite) return {false, n_max};
    out.value = std::max(out.value, pd.value);
  }
  return out;
}

DimensionReport inequality_report(const AlgebraPtr& a, const SamplerConfig& config, int n_max) {
  const Enumeration e = enumerate_indecomposables(a, config);
  DimensionReport out;
  out.phidim.method = e.method;
  out.phidim.indecomposables = e.modules.size();
  out.phidim.outcome = phidim_exact(a, e.modules, n_max, config.seed);
  if (!e.complete) out.phidim.outcome.kind = PhiKind::LowerBound;
  IsoRegistry r(a, config.seed);
  for (const auto& m : e.modules) {
    const ProjDim pd = pd_bounded(r, m, n_max);
    if (pd.finite) out.findim_lower = std::max(out.findim_lower, pd.value);
  }
  out.gldim = gldim_report(a, n_max);

  const PhiOutcome& ph = out.phidim.outcome;
  std::vector<std::string> problems;
  if (ph.exact() && out.findim_lower > ph.value) problems.push_back("findim exceeds phidim");
  if (out.gldim.finite && ph.value > out.gldim.value) problems.push_back("phidim exceeds gldim");
  if (out.gldim.finite && out.findim_lower > out.gldim.value) problems.push_back("findim exceeds gldim");
  out.consistent = problems.empty();
  if (out.consistent) {
    out.verdict = "consistent";
  } else {
    out.verdict = "violation:";
    for (const auto& p : problems) out.verdict += " " + p + ";";
    out.verdict.pop_back();
  }
  return out;
}

}  // namespace itphi
