#include "selftest.hpp"

#include "io.hpp"

#include "itphi/corpus.hpp"
#include "itphi/errors.hpp"

#include <algorithm>
#include <map>

namespace itphi::selftest {

namespace {

struct Tally {
  int cases = 0;
  int violations = 0;
  void record(bool good) {
    ++cases;
    if (!good) ++violations;
  }
};

nlohmann::json module_entry(const Module& m, IsoRegistry& r, std::uint64_t seed, std::map<std::string, Tally>& t) {
  nlohmann::json out = {{"digest", io::module_digest(m)}, {"dim", m.dim()}};
  const PhiOutcome o = phi(r, m);
  out["phi"] = io::to_json(o);
  try {
    const DivisionOutcome d = phi_via_divisions(r, m);
    if (o.exact() && d.outcome.exact()) t["phi_vs_divisions"].record(o.value == d.outcome.value);
    out["divisions"] = d.witnesses.size();
  } catch (const VerificationMismatch&) {
    t["phi_vs_divisions"].record(false);
    out["divisions"] = "mismatch";
  }
  const Module padded = direct_sum(m, projective_module(m.algebra(), 0));
  t["stable_iso_padding"].record(stable_iso(m, padded, seed));
  const Decomposition dec = decompose(m, seed);
  t["reassembly"].record(inverse(dec.reassembly).has_value());
  nlohmann::json summands = nlohmann::json::array();
  for (const auto& s : dec.summands) summands.push_back({s.module.dim(), s.multiplicity});
  std::sort(summands.begin(), summands.end());
  out["summands"] = std::move(summands);
  return out;
}

}  // namespace

Result run(std::uint64_t seed) {
  CorpusConfig config;
  config.algebras = 6;
  config.modules_per_algebra = 4;
  config.max_module_dim = 12;
  std::map<std::string, Tally> tallies;
  std::vector<nlohmann::json> entries;
  for (const auto& e : generate_corpus(seed, config)) {
    IsoRegistry r(e.algebra, seed);
    nlohmann::json modules = nlohmann::json::array();
    for (const auto& m : e.modules) modules.push_back(module_entry(m, r, seed, tallies));
    entries.push_back({{"name", e.name},
                       {"algebra_digest", io::algebra_digest(*e.algebra)},
                       {"dim", e.algebra->dim()},
                       {"prime", e.algebra->prime()},
                       {"modules", std::move(modules)}});
  }
  std::sort(entries.begin(), entries.end(),
            [](const nlohmann::json& x, const nlohmann::json& y) { return x["algebra_digest"] < y["algebra_digest"]; });

  const std::vector<std::pair<std::string, std::pair<AlgebraPtr, int>>> expected = {
      {"FIX1", {fixtures::fix1(), 0}}, {"FIX2", {fixtures::fix2(), 1}},
      {"FIX3", {fixtures::fix3(), 2}}, {"FIX4", {fixtures::fix4(), 0}}};
  nlohmann::json fix = nlohmann::json::object();
  SamplerConfig sampler;
  sampler.seed = seed;
  for (const auto& [name, want] : expected) {
    const PhidimResult got = phidim(want.first, sampler);
    tallies["fixture_phidim"].record(got.outcome.exact() && got.outcome.value == want.second);
    fix[name] = io::to_json(got);
  }

  Result out;
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& [name, t] : tallies) {
    checks[name] = {{"cases", t.cases}, {"violations", t.violations}};
    if (t.violations) out.ok = false;
  }
  out.report = {{"corpus", std::move(entries)}, {"fixtures", std::move(fix)}, {"checks", std::move(checks)},
                {"ok", out.ok}};
  return out;
}

}  // namespace itphi::selftest
