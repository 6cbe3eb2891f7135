#include "io.hpp"
#include "selftest.hpp"

#include "itphi/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

using namespace itphi;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Outcome {
  json result = json::object();
  std::string summary;
  bool failure = false;
  json failure_detail;
};

struct Inputs {
  json digests = json::object();

  QuiverSpec algebra_spec(const std::string& path) {
    const std::string bytes = io::read_file(path);
    digests["algebra"] = io::sha256_hex(bytes);
    return io::parse_algebra(io::parse_text(bytes, path), path);
  }
  AlgebraPtr algebra(const std::string& path) { return to_algebra(algebra_spec(path)); }
  Module module(const std::string& path, const AlgebraPtr& a, const std::string& key = "module") {
    const std::string bytes = io::read_file(path);
    digests[key] = io::sha256_hex(bytes);
    return io::parse_module(io::parse_text(bytes, path), a, path);
  }
  std::vector<Module> module_list(const std::string& path, const AlgebraPtr& a) {
    const std::string bytes = io::read_file(path);
    digests["indecomposables"] = io::sha256_hex(bytes);
    const json j = io::parse_text(bytes, path);
    const json& list = j.is_object() && j.contains("modules") ? j["modules"] : j;
    if (!list.is_array()) throw io::InputError(path + ": at /: expected an array of modules");
    std::vector<Module> out;
    for (std::size_t k = 0; k < list.size(); ++k) {
      try {
        out.push_back(io::parse_module(list[k], a, path));
      } catch (const io::InputError& e) {
        throw io::InputError(std::string(e.what()) + " (module " + std::to_string(k) + ")");
      }
    }
    return out;
  }
};

bool is_input_error(const Error& e) {
  static const std::vector<std::string> kinds = {"NotAdmissibleWithinBound", "EmptyQuiver", "RelationViolated",
                                                 "AlgebraMismatch", "InadmissibleSeries"};
  return std::find(kinds.begin(), kinds.end(), e.kind()) != kinds.end();
}

std::string phi_summary(const PhiOutcome& o) {
  std::ostringstream s;
  s << (o.exact() ? "" : ">= ") << o.value << " (" << to_string(o.kind) << ", " << to_string(o.certificate) << ")";
  return s.str();
}

KupischSeries parse_kupisch(const std::string& text, bool cyclic) {
  KupischSeries k;
  k.cyclic = cyclic;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      k.lengths.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw io::InputError("--kupisch: at entry " + std::to_string(k.lengths.size()) + ": not an integer: \"" + item +
                           "\"");
    }
  }
  return k;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("ITPHI_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const std::uint64_t s = std::stoull(env, &used);
    if (used == std::string(env).size()) return s;
  } catch (const std::exception&) {
  }
  throw io::InputError(std::string("ITPHI_SEED: not an unsigned integer: \"") + env + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const io::InputError& e) {
    std::cerr << "itphi: error: " << e.what() << '\n';
    return 2;
  }
  int n_max = 32;
  int m_max = -1;
  std::string algebra_path, module_path, indec_path, kupisch;
  bool cyclic = false;
  int sample = 0;
  std::uint32_t kupisch_prime = 2;

  CLI::App app{"Igusa-Todorov phi function and phi-dimension of algebras over prime fields", "itphi"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", seed, "Random seed (default: $ITPHI_SEED or 0)");
  app.add_option("--nmax", n_max, "Syzygy cutoff for phi and projective dimensions")->capture_default_str();

  auto add_algebra = [&](CLI::App* sub) { sub->add_option("algebra", algebra_path, "Algebra file (JSON)")->required(); };
  auto add_module = [&](CLI::App* sub) { sub->add_option("module", module_path, "Module file (JSON)")->required(); };

  auto* algebra_cmd = app.add_subcommand("algebra", "Algebra utilities");
  algebra_cmd->require_subcommand(1);
  auto* check_cmd = algebra_cmd->add_subcommand("check", "Build the algebra and validate its presentation");
  add_algebra(check_cmd);

  auto* phi_cmd = app.add_subcommand("phi", "phi(M) with its certificate");
  add_algebra(phi_cmd);
  add_module(phi_cmd);

  auto* div_cmd = app.add_subcommand("phi-div", "phi(M) through verified d-divisions");
  add_algebra(div_cmd);
  add_module(div_cmd);

  auto* phidim_cmd = app.add_subcommand("phidim", "phi-dimension of an algebra");
  phidim_cmd->add_option("algebra", algebra_path, "Algebra file (JSON)");
  auto* indec_opt = phidim_cmd->add_option("--indec", indec_path, "Complete list of indecomposables (JSON)");
  auto* kupisch_opt = phidim_cmd->add_option("--kupisch", kupisch, "Nakayama algebra from a Kupisch series, e.g. 2,2,1");
  phidim_cmd->add_flag("--cyclic", cyclic, "Kupisch series is cyclic");
  phidim_cmd->add_option("--prime", kupisch_prime, "Prime for --kupisch")->capture_default_str();
  auto* sample_opt = phidim_cmd->add_option("--sample", sample, "Sample N modules for the enumeration");
  indec_opt->excludes(kupisch_opt)->excludes(sample_opt);
  kupisch_opt->excludes(sample_opt);

  auto* dims_cmd = app.add_subcommand("dims", "findim lower bound <= phidim <= gldim report");
  add_algebra(dims_cmd);

  auto* tilt_cmd = app.add_subcommand("tilt", "Tilting modules");
  tilt_cmd->require_subcommand(1);
  auto* verify_cmd = tilt_cmd->add_subcommand("verify", "Check that T is a tilting module");
  verify_cmd->add_option("--mmax", m_max, "Coresolution length bound (default pd T + 2)");
  auto* endo_cmd = tilt_cmd->add_subcommand("endo", "Build B = End(T)^op");
  auto* bongartz_cmd = tilt_cmd->add_subcommand("bongartz", "Compare phidim(A), phidim(B) and pd T");
  for (auto* sub : {verify_cmd, endo_cmd, bongartz_cmd}) {
    add_algebra(sub);
    add_module(sub);
  }

  auto* ope_cmd = app.add_subcommand("ope", "Compare phidim(A) and phidim(A[M])");
  add_algebra(ope_cmd);
  add_module(ope_cmd);

  auto* selftest_cmd = app.add_subcommand("selftest", "Seeded self-test over a small generated corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "itphi: error: " << e.what() << '\n';
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  json command = json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
  Inputs in;
  Outcome out;
  SamplerConfig sampler;
  sampler.seed = seed;
  if (sample > 0) sampler.count = sample;

  try {
    if (check_cmd->parsed()) {
      const QuiverSpec q = in.algebra_spec(algebra_path);
      const AlgebraPtr a = to_algebra(q);
      out.result = {{"algebra", io::algebra_summary(*a)}};
      out.failure = !out.result["algebra"]["valid"].get<bool>();
      out.summary = std::string(out.failure ? "invalid" : "valid") + " algebra of dimension " + std::to_string(a->dim());
      if (out.failure) out.failure_detail = {{"kind", "InvalidAlgebra"}, {"message", "presentation failed validation"}};
    } else if (phi_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const Module m = in.module(module_path, a);
      IsoRegistry r(a, seed);
      PhiLimits limits;
      limits.n_max = n_max;
      const PhiOutcome o = phi(r, m, limits);
      out.result = {{"phi", io::to_json(o)}};
      out.summary = "phi = " + phi_summary(o);
    } else if (div_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const Module m = in.module(module_path, a);
      IsoRegistry r(a, seed);
      PhiLimits limits;
      limits.n_max = n_max;
      const DivisionOutcome d = phi_via_divisions(r, m, limits);
      out.result = io::to_json(d);
      out.summary = "phi = " + phi_summary(d.outcome) + " with " + std::to_string(d.witnesses.size()) + " division(s)";
    } else if (phidim_cmd->parsed()) {
      AlgebraPtr a;
      if (!kupisch.empty()) {
        if (!algebra_path.empty()) throw io::InputError("phidim: give either an algebra file or --kupisch");
        const KupischSeries k = parse_kupisch(kupisch, cyclic);
        const QuiverSpec q = nakayama_from_kupisch(k, kupisch_prime);
        a = to_algebra(q);
        out.result["kupisch"] = {{"cyclic", cyclic}, {"lengths", k.lengths}, {"prime", kupisch_prime}};
      } else {
        if (algebra_path.empty()) throw io::InputError("phidim: an algebra file or --kupisch is required");
        a = in.algebra(algebra_path);
      }
      PhidimResult r;
      if (!indec_path.empty()) {
        const std::vector<Module> list = in.module_list(indec_path, a);
        r.outcome = phidim_exact(a, list, n_max, seed);
        r.method = "given";
        r.indecomposables = list.size();
      } else {
        r = phidim(a, sampler, n_max);
      }
      out.result["phidim"] = io::to_json(r);
      out.summary = "phidim = " + phi_summary(r.outcome) + " over " + std::to_string(r.indecomposables) +
                    " indecomposables (" + r.method + ")";
    } else if (dims_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const DimensionReport r = inequality_report(a, sampler, n_max);
      out.result = {{"dims", io::to_json(r)}};
      out.failure = !r.consistent;
      out.summary = "dims: " + r.verdict;
      if (out.failure) out.failure_detail = {{"kind", "InequalityViolated"}, {"message", r.verdict}};
    } else if (verify_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const Module t = in.module(module_path, a);
      const TiltingCertificate c = verify_tilting(t, m_max, n_max, seed);
      out.result = {{"tilting", io::to_json(c)}, {"coresolution_exact", coresolution_exact(c, a)}};
      out.summary = "tilting: pd " + std::to_string(c.pd) + ", coresolution length " + std::to_string(c.m);
    } else if (endo_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const Module t = in.module(module_path, a);
      const EndoAlgebra b = endomorphism_algebra(t, seed);
      json summands = json::array();
      for (const auto& s : b.decomposition.summands) summands.push_back({{"dim", s.module.dim()}, {"multiplicity", s.multiplicity}});
      out.result = {{"endomorphism_algebra", io::algebra_summary(*b.algebra)},
                    {"algebra_digest", io::algebra_digest(*b.algebra)},
                    {"summands", std::move(summands)}};
      out.summary = "End(T)^op of dimension " + std::to_string(b.algebra->dim());
    } else if (bongartz_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const Module t = in.module(module_path, a);
      const BongartzReport r = bongartz_bound_check(a, t, sampler, n_max);
      out.result = {{"bongartz", io::to_json(r)}};
      out.failure = !r.holds;
      out.summary = "bound " + r.verdict;
      if (out.failure) out.failure_detail = {{"kind", "BoundViolated"}, {"message", r.verdict}};
    } else if (ope_cmd->parsed()) {
      const AlgebraPtr a = in.algebra(algebra_path);
      const Module m = in.module(module_path, a);
      const OpeReport r = ope_bound_check(a, m, sampler, n_max);
      out.result = {{"ope", io::to_json(r)}};
      out.failure = !r.holds;
      out.summary = "bound " + r.verdict;
      if (out.failure) out.failure_detail = {{"kind", "BoundViolated"}, {"message", r.verdict}};
    } else if (selftest_cmd->parsed()) {
      const selftest::Result r = selftest::run(seed);
      out.result = {{"selftest", r.report}};
      out.failure = !r.ok;
      out.summary = std::string("selftest ") + (r.ok ? "passed" : "FAILED");
      if (out.failure) out.failure_detail = {{"kind", "SelftestViolation"}, {"message", "see result.selftest.checks"}};
    }
  } catch (const io::InputError& e) {
    std::cerr << "itphi: error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    if (is_input_error(e)) {
      std::cerr << "itphi: error: " << e.what() << '\n';
      return 2;
    }
    out.failure = true;
    out.failure_detail = {{"kind", e.kind()}, {"message", e.what()}};
    if (const auto* nr = dynamic_cast<const NotRigid*>(&e)) out.failure_detail["degree"] = nr->degree();
    out.summary = e.kind();
  } catch (const std::invalid_argument& e) {
    std::cerr << "itphi: error: " << e.what() << '\n';
    return 2;
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  json report = {{"command", command},
                 {"version", kVersion},
                 {"seed", seed},
                 {"inputs", in.digests},
                 {"status", out.failure ? "failure" : "ok"},
                 {"result", out.result},
                 {"wall_time_ms", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};
  if (out.failure) report["failure"] = out.failure_detail;
  std::cout << report.dump(2) << '\n';
  std::cerr << "itphi: " << out.summary << '\n';
  return out.failure ? 1 : 0;
}
