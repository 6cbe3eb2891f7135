#include "io.hpp"

#include "itphi/errors.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace itphi::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& pointer, const std::string& what) {
  throw InputError(where + ": at " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where, const std::string& at) {
  if (!j.is_object()) fail(where, at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, at, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t integer(const json& j, const std::string& where, const std::string& at) {
  if (!j.is_number_integer()) fail(where, at, "expected an integer");
  return j.get<std::int64_t>();
}

std::string text(const json& j, const std::string& where, const std::string& at) {
  if (!j.is_string()) fail(where, at, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& where, const std::string& at) {
  if (!j.is_array()) fail(where, at, "expected an array");
  return j;
}

json matrix_rows(const FpMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

FpMatrix parse_matrix(const json& j, std::uint32_t p, Index rows, Index cols, const std::string& where,
                      const std::string& at) {
  array(j, where, at);
  FpMatrix m(p, rows, cols);
  if (rows == 0 || cols == 0) {
    const bool empty_rows =
        std::all_of(j.begin(), j.end(), [](const json& r) { return r.is_array() && r.empty(); });
    if (!(j.empty() || (static_cast<Index>(j.size()) == rows && empty_rows)))
      fail(where, at, "expected an empty " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    return m;
  }
  if (static_cast<Index>(j.size()) != rows)
    fail(where, at, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  for (Index i = 0; i < rows; ++i) {
    const std::string ra = at + "/" + std::to_string(i);
    const json& row = array(j[static_cast<std::size_t>(i)], where, ra);
    if (static_cast<Index>(row.size()) != cols)
      fail(where, ra, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    for (Index c = 0; c < cols; ++c) {
      const std::int64_t v = integer(row[static_cast<std::size_t>(c)], where, ra + "/" + std::to_string(c));
      const std::int64_t r = ((v % static_cast<std::int64_t>(p)) + p) % p;
      m.set(i, c, static_cast<Residue>(r));
    }
  }
  return m;
}

void feed(std::ostringstream& out, const FpMatrix& m) {
  out << m.rows() << 'x' << m.cols() << ':';
  for (Index i = 0; i < m.rows(); ++i)
    for (Index c = 0; c < m.cols(); ++c) out << m(i, c) << ',';
  out << ';';
}

json trace_json(const std::vector<std::size_t>& t) {
  json out = json::array();
  for (auto v : t) out.push_back(v);
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(where + ": at byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

QuiverSpec parse_algebra(const json& j, const std::string& where) {
  QuiverSpec q;
  const std::int64_t p = integer(field(j, "prime", where, ""), where, "/prime");
  if (p < 2 || p >= static_cast<std::int64_t>(kMaxPrime)) fail(where, "/prime", "prime out of range");
  q.prime = static_cast<std::uint32_t>(p);
  q.vertices = static_cast<int>(integer(field(j, "vertices", where, ""), where, "/vertices"));
  if (q.vertices < 0) fail(where, "/vertices", "negative vertex count");
  const json& arrows = array(field(j, "arrows", where, ""), where, "/arrows");
  std::set<std::string> labels;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const std::string at = "/arrows/" + std::to_string(k);
    QuiverSpec::Arrow a;
    a.from = static_cast<int>(integer(field(arrows[k], "from", where, at), where, at + "/from"));
    a.to = static_cast<int>(integer(field(arrows[k], "to", where, at), where, at + "/to"));
    a.label = text(field(arrows[k], "label", where, at), where, at + "/label");
    if (a.from < 0 || a.from >= q.vertices) fail(where, at + "/from", "vertex out of range");
    if (a.to < 0 || a.to >= q.vertices) fail(where, at + "/to", "vertex out of range");
    if (!labels.insert(a.label).second) fail(where, at + "/label", "duplicate label \"" + a.label + "\"");
    q.arrows.push_back(a);
  }
  if (j.contains("relations")) {
    const json& rels = array(j["relations"], where, "/relations");
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const std::string at = "/relations/" + std::to_string(r);
      QuiverSpec::Relation rel;
      for (std::size_t t = 0; t < array(rels[r], where, at).size(); ++t) {
        const std::string tat = at + "/" + std::to_string(t);
        QuiverSpec::Term term;
        const std::int64_t c = integer(field(rels[r][t], "coeff", where, tat), where, tat + "/coeff");
        term.coeff = static_cast<Residue>(((c % static_cast<std::int64_t>(q.prime)) + q.prime) % q.prime);
        const json& path = array(field(rels[r][t], "path", where, tat), where, tat + "/path");
        for (std::size_t s = 0; s < path.size(); ++s) {
          const std::string label = text(path[s], where, tat + "/path/" + std::to_string(s));
          if (!labels.count(label)) fail(where, tat + "/path/" + std::to_string(s), "unknown arrow \"" + label + "\"");
          term.path.push_back(label);
        }
        rel.push_back(std::move(term));
      }
      q.relations.push_back(std::move(rel));
    }
  }
  if (j.contains("length_bound"))
    q.length_bound = static_cast<int>(integer(j["length_bound"], where, "/length_bound"));
  try {
    check_quiver_spec(q);
  } catch (const std::invalid_argument& e) {
    fail(where, "", e.what());
  }
  return q;
}

json algebra_to_json(const QuiverSpec& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows) arrows.push_back({{"from", a.from}, {"to", a.to}, {"label", a.label}});
  json rels = json::array();
  for (const auto& rel : q.relations) {
    json terms = json::array();
    for (const auto& t : rel) terms.push_back({{"coeff", t.coeff}, {"path", t.path}});
    rels.push_back(std::move(terms));
  }
  return {{"prime", q.prime},
          {"vertices", q.vertices},
          {"arrows", std::move(arrows)},
          {"relations", std::move(rels)},
          {"length_bound", q.length_bound}};
}

Module parse_module(const json& j, const AlgebraPtr& a, const std::string& where) {
  if (!a->quiver()) throw InputError(where + ": modules can only be read over a quiver algebra");
  const QuiverData& qd = *a->quiver();
  const json& dims_j = array(field(j, "dims", where, ""), where, "/dims");
  if (static_cast<int>(dims_j.size()) != qd.vertices)
    fail(where, "/dims", "expected " + std::to_string(qd.vertices) + " entries");
  std::vector<Index> dims;
  for (std::size_t v = 0; v < dims_j.size(); ++v) {
    const std::int64_t d = integer(dims_j[v], where, "/dims/" + std::to_string(v));
    if (d < 0) fail(where, "/dims/" + std::to_string(v), "negative dimension");
    dims.push_back(static_cast<Index>(d));
  }
  const json& maps = field(j, "arrows", where, "");
  if (!maps.is_object()) fail(where, "/arrows", "expected an object keyed by arrow label");
  std::map<std::string, FpMatrix> arrows;
  for (const auto& arrow : qd.arrows) {
    const std::string at = "/arrows/" + arrow.label;
    const Index rows = dims[static_cast<std::size_t>(arrow.to)];
    const Index cols = dims[static_cast<std::size_t>(arrow.from)];
    auto it = maps.find(arrow.label);
    if (it == maps.end()) {
      if (rows != 0 && cols != 0) fail(where, at, "missing matrix");
      arrows[arrow.label] = FpMatrix(a->prime(), rows, cols);
      continue;
    }
    arrows[arrow.label] = parse_matrix(*it, a->prime(), rows, cols, where, at);
  }
  for (auto it = maps.begin(); it != maps.end(); ++it)
    if (!arrows.count(it.key())) fail(where, "/arrows/" + it.key(), "unknown arrow");
  try {
    return module_from_representation(a, dims, arrows);
  } catch (const RelationViolated& e) {
    fail(where, "/arrows", e.what());
  }
}

json module_to_json(const Module& m) {
  const Representation r = representation_of(m);
  json arrows = json::object();
  for (const auto& [label, mat] : r.arrows) arrows[label] = matrix_rows(mat);
  return {{"dims", r.dims}, {"arrows", std::move(arrows)}};
}

json to_json(const PhiOutcome& o) {
  json out = {{"kind", to_string(o.kind)},
              {"value", o.value},
              {"certificate", to_string(o.certificate)},
              {"rank_trace", trace_json(o.rank_trace)},
              {"closure_size", o.closure.size()}};
  if (o.certificate == PhiCertificate::Cutoff) out["cutoff"] = o.cutoff;
  return out;
}

json to_json(const DivisionOutcome& d) {
  json witnesses = json::array();
  for (const auto& w : d.witnesses) {
    json combo = json::array();
    for (const auto& [cls, c] : w.combination) combo.push_back({cls, c});
    witnesses.push_back({{"d", w.d},
                         {"x_dim", w.x.dim()},
                         {"y_dim", w.y.dim()},
                         {"combination", std::move(combo)},
                         {"transcript", w.transcript}});
  }
  return {{"phi", to_json(d.outcome)}, {"witnesses", std::move(witnesses)}};
}

json to_json(const ProjDim& d) {
  return {{"finite", d.finite}, {"value", d.value}};
}

json to_json(const PhidimResult& r) {
  return {{"outcome", to_json(r.outcome)}, {"method", r.method}, {"indecomposables", r.indecomposables}};
}

json to_json(const DimensionReport& r) {
  return {{"findim_lower", r.findim_lower},
          {"phidim", to_json(r.phidim)},
          {"gldim", to_json(r.gldim)},
          {"consistent", r.consistent},
          {"verdict", r.verdict}};
}

json to_json(const TiltingCertificate& c) {
  json terms = json::array();
  for (const auto& t : c.terms) terms.push_back(t.dim());
  return {{"pd", c.pd}, {"rigidity", c.rigidity}, {"m", c.m}, {"term_dims", std::move(terms)}};
}

json to_json(const BongartzReport& r) {
  return {{"pd", r.pd},
          {"phidim_a", to_json(r.phidim_a)},
          {"phidim_b", to_json(r.phidim_b)},
          {"dim_b", r.dim_b},
          {"b_valid", r.b_valid},
          {"exact", r.exact},
          {"holds", r.holds},
          {"verdict", r.verdict}};
}

json to_json(const OpeReport& r) {
  return {{"phidim_a", to_json(r.phidim_a)},
          {"phidim_ext", to_json(r.phidim_ext)},
          {"dim_ext", r.dim_ext},
          {"exact", r.exact},
          {"holds", r.holds},
          {"verdict", r.verdict}};
}

json algebra_summary(const AlgebraPresentation& a) {
  const ValidationReport v = validate_algebra(a);
  return {{"prime", a.prime()},
          {"dim", a.dim()},
          {"idempotents", a.vertex_count()},
          {"projective_classes", a.class_representatives().size()},
          {"radical_dim", a.radical().cols()},
          {"provenance", to_string(a.provenance())},
          {"valid", v.valid},
          {"problems", v.problems}};
}

std::string algebra_digest(const AlgebraPresentation& a) {
  std::ostringstream s;
  s << a.prime() << '/' << a.dim() << '/';
  for (Residue r : a.structure()) s << r << ',';
  return sha256_hex(s.str());
}

std::string module_digest(const Module& m) {
  std::ostringstream s;
  s << algebra_digest(*m.algebra()) << '/' << m.dim() << '/';
  for (const auto& act : m.actions()) feed(s, act);
  return sha256_hex(s.str());
}

}  // namespace itphi::io
