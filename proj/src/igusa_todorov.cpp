#include "itphi/igusa_todorov.hpp"

#include "itphi/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace itphi {

namespace {

// Largest syzygy on which ext_functor_iso repeats its answer with stable_iso.
constexpr Index kCrossCheckDim = 24;

// Rows of integer vectors over the union of their supports.
IntMatrix stack(const std::vector<KVector>& rows, const std::vector<int>& columns) {
  IntMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(columns.size()));
  out.setZero();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i].coeffs) {
      auto it = std::lower_bound(columns.begin(), columns.end(), c);
      out(static_cast<Index>(i), it - columns.begin()) = v;
    }
  return out;
}

std::vector<int> support(const std::vector<KVector>& rows) {
  std::set<int> s;
  for (const auto& r : rows)
    for (const auto& [c, v] : r.coeffs) s.insert(c);
  return {s.begin(), s.end()};
}

std::size_t rank_of(const std::vector<KVector>& rows) {
  const auto cols = support(rows);
  if (cols.empty()) return 0;
  return rank_int(stack(rows, cols));
}

// Classes reachable from `start` under omega; nullopt past the limits.
std::optional<std::vector<int>> omega_closure(IsoRegistry& r, const std::vector<int>& start, const PhiLimits& limits) {
  std::set<int> seen(start.begin(), start.end());
  if (static_cast<int>(seen.size()) > limits.max_classes) return std::nullopt;
  std::deque<int> queue(start.begin(), start.end());
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    if (r.representative(c).dim() > limits.max_dim) return std::nullopt;
    for (const auto& [d, v] : r.omega(c).coeffs) {
      if (seen.count(d)) continue;
      if (static_cast<int>(seen.size()) >= limits.max_classes) return std::nullopt;
      seen.insert(d);
      queue.push_back(d);
    }
  }
  return std::vector<int>(seen.begin(), seen.end());
}

std::vector<KVector> apply_omega(IsoRegistry& r, const std::vector<KVector>& rows) {
  std::vector<KVector> out;
  for (const auto& row : rows) {
    KVector next;
    for (const auto& [c, v] : row.coeffs) next.add(r.omega(c), v);
    out.push_back(std::move(next));
  }
  return out;
}

bool within_dim(IsoRegistry& r, const std::vector<KVector>& rows, Index max_dim) {
  for (const auto& row : rows)
    for (const auto& [c, v] : row.coeffs)
      if (r.representative(c).dim() > max_dim) return false;
  return true;
}

std::vector<KVector> unit_rows(const std::vector<int>& classes) {
  std::vector<KVector> rows;
  for (int c : classes) {
    KVector v;
    v.add(c, 1);
    rows.push_back(v);
  }
  return rows;
}

// Levels V_0, V_1, ... of Omega on the classes of m, with the certificate that
// decides how far they are computed.
struct Levels {
  std::vector<std::vector<KVector>> rows;
  PhiOutcome outcome;
};

Levels omega_levels(IsoRegistry& r, const std::vector<int>& classes, const PhiLimits& limits) {
  if (limits.n_max < 1) throw std::invalid_argument("phi: n_max must be at least 1");
  Levels out;
  out.rows.push_back(unit_rows(classes));
  out.outcome.rank_trace.push_back(classes.size());
  if (classes.empty()) return out;

  const auto closure = omega_closure(r, classes, limits);
  const int steps = closure ? static_cast<int>(closure->size()) : limits.n_max;
  for (int k = 1; k <= steps; ++k) {
    if (!closure && !within_dim(r, out.rows.back(), limits.max_dim)) break;
    out.rows.push_back(apply_omega(r, out.rows.back()));
    out.outcome.rank_trace.push_back(rank_of(out.rows.back()));
    if (out.outcome.rank_trace.back() == 0) break;
  }
  PhiOutcome& o = out.outcome;
  const int reached = static_cast<int>(o.rank_trace.size()) - 1;
  if (o.rank_trace.back() == 0) {
    o.certificate = PhiCertificate::RankZero;
  } else if (closure) {
    o.certificate = PhiCertificate::OmegaClosedFinite;
    o.closure = *closure;
    o.extra_steps = reached;
  } else {
    o.kind = PhiKind::LowerBound;
    o.certificate = PhiCertificate::Cutoff;
    o.cutoff = reached;
  }
  return out;
}

std::string describe(const std::vector<std::pair<int, std::int64_t>>& parts) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) s << (i ? " " : "") << 'c' << parts[i].first << '^' << parts[i].second;
  s << ']';
  return s.str();
}

Module realize(IsoRegistry& r, const std::vector<std::pair<int, std::int64_t>>& parts) {
  std::vector<Module> mods;
  for (const auto& [c, k] : parts) mods.push_back(power(r.representative(c), static_cast<int>(k)));
  return direct_sum(mods, r.algebra());
}

std::set<int> class_set(IsoRegistry& r, const Module& m) {
  std::set<int> out;
  for (const auto& [c, k] : r.classes_in(m)) out.insert(c);
  return out;
}

}  // namespace

const char* to_string(PhiKind k) { return k == PhiKind::Exact ? "Exact" : "LowerBound"; }

const char* to_string(PhiCertificate c) {
  switch (c) {
    case PhiCertificate::RankZero:
      return "RankZero";
    case PhiCertificate::OmegaClosedFinite:
      return "OmegaClosedFinite";
    case PhiCertificate::Cutoff:
      return "Cutoff";
  }
  return "?";
}

int stable_index(const std::vector<std::size_t>& trace) {
  int value = 0;
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (trace[k] < trace[k - 1]) value = static_cast<int>(k);
  return value;
}

const KVector& omega_on_classes(IsoRegistry& r, int c) { return r.omega(c); }

std::vector<int> nonprojective_classes(IsoRegistry& r, const Module& m) {
  std::vector<int> out;
  for (const auto& [c, k] : r.classes_in(m))
    if (!r.is_projective(c)) out.push_back(c);
  return out;
}

KVector omega_power(IsoRegistry& r, KVector v, int k) {
  for (int step = 0; step < k && !v.is_zero(); ++step) {
    KVector next;
    for (const auto& [c, mult] : v.coeffs) next.add(r.omega(c), mult);
    v = std::move(next);
  }
  return v;
}

ProjDim pd_bounded(IsoRegistry& r, const Module& m, int n_max) {
  if (!same_algebra(*m.algebra(), *r.algebra())) throw AlgebraMismatch("pd_bounded: module over a different algebra");
  std::set<int> support;
  for (int c : nonprojective_classes(r, m)) support.insert(c);
  std::set<std::set<int>> seen;
  for (int k = 0; k <= n_max; ++k) {
    if (support.empty()) return {true, k};
    if (!seen.insert(support).second) break;
    std::set<int> next;
    for (int c : support)
      for (const auto& [d, mult] : r.omega(c).coeffs) next.insert(d);
    support = std::move(next);
  }
  return {false, n_max};
}

PhiOutcome phi(IsoRegistry& r, const Module& m, const PhiLimits& limits) {
  if (!same_algebra(*m.algebra(), *r.algebra())) throw AlgebraMismatch("phi: module over a different algebra");
  return phi_of_classes(r, nonprojective_classes(r, m), limits);
}

PhiOutcome phi_of_classes(IsoRegistry& r, const std::vector<int>& classes, const PhiLimits& limits) {
  for (int c : classes)
    if (r.is_projective(c)) throw std::invalid_argument("phi: projective class in the class list");
  if (limits.n_max < 1) throw std::invalid_argument("phi: n_max must be at least 1");
  PhiOutcome out;
  if (classes.empty()) {
    out.rank_trace = {0};
    return out;
  }
  const auto closure = omega_closure(r, classes, limits);
  if (!closure) {
    out = omega_levels(r, classes, limits).outcome;
    out.value = stable_index(out.rank_trace);
    return out;
  }
  // Omega restricted to the closed set is a square matrix W; the ranks of
  // V_0 W^k settle once the kernels of W^k do, within |closure| steps.
  const std::vector<int>& cols = *closure;
  std::vector<KVector> w_rows;
  for (int c : cols) w_rows.push_back(r.omega(c));
  const IntMatrix w = stack(w_rows, cols);
  IntMatrix v = stack(unit_rows(classes), cols);
  out.rank_trace.push_back(classes.size());
  for (std::size_t k = 1; k <= cols.size(); ++k) {
    v = multiply(v, w);
    out.rank_trace.push_back(rank_int(v));
    if (out.rank_trace.back() == 0) break;
  }
  if (out.rank_trace.back() == 0) {
    out.certificate = PhiCertificate::RankZero;
  } else {
    out.certificate = PhiCertificate::OmegaClosedFinite;
    out.closure = cols;
    out.extra_steps = static_cast<int>(out.rank_trace.size()) - 1;
  }
  out.value = stable_index(out.rank_trace);
  return out;
}

PhiOutcome phi(const Module& m, int n_max, std::uint64_t seed) {
  IsoRegistry r(m.algebra(), seed);
  PhiLimits limits;
  limits.n_max = n_max;
  return phi(r, m, limits);
}

bool stable_iso(const Module& m, const Module& n, std::uint64_t seed) {
  require_same_algebra(m, n, "stable_iso");
  return are_isomorphic({m, projective_cover(n).cover}, {n, projective_cover(m).cover}, seed);
}

bool ext_functor_iso(IsoRegistry& r, const Module& m, const Module& n, int i) {
  if (i < 1) throw std::invalid_argument("ext_functor_iso: degree must be positive");
  require_same_algebra(m, n, "ext_functor_iso");
  if (!same_algebra(*m.algebra(), *r.algebra())) throw AlgebraMismatch("ext_functor_iso: module over a different algebra");
  const bool by_class = omega_power(r, r.register_module(m), i - 1) == omega_power(r, r.register_module(n), i - 1);
  const Module mm = syzygy_iter(m, i - 1);
  const Module nn = syzygy_iter(n, i - 1);
  if (std::max(mm.dim(), nn.dim()) <= kCrossCheckDim && by_class != stable_iso(mm, nn, r.seed()))
    throw VerificationMismatch("ext_functor_iso: class equality and stable isomorphism disagree in degree " +
                               std::to_string(i));
  return by_class;
}

bool ext_functor_iso(const Module& m, const Module& n, int i, std::uint64_t seed) {
  IsoRegistry r(m.algebra(), seed);
  return ext_functor_iso(r, m, n, i);
}

bool is_d_division(IsoRegistry& r, const Module& x, const Module& y, int d, const Module& m) {
  if (d < 1) throw std::invalid_argument("is_d_division: d must be positive");
  const std::set<int> in_m = class_set(r, m);
  const std::set<int> in_x = class_set(r, x);
  const std::set<int> in_y = class_set(r, y);
  for (const auto* s : {&in_x, &in_y})
    for (int c : *s)
      if (!in_m.count(c)) throw std::invalid_argument("is_d_division: argument not in add(M)");
  for (int c : in_x)
    if (in_y.count(c)) return false;
  const Module xd = syzygy_iter(x, d - 1);
  const Module yd = syzygy_iter(y, d - 1);
  if (r.register_module(xd) == r.register_module(yd)) return false;
  return r.register_module(syzygy(xd)) == r.register_module(syzygy(yd));
}

bool is_d_division(const Module& x, const Module& y, int d, const Module& m, std::uint64_t seed) {
  IsoRegistry r(m.algebra(), seed);
  return is_d_division(r, x, y, d, m);
}

DivisionOutcome phi_via_divisions(IsoRegistry& r, const Module& m, const PhiLimits& limits) {
  if (!same_algebra(*m.algebra(), *r.algebra()))
    throw AlgebraMismatch("phi_via_divisions: module over a different algebra");
  const std::vector<int> classes = nonprojective_classes(r, m);
  Levels levels = omega_levels(r, classes, limits);
  DivisionOutcome out;
  out.outcome = levels.outcome;
  int value = 0;
  for (std::size_t d = 1; d < levels.rows.size(); ++d) {
    const auto& now = levels.rows[d];
    const auto& before = levels.rows[d - 1];
    const auto cols_now = support(now);
    const auto cols_before = support(before);
    IntMatrix kernel;
    if (cols_now.empty()) {
      kernel = IntMatrix::Identity(static_cast<Index>(classes.size()), static_cast<Index>(classes.size()));
    } else {
      kernel = integer_left_kernel(stack(now, cols_now));
    }
    const IntMatrix prev = stack(before, cols_before);
    Index best = -1;
    BigInt best_norm = 0;
    for (Index k = 0; k < kernel.rows(); ++k) {
      IntMatrix a = kernel.row(k);
      if (multiply(a, prev).isZero()) continue;
      BigInt norm = 0;
      for (Index j = 0; j < a.cols(); ++j) norm += abs(a(0, j));
      if (best < 0 || norm < best_norm) {
        best = k;
        best_norm = norm;
      }
    }
    if (best < 0) continue;

    DivisionWitness w;
    w.d = static_cast<int>(d);
    std::vector<std::pair<int, std::int64_t>> pos, neg;
    for (Index j = 0; j < kernel.cols(); ++j) {
      const auto coeff = static_cast<std::int64_t>(kernel(best, j));
      const int c = classes[static_cast<std::size_t>(j)];
      if (coeff != 0) w.combination.emplace_back(c, coeff);
      if (coeff > 0) pos.emplace_back(c, coeff);
      if (coeff < 0) neg.emplace_back(c, -coeff);
    }
    w.x = realize(r, pos);
    w.y = realize(r, neg);
    const Module xs = syzygy_iter(w.x, w.d - 1);
    const Module ys = syzygy_iter(w.y, w.d - 1);
    const bool below = stable_iso(xs, ys, r.seed());
    const Module xd = syzygy(xs);
    const Module yd = syzygy(ys);
    const bool at = stable_iso(xd, yd, r.seed());
    std::ostringstream t;
    t << "d=" << w.d << " X=" << describe(pos) << " Y=" << describe(neg) << "; level " << w.d - 1 << ": dims "
      << xs.dim() << "/" << ys.dim() << (below ? " stably isomorphic" : " not stably isomorphic") << "; level "
      << w.d << ": dims " << xd.dim() << "/" << yd.dim() << (at ? " stably isomorphic" : " not stably isomorphic");
    w.transcript = t.str();
    if (below || !at) throw VerificationMismatch("predicted division failed on modules: " + w.transcript);
    value = w.d;
    out.witnesses.push_back(std::move(w));
  }
  out.outcome.value = value;
  return out;
}

DivisionOutcome phi_via_divisions(const Module& m, int n_max, std::uint64_t seed) {
  IsoRegistry r(m.algebra(), seed);
  PhiLimits limits;
  limits.n_max = n_max;
  return phi_via_divisions(r, m, limits);
}

DualityReport ce_duality_check(const Module& m, const Module& n, int i_max) {
  require_same_algebra(m, n, "ce_duality_check");
  const Module dm = dual_module(m);
  DualityReport out;
  for (int i = 0; i <= i_max; ++i) {
    out.tor.push_back(tor_dim(dm, n, i));
    out.ext.push_back(ext_dim(n, m, i));
    if (out.tor.back() != out.ext.back()) {
      out.ok = false;
      out.violations.push_back(i);
    }
  }
  return out;
}

}  // namespace itphi
