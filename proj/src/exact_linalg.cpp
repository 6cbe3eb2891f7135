#include "itphi/exact_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace itphi {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Residue inverse_mod(Residue a, std::uint32_t p) {
  Residue t = 0, new_t = 1;
  Residue r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    Residue q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("inverse_mod: not invertible");
  return t < 0 ? t + p : t;
}

namespace {

void check_prime(std::uint32_t p) {
  if (p >= kMaxPrime || !is_prime(p))
    throw std::invalid_argument("FpMatrix: modulus must be a prime below 2^16");
}

void reduce_in_place(ResidueMatrix& m, std::uint32_t p) {
  const Residue q = p;
  for (Index i = 0; i < m.size(); ++i) {
    Residue& v = m.data()[i];
    v %= q;
    if (v < 0) v += q;
  }
}

void check_same(const FpMatrix& a, const FpMatrix& b, const char* what) {
  if (a.prime() != b.prime()) throw std::invalid_argument(std::string(what) + ": prime mismatch");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

// In-place Gauss-Jordan elimination; returns the pivot columns. Rows beyond
// the rank are zero afterwards.
std::vector<Index> eliminate(ResidueMatrix& a, std::uint32_t p, Index col_limit) {
  const Residue q = p;
  const Index rows = a.rows();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < col_limit && r < rows; ++c) {
    Index piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const Residue inv = inverse_mod(a(r, c), p);
    if (inv != 1) {
      for (Index j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv % q;
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Residue f = a(i, c);
      if (f == 0) continue;
      const Residue g = q - f;
      for (Index j = c; j < a.cols(); ++j) {
        if (a(r, j) != 0) a(i, j) = (a(i, j) + g * a(r, j)) % q;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

FpMatrix::FpMatrix(std::uint32_t p, Index rows, Index cols)
    : p_(p), data_(ResidueMatrix::Zero(rows, cols)) {
  check_prime(p);
}

FpMatrix::FpMatrix(std::uint32_t p, ResidueMatrix entries) : p_(p), data_(std::move(entries)) {
  check_prime(p);
  reduce_in_place(data_, p_);
}

FpMatrix FpMatrix::identity(std::uint32_t p, Index n) {
  return FpMatrix(p, ResidueMatrix::Identity(n, n));
}

FpMatrix FpMatrix::from_rows(std::uint32_t p,
                             std::initializer_list<std::initializer_list<Residue>> rows) {
  const Index nr = static_cast<Index>(rows.size());
  const Index nc = nr == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  ResidueMatrix m(nr, nc);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != nc) throw std::invalid_argument("from_rows: ragged rows");
    Index j = 0;
    for (Residue v : row) m(i, j++) = v;
    ++i;
  }
  return FpMatrix(p, std::move(m));
}

FpMatrix FpMatrix::vector(std::uint32_t p, const std::vector<Residue>& values) {
  ResidueMatrix m(static_cast<Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Index>(i), 0) = values[i];
  return FpMatrix(p, std::move(m));
}

void FpMatrix::set(Index r, Index c, Residue v) {
  v %= static_cast<Residue>(p_);
  if (v < 0) v += p_;
  data_(r, c) = v;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t;
  t.p_ = p_;
  t.data_ = data_.transpose();
  return t;
}

FpMatrix FpMatrix::col(Index c) const { return block(0, c, rows(), 1); }
FpMatrix FpMatrix::row(Index r) const { return block(r, 0, 1, cols()); }
FpMatrix FpMatrix::cols_range(Index start, Index count) const {
  return block(0, start, rows(), count);
}
FpMatrix FpMatrix::rows_range(Index start, Index count) const {
  return block(start, 0, count, cols());
}

FpMatrix FpMatrix::block(Index r, Index c, Index nr, Index nc) const {
  FpMatrix b;
  b.p_ = p_;
  b.data_ = data_.block(r, c, nr, nc);
  return b;
}

void FpMatrix::set_block(Index r, Index c, const FpMatrix& b) {
  data_.block(r, c, b.rows(), b.cols()) = b.data_;
}

FpMatrix FpMatrix::select_cols(const std::vector<Index>& idx) const {
  FpMatrix out(p_, rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.data_.col(static_cast<Index>(j)) = data_.col(idx[j]);
  return out;
}

FpMatrix FpMatrix::select_rows(const std::vector<Index>& idx) const {
  FpMatrix out(p_, static_cast<Index>(idx.size()), cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.data_.row(static_cast<Index>(i)) = data_.row(idx[i]);
  return out;
}

bool FpMatrix::is_zero() const { return data_.size() == 0 || data_.isZero(); }

FpMatrix FpMatrix::scaled(Residue s) const {
  s %= static_cast<Residue>(p_);
  if (s < 0) s += p_;
  return FpMatrix(p_, ResidueMatrix(data_ * s));
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("FpMatrix product: prime mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("FpMatrix product: shape mismatch");
  FpMatrix out;
  out.p_ = a.p_;
  out.data_ = a.data_ * b.data_;
  reduce_in_place(out.data_, out.p_);
  return out;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  check_same(a, b, "FpMatrix sum");
  FpMatrix out = a;
  out += b;
  return out;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  check_same(a, b, "FpMatrix difference");
  FpMatrix out;
  out.p_ = a.p_;
  out.data_ = a.data_ - b.data_;
  reduce_in_place(out.data_, out.p_);
  return out;
}

bool operator==(const FpMatrix& a, const FpMatrix& b) {
  return a.p_ == b.p_ && a.rows() == b.rows() && a.cols() == b.cols() && a.data_ == b.data_;
}

FpMatrix& FpMatrix::operator+=(const FpMatrix& b) {
  check_same(*this, b, "FpMatrix sum");
  data_ += b.data_;
  const Residue q = p_;
  for (Index i = 0; i < data_.size(); ++i) {
    Residue& v = data_.data()[i];
    if (v >= q) v -= q;
  }
  return *this;
}

void FpMatrix::axpy(Residue s, const FpMatrix& b) {
  check_same(*this, b, "FpMatrix axpy");
  s %= static_cast<Residue>(p_);
  if (s < 0) s += p_;
  if (s == 0) return;
  data_ += s * b.data_;
  reduce_in_place(data_, p_);
}

FpMatrix hstack(const std::vector<FpMatrix>& parts, std::uint32_t p, Index rows) {
  Index cols = 0;
  for (const auto& m : parts) {
    if (m.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += m.cols();
  }
  FpMatrix out(p, rows, cols);
  Index c = 0;
  for (const auto& m : parts) {
    out.set_block(0, c, m);
    c += m.cols();
  }
  return out;
}

FpMatrix vstack(const std::vector<FpMatrix>& parts, std::uint32_t p, Index cols) {
  Index rows = 0;
  for (const auto& m : parts) {
    if (m.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += m.rows();
  }
  FpMatrix out(p, rows, cols);
  Index r = 0;
  for (const auto& m : parts) {
    out.set_block(r, 0, m);
    r += m.rows();
  }
  return out;
}

FpMatrix block_diagonal(const std::vector<FpMatrix>& parts, std::uint32_t p) {
  Index rows = 0, cols = 0;
  for (const auto& m : parts) {
    rows += m.rows();
    cols += m.cols();
  }
  FpMatrix out(p, rows, cols);
  Index r = 0, c = 0;
  for (const auto& m : parts) {
    out.set_block(r, c, m);
    r += m.rows();
    c += m.cols();
  }
  return out;
}

FpMatrix matrix_power(const FpMatrix& m, std::uint64_t e) {
  FpMatrix result = FpMatrix::identity(m.prime(), m.rows());
  FpMatrix base = m;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

RowEchelon row_echelon(const FpMatrix& m) {
  ResidueMatrix a = m.entries();
  auto pivots = eliminate(a, m.prime(), a.cols());
  ResidueMatrix top = a.topRows(static_cast<Index>(pivots.size()));
  return {FpMatrix(m.prime(), std::move(top)), std::move(pivots)};
}

std::size_t rank_fp(const FpMatrix& m) {
  ResidueMatrix a = m.rows() <= m.cols() ? m.entries() : ResidueMatrix(m.entries().transpose());
  return eliminate(a, m.prime(), a.cols()).size();
}

FpMatrix nullspace(const FpMatrix& a) {
  const std::uint32_t p = a.prime();
  const Index n = a.cols();
  RowEchelon re = row_echelon(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : re.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  FpMatrix basis(p, n, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Index f = free_cols[k];
    basis.set(f, static_cast<Index>(k), 1);
    for (std::size_t r = 0; r < re.pivots.size(); ++r)
      basis.set(re.pivots[r], static_cast<Index>(k), -re.reduced(static_cast<Index>(r), f));
  }
  return basis;
}

FpMatrix left_nullspace(const FpMatrix& a) { return nullspace(a.transpose()); }

bool SolveResult::consistent() const {
  return std::all_of(particular.begin(), particular.end(),
                     [](const auto& x) { return x.has_value(); });
}

FpMatrix SolveResult::solution_block() const {
  if (!consistent()) throw std::logic_error("solution_block: inconsistent system");
  std::vector<FpMatrix> cols;
  for (const auto& x : particular) cols.push_back(*x);
  return hstack(cols, nullspace.prime(), nullspace.rows());
}

SolveResult solve_fp(const FpMatrix& a, const FpMatrix& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("solve_fp: prime mismatch");
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_fp: shape mismatch");
  const std::uint32_t p = a.prime();
  const Index n = a.cols();
  ResidueMatrix aug(a.rows(), n + b.cols());
  aug << a.entries(), b.entries();
  auto pivots = eliminate(aug, p, n);
  SolveResult result;
  result.nullspace = nullspace(a);
  const Index rank = static_cast<Index>(pivots.size());
  for (Index j = 0; j < b.cols(); ++j) {
    bool ok = true;
    for (Index r = rank; r < aug.rows(); ++r)
      if (aug(r, n + j) != 0) { ok = false; break; }
    if (!ok) {
      result.particular.emplace_back(std::nullopt);
      continue;
    }
    FpMatrix x(p, n, 1);
    for (Index r = 0; r < rank; ++r) x.set(pivots[static_cast<std::size_t>(r)], 0, aug(r, n + j));
    result.particular.emplace_back(std::move(x));
  }
  return result;
}

FpMatrix column_space(const FpMatrix& m) {
  RowEchelon re = row_echelon(m.transpose());
  return re.reduced.transpose();
}

std::vector<Index> independent_columns(const FpMatrix& m) {
  ResidueMatrix a = m.entries();
  return eliminate(a, m.prime(), a.cols());
}

std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto sol = solve_fp(m, FpMatrix::identity(m.prime(), m.rows()));
  if (sol.nullspace.cols() != 0 || !sol.consistent()) return std::nullopt;
  return sol.solution_block();
}

Subspace::Subspace(std::uint32_t p, Index ambient) : p_(p), n_(ambient), rows_(0, ambient) {}

Subspace Subspace::span(const FpMatrix& generators) {
  Subspace s(generators.prime(), generators.rows());
  RowEchelon re = row_echelon(generators.transpose());
  s.rows_ = re.reduced.entries();
  s.pivots_ = std::move(re.pivots);
  return s;
}

FpMatrix Subspace::reduce(const FpMatrix& v) const {
  if (v.rows() != n_) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
  ResidueMatrix out = v.entries();
  const Residue q = p_;
  for (Index c = 0; c < out.cols(); ++c) {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const Residue f = out(pivots_[r], c);
      if (f == 0) continue;
      const Residue g = q - f;
      for (Index j = 0; j < n_; ++j) {
        const Residue x = rows_(static_cast<Index>(r), j);
        if (x != 0) out(j, c) = (out(j, c) + g * x) % q;
      }
    }
  }
  return FpMatrix(p_, std::move(out));
}

bool Subspace::contains(const FpMatrix& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  return other.dim() == 0 || contains(other.basis());
}

FpMatrix Subspace::coordinates(const FpMatrix& v) const {
  if (!contains(v)) throw std::invalid_argument("Subspace::coordinates: vector not in subspace");
  FpMatrix c(p_, dim(), v.cols());
  for (std::size_t r = 0; r < pivots_.size(); ++r)
    for (Index j = 0; j < v.cols(); ++j) c.set(static_cast<Index>(r), j, v(pivots_[r], j));
  return c;
}

FpMatrix Subspace::basis() const {
  FpMatrix b(p_, n_, dim());
  for (Index r = 0; r < dim(); ++r)
    for (Index j = 0; j < n_; ++j) b.set(j, r, rows_(r, j));
  return b;
}

bool Subspace::insert(const FpMatrix& v) {
  FpMatrix red = reduce(v);
  if (red.is_zero()) return false;
  ResidueMatrix stacked(rows_.rows() + 1, n_);
  stacked << rows_, red.entries().transpose();
  auto piv = eliminate(stacked, p_, n_);
  rows_ = stacked.topRows(static_cast<Index>(piv.size()));
  pivots_ = std::move(piv);
  return true;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.p_ == b.p_ && a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
}

FpMatrix extend_basis(const Subspace& sub, const FpMatrix& candidates) {
  Subspace acc = sub;
  std::vector<Index> picked;
  for (Index j = 0; j < candidates.cols(); ++j)
    if (acc.insert(candidates.col(j))) picked.push_back(j);
  return candidates.select_cols(picked);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.prime(), a.ambient());
  FpMatrix ba = a.basis();
  FpMatrix bb = b.basis();
  // x in a ∩ b  <=>  ba*u = bb*w
  FpMatrix joined = hstack({ba, bb.scaled(-1)}, a.prime(), a.ambient());
  FpMatrix ker = nullspace(joined);
  if (ker.cols() == 0) return Subspace(a.prime(), a.ambient());
  return Subspace::span(ba * ker.rows_range(0, ba.cols()));
}

CoordinateMap::CoordinateMap(const FpMatrix& basis) : basis_(basis) {
  rows_ = independent_columns(basis.transpose());
  if (static_cast<Index>(rows_.size()) != basis.cols())
    throw std::invalid_argument("CoordinateMap: basis columns are dependent");
  auto inv = inverse(basis.select_rows(rows_));
  inverse_ = *inv;
}

std::optional<FpMatrix> CoordinateMap::try_coordinates(const FpMatrix& v) const {
  if (v.rows() != basis_.rows()) throw std::invalid_argument("CoordinateMap: dimension mismatch");
  if (basis_.cols() == 0) {
    if (!v.is_zero()) return std::nullopt;
    return FpMatrix(v.prime(), 0, v.cols());
  }
  FpMatrix c = inverse_ * v.select_rows(rows_);
  if (!(basis_ * c == v)) return std::nullopt;
  return c;
}

FpMatrix CoordinateMap::coordinates(const FpMatrix& v) const {
  auto c = try_coordinates(v);
  if (!c) throw std::invalid_argument("CoordinateMap: vector outside the span");
  return *c;
}

FpMatrix flatten(const FpMatrix& m) {
  FpMatrix v(m.prime(), m.rows() * m.cols(), 1);
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) v.set(c * m.rows() + r, 0, m(r, c));
  return v;
}

FpMatrix unflatten(const FpMatrix& v, Index rows, Index cols) {
  FpMatrix m(v.prime(), rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m.set(r, c, v(c * rows + r, 0));
  return m;
}

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const Index nr = static_cast<Index>(rows.size());
  const Index nc = nr == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  IntMatrix m(nr, nc);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      BigInt acc = 0;
      for (Index k = 0; k < a.cols(); ++k)
        if (a(i, k) != 0 && b(k, j) != 0) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

IntMatrix integer_left_kernel(const IntMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  IntMatrix a(rows, cols + rows);
  a.leftCols(cols) = m;
  a.rightCols(rows).setZero();
  for (Index i = 0; i < rows; ++i) a(i, cols + i) = 1;

  // Unimodular row echelon on the left block.
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      Index best = -1;
      for (Index i = r; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        if (best < 0 || abs(a(i, c)) < abs(a(best, c))) best = i;
      }
      if (best < 0) break;
      if (best != r) a.row(best).swap(a.row(r));
      bool done = true;
      for (Index i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        BigInt q = a(i, c) / a(r, c);
        a.row(i) -= q * a.row(r);
        if (a(i, c) != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }

  IntMatrix kernel = a.bottomRightCorner(rows - r, rows);
  // Hermite-reduce the kernel basis so vectors stay short.
  const Index kr = kernel.rows();
  Index row = 0;
  for (Index c = 0; c < rows && row < kr; ++c) {
    for (;;) {
      Index best = -1;
      for (Index i = row; i < kr; ++i) {
        if (kernel(i, c) == 0) continue;
        if (best < 0 || abs(kernel(i, c)) < abs(kernel(best, c))) best = i;
      }
      if (best < 0) break;
      if (best != row) kernel.row(best).swap(kernel.row(row));
      bool done = true;
      for (Index i = row + 1; i < kr; ++i) {
        if (kernel(i, c) == 0) continue;
        BigInt q = kernel(i, c) / kernel(row, c);
        kernel.row(i) -= q * kernel.row(row);
        if (kernel(i, c) != 0) done = false;
      }
      if (!done) continue;
      if (kernel(row, c) < 0) kernel.row(row) *= BigInt(-1);
      for (Index i = 0; i < row; ++i) {
        BigInt q = kernel(i, c) / kernel(row, c);
        if (kernel(i, c) - q * kernel(row, c) < 0) q -= 1;
        if (q != 0) kernel.row(i) -= q * kernel.row(row);
      }
      ++row;
      break;
    }
  }
  return kernel;
}

}  // namespace itphi
