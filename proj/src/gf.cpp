#include "cgtk/gf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace cgtk {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p >= (1ull << 32) || !is_prime_u64(p))
    throw PreconditionError("field modulus " + std::to_string(p) +
                            " is not a word-size prime");
  p_ = static_cast<Residue>(p);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  std::uint64_t r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<Residue>(r);
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw PreconditionError("inverse of zero in GF(p)");
  return pow(a, p_ - 2);
}

Residue PrimeField::primitive_root() const {
  if (p_ == 2) return 1;
  std::uint64_t m = p_ - 1;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      primes.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) primes.push_back(m);
  for (Residue g = 2; g < p_; ++g) {
    bool ok = true;
    for (auto q : primes)
      if (pow(g, (p_ - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

// ---------------------------------------------------------------------------

FMatrix::FMatrix(PrimeField f, std::size_t rows, std::size_t cols)
    : f_(f), r_(rows), c_(cols), a_(rows * cols, 0) {}

FMatrix::FMatrix(PrimeField f, std::size_t rows, std::size_t cols,
                 std::vector<std::int64_t> entries)
    : f_(f), r_(rows), c_(cols), a_(rows * cols) {
  if (entries.size() != rows * cols)
    throw DimensionMismatch("expected " + std::to_string(rows * cols) +
                            " entries, got " + std::to_string(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) a_[i] = f.reduce(entries[i]);
}

FMatrix FMatrix::identity(PrimeField f, std::size_t n) {
  return scalar(f, n, 1);
}

FMatrix FMatrix::scalar(PrimeField f, std::size_t n, Residue s) {
  FMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = s % f.p();
  return m;
}

FMatrix FMatrix::from_rows(PrimeField f, const std::vector<Vec>& rows,
                           std::size_t cols) {
  FMatrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + i * cols);
  }
  return m;
}

FMatrix FMatrix::block_diagonal(const std::vector<FMatrix>& blocks) {
  if (blocks.empty()) throw PreconditionError("no blocks");
  std::size_t n = 0, m = 0;
  for (const auto& b : blocks) {
    if (!(b.field() == blocks[0].field())) throw FieldMismatch("block fields differ");
    n += b.rows();
    m += b.cols();
  }
  FMatrix out(blocks[0].field(), n, m);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.a_[(r0 + i) * m + c0 + j] = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

bool FMatrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (a_[i * c_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

bool FMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Residue x) { return x == 0; });
}

FMatrix FMatrix::transpose() const {
  FMatrix t(f_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t.a_[j * r_ + i] = a_[i * c_ + j];
  return t;
}

FMatrix FMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                           std::size_t nc) const {
  if (r0 + nr > r_ || c0 + nc > c_) throw DimensionMismatch("submatrix out of range");
  FMatrix s(f_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) s.a_[i * nc + j] = a_[(r0 + i) * c_ + c0 + j];
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_field(const FMatrix& a, const FMatrix& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatch("GF(" + std::to_string(a.field().p()) + ") vs GF(" +
                        std::to_string(b.field().p()) + ")");
}

}  // namespace

FMatrix mat_mul(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " * " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  const std::uint64_t p = a.field().p();
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  std::vector<std::uint64_t> acc(m);
  FMatrix c(a.field(), n, m);
  // Products of residues below 2^16 can be summed many times in 64 bits.
  const std::size_t flush = p < (1u << 16) ? (1u << 30) / (p * p + 1) + 1 : 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t pending = 0;
    for (std::size_t t = 0; t < k; ++t) {
      std::uint64_t x = a(i, t);
      if (x == 0) continue;
      auto brow = b.row(t);
      for (std::size_t j = 0; j < m; ++j) acc[j] += x * brow[j];
      if (++pending >= flush) {
        for (auto& v : acc) v %= p;
        pending = 0;
      }
    }
    auto crow = c.row_mut(i);
    for (std::size_t j = 0; j < m; ++j) crow[j] = static_cast<Residue>(acc[j] % p);
  }
  return c;
}

FMatrix mat_add(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("mat_add shape mismatch");
  FMatrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c.set(i, j, a.field().add(a(i, j), b(i, j)));
  return c;
}

FMatrix mat_sub(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("mat_sub shape mismatch");
  FMatrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c.set(i, j, a.field().sub(a(i, j), b(i, j)));
  return c;
}

FMatrix mat_scale(const FMatrix& a, Residue s) {
  FMatrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.field().mul(a(i, j), s));
  return c;
}

FMatrix kronecker(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  const auto& f = a.field();
  FMatrix c(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Residue x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b(k, l)));
    }
  return c;
}

std::vector<std::size_t> row_reduce(FMatrix& a) {
  const auto& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r) {
      auto x = a.row_mut(piv), y = a.row_mut(r);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    auto pr = a.row_mut(r);
    Residue s = f.inv(pr[c]);
    for (auto& v : pr) v = f.mul(v, s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      Residue m = a(i, c);
      if (m == 0) continue;
      auto ri = a.row_mut(i);
      for (std::size_t j = c; j < a.cols(); ++j)
        ri[j] = f.sub(ri[j], f.mul(m, pr[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const FMatrix& a) {
  FMatrix t = a;
  return row_reduce(t).size();
}

Residue determinant(const FMatrix& a) {
  if (!a.square()) throw DimensionMismatch("determinant of non-square matrix");
  const auto& f = a.field();
  FMatrix t = a;
  Residue det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && t(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      auto x = t.row_mut(piv), y = t.row_mut(c);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      det = f.neg(det);
    }
    det = f.mul(det, t(c, c));
    Residue s = f.inv(t(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      Residue m = f.mul(t(i, c), s);
      if (m == 0) continue;
      auto ri = t.row_mut(i);
      auto rc = t.row(c);
      for (std::size_t j = c; j < n; ++j) ri[j] = f.sub(ri[j], f.mul(m, rc[j]));
    }
  }
  return det;
}

FMatrix mat_inverse(const FMatrix& a) {
  if (!a.square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  FMatrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a(i, j));
    aug.set(i, n + i, 1);
  }
  auto piv = row_reduce(aug);
  std::size_t rk = 0;
  while (rk < piv.size() && piv[rk] < n) ++rk;
  if (rk < n) throw SingularMatrix(rk, n);
  return aug.submatrix(0, n, n, n);
}

FMatrix mat_pow(const FMatrix& a, std::int64_t e) {
  if (!a.square()) throw DimensionMismatch("power of non-square matrix");
  FMatrix base = e < 0 ? mat_inverse(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  return power_by_squaring(base, k, FMatrix::identity(a.field(), a.rows()),
                           [](const FMatrix& x, const FMatrix& y) { return mat_mul(x, y); });
}

std::vector<Vec> kernel(const FMatrix& a) {
  const auto& f = a.field();
  FMatrix t = a;
  auto piv = row_reduce(t);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(t(r, free));
    basis.push_back(std::move(v));
  }
  // Echelonize so that the basis is canonical.
  Subspace s(f, a.cols());
  for (auto& v : basis) s.add(v);
  return s.basis();
}

std::vector<Vec> left_kernel(const FMatrix& a) { return kernel(a.transpose()); }

Vec vec_mul(const PrimeField& f, std::span<const Residue> v, const FMatrix& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("vector length vs matrix rows");
  std::vector<std::uint64_t> acc(m.cols(), 0);
  const std::uint64_t p = f.p();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) acc[j] = (acc[j] + std::uint64_t(v[i]) * r[j]) % p;
  }
  return Vec(acc.begin(), acc.end());
}

std::uint64_t matrix_order(const FMatrix& a, std::uint64_t bound) {
  if (!a.square()) throw DimensionMismatch("order of non-square matrix");
  FMatrix x = a;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (x.is_identity()) return k;
    x = mat_mul(x, a);
  }
  throw BudgetExceeded("matrix order exceeds " + std::to_string(bound));
}

std::vector<FMatrix> dual_generators(const std::vector<FMatrix>& gens) {
  std::vector<FMatrix> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(mat_inverse(g).transpose());
  return out;
}

FMatrix evaluate_word(const GenWord& w, const std::vector<FMatrix>& images) {
  if (images.empty()) {
    if (w.empty()) throw PreconditionError("empty image list");
    throw PreconditionError("generator index out of range");
  }
  const auto& f = images[0].field();
  const std::size_t n = images[0].rows();
  for (const auto& m : images) {
    if (!m.square() || m.rows() != n) throw DimensionMismatch("images must be square of equal size");
    if (!(m.field() == f)) throw FieldMismatch("images over different fields");
  }
  return evaluate_word_generic(
      w, images, FMatrix::identity(f, n),
      [](const FMatrix& x, const FMatrix& y) { return mat_mul(x, y); },
      [](const FMatrix& x) { return mat_inverse(x); });
}

// ---------------------------------------------------------------------------

bool Subspace::reduce(Vec& v) const {
  bool zero = true;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Residue c = v[piv_[i]];
    if (c == 0) continue;
    const Vec& b = basis_[i];
    for (std::size_t j = piv_[i]; j < n_; ++j) v[j] = f_.sub(v[j], f_.mul(c, b[j]));
  }
  for (auto x : v)
    if (x) {
      zero = false;
      break;
    }
  return zero;
}

bool Subspace::add(Vec v) {
  if (v.size() != n_) throw DimensionMismatch("vector length vs subspace ambient dimension");
  if (reduce(v)) return false;
  std::size_t pc = 0;
  while (v[pc] == 0) ++pc;
  Residue s = f_.inv(v[pc]);
  for (auto& x : v) x = f_.mul(x, s);
  // Clear the new pivot column from existing rows.
  for (auto& b : basis_) {
    Residue c = b[pc];
    if (c == 0) continue;
    for (std::size_t j = pc; j < n_; ++j) b[j] = f_.sub(b[j], f_.mul(c, v[j]));
  }
  auto pos = std::lower_bound(piv_.begin(), piv_.end(), pc) - piv_.begin();
  piv_.insert(piv_.begin() + pos, pc);
  basis_.insert(basis_.begin() + pos, std::move(v));
  return true;
}

FMatrix Subspace::as_matrix() const { return FMatrix::from_rows(f_, basis_, n_); }

// ---------------------------------------------------------------------------

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

FMatrix read_gfmat_after_header(std::istream& in, const std::string& header) {
  std::istringstream hs(header);
  std::string tag;
  std::int64_t p = 0, r = 0, c = 0;
  if (!(hs >> tag >> p >> r >> c) || tag != "GFMAT" || r <= 0 || c <= 0)
    throw ParseError("bad GFMAT header: '" + header + "'");
  PrimeField f(static_cast<std::uint64_t>(p));
  std::vector<std::int64_t> entries;
  entries.reserve(static_cast<std::size_t>(r * c));
  std::string line;
  for (std::int64_t i = 0; i < r; ++i) {
    if (!next_content_line(in, line)) throw ParseError("GFMAT: missing row " + std::to_string(i + 1));
    std::istringstream ls(line);
    std::int64_t x;
    std::int64_t count = 0;
    while (ls >> x) {
      if (x < 0 || x >= p) throw ParseError("GFMAT: entry " + std::to_string(x) + " not in [0,p)");
      entries.push_back(x);
      ++count;
    }
    if (count != c) throw ParseError("GFMAT: row " + std::to_string(i + 1) + " has " +
                                     std::to_string(count) + " entries");
  }
  return FMatrix(f, static_cast<std::size_t>(r), static_cast<std::size_t>(c), std::move(entries));
}

}  // namespace

FMatrix read_gfmat(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("GFMAT: empty input");
  return read_gfmat_after_header(in, line);
}

void write_gfmat(std::ostream& out, const FMatrix& m) {
  out << "GFMAT " << m.field().p() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

std::vector<NamedMatrix> read_generator_set(std::istream& in) {
  std::vector<NamedMatrix> out;
  std::string line;
  while (next_content_line(in, line)) {
    std::istringstream ls(line);
    std::string tag, name;
    ls >> tag;
    if (tag == "group") continue;  // module-file header, handled by callers
    if (tag != "gen" || !(ls >> name)) throw ParseError("expected 'gen <name>', got '" + line + "'");
    out.push_back({name, read_gfmat(in)});
  }
  return out;
}

void write_generator_set(std::ostream& out, const std::vector<NamedMatrix>& g) {
  for (const auto& nm : g) {
    out << "gen " << nm.name << '\n';
    write_gfmat(out, nm.matrix);
  }
}

}  // namespace cgtk
