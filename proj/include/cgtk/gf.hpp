#pragma once

// Exact arithmetic and dense linear algebra over prime fields GF(p).
//
// Matrices act on row vectors from the right (v -> v * M), so a word
// g1 g2 evaluates to M(g1) * M(g2) and the action is a right action.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cgtk/error.hpp"
#include "cgtk/word.hpp"

namespace cgtk {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

bool is_prime_u64(std::uint64_t n);

class PrimeField {
 public:
  /// Throws PreconditionError unless p is a prime below 2^32.
  explicit PrimeField(std::uint64_t p);

  Residue p() const noexcept { return p_; }

  Residue reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t(a) + p_ - b);
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(std::uint64_t(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  /// Throws PreconditionError on zero.
  Residue inv(Residue a) const;

  /// Smallest generator of the multiplicative group.
  Residue primitive_root() const;

  bool operator==(const PrimeField&) const = default;

 private:
  Residue p_;
};

class FMatrix {
 public:
  FMatrix(PrimeField f, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p; throws DimensionMismatch on wrong count.
  FMatrix(PrimeField f, std::size_t rows, std::size_t cols,
          std::vector<std::int64_t> entries);

  static FMatrix identity(PrimeField f, std::size_t n);
  static FMatrix scalar(PrimeField f, std::size_t n, Residue s);
  static FMatrix from_rows(PrimeField f, const std::vector<Vec>& rows,
                           std::size_t cols);
  /// Block-diagonal assembly.
  static FMatrix block_diagonal(const std::vector<FMatrix>& blocks);

  const PrimeField& field() const noexcept { return f_; }
  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  bool square() const noexcept { return r_ == c_; }

  Residue operator()(std::size_t i, std::size_t j) const noexcept {
    return a_[i * c_ + j];
  }
  void set(std::size_t i, std::size_t j, Residue v) { a_[i * c_ + j] = v % f_.p(); }
  std::span<const Residue> row(std::size_t i) const {
    return {a_.data() + i * c_, c_};
  }
  std::span<Residue> row_mut(std::size_t i) { return {a_.data() + i * c_, c_}; }
  const std::vector<Residue>& data() const noexcept { return a_; }

  bool is_identity() const;
  bool is_zero() const;
  FMatrix transpose() const;
  FMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                    std::size_t nc) const;

  bool operator==(const FMatrix& o) const {
    return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }

 private:
  PrimeField f_;
  std::size_t r_, c_;
  std::vector<Residue> a_;
};

FMatrix mat_mul(const FMatrix& a, const FMatrix& b);
FMatrix mat_add(const FMatrix& a, const FMatrix& b);
FMatrix mat_sub(const FMatrix& a, const FMatrix& b);
FMatrix mat_scale(const FMatrix& a, Residue s);
/// Kronecker product a (x) b.
FMatrix kronecker(const FMatrix& a, const FMatrix& b);
/// Throws SingularMatrix carrying the rank found.
FMatrix mat_inverse(const FMatrix& a);
FMatrix mat_pow(const FMatrix& a, std::int64_t e);
std::size_t rank(const FMatrix& a);
Residue determinant(const FMatrix& a);

/// Echelonized basis of the right null space {x : a x = 0}.
std::vector<Vec> kernel(const FMatrix& a);
/// Echelonized basis of {v : v a = 0}.
std::vector<Vec> left_kernel(const FMatrix& a);

/// Row vector times matrix.
Vec vec_mul(const PrimeField& f, std::span<const Residue> v, const FMatrix& m);

/// Multiplicative order of an invertible matrix, searched up to `bound`.
std::uint64_t matrix_order(const FMatrix& a, std::uint64_t bound = 1u << 24);

/// Maps each g to (g^-1)^T; a homomorphism onto the dual representation.
std::vector<FMatrix> dual_generators(const std::vector<FMatrix>& gens);

/// Left-to-right product of generator powers; the empty word is I.
FMatrix evaluate_word(const GenWord& w, const std::vector<FMatrix>& images);

/// Row space kept in reduced row echelon form.
class Subspace {
 public:
  Subspace(PrimeField f, std::size_t dim) : f_(f), n_(dim) {}

  const PrimeField& field() const noexcept { return f_; }
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return piv_; }

  /// Reduces v against the basis in place; returns true if v became zero.
  bool reduce(Vec& v) const;
  bool contains(Vec v) const { return reduce(v); }
  /// Adds v if independent; returns true when the dimension grew.
  bool add(Vec v);

  FMatrix as_matrix() const;

 private:
  PrimeField f_;
  std::size_t n_;
  std::vector<Vec> basis_;  // RREF rows, sorted by pivot
  std::vector<std::size_t> piv_;
};

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> row_reduce(FMatrix& a);

// Text format: "GFMAT p rows cols" then `rows` lines of residues.
FMatrix read_gfmat(std::istream& in);
void write_gfmat(std::ostream& out, const FMatrix& m);

struct NamedMatrix {
  std::string name;
  FMatrix matrix;
};

/// Repeated blocks "gen <name>" + GFMAT. Blank lines and '#' comments skipped.
std::vector<NamedMatrix> read_generator_set(std::istream& in);
void write_generator_set(std::ostream& out, const std::vector<NamedMatrix>& g);

}  // namespace cgtk
