#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgtk/classes.hpp"
#include "cgtk/cyclotomic.hpp"

namespace cgtk {

struct CharacterTable {
  std::string name;
  BigInt order = 1;
  /// Every value lies in Q(zeta_conductor).
  unsigned conductor = 1;
  std::vector<ClassRecord> classes;
  /// chars[i][k]: value of the i-th irreducible on class k.
  std::vector<std::vector<Cyclotomic>> chars;

  /// Throws NotFound.
  std::size_t class_index(const std::string& name) const;
};

// JSON schema:
//   { "name": "...", "order": "<decimal>", "conductor": n,
//     "classes": [{ "name", "order", "centralizer", "powermaps": {"2": "2a"} }],
//     "chars": [[v, ...], ...] }
// with v an integer, a rational string, or {"coeffs": {"k": "a/b"}} meaning
// the sum of a/b * zeta_n^k. Class sizes are |G| / centralizer.
CharacterTable parse_character_table(const std::string& json_text);
CharacterTable read_character_table(std::istream& in);
void write_character_table(std::ostream& out, const CharacterTable& t);

/// Class data and characters derived from a computed class list.
CharacterTable table_from_classes(const ClassList& cl,
                                  std::vector<std::vector<Cyclotomic>> chars = {});

struct TableReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Class-size and power-map consistency, degree sum, and both
/// orthogonality relations. Each failure names the offending indices.
TableReport verify_table(const CharacterTable& t);

struct ClassFunction {
  std::shared_ptr<const CharacterTable> table;
  std::vector<Cyclotomic> values;
};

ClassFunction irreducible(const std::shared_ptr<const CharacterTable>& t, std::size_t i);
ClassFunction trivial_character(const std::shared_ptr<const CharacterTable>& t);

/// (1/|G|) sum_K |K| f(K) conj(g(K)). Throws PreconditionError when the
/// functions belong to different tables.
Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& g);
/// Inner products with every irreducible of the owning table.
std::vector<Cyclotomic> decompose(const ClassFunction& f);

/// Number of fixed cosets of H per class, |C_G(x)| |x^G n H| / |H|. The
/// table's classes must be those of `cl` in the same order; `cl` must carry
/// its class orbits. Throws BudgetExceeded when |H| > element_budget.
ClassFunction permutation_character(const BSGS& g, const BSGS& h, const ClassList& cl,
                                    const std::shared_ptr<const CharacterTable>& t,
                                    std::size_t element_budget = 1u << 22);

/// fusion[k] is the G-class of H-class k; unset entries are missing.
using Fusion = std::vector<std::optional<std::size_t>>;

/// Lines "Hclass -> Gclass"; '#' comments allowed.
Fusion read_fusion(std::istream& in, const CharacterTable& h, const CharacterTable& g);

/// Throws PreconditionError on a partial fusion.
ClassFunction restrict_with_fusion(const ClassFunction& chi,
                                   const std::shared_ptr<const CharacterTable>& h,
                                   const Fusion& fusion);

struct CompatiblePair {
  /// Character indices with repetition, nondecreasing.
  std::vector<std::size_t> a_chars, g_chars;
  bool operator==(const CompatiblePair&) const = default;
};

/// All pairs of degree-N character sums of A and G with equal restrictions
/// to H, in lexicographic order of (a_chars, g_chars). Throws
/// BudgetExceeded if either side has more than `max_sums` sums of degree N.
std::vector<CompatiblePair> compatible_pairs(const CharacterTable& a, const CharacterTable& g,
                                             const CharacterTable& h, const Fusion& fusion_a,
                                             const Fusion& fusion_g, std::uint64_t degree,
                                             bool multiplicity_free,
                                             std::size_t max_sums = 1u << 20);

/// Classes on which every irreducible is real.
std::vector<std::size_t> real_classes(const CharacterTable& t);

/// sum over (i,k,j) of |H|^2 / (|C(z_i)| |C(u_k)| |C(t_j)|) *
/// sum_psi psi(z_i) psi(u_k) psi(t_j) / psi(1). Throws PreconditionError
/// for invalid or overlapping z/u sets and Error for a non-rational total.
Rational thompson_r(const CharacterTable& h, const std::vector<std::size_t>& z_classes,
                    const std::vector<std::size_t>& u_classes,
                    const std::vector<std::size_t>& t_classes);

/// r_z * cu + r_u * cz. Throws PreconditionError on negative input and
/// Error when the result is not an integer.
BigInt thompson_order(const Rational& r_z, const Rational& r_u, const BigInt& cu,
                      const BigInt& cz);

struct InvolutionTerm {
  Rational r;       // pairs (x, y) in z^G x u^G whose product powers to w
  BigInt centralizer;  // |C_G(w)|
};

/// sum_w r_w |C(z)| |C(u)| / |C(w)| over all involution classes w; equals
/// thompson_order when only z and u occur.
BigInt thompson_order_general(const std::vector<InvolutionTerm>& terms, const BigInt& cz,
                              const BigInt& cu);

struct PrintedFactorization {
  std::string label;
  BigInt value;
  std::string text;
  bool matches = false;
};

struct ThompsonIdentityReport {
  BigInt order;
  std::string factorization;
  std::vector<PrintedFactorization> printed;
  /// Printed factorizations disagree with each other.
  bool printed_conflict = false;
};

// JSON: {"r_z": "...", "r_u": "...", "centralizer_u": {"2": 19, ...},
//        "centralizer_z": {...}, "printed": [{"label", "factorization": {...}}]}
/// Evaluates thompson_order and compares with each printed factorization.
ThompsonIdentityReport thompson_identity_check(const std::string& json_text);

}  // namespace cgtk
