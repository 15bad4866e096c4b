#pragma once

// Modules over GF(p) for groups given by generator matrices.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgtk/chartab.hpp"
#include "cgtk/gf.hpp"

namespace cgtk {

class GModule {
 public:
  /// Throws DimensionMismatch, FieldMismatch or SingularMatrix unless the
  /// actions are square, invertible, of equal size and over one field.
  GModule(PrimeField f, std::size_t dim, std::vector<FMatrix> actions,
          std::vector<std::string> names = {});
  explicit GModule(std::vector<NamedMatrix> gens);

  const PrimeField& field() const noexcept { return f_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t ngens() const noexcept { return act_.size(); }
  const std::vector<FMatrix>& actions() const noexcept { return act_; }
  const FMatrix& action(std::size_t i) const { return act_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::string group_name;

 private:
  PrimeField f_;
  std::size_t dim_;
  std::vector<FMatrix> act_;
  std::vector<std::string> names_;
};

/// Generator-set file with an optional leading "group <name>" line.
GModule read_module(std::istream& in);
void write_module(std::ostream& out, const GModule& m);

/// Echelonized basis of the smallest invariant subspace containing v.
/// Throws PreconditionError for the zero vector.
std::vector<Vec> spin(const GModule& m, const Vec& v);
/// Same with several seed vectors.
std::vector<Vec> spin_all(const GModule& m, const std::vector<Vec>& vs);

/// Dual module, g -> (g^-1)^T.
GModule dual(const GModule& m);
GModule direct_sum(const GModule& a, const GModule& b);
/// Kronecker-product actions. Throws FieldMismatch or DimensionMismatch
/// (generator counts differ).
GModule tensor_product(const GModule& a, const GModule& b);
/// Module for the subgroup generated by the given words in m's generators.
GModule restrict_module(const GModule& m, const std::vector<GenWord>& words);
/// Action of m on an invariant subspace with the given echelon basis.
GModule submodule_action(const GModule& m, const std::vector<Vec>& basis);

struct MeataxeOptions {
  std::uint64_t seed = 1;
  std::size_t max_trials = 256;
  std::size_t words_per_element = 4;
  std::size_t max_word_length = 5;
};

struct MeataxeResult {
  enum class Verdict { irreducible, reducible, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  /// Proper nonzero invariant subspace when reducible.
  std::vector<Vec> submodule;
  std::size_t trials = 0;
  std::string detail;
};

/// Norton's irreducibility test on seeded random algebra elements (sums of
/// random generator words). Deterministic for fixed options.
MeataxeResult meataxe_irreducible(const GModule& m, const MeataxeOptions& opt = {});

/// Standard-basis isomorphism test. Returns T with T^-1 * b(g) * T = a(g)
/// for every generator g. An empty result proves non-isomorphism when both
/// modules are irreducible. Throws PreconditionError when generator counts
/// or fields differ and BudgetExceeded when more than `candidate_budget`
/// seed vectors would have to be tried.
std::optional<FMatrix> module_isomorphism(const GModule& a, const GModule& b,
                                          const MeataxeOptions& opt = {},
                                          std::size_t candidate_budget = 1u << 16);

/// Embedding of Q(zeta_n) values into GF(p) used by idempotent_project.
std::string embedding_description(const PrimeField& f, unsigned conductor);

/// Image of the central idempotent e_chi = chi(1)/|G| sum_g chi(g^-1) g on a
/// permutation module. The module's actions must be permutation matrices;
/// chi's table classes must follow `cl` (which must carry class orbits).
/// Throws PreconditionError when p divides |G| or chi's conductor does not
/// divide p-1, BudgetExceeded when |G| > element_budget.
std::vector<Vec> idempotent_project(const GModule& perm_module, const ClassFunction& chi,
                                    const ClassList& cl, std::size_t element_budget = 1000000);

}  // namespace cgtk
