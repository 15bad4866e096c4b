#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cgtk/gf.hpp"
#include "cgtk/perm.hpp"
#include "cgtk/word.hpp"

namespace cgtk {

struct Presentation {
  std::vector<std::string> gens;
  std::vector<GenWord> relators;
  /// Source text of each relator, for reports.
  std::vector<std::string> relator_text;
  std::vector<GenWord> subgroup;

  std::size_t gen_index(const std::string& name) const;
  void add_relator(GenWord w, std::string text = {});
};

/// Word syntax: generator names, `1`, `x^n`, `x^-1`, `(u v)^3`, commutators
/// `(x,y)` and `comm(x,y)` meaning x^-1 y^-1 x y, conjugation `x^y` meaning
/// y^-1 x y. Whitespace, `*` and `.` multiply.
GenWord parse_word(const std::string& text, const std::vector<std::string>& gens);

/// `w1 = w2 = ... = wk` yields the relators wi * wk^-1 for i < k; a lone word
/// is itself a relator.
std::vector<GenWord> parse_relation(const std::string& text, const std::vector<std::string>& gens);

// Presentation file: `gens: a b c`, then `rel:` lines (several relations may
// be separated by ';') and optional `sub:` lines with subgroup generators.
Presentation read_presentation(std::istream& in);
Presentation parse_presentation(const std::string& text);
void write_presentation(std::ostream& out, const Presentation& p);

using GroupElement = std::variant<FMatrix, Permutation>;

struct RelatorResult {
  std::size_t index;
  std::string text;
  bool pass;
};

struct VerifyReport {
  bool pass = true;
  std::vector<RelatorResult> results;
};

/// Evaluates every relator on the images (one per generator). Throws
/// PreconditionError on a wrong image count or mixed element kinds.
VerifyReport verify_relations(const Presentation& pres, const std::vector<GroupElement>& images);

enum class TcStrategy { HLT, Felsch };

struct TcOptions {
  /// Maximum number of coset rows held at once.
  std::size_t max_cosets = 1'000'000;
  TcStrategy strategy = TcStrategy::HLT;
  /// HLT: run a lookahead pass and compact the table every N definitions.
  std::size_t compact_every = 100'000;
};

class CosetTable {
 public:
  bool closed = false;
  std::size_t ngens = 0;
  /// Diagnostics.
  std::size_t defined = 0, killed = 0, max_active = 0, active = 0;

  std::size_t index() const noexcept { return closed ? rows_ : active; }
  /// Image of 0-based coset c under generator g (inverse when `inverse`).
  std::uint32_t image(std::size_t c, std::size_t g, bool inverse = false) const;

  /// Permutation-file style dump: one PERM block of generator images.
  void write(std::ostream& out) const;

 private:
  friend class ToddCoxeter;
  std::size_t rows_ = 0;
  std::vector<std::uint32_t> data_;  // rows_ x 2*ngens, 0-based cosets
};

/// Coset enumeration of the subgroup generated by `subgroup` (falls back to
/// pres.subgroup when empty). A full enumeration ends with the table
/// standardized; hitting the cap returns closed = false with diagnostics.
CosetTable todd_coxeter(const Presentation& pres, const std::vector<GenWord>& subgroup,
                        const TcOptions& opt = {});

/// One permutation per generator; throws PreconditionError for an open
/// table and Error if a relator fails on the produced permutations.
std::vector<Permutation> coset_action(const CosetTable& table, const Presentation& pres);

struct LookupOptions {
  std::size_t max_len = 12;
  std::size_t node_budget = 1u << 22;
};

/// Shortlex-least word (letters ordered a, a^-1, b, b^-1, ...) evaluating
/// to `target`. Throws PreconditionError if target is not in G and NotFound
/// if no word of length <= max_len exists within the node budget.
GenWord lookup_word(const BSGS& g, const std::vector<Permutation>& gens,
                    const Permutation& target, const LookupOptions& opt = {});

}  // namespace cgtk
