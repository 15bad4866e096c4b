#pragma once

// Second cohomology of small explicit groups by dense cocycle linear
// algebra, and extensions assembled from relator tails.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgtk/fp.hpp"
#include "cgtk/modrep.hpp"
#include "cgtk/perm.hpp"

namespace cgtk {

/// Normalized 2-cochain f(x, y) in V, stored as table[x][y] with element 0
/// the identity.
using Cochain2 = std::vector<std::vector<Vec>>;

struct CocycleSpace {
  /// Group elements, identity first, in breadth-first order from the
  /// generators; words[i] spells elements[i].
  std::vector<Permutation> elements;
  std::vector<GenWord> words;
  /// Right action v -> v * matrices[i] of elements[i].
  std::vector<FMatrix> matrices;
  std::vector<Cochain2> cocycle_basis;
  std::vector<Cochain2> coboundary_basis;
  /// Cocycles whose classes form a basis of H^2.
  std::vector<Cochain2> representatives;
  std::size_t dim_z2 = 0, dim_b2 = 0;

  std::size_t dimension() const noexcept { return dim_z2 - dim_b2; }
  std::size_t index_of(const Permutation& g) const;
};

struct CohomOptions {
  std::size_t max_elements = 200;
  /// Bound on |G|^2 * dim V unknowns.
  std::size_t unknown_budget = 1u << 16;
};

/// Normalized 2-cocycles f(x,y) z + f(xy,z) = f(x,yz) + f(y,z) for the right
/// module `action`, whose generators act as the permutations `gens`.
/// Throws PreconditionError when the matrices do not define an action of
/// the permutation group, BudgetExceeded beyond the options.
CocycleSpace h2_bruteforce(const std::vector<Permutation>& gens, const GModule& action,
                           const CohomOptions& opt = {});

/// Coboundary of a normalized 1-cochain c: (x, y) -> c(x) y + c(y) - c(xy).
Cochain2 coboundary(const CocycleSpace& s, const std::vector<Vec>& c);
bool is_cocycle(const CocycleSpace& s, const Cochain2& f);

/// Presentation of G lifted to an extension: relators with module-valued
/// tails and the action of each base generator on the module generators.
struct TailedPresentation {
  Presentation base;
  std::vector<std::string> module_gens;
  /// Relator index -> tail word in module generators.
  std::map<std::size_t, GenWord> tails;
  /// (base generator, module generator) -> image word in module generators.
  std::map<std::pair<std::size_t, std::size_t>, GenWord> actions;
  /// Completeness flag from the file, when present.
  std::optional<bool> complete;
};

/// Presentation format plus `module: v1 ...`, `tail: <relator-index> <word>`,
/// `action: <gen> <v> = <word>` and `complete: true|false` lines. Relator
/// indices are 0-based over the parsed relators. Throws ParseError.
TailedPresentation read_tailed_presentation(std::istream& in);
void write_tailed_presentation(std::ostream& out, const TailedPresentation& tp);

/// Tails of each relator for the extension defined by cocycle f, with base
/// generator i mapped to the section of s.elements[gen_elements[i]].
TailedPresentation tails_from_cocycle(const CocycleSpace& s, const Cochain2& f, const Presentation& base,
                                      const std::vector<std::size_t>& gen_elements);

/// Single presentation on base and module generators: v^p, (vi, vj), the
/// supplied action relators g^-1 v g * word^-1, and each base relator times
/// its inverted tail. Throws PreconditionError for malformed tails.
Presentation extension_from_tails(const TailedPresentation& tp, std::size_t module_dim, std::uint64_t p);

}  // namespace cgtk
