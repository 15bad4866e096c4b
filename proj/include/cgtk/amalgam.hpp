#pragma once

// Double cosets of diagonal subgroups in block-diagonal groups
// GL(n1,p) x ... x GL(nk,p), and a staged exhaustive solver for block
// conjugators satisfying a commuting condition.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgtk/bigint.hpp"
#include "cgtk/gf.hpp"

namespace cgtk {

struct BlockGroupSpec {
  PrimeField field;
  std::vector<std::size_t> blocks;

  /// Throws PreconditionError on an empty shape or a zero block size.
  BlockGroupSpec(PrimeField f, std::vector<std::size_t> sizes);
  std::size_t dim() const;
  std::vector<std::size_t> offsets() const;
  BigInt order() const;
};

/// "BLOCKS p n1 n2 ..." with '#' comments.
BlockGroupSpec parse_block_spec(const std::string& text);
std::string format_block_spec(const BlockGroupSpec& s);

/// |GL(n, p)|.
BigInt gl_order(std::size_t n, std::uint64_t p);

struct DiagSubgroup {
  /// Throws DimensionMismatch, FieldMismatch, PreconditionError (entries off
  /// the block diagonal) or SingularMatrix.
  DiagSubgroup(const BlockGroupSpec& spec, std::vector<FMatrix> gens);

  BlockGroupSpec spec;
  std::vector<FMatrix> gens;

  /// The k-th diagonal block of a conforming matrix.
  static FMatrix block(const BlockGroupSpec& spec, const FMatrix& m, std::size_t k);
};

struct BlockPattern {
  std::vector<std::size_t> dims;
  /// nonzero[i][j]: block (i, j) has a nonzero entry.
  std::vector<std::vector<bool>> nonzero;

  std::string to_string() const;  // rows of 'X' and '.'
};

BlockPattern block_pattern(const FMatrix& m, const std::vector<std::size_t>& dims);

/// Double coset problem file: a BLOCKS line, then "subgroup H" and
/// "subgroup E" sections in generator-set format.
struct DoubleCosetProblem {
  BlockGroupSpec spec;
  DiagSubgroup h, e;
};
DoubleCosetProblem read_double_coset_problem(std::istream& in);

enum class CosetMethod { burnside, normal_form };

struct DoubleCosetOptions {
  std::size_t element_budget = 1000000;  // per subgroup
  std::uint64_t block_enumeration_budget = 10000000;  // p^(n^2) per block
};

/// Number of (h, e)-double cosets of the block group. Burnside counts
/// (1/|H||E|) sum [h ~ e^-1] |C(h)| blockwise, with conjugacy decided by
/// the ranks of f(A)^k over the irreducible factors f of the characteristic
/// polynomial. The normal-form method requires diagonal generators and a
/// generator of E of the form diag(w,1,...,1) (w primitive) on each block of
/// size > 1 and the identity elsewhere; the remaining group R = H x E' must
/// act trivially on GL blocks modulo those generators wherever it fixes the
/// scalar factors. Then the count is prod |GL(n_i)|/(p-1) times the index
/// of R's image in the scalar torus. Violations throw PreconditionError;
/// budgets throw BudgetExceeded.
BigInt double_coset_count(const BlockGroupSpec& spec, const DiagSubgroup& h, const DiagSubgroup& e,
                          CosetMethod method, const DoubleCosetOptions& opt = {});

/// Block slot of a conjugator template: zero, a constant or an unknown
/// scalar, each times the identity of the block size.
struct TemplateSlot {
  enum class Kind { zero, constant, unknown };
  Kind kind = Kind::zero;
  Residue value = 0;
  std::size_t unknown = 0;
};

struct ConjugatorTemplate {
  std::vector<std::size_t> dims;
  std::vector<std::vector<TemplateSlot>> slots;  // dims.size() square
  std::vector<std::string> unknown_names;
};

/// Assembles T for a full assignment.
FMatrix instantiate(const PrimeField& f, const ConjugatorTemplate& t, const std::vector<Residue>& values);

struct SolveStage {
  std::vector<std::size_t> unknowns;  // fixed at this stage, at most 6
  std::vector<std::pair<std::size_t, std::size_t>> equations;  // blocks of r f' - f' r
};

struct SolveResult {
  std::vector<std::vector<Residue>> assignments;
  std::optional<std::size_t> failed_stage;
  std::string detail;
};

/// All assignments with (r, T^-1 f T) = 1, found stage by stage with
/// earlier solutions substituted; each stage enumerates its unknowns in
/// lexicographic order 0..p-1. Stage equations must not depend on unknowns
/// of later stages (checked numerically at random completions; violations
/// throw PreconditionError). Survivors are re-checked on the full
/// condition.
SolveResult amalgam_solve(const PrimeField& f, const FMatrix& r, const FMatrix& fm,
                          const ConjugatorTemplate& tmpl, const std::vector<SolveStage>& plan,
                          std::uint64_t seed = 1);

struct AmalgamProblem {
  PrimeField field;
  FMatrix r, f;
  ConjugatorTemplate tmpl;
  std::vector<SolveStage> plan;
};

// JSON: {"p": 5, "dims": [1, 1], "r": [[...]], "f": [[...]],
//        "unknowns": ["x", "y"], "template": [[1, "x"], [0, "y"]],
//        "plan": [{"unknowns": ["x"], "equations": [[0, 0]]}, ...]}
// Template cells are constants (0 means a zero block) or unknown names.
AmalgamProblem parse_amalgam_problem(const std::string& json_text);
std::string amalgam_problem_json(const AmalgamProblem& pr);

}  // namespace cgtk
