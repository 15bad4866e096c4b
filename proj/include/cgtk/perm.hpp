#pragma once

// Permutations act on the right: (g * h) applies g first, then h.
// Points are 0-based internally and 1-based in text formats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cgtk/bigint.hpp"
#include "cgtk/gf.hpp"

namespace cgtk {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws PreconditionError unless `images` is a bijection of 0..n-1.
  explicit Permutation(std::vector<Point> images);

  /// Cycles given with 1-based points, e.g. {{1,2},{3,4,5}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);
  /// Parses cycle notation such as "(1,2)(3,4,5)" or "()"; throws ParseError.
  static Permutation parse_cycles(std::size_t degree, const std::string& text);

  std::size_t degree() const noexcept { return img_.size(); }
  Point operator[](Point i) const noexcept { return img_[i]; }
  const std::vector<Point>& images() const noexcept { return img_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  Permutation power(std::int64_t k) const;
  /// lcm of cycle lengths.
  std::uint64_t order() const;
  /// Sorted cycle lengths, fixed points included.
  std::vector<std::size_t> cycle_type() const;
  std::size_t fixed_points() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation& o) const { return img_ <=> o.img_; }

  std::string to_cycle_string() const;

 private:
  std::vector<Point> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

// Text format: "PERM n count", then `count` lines of n 1-based images.
std::vector<Permutation> read_permutations(std::istream& in);
void write_permutations(std::ostream& out, const std::vector<Permutation>& ps);

/// Options for turning matrix generators into permutations of vectors.
struct VectorActionOptions {
  /// When empty, all nonzero vectors are used, numbered by base-p value.
  std::vector<Vec> orbit_seeds;
  std::size_t point_budget = 1u << 24;
};

/// Permutation action of v -> v*M on the enumerated vectors. Without seeds,
/// point i is the nonzero vector whose base-p digits (first coordinate most
/// significant) spell i+1. With seeds, the union of their orbits is sorted
/// lexicographically.
std::vector<Permutation> matrix_to_permutation(const std::vector<FMatrix>& gens,
                                               const VectorActionOptions& opt = {});

/// Base and strong generating set with explicit transversals.
class BSGS {
 public:
  struct Level {
    Point base_point;
    std::vector<Point> orbit;
    /// transversal[k] maps base_point to orbit[k]; inverse stored alongside.
    std::vector<Permutation> transversal, transversal_inv;
    /// Position of each point in `orbit`, or -1.
    std::vector<std::int32_t> index;
    /// Strong generators fixing all earlier base points.
    std::vector<std::size_t> gens;
  };

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& strong_generators() const noexcept { return sgens_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::vector<Point> base() const;
  BigInt order() const;

  /// Residue of `g` after stripping through the chain, and the depth reached.
  std::pair<Permutation, std::size_t> sift(const Permutation& g) const;
  bool contains(const Permutation& g) const;

  /// Uniform random element (product of random coset representatives).
  Permutation random_element(std::mt19937_64& rng) const;

  /// All elements, in transversal-product order; throws when |G| > budget.
  std::vector<Permutation> elements(std::size_t budget = 1u << 22) const;

  Permutation identity() const { return Permutation(degree_); }

 private:
  friend class BsgsBuilder;
  std::size_t degree_ = 0;
  std::vector<Permutation> gens_, sgens_;
  std::vector<Level> levels_;
};

struct BsgsOptions {
  std::uint64_t seed = 1;
  /// Consecutive sifts that must succeed before the random phase stops.
  std::size_t random_stop = 40;
  /// Cap on stored transversal entries (points * orbit sizes), in points.
  std::size_t memory_budget = std::size_t(1) << 27;
};

/// Random Schreier–Sims followed by deterministic Schreier-generator
/// verification, so the order is exact for every seed.
BSGS bsgs_build(const std::vector<Permutation>& gens, std::size_t degree,
                const BsgsOptions& opt = {});

}  // namespace cgtk
