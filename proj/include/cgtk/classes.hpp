#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgtk/perm.hpp"

namespace cgtk {

struct ClassRecord {
  std::string name;
  std::optional<Permutation> rep;  // absent for transcribed class data
  std::string rep_text;             // free-form representative (e.g. a word)
  std::uint64_t element_order = 1;
  BigInt size = 1;
  BigInt centralizer = 1;
  /// prime -> index of the class containing rep^prime.
  std::map<std::uint64_t, std::size_t> powermap;
};

class ClassList {
 public:
  BigInt group_order = 1;
  std::vector<ClassRecord> classes;
  /// False when the orbit budget stopped enumeration early.
  bool complete = false;
  std::vector<std::uint64_t> primes;

  /// Index of the class containing g; requires the stored orbits.
  std::optional<std::size_t> class_of(const Permutation& g) const;
  bool has_orbits() const noexcept { return static_cast<bool>(orbits_); }

 private:
  friend ClassList conjugacy_classes(const BSGS&, std::uint64_t, std::size_t);
  struct Orbits;
  std::shared_ptr<const Orbits> orbits_;
};

/// Random elements, power closure and conjugation-orbit hashing until the
/// class sizes sum to |G|. Classes are sorted by (order, size, canonical
/// representative) where the canonical representative is the
/// lexicographically least element of its class. Power maps are filled for
/// every prime dividing |G|. When a class orbit would exceed `orbit_budget`
/// the list is returned with complete = false.
ClassList conjugacy_classes(const BSGS& g, std::uint64_t seed,
                            std::size_t orbit_budget = 1u << 22);

/// Image class index of rep^q for each class; throws PreconditionError for
/// incomplete lists.
std::vector<std::size_t> class_power_map(const ClassList& classes, const BSGS& g,
                                         std::uint64_t q);

std::vector<std::uint64_t> prime_divisors(const BigInt& n);

// Class table text: "# primes p1 p2 ..." header, then per class
// "name order class_size centralizer pmap_p1 pmap_p2 ...". A trailing
// "# rep ..." comment is kept as the representative text.
ClassList read_class_table(std::istream& in);
void write_class_table(std::ostream& out, const ClassList& cl);

struct ClassDataReport {
  bool ok = true;
  BigInt size_sum = 0;
  std::vector<std::string> failures;
};

/// Consistency of class data alone: sizes sum to |G|, size*centralizer = |G|,
/// power-map images have order ord/gcd(ord, q).
ClassDataReport check_class_data(const ClassList& cl);

}  // namespace cgtk
