#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cgtk/error.hpp"

namespace cgtk {

struct Syllable {
  std::size_t gen;
  std::int64_t exp;
  bool operator==(const Syllable&) const = default;
};

/// Word in group generators, stored as (generator, nonzero exponent)
/// syllables. The empty word is the identity.
class GenWord {
 public:
  GenWord() = default;
  explicit GenWord(std::vector<Syllable> s);

  static GenWord letter(std::size_t gen, std::int64_t exp = 1);

  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }
  /// Sum of |exponent| over syllables.
  std::size_t length() const noexcept;
  std::size_t max_generator() const noexcept;

  GenWord inverse() const;
  GenWord power(std::int64_t k) const;

  /// Flattened letters: generator index with sign (+1/-1), expanded.
  std::vector<std::pair<std::size_t, int>> letters() const;

  GenWord& operator*=(const GenWord& o);
  friend GenWord operator*(GenWord a, const GenWord& b) { return a *= b; }
  bool operator==(const GenWord&) const = default;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void push(Syllable s);
  std::vector<Syllable> syl_;
};

GenWord commutator(const GenWord& x, const GenWord& y);
GenWord conjugate(const GenWord& x, const GenWord& by);

/// Repeated-squaring power for any associative product with identity.
template <class T, class Mul>
T power_by_squaring(T base, std::uint64_t e, T identity, Mul mul) {
  T acc = std::move(identity);
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

/// Left-to-right evaluation of a word; `inv` is called once per generator
/// that occurs with a negative exponent.
template <class T, class Mul, class Inv>
T evaluate_word_generic(const GenWord& w, const std::vector<T>& images,
                        const T& identity, Mul mul, Inv inv) {
  std::vector<const T*> inverse_ptr(images.size(), nullptr);
  std::vector<T> inverses;
  inverses.reserve(images.size());
  T acc = identity;
  for (const auto& s : w.syllables()) {
    if (s.gen >= images.size())
      throw PreconditionError("generator index " + std::to_string(s.gen) +
                              " out of range (" +
                              std::to_string(images.size()) + " images)");
    const T* base = &images[s.gen];
    if (s.exp < 0) {
      if (!inverse_ptr[s.gen]) {
        inverses.push_back(inv(images[s.gen]));
        inverse_ptr[s.gen] = &inverses.back();
      }
      base = inverse_ptr[s.gen];
    }
    std::uint64_t e = s.exp < 0 ? static_cast<std::uint64_t>(-s.exp)
                                : static_cast<std::uint64_t>(s.exp);
    acc = mul(acc, power_by_squaring(*base, e, identity, mul));
  }
  return acc;
}

}  // namespace cgtk
