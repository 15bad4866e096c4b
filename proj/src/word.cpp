#include "cgtk/word.hpp"

#include <algorithm>
#include <cstdlib>

namespace cgtk {

GenWord::GenWord(std::vector<Syllable> s) {
  for (const auto& x : s) push(x);
}

GenWord GenWord::letter(std::size_t gen, std::int64_t exp) {
  GenWord w;
  w.push({gen, exp});
  return w;
}

void GenWord::push(Syllable s) {
  if (s.exp == 0) return;
  if (!syl_.empty() && syl_.back().gen == s.gen) {
    syl_.back().exp += s.exp;
    if (syl_.back().exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back(s);
}

std::size_t GenWord::length() const noexcept {
  std::size_t n = 0;
  for (const auto& s : syl_) n += static_cast<std::size_t>(std::llabs(s.exp));
  return n;
}

std::size_t GenWord::max_generator() const noexcept {
  std::size_t m = 0;
  for (const auto& s : syl_) m = std::max(m, s.gen);
  return m;
}

GenWord GenWord::inverse() const {
  GenWord w;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
    w.push({it->gen, -it->exp});
  return w;
}

GenWord GenWord::power(std::int64_t k) const {
  GenWord base = k < 0 ? inverse() : *this;
  GenWord out;
  for (std::int64_t i = 0; i < std::llabs(k); ++i) out *= base;
  return out;
}

std::vector<std::pair<std::size_t, int>> GenWord::letters() const {
  std::vector<std::pair<std::size_t, int>> out;
  out.reserve(length());
  for (const auto& s : syl_) {
    int sign = s.exp < 0 ? -1 : 1;
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i)
      out.emplace_back(s.gen, sign);
  }
  return out;
}

GenWord& GenWord::operator*=(const GenWord& o) {
  for (const auto& s : o.syl_) push(s);
  return *this;
}

std::string GenWord::to_string(const std::vector<std::string>& names) const {
  if (syl_.empty()) return "1";
  std::string out;
  for (const auto& s : syl_) {
    if (!out.empty()) out += ' ';
    out += s.gen < names.size() ? names[s.gen] : "g" + std::to_string(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

GenWord commutator(const GenWord& x, const GenWord& y) {
  return x.inverse() * y.inverse() * x * y;
}

GenWord conjugate(const GenWord& x, const GenWord& by) {
  return by.inverse() * x * by;
}

}  // namespace cgtk
