#include <algorithm>

#include "cgtk/perm.hpp"

namespace cgtk {

std::vector<Point> BSGS::base() const {
  std::vector<Point> b;
  for (const auto& l : levels_) b.push_back(l.base_point);
  return b;
}

BigInt BSGS::order() const {
  BigInt o = 1;
  for (const auto& l : levels_) o *= l.orbit.size();
  return o;
}

std::pair<Permutation, std::size_t> BSGS::sift(const Permutation& g) const {
  if (g.degree() != degree_) throw DimensionMismatch("sift: degree mismatch");
  Permutation h = g;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& l = levels_[i];
    std::int32_t k = l.index[h[l.base_point]];
    if (k < 0) return {h, i};
    if (k > 0) h = h * l.transversal_inv[k];
  }
  return {h, levels_.size()};
}

bool BSGS::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [h, depth] = sift(g);
  return depth == levels_.size() && h.is_identity();
}

Permutation BSGS::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const auto& l = levels_[i];
    std::uniform_int_distribution<std::size_t> d(0, l.orbit.size() - 1);
    g = g * l.transversal[d(rng)];
  }
  return g;
}

std::vector<Permutation> BSGS::elements(std::size_t budget) const {
  if (order() > budget) throw BudgetExceeded("group order " + order().str() + " exceeds element budget");
  std::vector<Permutation> cur{Permutation(degree_)};
  for (std::size_t i = levels_.size(); i-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(cur.size() * levels_[i].orbit.size());
    for (const auto& g : cur)
      for (const auto& u : levels_[i].transversal) next.push_back(g * u);
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------

class BsgsBuilder {
 public:
  BsgsBuilder(const std::vector<Permutation>& gens, std::size_t degree, const BsgsOptions& opt)
      : opt_(opt) {
    b_.degree_ = degree;
    for (const auto& g : gens)
      if (g.degree() != degree) throw DimensionMismatch("generator degree mismatch");
    b_.gens_ = gens;
  }

  BSGS run() {
    for (const auto& g : b_.gens_)
      if (!g.is_identity()) absorb(g);
    random_phase();
    verify();
    return std::move(b_);
  }

 private:
  // Sifts g from `start` downward; returns residue and failing level.
  std::pair<Permutation, std::size_t> sift_from(Permutation h, std::size_t start) const {
    for (std::size_t i = start; i < b_.levels_.size(); ++i) {
      const auto& l = b_.levels_[i];
      std::int32_t k = l.index[h[l.base_point]];
      if (k < 0) return {h, i};
      if (k > 0) h = h * l.transversal_inv[k];
    }
    return {h, b_.levels_.size()};
  }

  // Adds a residue that fixes the first j base points but is not in G^(j).
  void add_strong(const Permutation& h, std::size_t j) {
    if (j == b_.levels_.size()) {
      Point moved = 0;
      while (h[moved] == moved) ++moved;
      BSGS::Level l;
      l.base_point = moved;
      b_.levels_.push_back(std::move(l));
    }
    b_.sgens_.push_back(h);
    std::size_t id = b_.sgens_.size() - 1;
    for (std::size_t i = 0; i <= j; ++i) {
      b_.levels_[i].gens.push_back(id);
      rebuild(i);
    }
  }

  void rebuild(std::size_t i) {
    auto& l = b_.levels_[i];
    const std::size_t n = b_.degree_;
    std::size_t stored_before = stored_ - l.orbit.size();
    l.orbit.assign(1, l.base_point);
    l.index.assign(n, -1);
    l.index[l.base_point] = 0;
    l.transversal.assign(1, Permutation(n));
    l.transversal_inv.assign(1, Permutation(n));
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      for (std::size_t gi : l.gens) {
        const auto& s = b_.sgens_[gi];
        Point q = s[l.orbit[k]];
        if (l.index[q] >= 0) continue;
        if ((stored_before + l.orbit.size() + 1) * n > opt_.memory_budget)
          throw BudgetExceeded("transversal storage exceeds memory budget");
        l.index[q] = static_cast<std::int32_t>(l.orbit.size());
        l.orbit.push_back(q);
        Permutation u = l.transversal[k] * s;
        l.transversal_inv.push_back(u.inverse());
        l.transversal.push_back(std::move(u));
      }
    }
    stored_ = stored_before + l.orbit.size();
  }

  bool absorb(const Permutation& g) {
    auto [h, j] = sift_from(g, 0);
    if (j == b_.levels_.size() && h.is_identity()) return false;
    add_strong(h, j);
    return true;
  }

  void random_phase() {
    if (b_.sgens_.empty()) return;
    std::mt19937_64 rng(opt_.seed);
    std::vector<Permutation> slots = b_.gens_;
    slots.erase(std::remove_if(slots.begin(), slots.end(),
                               [](const Permutation& p) { return p.is_identity(); }),
                slots.end());
    while (slots.size() < 10) slots.push_back(slots[slots.size() % std::max<std::size_t>(1, slots.size())]);
    Permutation acc(b_.degree_);
    auto step = [&] {
      std::uniform_int_distribution<std::size_t> d(0, slots.size() - 1);
      std::size_t s = d(rng), t = d(rng);
      while (t == s) t = d(rng);
      if (rng() & 1)
        slots[s] = slots[s] * slots[t];
      else
        slots[s] = slots[s] * slots[t].inverse();
      acc = acc * slots[s];
    };
    for (int i = 0; i < 50; ++i) step();
    std::size_t streak = 0;
    while (streak < opt_.random_stop) {
      step();
      if (absorb(acc))
        streak = 0;
      else
        ++streak;
    }
  }

  void verify() {
    std::size_t i = b_.levels_.size();
    while (i-- > 0) {
    restart:
      const auto& l = b_.levels_[i];
      for (std::size_t k = 0; k < l.orbit.size(); ++k) {
        for (std::size_t gi : l.gens) {
          const auto& s = b_.sgens_[gi];
          Point q = s[l.orbit[k]];
          Permutation h = l.transversal[k] * s * l.transversal_inv[l.index[q]];
          if (h.is_identity()) continue;
          auto [r, j] = sift_from(std::move(h), i + 1);
          if (j == b_.levels_.size() && r.is_identity()) continue;
          add_strong(r, j);
          i = j;
          goto restart;
        }
      }
    }
  }

  BSGS b_;
  BsgsOptions opt_;
  std::size_t stored_ = 0;
};

BSGS bsgs_build(const std::vector<Permutation>& gens, std::size_t degree, const BsgsOptions& opt) {
  return BsgsBuilder(gens, degree, opt).run();
}

}  // namespace cgtk
