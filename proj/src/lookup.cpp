#include <algorithm>
#include <unordered_set>

#include "cgtk/fp.hpp"

namespace cgtk {

GenWord lookup_word(const BSGS& g, const std::vector<Permutation>& gens, const Permutation& target,
                    const LookupOptions& opt) {
  if (!g.contains(target)) throw PreconditionError("target is not a member of the group");
  if (target.is_identity()) return {};
  std::vector<Permutation> letters;
  for (const auto& s : gens) {
    if (s.degree() != target.degree()) throw DimensionMismatch("generator degree mismatch");
    letters.push_back(s);
    letters.push_back(s.inverse());
  }
  struct Node {
    Permutation elem;
    std::size_t parent;
    std::size_t letter;
    std::size_t depth;
  };
  std::vector<Node> nodes{{Permutation(target.degree()), 0, 0, 0}};
  std::unordered_set<Permutation, PermutationHash> seen{nodes[0].elem};
  auto word_of = [&](std::size_t i) {
    std::vector<Syllable> syl;
    for (; i != 0; i = nodes[i].parent) {
      std::size_t l = nodes[i].letter;
      syl.push_back({l / 2, (l % 2) ? -1 : 1});
    }
    std::reverse(syl.begin(), syl.end());
    return GenWord(syl);
  };
  // Breadth-first in shortlex order: the first visit of an element is by its
  // shortlex-least word because prefixes of least words are least.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth == opt.max_len) break;
    for (std::size_t l = 0; l < letters.size(); ++l) {
      Permutation y = nodes[i].elem * letters[l];
      if (!seen.insert(y).second) continue;
      nodes.push_back({std::move(y), i, l, nodes[i].depth + 1});
      if (nodes.back().elem == target) return word_of(nodes.size() - 1);
      if (nodes.size() > opt.node_budget)
        throw NotFound("no word found within node budget " + std::to_string(opt.node_budget));
    }
  }
  throw NotFound("no word of length <= " + std::to_string(opt.max_len) + " found");
}

}  // namespace cgtk
