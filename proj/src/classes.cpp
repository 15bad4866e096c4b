#include "cgtk/classes.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cgtk {

struct ClassList::Orbits {
  std::unordered_map<Permutation, std::size_t, PermutationHash> member;
};

std::optional<std::size_t> ClassList::class_of(const Permutation& g) const {
  if (!orbits_) throw PreconditionError("class list carries no orbit data");
  auto it = orbits_->member.find(g);
  if (it == orbits_->member.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> prime_divisors(const BigInt& n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    out.push_back(static_cast<std::uint64_t>(p));
  }
  return out;
}

namespace {

std::string class_name(std::uint64_t order, std::size_t k, std::size_t count) {
  if (count == 1) return std::to_string(order);
  return std::to_string(order) + "_" + std::to_string(k);
}

void assign_names(std::vector<ClassRecord>& cs) {
  std::map<std::uint64_t, std::size_t> count, seen;
  for (const auto& c : cs) ++count[c.element_order];
  for (auto& c : cs) c.name = class_name(c.element_order, ++seen[c.element_order], count[c.element_order]);
}

}  // namespace

ClassList conjugacy_classes(const BSGS& g, std::uint64_t seed, std::size_t orbit_budget) {
  ClassList out;
  out.group_order = g.order();
  out.primes = prime_divisors(out.group_order);
  auto orbits = std::make_shared<ClassList::Orbits>();
  auto& member = orbits->member;

  std::vector<Permutation> conj, conj_inv;
  for (const auto& s : g.generators())
    if (!s.is_identity()) {
      conj.push_back(s);
      conj_inv.push_back(s.inverse());
    }

  struct Found {
    Permutation rep;
    std::vector<Permutation> elems;
  };
  std::vector<Found> found;
  BigInt total = 0;
  bool stopped = false;

  auto process = [&](const Permutation& x) {
    if (stopped || member.count(x)) return;
    Found f{x, {x}};
    std::unordered_map<Permutation, char, PermutationHash> local{{x, 0}};
    for (std::size_t i = 0; i < f.elems.size(); ++i) {
      for (std::size_t k = 0; k < conj.size(); ++k) {
        Permutation y = conj_inv[k] * f.elems[i] * conj[k];
        if (local.emplace(y, 0).second) {
          if (f.elems.size() >= orbit_budget) {
            stopped = true;
            return;
          }
          if (y < f.rep) f.rep = y;
          f.elems.push_back(std::move(y));
        }
      }
    }
    std::size_t id = found.size();
    for (const auto& e : f.elems) member.emplace(e, id);
    total += f.elems.size();
    found.push_back(std::move(f));
  };

  process(g.identity());
  std::mt19937_64 rng(seed);
  while (total < out.group_order && !stopped) {
    Permutation x = g.random_element(rng);
    std::uint64_t o = x.order();
    Permutation y = x;
    for (std::uint64_t k = 1; k < o && !stopped; ++k) {
      process(y);
      y = y * x;
    }
  }

  // Sort by (order, size, canonical representative).
  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> ord(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) ord[i] = found[i].rep.order();
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (ord[a] != ord[b]) return ord[a] < ord[b];
    if (found[a].elems.size() != found[b].elems.size())
      return found[a].elems.size() < found[b].elems.size();
    return found[a].rep < found[b].rep;
  });
  std::vector<std::size_t> newid(found.size());
  for (std::size_t i = 0; i < perm.size(); ++i) newid[perm[i]] = i;
  for (auto& [elem, id] : member) id = newid[id];

  for (std::size_t i : perm) {
    ClassRecord r;
    r.rep = found[i].rep;
    r.element_order = ord[i];
    r.size = found[i].elems.size();
    r.centralizer = out.group_order / r.size;
    out.classes.push_back(std::move(r));
  }
  assign_names(out.classes);
  out.complete = !stopped && total == out.group_order;
  out.orbits_ = orbits;
  if (out.complete) {
    for (auto q : out.primes) {
      auto pm = class_power_map(out, g, q);
      for (std::size_t i = 0; i < pm.size(); ++i) out.classes[i].powermap[q] = pm[i];
    }
  }
  return out;
}

std::vector<std::size_t> class_power_map(const ClassList& cl, const BSGS& g, std::uint64_t q) {
  if (!cl.complete) throw PreconditionError("power map requires a complete class list");
  std::vector<std::size_t> out;
  for (const auto& c : cl.classes) {
    if (!c.rep) throw PreconditionError("class " + c.name + " has no representative");
    Permutation y = c.rep->power(static_cast<std::int64_t>(q));
    if (!g.contains(y)) throw PreconditionError("representative outside the group");
    auto id = cl.class_of(y);
    if (!id) throw PreconditionError("power of " + c.name + " not in any listed class");
    out.push_back(*id);
  }
  return out;
}

// ---------------------------------------------------------------------------

ClassList read_class_table(std::istream& in) {
  ClassList cl;
  std::string line;
  std::vector<std::vector<std::string>> pending_maps;
  while (std::getline(in, line)) {
    std::string comment;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      comment = line.substr(hash + 1);
      line.erase(hash);
    }
    std::istringstream cs(comment);
    std::string w;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (cs >> w && w == "primes") {
        std::uint64_t p;
        while (cs >> p) cl.primes.push_back(p);
      }
      continue;
    }
    std::istringstream ls(line);
    ClassRecord r;
    std::string order, size, cent;
    if (!(ls >> r.name >> order >> size >> cent)) throw ParseError("class line: '" + line + "'");
    r.element_order = std::stoull(order);
    r.size = parse_bigint(size);
    r.centralizer = parse_bigint(cent);
    std::vector<std::string> maps;
    while (ls >> w) maps.push_back(w);
    if (maps.size() != cl.primes.size())
      throw ParseError("class " + r.name + ": expected " + std::to_string(cl.primes.size()) +
                       " power-map entries");
    if (cs >> w && w == "rep") {
      std::getline(cs, r.rep_text);
      auto b = r.rep_text.find_first_not_of(' ');
      r.rep_text = b == std::string::npos ? "" : r.rep_text.substr(b);
    }
    pending_maps.push_back(std::move(maps));
    cl.classes.push_back(std::move(r));
  }
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < cl.classes.size(); ++i) {
    if (!by_name.emplace(cl.classes[i].name, i).second)
      throw ParseError("duplicate class name " + cl.classes[i].name);
  }
  for (std::size_t i = 0; i < cl.classes.size(); ++i)
    for (std::size_t k = 0; k < cl.primes.size(); ++k) {
      auto it = by_name.find(pending_maps[i][k]);
      if (it == by_name.end())
        throw ParseError("class " + cl.classes[i].name + ": unknown power-map target " + pending_maps[i][k]);
      cl.classes[i].powermap[cl.primes[k]] = it->second;
    }
  for (const auto& c : cl.classes)
    if (c.element_order == 1) cl.group_order = c.centralizer;
  cl.complete = true;
  return cl;
}

void write_class_table(std::ostream& out, const ClassList& cl) {
  out << "# primes";
  for (auto p : cl.primes) out << ' ' << p;
  out << '\n';
  for (const auto& c : cl.classes) {
    out << c.name << ' ' << c.element_order << ' ' << c.size << ' ' << c.centralizer;
    for (auto p : cl.primes) {
      auto it = c.powermap.find(p);
      out << ' ' << (it == c.powermap.end() ? std::string("?") : cl.classes[it->second].name);
    }
    if (c.rep)
      out << "  # rep " << c.rep->to_cycle_string();
    else if (!c.rep_text.empty())
      out << "  # rep " << c.rep_text;
    out << '\n';
  }
}

ClassDataReport check_class_data(const ClassList& cl) {
  ClassDataReport r;
  for (const auto& c : cl.classes) {
    r.size_sum += c.size;
    if (c.size * c.centralizer != cl.group_order) {
      r.ok = false;
      r.failures.push_back("class " + c.name + ": size*centralizer != |G|");
    }
    for (const auto& [q, target] : c.powermap) {
      std::uint64_t expect = c.element_order / std::gcd(c.element_order, q);
      if (target >= cl.classes.size() || cl.classes[target].element_order != expect) {
        r.ok = false;
        r.failures.push_back("class " + c.name + ": " + std::to_string(q) + "-power image has wrong order");
      }
    }
  }
  if (r.size_sum != cl.group_order) {
    r.ok = false;
    r.failures.push_back("class sizes sum to " + r.size_sum.str() + ", not " + cl.group_order.str());
  }
  return r;
}

}  // namespace cgtk
