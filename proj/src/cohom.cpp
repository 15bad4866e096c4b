#include "cgtk/cohom.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cgtk {

std::size_t CocycleSpace::index_of(const Permutation& g) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == g) return i;
  throw PreconditionError("element is not in the group");
}

namespace {

struct Tables {
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::size_t> inv;
};

Tables multiplication_tables(const CocycleSpace& s) {
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  for (std::size_t i = 0; i < s.elements.size(); ++i) index.emplace(s.elements[i], i);
  const std::size_t n = s.elements.size();
  Tables t{std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)), std::vector<std::size_t>(n)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      t.mul[x][y] = index.at(s.elements[x] * s.elements[y]);
      if (t.mul[x][y] == 0) t.inv[x] = y;
    }
  return t;
}

Vec vadd(const PrimeField& f, Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], b[i]);
  return a;
}

Vec vsub(const PrimeField& f, Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.sub(a[i], b[i]);
  return a;
}

Vec flatten(const Cochain2& c) {
  Vec out;
  for (std::size_t x = 1; x < c.size(); ++x)
    for (std::size_t y = 1; y < c.size(); ++y) out.insert(out.end(), c[x][y].begin(), c[x][y].end());
  return out;
}

Cochain2 unflatten(const Vec& v, std::size_t n, std::size_t d) {
  Cochain2 c(n, std::vector<Vec>(n, Vec(d, 0)));
  std::size_t pos = 0;
  for (std::size_t x = 1; x < n; ++x)
    for (std::size_t y = 1; y < n; ++y)
      for (std::size_t k = 0; k < d; ++k) c[x][y][k] = v[pos++];
  return c;
}

GenWord vector_word(const Vec& v, std::size_t offset = 0) {
  std::vector<Syllable> syl;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k]) syl.push_back({offset + k, static_cast<std::int64_t>(v[k])});
  return GenWord(std::move(syl));
}

}  // namespace

Cochain2 coboundary(const CocycleSpace& s, const std::vector<Vec>& c) {
  const std::size_t n = s.elements.size();
  if (c.size() != n) throw DimensionMismatch("1-cochain length differs from |G|");
  const PrimeField& f = s.matrices.front().field();
  auto t = multiplication_tables(s);
  Cochain2 out(n, std::vector<Vec>(n, Vec(s.matrices.front().rows(), 0)));
  for (std::size_t x = 1; x < n; ++x)
    for (std::size_t y = 1; y < n; ++y)
      out[x][y] = vsub(f, vadd(f, vec_mul(f, c[x], s.matrices[y]), c[y]), c[t.mul[x][y]]);
  return out;
}

bool is_cocycle(const CocycleSpace& s, const Cochain2& c) {
  const std::size_t n = s.elements.size();
  const PrimeField& f = s.matrices.front().field();
  auto t = multiplication_tables(s);
  for (std::size_t x = 0; x < n; ++x)
    if (c[x][0] != Vec(c[x][0].size(), 0) || c[0][x] != Vec(c[0][x].size(), 0)) return false;
  for (std::size_t x = 1; x < n; ++x)
    for (std::size_t y = 1; y < n; ++y)
      for (std::size_t z = 1; z < n; ++z) {
        Vec lhs = vadd(f, vec_mul(f, c[x][y], s.matrices[z]), c[t.mul[x][y]][z]);
        Vec rhs = vadd(f, c[x][t.mul[y][z]], c[y][z]);
        if (lhs != rhs) return false;
      }
  return true;
}

CocycleSpace h2_bruteforce(const std::vector<Permutation>& gens, const GModule& action, const CohomOptions& opt) {
  if (gens.size() != action.ngens())
    throw PreconditionError("group and module have different numbers of generators");
  const PrimeField& f = action.field();
  const std::size_t d = action.dim();
  const std::size_t degree = gens.empty() ? 0 : gens.front().degree();
  CocycleSpace s;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  s.elements.push_back(Permutation(degree));
  s.words.emplace_back();
  s.matrices.push_back(FMatrix::identity(f, d));
  index.emplace(s.elements.front(), 0);
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Permutation y = s.elements[i] * gens[g];
      FMatrix m = mat_mul(s.matrices[i], action.action(g));
      auto [it, fresh] = index.emplace(y, s.elements.size());
      if (fresh) {
        if (s.elements.size() >= opt.max_elements) throw BudgetExceeded("group exceeds the element budget");
        s.elements.push_back(y);
        s.words.push_back(s.words[i] * GenWord::letter(g));
        s.matrices.push_back(std::move(m));
      } else if (!(s.matrices[it->second] == m)) {
        throw PreconditionError("the module matrices do not define an action of the permutation group");
      }
    }
  const std::size_t n = s.elements.size();
  if (n * n * d > opt.unknown_budget) throw BudgetExceeded("cocycle system exceeds the unknown budget");
  auto t = multiplication_tables(s);
  const std::size_t nu = (n - 1) * (n - 1) * d;
  auto unknown = [&](std::size_t x, std::size_t y, std::size_t k) { return ((x - 1) * (n - 1) + (y - 1)) * d + k; };

  // Equations f(x,y) z + f(xy,z) - f(x,yz) - f(y,z) = 0 for nontrivial x, y, z.
  Subspace eqs(f, nu);
  for (std::size_t x = 1; x < n; ++x)
    for (std::size_t y = 1; y < n; ++y)
      for (std::size_t z = 1; z < n; ++z)
        for (std::size_t k = 0; k < d; ++k) {
          if (eqs.dim() == nu) break;
          Vec row(nu, 0);
          for (std::size_t j = 0; j < d; ++j) {
            Residue a = s.matrices[z](j, k);
            if (a) row[unknown(x, y, j)] = f.add(row[unknown(x, y, j)], a);
          }
          auto put = [&](std::size_t a, std::size_t b, Residue sign) {
            if (a != 0 && b != 0) row[unknown(a, b, k)] = f.add(row[unknown(a, b, k)], sign);
          };
          put(t.mul[x][y], z, 1);
          put(x, t.mul[y][z], f.neg(1));
          put(y, z, f.neg(1));
          eqs.add(std::move(row));
        }
  // Kernel of the reduced system: one vector per free column.
  std::vector<bool> is_pivot(nu, false);
  for (auto c : eqs.pivots()) is_pivot[c] = true;
  Subspace z2(f, nu);
  for (std::size_t free = 0; free < nu; ++free) {
    if (is_pivot[free]) continue;
    Vec v(nu, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < eqs.dim(); ++r) v[eqs.pivots()[r]] = f.neg(eqs.basis()[r][free]);
    z2.add(std::move(v));
  }
  Subspace b2(f, nu);
  for (std::size_t x = 1; x < n; ++x)
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Vec> c(n, Vec(d, 0));
      c[x][k] = 1;
      b2.add(flatten(coboundary(s, c)));
    }
  s.dim_z2 = z2.dim();
  s.dim_b2 = b2.dim();
  for (const auto& v : z2.basis()) s.cocycle_basis.push_back(unflatten(v, n, d));
  for (const auto& v : b2.basis()) {
    if (!z2.contains(v)) throw Error("coboundary outside the cocycle space");
    s.coboundary_basis.push_back(unflatten(v, n, d));
  }
  Subspace span = b2;
  for (const auto& v : z2.basis())
    if (span.add(v)) s.representatives.push_back(unflatten(v, n, d));
  return s;
}

TailedPresentation tails_from_cocycle(const CocycleSpace& s, const Cochain2& c, const Presentation& base,
                                      const std::vector<std::size_t>& gen_elements) {
  if (gen_elements.size() != base.gens.size())
    throw PreconditionError("need one group element per base generator");
  const PrimeField& f = s.matrices.front().field();
  const std::size_t d = s.matrices.front().rows();
  auto t = multiplication_tables(s);
  // Extension elements (g, v) = s(g) v with (g,v)(h,w) = (gh, f(g,h) + v h + w).
  using Ext = std::pair<std::size_t, Vec>;
  auto mul = [&](const Ext& a, const Ext& b) {
    return Ext{t.mul[a.first][b.first], vadd(f, vadd(f, c[a.first][b.first], vec_mul(f, a.second, s.matrices[b.first])), b.second)};
  };
  auto inverse = [&](const Ext& a) {
    std::size_t gi = t.inv[a.first];
    Vec u = vadd(f, c[a.first][gi], vec_mul(f, a.second, s.matrices[gi]));
    for (auto& x : u) x = f.neg(x);
    return Ext{gi, u};
  };
  TailedPresentation tp;
  tp.base = base;
  for (std::size_t k = 0; k < d; ++k) tp.module_gens.push_back("v" + std::to_string(k + 1));
  for (std::size_t r = 0; r < base.relators.size(); ++r) {
    Ext acc{0, Vec(d, 0)};
    for (auto [g, sign] : base.relators[r].letters()) {
      Ext x{gen_elements.at(g), Vec(d, 0)};
      acc = mul(acc, sign > 0 ? x : inverse(x));
    }
    if (acc.first != 0) throw PreconditionError("relator " + std::to_string(r) + " does not hold in the group");
    if (GenWord w = vector_word(acc.second); !w.empty()) tp.tails[r] = w;
  }
  for (std::size_t g = 0; g < base.gens.size(); ++g)
    for (std::size_t k = 0; k < d; ++k) {
      const FMatrix& m = s.matrices.at(gen_elements[g]);
      Vec row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = m(k, j);
      tp.actions[{g, k}] = vector_word(row);
    }
  return tp;
}

Presentation extension_from_tails(const TailedPresentation& tp, std::size_t module_dim, std::uint64_t p) {
  if (module_dim != tp.module_gens.size())
    throw PreconditionError("module dimension differs from the number of module generators");
  const std::size_t nb = tp.base.gens.size();
  auto shift = [&](const GenWord& w, const std::string& what) {
    std::vector<Syllable> syl;
    for (const auto& s : w.syllables()) {
      if (s.gen >= module_dim) throw PreconditionError(what + " uses a non-module generator");
      syl.push_back({s.gen + nb, s.exp});
    }
    return GenWord(std::move(syl));
  };
  Presentation out;
  out.gens = tp.base.gens;
  out.gens.insert(out.gens.end(), tp.module_gens.begin(), tp.module_gens.end());
  for (const auto& [r, tail] : tp.tails)
    if (r >= tp.base.relators.size()) throw PreconditionError("tail for relator " + std::to_string(r) + " out of range");
  for (std::size_t i = 0; i < module_dim; ++i) {
    out.add_relator(GenWord::letter(nb + i, static_cast<std::int64_t>(p)));
    for (std::size_t j = i + 1; j < module_dim; ++j)
      out.add_relator(commutator(GenWord::letter(nb + i), GenWord::letter(nb + j)));
  }
  for (const auto& [key, word] : tp.actions) {
    auto [g, v] = key;
    if (g >= nb || v >= module_dim) throw PreconditionError("action entry out of range");
    out.add_relator(conjugate(GenWord::letter(nb + v), GenWord::letter(g)) * shift(word, "action").inverse());
  }
  for (std::size_t r = 0; r < tp.base.relators.size(); ++r) {
    GenWord w = tp.base.relators[r];
    if (auto it = tp.tails.find(r); it != tp.tails.end()) w *= shift(it->second, "tail").inverse();
    out.add_relator(w);
  }
  for (std::size_t i = 0; i < out.relators.size(); ++i) out.relator_text[i] = out.relators[i].to_string(out.gens);
  return out;
}

TailedPresentation read_tailed_presentation(std::istream& in) {
  std::string line, base_text;
  std::vector<std::pair<std::size_t, std::string>> tail_lines, action_lines;
  TailedPresentation tp;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ls(body);
    std::string tag;
    if (!(ls >> tag)) {
      base_text += line + "\n";
      continue;
    }
    std::string rest;
    std::getline(ls, rest);
    if (tag == "module:") {
      std::istringstream ns(rest);
      std::string name;
      while (ns >> name) tp.module_gens.push_back(name);
    } else if (tag == "tail:") {
      tail_lines.emplace_back(lineno, rest);
    } else if (tag == "action:") {
      action_lines.emplace_back(lineno, rest);
    } else if (tag == "complete:") {
      std::istringstream cs(rest);
      std::string v;
      cs >> v;
      if (v != "true" && v != "false") throw ParseError("line " + std::to_string(lineno) + ": complete must be true or false");
      tp.complete = v == "true";
    } else {
      base_text += line + "\n";
    }
  }
  tp.base = parse_presentation(base_text);
  for (const auto& name : tp.module_gens)
    for (const auto& g : tp.base.gens)
      if (name == g) throw ParseError("module generator " + name + " clashes with a base generator");
  auto module_word = [&](const std::string& text, std::size_t ln) {
    try {
      return parse_word(text, tp.module_gens);
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(ln) + ": malformed module word: " + e.what());
    }
  };
  for (const auto& [ln, rest] : tail_lines) {
    std::istringstream ts(rest);
    long idx;
    if (!(ts >> idx) || idx < 0 || static_cast<std::size_t>(idx) >= tp.base.relators.size())
      throw ParseError("line " + std::to_string(ln) + ": tail needs a relator index in range");
    std::string word;
    std::getline(ts, word);
    if (tp.tails.count(idx)) throw ParseError("line " + std::to_string(ln) + ": second tail for one relator");
    tp.tails[idx] = module_word(word, ln);
  }
  for (const auto& [ln, rest] : action_lines) {
    auto eq = rest.find('=');
    std::istringstream ls(rest.substr(0, eq));
    std::string g, v;
    if (eq == std::string::npos || !(ls >> g >> v))
      throw ParseError("line " + std::to_string(ln) + ": expected 'action: <gen> <v> = <word>'");
    std::size_t gi = tp.base.gens.size(), vi = tp.module_gens.size();
    for (std::size_t i = 0; i < tp.base.gens.size(); ++i)
      if (tp.base.gens[i] == g) gi = i;
    for (std::size_t i = 0; i < tp.module_gens.size(); ++i)
      if (tp.module_gens[i] == v) vi = i;
    if (gi == tp.base.gens.size() || vi == tp.module_gens.size())
      throw ParseError("line " + std::to_string(ln) + ": unknown generator in action");
    tp.actions[{gi, vi}] = module_word(rest.substr(eq + 1), ln);
  }
  return tp;
}

void write_tailed_presentation(std::ostream& out, const TailedPresentation& tp) {
  out << "gens:";
  for (const auto& g : tp.base.gens) out << ' ' << g;
  out << "\nmodule:";
  for (const auto& v : tp.module_gens) out << ' ' << v;
  out << '\n';
  if (tp.complete) out << "complete: " << (*tp.complete ? "true" : "false") << '\n';
  for (std::size_t r = 0; r < tp.base.relators.size(); ++r) {
    std::string text = tp.base.relators[r].to_string(tp.base.gens);
    out << "rel: " << (text.empty() ? "1" : text) << '\n';
    if (auto it = tp.tails.find(r); it != tp.tails.end())
      out << "tail: " << r << ' ' << it->second.to_string(tp.module_gens) << '\n';
  }
  for (const auto& w : tp.base.subgroup) out << "sub: " << w.to_string(tp.base.gens) << '\n';
  for (const auto& [key, word] : tp.actions) {
    std::string text = word.to_string(tp.module_gens);
    out << "action: " << tp.base.gens[key.first] << ' ' << tp.module_gens[key.second] << " = "
        << (text.empty() ? "1" : text) << '\n';
  }
}

}  // namespace cgtk
