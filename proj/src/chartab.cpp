#include "cgtk/chartab.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cgtk {

using nlohmann::json;

std::size_t CharacterTable::class_index(const std::string& n) const {
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (classes[k].name == n) return k;
  throw NotFound("no class named '" + n + "'");
}

namespace {

BigInt json_bigint(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  throw ParseError("expected an integer or decimal string");
}

Rational json_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("expected a rational number");
}

Cyclotomic json_cyclotomic(const json& v, unsigned n) {
  if (v.is_object()) {
    if (!v.contains("coeffs") || !v["coeffs"].is_object())
      throw ParseError("cyclotomic object needs a 'coeffs' map");
    std::map<long, Rational> c;
    for (auto it = v["coeffs"].begin(); it != v["coeffs"].end(); ++it)
      c[std::stol(it.key())] += json_rational(it.value());
    return Cyclotomic::from_powers(n, c);
  }
  return Cyclotomic(json_rational(v));
}

json cyclotomic_json(const Cyclotomic& x, unsigned n) {
  if (auto q = x.to_rational()) {
    if (boost::multiprecision::denominator(*q) == 1) {
      BigInt num = boost::multiprecision::numerator(*q);
      if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
        return static_cast<long long>(num);
      return num.str();
    }
    return to_string(*q);
  }
  Cyclotomic y = x.in_field(n);
  json c = json::object();
  for (std::size_t k = 0; k < y.coeffs().size(); ++k)
    if (y.coeffs()[k] != 0) c[std::to_string(k)] = to_string(y.coeffs()[k]);
  return json{{"coeffs", c}};
}

std::string key_of(const std::vector<Cyclotomic>& v, unsigned n) {
  std::string s;
  for (const auto& x : v) s += x.in_field(n).to_string() + "|";
  return s;
}

}  // namespace

CharacterTable parse_character_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("character table JSON: ") + e.what());
  }
  try {
    CharacterTable t;
    t.name = j.value("name", "");
    t.order = json_bigint(j.at("order"));
    t.conductor = j.value("conductor", 1u);
    if (t.conductor == 0) throw ParseError("conductor must be positive");
    std::vector<std::map<std::string, std::string>> pm_names;
    for (const auto& c : j.at("classes")) {
      ClassRecord r;
      r.name = c.at("name").get<std::string>();
      r.element_order = c.at("order").get<std::uint64_t>();
      r.centralizer = json_bigint(c.at("centralizer"));
      if (r.centralizer == 0 || t.order % r.centralizer != 0)
        throw ParseError("class " + r.name + ": centralizer does not divide the order");
      r.size = t.order / r.centralizer;
      if (c.contains("rep")) r.rep_text = c["rep"].get<std::string>();
      std::map<std::string, std::string> pm;
      if (c.contains("powermaps"))
        for (auto it = c["powermaps"].begin(); it != c["powermaps"].end(); ++it)
          pm[it.key()] = it.value().get<std::string>();
      pm_names.push_back(pm);
      t.classes.push_back(r);
    }
    for (std::size_t k = 0; k < t.classes.size(); ++k)
      for (const auto& [q, target] : pm_names[k])
        t.classes[k].powermap[std::stoull(q)] = t.class_index(target);
    if (j.contains("chars"))
      for (const auto& row : j["chars"]) {
        std::vector<Cyclotomic> r;
        for (const auto& v : row) r.push_back(json_cyclotomic(v, t.conductor));
        t.chars.push_back(std::move(r));
      }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("character table JSON: ") + e.what());
  } catch (const NotFound& e) {
    throw ParseError(std::string("character table JSON: ") + e.what());
  }
}

CharacterTable read_character_table(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_character_table(ss.str());
}

void write_character_table(std::ostream& out, const CharacterTable& t) {
  json j;
  if (!t.name.empty()) j["name"] = t.name;
  j["order"] = t.order.str();
  j["conductor"] = t.conductor;
  j["classes"] = json::array();
  for (const auto& c : t.classes) {
    json r{{"name", c.name}, {"order", c.element_order}, {"centralizer", c.centralizer.str()}};
    if (!c.rep_text.empty()) r["rep"] = c.rep_text;
    json pm = json::object();
    for (const auto& [q, k] : c.powermap) pm[std::to_string(q)] = t.classes.at(k).name;
    r["powermaps"] = pm;
    j["classes"].push_back(r);
  }
  j["chars"] = json::array();
  for (const auto& row : t.chars) {
    json r = json::array();
    for (const auto& v : row) r.push_back(cyclotomic_json(v, t.conductor));
    j["chars"].push_back(r);
  }
  out << j.dump(1) << '\n';
}

CharacterTable table_from_classes(const ClassList& cl, std::vector<std::vector<Cyclotomic>> chars) {
  CharacterTable t;
  t.order = cl.group_order;
  t.classes = cl.classes;
  t.chars = std::move(chars);
  unsigned n = 1;
  for (const auto& row : t.chars)
    for (const auto& v : row) n = std::lcm(n, v.conductor());
  t.conductor = n;
  return t;
}

TableReport verify_table(const CharacterTable& t) {
  TableReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  const std::size_t r = t.classes.size();
  if (r == 0) {
    fail("table has no classes");
    return rep;
  }
  BigInt sum = 0;
  for (std::size_t k = 0; k < r; ++k) {
    const auto& c = t.classes[k];
    if (c.size * c.centralizer != t.order)
      fail("class " + c.name + ": size * centralizer != |G|");
    sum += c.size;
    for (const auto& [q, img] : c.powermap) {
      if (img >= r) {
        fail("class " + c.name + ": power map target out of range");
        continue;
      }
      std::uint64_t want = c.element_order / std::gcd(c.element_order, q);
      if (t.classes[img].element_order != want)
        fail("class " + c.name + ": " + std::to_string(q) + "P image " + t.classes[img].name +
             " has order " + std::to_string(t.classes[img].element_order) + ", expected " +
             std::to_string(want));
    }
  }
  if (sum != t.order) fail("class sizes sum to " + sum.str() + ", not " + t.order.str());
  if (t.classes[0].element_order != 1) fail("first class is not the identity class");
  if (t.chars.empty()) return rep;

  if (t.chars.size() != r)
    fail(std::to_string(t.chars.size()) + " characters for " + std::to_string(r) + " classes");
  for (std::size_t i = 0; i < t.chars.size(); ++i)
    if (t.chars[i].size() != r) {
      fail("character " + std::to_string(i) + " has " + std::to_string(t.chars[i].size()) +
           " values");
      return rep;
    }
  Rational deg2 = 0;
  for (std::size_t i = 0; i < t.chars.size(); ++i) {
    auto d = t.chars[i][0].to_rational();
    if (!d || *d <= 0 || boost::multiprecision::denominator(*d) != 1) {
      fail("character " + std::to_string(i) + ": degree is not a positive integer");
      continue;
    }
    deg2 += *d * *d;
  }
  if (deg2 != Rational(t.order)) fail("sum of squared degrees is " + to_string(deg2));

  std::vector<std::vector<Cyclotomic>> conj(t.chars.size());
  for (std::size_t i = 0; i < t.chars.size(); ++i)
    for (const auto& v : t.chars[i]) conj[i].push_back(v.conj());
  for (std::size_t i = 0; i < t.chars.size(); ++i)
    for (std::size_t j = i; j < t.chars.size(); ++j) {
      Cyclotomic s;
      for (std::size_t k = 0; k < r; ++k)
        s += t.chars[i][k] * conj[j][k] * Cyclotomic(Rational(t.classes[k].size));
      s /= Rational(t.order);
      if (!(s == Cyclotomic(i == j ? 1 : 0)))
        fail("first orthogonality <chi" + std::to_string(i) + ", chi" + std::to_string(j) +
             "> = " + s.to_string());
    }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      Cyclotomic s;
      for (std::size_t i = 0; i < t.chars.size(); ++i) s += t.chars[i][k] * conj[i][l];
      Cyclotomic want = k == l ? Cyclotomic(Rational(t.classes[k].centralizer)) : Cyclotomic(0);
      if (!(s == want))
        fail("second orthogonality at classes " + t.classes[k].name + ", " + t.classes[l].name +
             " = " + s.to_string());
    }
  return rep;
}

ClassFunction irreducible(const std::shared_ptr<const CharacterTable>& t, std::size_t i) {
  if (i >= t->chars.size()) throw PreconditionError("character index out of range");
  return {t, t->chars[i]};
}

ClassFunction trivial_character(const std::shared_ptr<const CharacterTable>& t) {
  return {t, std::vector<Cyclotomic>(t->classes.size(), Cyclotomic(1))};
}

Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& g) {
  if (!f.table || f.table != g.table)
    throw PreconditionError("class functions belong to different tables");
  const auto& t = *f.table;
  if (f.values.size() != t.classes.size() || g.values.size() != t.classes.size())
    throw DimensionMismatch("class function length differs from class count");
  Cyclotomic s;
  for (std::size_t k = 0; k < t.classes.size(); ++k)
    s += f.values[k] * g.values[k].conj() * Cyclotomic(Rational(t.classes[k].size));
  return s / Rational(t.order);
}

std::vector<Cyclotomic> decompose(const ClassFunction& f) {
  std::vector<Cyclotomic> out;
  for (std::size_t i = 0; i < f.table->chars.size(); ++i)
    out.push_back(inner_product(f, irreducible(f.table, i)));
  return out;
}

ClassFunction permutation_character(const BSGS& g, const BSGS& h, const ClassList& cl,
                                    const std::shared_ptr<const CharacterTable>& t,
                                    std::size_t element_budget) {
  if (!cl.has_orbits()) throw PreconditionError("class list carries no orbits");
  if (t->classes.size() != cl.classes.size())
    throw PreconditionError("table and class list differ in class count");
  for (std::size_t k = 0; k < cl.classes.size(); ++k)
    if (t->classes[k].element_order != cl.classes[k].element_order ||
        t->classes[k].size != cl.classes[k].size)
      throw PreconditionError("table class " + t->classes[k].name + " does not match class list");
  if (h.degree() != g.degree()) throw DimensionMismatch("subgroup degree differs");
  for (const auto& s : h.generators())
    if (!g.contains(s)) throw PreconditionError("subgroup generator not in the group");
  if (h.order() > element_budget)
    throw BudgetExceeded("subgroup order " + h.order().str() + " exceeds element budget");
  std::vector<BigInt> hits(cl.classes.size(), 0);
  for (const auto& x : h.elements(element_budget)) {
    auto k = cl.class_of(x);
    if (!k) throw Error("subgroup element not found in the class list");
    hits[*k] += 1;
  }
  ClassFunction f{t, {}};
  BigInt ho = h.order();
  for (std::size_t k = 0; k < hits.size(); ++k)
    f.values.emplace_back(Rational(cl.classes[k].centralizer * hits[k], ho));
  return f;
}

Fusion read_fusion(std::istream& in, const CharacterTable& h, const CharacterTable& g) {
  Fusion f(h.classes.size());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::string a, arrow, b;
    if (!(ls >> a)) continue;
    if (!(ls >> arrow >> b) || arrow != "->")
      throw ParseError("fusion line " + std::to_string(lineno) + ": expected 'Hclass -> Gclass'");
    try {
      f[h.class_index(a)] = g.class_index(b);
    } catch (const NotFound& e) {
      throw ParseError("fusion line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return f;
}

ClassFunction restrict_with_fusion(const ClassFunction& chi,
                                   const std::shared_ptr<const CharacterTable>& h,
                                   const Fusion& fusion) {
  if (fusion.size() != h->classes.size())
    throw PreconditionError("fusion length differs from the subgroup class count");
  ClassFunction out{h, {}};
  for (std::size_t k = 0; k < fusion.size(); ++k) {
    if (!fusion[k]) throw PreconditionError("fusion map is partial at class " + h->classes[k].name);
    if (*fusion[k] >= chi.values.size()) throw PreconditionError("fusion target out of range");
    out.values.push_back(chi.values[*fusion[k]]);
  }
  return out;
}

namespace {

// Degree-N sums of irreducibles, as nondecreasing index lists.
std::vector<std::vector<std::size_t>> character_sums(const CharacterTable& t, std::uint64_t n,
                                                     bool multiplicity_free,
                                                     std::size_t max_sums) {
  std::vector<std::uint64_t> deg;
  for (const auto& row : t.chars) {
    auto d = row.at(0).to_rational();
    if (!d || boost::multiprecision::denominator(*d) != 1 || *d <= 0)
      throw PreconditionError("table " + t.name + " has a non-integral degree");
    deg.push_back(static_cast<std::uint64_t>(boost::multiprecision::numerator(*d)));
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (left == 0) {
      out.push_back(cur);
      if (out.size() > max_sums) throw BudgetExceeded("too many character sums of the degree");
      return;
    }
    for (std::size_t j = i; j < deg.size(); ++j) {
      if (deg[j] > left) continue;
      cur.push_back(j);
      rec(multiplicity_free ? j + 1 : j, left - deg[j]);
      cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

std::vector<Cyclotomic> restricted_sum(const CharacterTable& t, const std::vector<std::size_t>& s,
                                       const Fusion& fusion) {
  std::vector<Cyclotomic> v(fusion.size());
  for (std::size_t k = 0; k < fusion.size(); ++k)
    for (std::size_t i : s) v[k] += t.chars[i][*fusion[k]];
  return v;
}

void check_fusion(const Fusion& f, const CharacterTable& h, const CharacterTable& to) {
  if (f.size() != h.classes.size()) throw PreconditionError("fusion length differs from class count");
  for (const auto& x : f)
    if (!x || *x >= to.classes.size()) throw PreconditionError("fusion map is partial");
}

}  // namespace

std::vector<CompatiblePair> compatible_pairs(const CharacterTable& a, const CharacterTable& g,
                                             const CharacterTable& h, const Fusion& fusion_a,
                                             const Fusion& fusion_g, std::uint64_t degree,
                                             bool multiplicity_free, std::size_t max_sums) {
  check_fusion(fusion_a, h, a);
  check_fusion(fusion_g, h, g);
  unsigned n = std::lcm(std::lcm(a.conductor, g.conductor), h.conductor);
  for (const auto* t : {&a, &g})
    for (const auto& row : t->chars)
      for (const auto& v : row) n = std::lcm(n, v.conductor());
  auto sa = character_sums(a, degree, multiplicity_free, max_sums);
  auto sg = character_sums(g, degree, multiplicity_free, max_sums);
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < sa.size(); ++i)
    by_key[key_of(restricted_sum(a, sa[i], fusion_a), n)].push_back(i);
  std::vector<CompatiblePair> out;
  for (const auto& s : sg) {
    auto it = by_key.find(key_of(restricted_sum(g, s, fusion_g), n));
    if (it == by_key.end()) continue;
    for (std::size_t i : it->second) out.push_back({sa[i], s});
  }
  std::sort(out.begin(), out.end(), [](const CompatiblePair& x, const CompatiblePair& y) {
    return std::tie(x.a_chars, x.g_chars) < std::tie(y.a_chars, y.g_chars);
  });
  return out;
}

std::vector<std::size_t> real_classes(const CharacterTable& t) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < t.classes.size(); ++k) {
    bool real = true;
    for (const auto& row : t.chars)
      if (!(row.at(k) == row.at(k).conj())) {
        real = false;
        break;
      }
    if (real) out.push_back(k);
  }
  return out;
}

Rational thompson_r(const CharacterTable& h, const std::vector<std::size_t>& z,
                    const std::vector<std::size_t>& u, const std::vector<std::size_t>& t) {
  const std::size_t r = h.classes.size();
  if (h.chars.size() != r || r < 2)
    throw PreconditionError("thompson_r needs a complete table with at least two classes");
  if (z.empty() || u.empty()) throw PreconditionError("z and u class sets must be nonempty");
  for (const auto* s : {&z, &u, &t})
    for (std::size_t k : *s)
      if (k >= r) throw PreconditionError("class index " + std::to_string(k) + " out of range");
  for (std::size_t k : z)
    if (std::find(u.begin(), u.end(), k) != u.end())
      throw PreconditionError("z and u class sets overlap at " + h.classes[k].name);
  if (t.empty()) return 0;

  std::vector<Rational> inv_deg;
  for (const auto& row : h.chars) {
    auto d = row[0].to_rational();
    if (!d || *d == 0) throw PreconditionError("non-rational degree");
    inv_deg.push_back(1 / *d);
  }
  Cyclotomic total;
  Rational h2 = Rational(h.order) * Rational(h.order);
  for (std::size_t i : z)
    for (std::size_t k : u) {
      std::vector<Cyclotomic> zu;
      for (std::size_t p = 0; p < h.chars.size(); ++p)
        zu.push_back(h.chars[p][i] * h.chars[p][k] * Cyclotomic(inv_deg[p]));
      for (std::size_t j : t) {
        Cyclotomic s;
        for (std::size_t p = 0; p < h.chars.size(); ++p) s += zu[p] * h.chars[p][j];
        Rational c = h2 / (Rational(h.classes[i].centralizer) * Rational(h.classes[k].centralizer) *
                           Rational(h.classes[j].centralizer));
        s *= c;
        total += s;
      }
    }
  auto q = total.to_rational();
  if (!q) throw Error("thompson_r total is not rational: " + total.to_string());
  return *q;
}

BigInt thompson_order(const Rational& r_z, const Rational& r_u, const BigInt& cu, const BigInt& cz) {
  if (r_z < 0 || r_u < 0 || cu < 0 || cz < 0)
    throw PreconditionError("thompson_order inputs must be nonnegative");
  Rational v = r_z * Rational(cu) + r_u * Rational(cz);
  if (boost::multiprecision::denominator(v) != 1)
    throw Error("thompson_order result " + to_string(v) + " is not an integer");
  return boost::multiprecision::numerator(v);
}

BigInt thompson_order_general(const std::vector<InvolutionTerm>& terms, const BigInt& cz,
                              const BigInt& cu) {
  if (cz <= 0 || cu <= 0) throw PreconditionError("centralizer orders must be positive");
  Rational v = 0;
  for (const auto& w : terms) {
    if (w.r < 0 || w.centralizer <= 0) throw PreconditionError("invalid involution term");
    v += w.r * Rational(cz) * Rational(cu) / Rational(w.centralizer);
  }
  if (boost::multiprecision::denominator(v) != 1)
    throw Error("generalized order " + to_string(v) + " is not an integer");
  return boost::multiprecision::numerator(v);
}

namespace {

BigInt from_factorization(const json& j) {
  BigInt n = 1;
  for (const auto& [prime, e] : j.items()) {
    BigInt q = parse_bigint(prime);
    for (int k = 0; k < e.get<int>(); ++k) n *= q;
  }
  return n;
}

}  // namespace

ThompsonIdentityReport thompson_identity_check(const std::string& text) {
  try {
    json j = json::parse(text);
    ThompsonIdentityReport rep;
    rep.order = thompson_order(Rational(parse_bigint(j.at("r_z").get<std::string>())),
                               Rational(parse_bigint(j.at("r_u").get<std::string>())),
                               from_factorization(j.at("centralizer_u")), from_factorization(j.at("centralizer_z")));
    rep.factorization = factorization_string(rep.order);
    for (const auto& pr : j.value("printed", json::array())) {
      PrintedFactorization p;
      p.label = pr.at("label").get<std::string>();
      p.value = from_factorization(pr.at("factorization"));
      p.text = factorization_string(p.value);
      p.matches = p.value == rep.order;
      rep.printed.push_back(std::move(p));
    }
    for (const auto& p : rep.printed) rep.printed_conflict = rep.printed_conflict || p.value != rep.printed.front().value;
    return rep;
  } catch (const json::exception& e) {
    throw ParseError(std::string("Thompson data: ") + e.what());
  }
}

}  // namespace cgtk
