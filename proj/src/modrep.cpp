#include "cgtk/modrep.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "cgtk/classes.hpp"
#include "cgtk/perm.hpp"
#include "cgtk/poly.hpp"

namespace cgtk {

GModule::GModule(PrimeField f, std::size_t dim, std::vector<FMatrix> actions,
                 std::vector<std::string> names)
    : f_(f), dim_(dim), act_(std::move(actions)), names_(std::move(names)) {
  for (std::size_t i = 0; i < act_.size(); ++i) {
    const auto& a = act_[i];
    if (!(a.field() == f_)) throw FieldMismatch("generator " + std::to_string(i) + " over another field");
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionMismatch("generator " + std::to_string(i) + " is not " + std::to_string(dim_) +
                              "x" + std::to_string(dim_));
    std::size_t r = rank(a);
    if (r != dim_) throw SingularMatrix(r, dim_);
  }
  if (names_.empty())
    for (std::size_t i = 0; i < act_.size(); ++i) names_.push_back("g" + std::to_string(i + 1));
  if (names_.size() != act_.size()) throw DimensionMismatch("generator name count differs");
}

namespace {

GModule from_named(std::vector<NamedMatrix> gens) {
  if (gens.empty()) throw PreconditionError("module needs at least one generator");
  PrimeField f = gens[0].matrix.field();
  std::size_t dim = gens[0].matrix.rows();
  std::vector<FMatrix> act;
  std::vector<std::string> names;
  for (auto& g : gens) {
    names.push_back(g.name);
    act.push_back(std::move(g.matrix));
  }
  return GModule(f, dim, std::move(act), std::move(names));
}

}  // namespace

GModule::GModule(std::vector<NamedMatrix> gens) : GModule(from_named(std::move(gens))) {}

GModule read_module(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str(), group;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    std::istringstream ls(line);
    std::string tag;
    if (ls >> tag && tag == "group") {
      std::getline(ls >> std::ws, group);
      break;
    }
  }
  std::istringstream body(text);
  GModule m(read_generator_set(body));
  m.group_name = group;
  return m;
}

void write_module(std::ostream& out, const GModule& m) {
  if (!m.group_name.empty()) out << "group " << m.group_name << '\n';
  std::vector<NamedMatrix> g;
  for (std::size_t i = 0; i < m.ngens(); ++i) g.push_back({m.names()[i], m.action(i)});
  write_generator_set(out, g);
}

namespace {

bool is_zero_vec(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

struct SpinTrace {
  Subspace space;
  std::vector<Vec> raw;  // vectors in acceptance order
  std::vector<std::pair<std::size_t, std::size_t>> recipe;  // raw[k] = raw[src] * gen, k >= seeds
};

SpinTrace spin_trace(const GModule& m, const std::vector<Vec>& seeds) {
  SpinTrace t{Subspace(m.field(), m.dim()), {}, {}};
  for (const auto& v : seeds) {
    if (v.size() != m.dim()) throw DimensionMismatch("seed vector length differs from module dimension");
    if (t.space.add(v)) t.raw.push_back(v);
  }
  for (std::size_t i = 0; i < t.raw.size() && t.space.dim() < m.dim(); ++i)
    for (std::size_t g = 0; g < m.ngens(); ++g) {
      Vec w = vec_mul(m.field(), t.raw[i], m.action(g));
      if (t.space.add(w)) {
        t.raw.push_back(std::move(w));
        t.recipe.emplace_back(i, g);
      }
    }
  return t;
}

}  // namespace

std::vector<Vec> spin(const GModule& m, const Vec& v) {
  if (v.size() != m.dim()) throw DimensionMismatch("seed vector length differs from module dimension");
  if (is_zero_vec(v)) throw PreconditionError("spin of the zero vector");
  return spin_trace(m, {v}).space.basis();
}

std::vector<Vec> spin_all(const GModule& m, const std::vector<Vec>& vs) {
  return spin_trace(m, vs).space.basis();
}

GModule dual(const GModule& m) {
  GModule d(m.field(), m.dim(), dual_generators(m.actions()), m.names());
  d.group_name = m.group_name;
  return d;
}

namespace {

void check_compatible(const GModule& a, const GModule& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("modules over different fields");
  if (a.ngens() != b.ngens()) throw DimensionMismatch("modules have different generator counts");
}

}  // namespace

GModule direct_sum(const GModule& a, const GModule& b) {
  check_compatible(a, b);
  std::vector<FMatrix> act;
  for (std::size_t i = 0; i < a.ngens(); ++i) act.push_back(FMatrix::block_diagonal({a.action(i), b.action(i)}));
  return GModule(a.field(), a.dim() + b.dim(), std::move(act), a.names());
}

GModule tensor_product(const GModule& a, const GModule& b) {
  check_compatible(a, b);
  std::vector<FMatrix> act;
  for (std::size_t i = 0; i < a.ngens(); ++i) act.push_back(kronecker(a.action(i), b.action(i)));
  return GModule(a.field(), a.dim() * b.dim(), std::move(act), a.names());
}

GModule restrict_module(const GModule& m, const std::vector<GenWord>& words) {
  std::vector<FMatrix> act;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < words.size(); ++i) {
    act.push_back(evaluate_word(words[i], m.actions()));
    names.push_back("h" + std::to_string(i + 1));
  }
  return GModule(m.field(), m.dim(), std::move(act), std::move(names));
}

GModule submodule_action(const GModule& m, const std::vector<Vec>& basis) {
  const PrimeField& f = m.field();
  const std::size_t k = basis.size();
  FMatrix b = FMatrix::from_rows(f, basis, m.dim());
  auto piv = row_reduce(b);
  if (piv.size() != k) throw PreconditionError("submodule basis is not independent");
  std::vector<FMatrix> act;
  for (const auto& g : m.actions()) {
    FMatrix img(f, k, k);
    for (std::size_t i = 0; i < k; ++i) {
      Vec w = vec_mul(f, b.row(i), g);
      // Coordinates in the echelon basis are the entries at the pivots.
      for (std::size_t j = 0; j < k; ++j) img.set(i, j, w[piv[j]]);
      Vec check(m.dim(), 0);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < m.dim(); ++c) check[c] = f.add(check[c], f.mul(img(i, j), b(j, c)));
      if (check != w) throw PreconditionError("subspace is not invariant");
    }
    act.push_back(std::move(img));
  }
  return GModule(f, k, std::move(act), m.names());
}

namespace {

struct AlgebraElement {
  std::vector<std::vector<std::size_t>> words;
  std::vector<Residue> coeffs;
};

AlgebraElement random_element(std::size_t ngens, const PrimeField& f, const MeataxeOptions& opt,
                              std::mt19937_64& rng) {
  AlgebraElement e;
  std::size_t nw = 1 + rng() % std::max<std::size_t>(1, opt.words_per_element);
  for (std::size_t i = 0; i < nw; ++i) {
    std::size_t len = 1 + rng() % std::max<std::size_t>(1, opt.max_word_length);
    std::vector<std::size_t> w;
    for (std::size_t j = 0; j < len; ++j) w.push_back(rng() % ngens);
    e.words.push_back(std::move(w));
    e.coeffs.push_back(static_cast<Residue>(1 + rng() % (f.p() - 1)));
  }
  return e;
}

FMatrix evaluate(const AlgebraElement& e, const GModule& m) {
  FMatrix sum(m.field(), m.dim(), m.dim());
  for (std::size_t i = 0; i < e.words.size(); ++i) {
    FMatrix w = FMatrix::identity(m.field(), m.dim());
    for (std::size_t g : e.words[i]) w = mat_mul(w, m.action(g));
    sum = mat_add(sum, mat_scale(w, e.coeffs[i]));
  }
  return sum;
}

GModule transposed(const GModule& m) {
  std::vector<FMatrix> act;
  for (const auto& a : m.actions()) act.push_back(a.transpose());
  return GModule(m.field(), m.dim(), std::move(act), m.names());
}

// Annihilator {v : v . w = 0 for all w in ws}.
std::vector<Vec> annihilator(const PrimeField& f, const std::vector<Vec>& ws, std::size_t dim) {
  return kernel(FMatrix::from_rows(f, ws, dim));
}

// A random element with an irreducible factor f of its characteristic
// polynomial, and the left null space of f(A).
struct Probe {
  AlgebraElement elt;
  Poly factor;
  std::vector<Vec> null_space;
  FMatrix fa;
};

}  // namespace

MeataxeResult meataxe_irreducible(const GModule& m, const MeataxeOptions& opt) {
  MeataxeResult res;
  const std::size_t n = m.dim();
  if (n == 0) throw PreconditionError("zero-dimensional module");
  if (n == 1) {
    res.verdict = MeataxeResult::Verdict::irreducible;
    res.detail = "dimension 1";
    return res;
  }
  const PrimeField& f = m.field();
  if (m.ngens() == 0) {
    Vec e(n, 0);
    e[0] = 1;
    res.verdict = MeataxeResult::Verdict::reducible;
    res.submodule = {e};
    res.detail = "no generators";
    return res;
  }
  std::mt19937_64 rng(opt.seed);
  GModule mt = transposed(m);
  for (res.trials = 1; res.trials <= opt.max_trials; ++res.trials) {
    auto elt = random_element(m.ngens(), f, opt, rng);
    FMatrix a = evaluate(elt, m);
    auto factors = irreducible_factors(f, charpoly(a), rng);
    for (const auto& fac : factors) {
      FMatrix fa = poly_eval(fac, a);
      auto nul = left_kernel(fa);
      if (nul.empty()) continue;
      auto sub = spin(m, nul[0]);
      if (sub.size() < n) {
        res.verdict = MeataxeResult::Verdict::reducible;
        res.submodule = std::move(sub);
        res.detail = "spin of a null vector";
        return res;
      }
      auto nul_t = left_kernel(fa.transpose());
      auto sub_t = spin(mt, nul_t.at(0));
      if (sub_t.size() < n) {
        res.verdict = MeataxeResult::Verdict::reducible;
        res.submodule = annihilator(f, sub_t, n);
        res.detail = "annihilator of a dual spin";
        return res;
      }
      if (nul.size() == poly_degree(fac)) {
        res.verdict = MeataxeResult::Verdict::irreducible;
        res.detail = "Norton criterion with a degree-" + std::to_string(poly_degree(fac)) + " factor";
        return res;
      }
    }
  }
  res.trials = opt.max_trials;
  res.detail = "no conclusive algebra element in " + std::to_string(opt.max_trials) + " trials";
  return res;
}

std::optional<FMatrix> module_isomorphism(const GModule& a, const GModule& b, const MeataxeOptions& opt,
                                          std::size_t candidate_budget) {
  if (!(a.field() == b.field())) throw PreconditionError("modules over different fields");
  if (a.ngens() != b.ngens()) throw PreconditionError("modules have different generator counts");
  if (a.dim() != b.dim()) return std::nullopt;
  const PrimeField& f = a.field();
  const std::size_t n = a.dim();
  if (n == 0) return FMatrix(f, 0, 0);
  if (a.ngens() == 0) return FMatrix::identity(f, n);

  // Pick the element/factor whose null space on `a` is smallest, stopping
  // once it has the factor's degree.
  std::mt19937_64 rng(opt.seed);
  std::optional<Probe> best;
  for (std::size_t trial = 0; trial < opt.max_trials; ++trial) {
    auto elt = random_element(a.ngens(), f, opt, rng);
    FMatrix ea = evaluate(elt, a);
    for (const auto& fac : irreducible_factors(f, charpoly(ea), rng)) {
      FMatrix fa = poly_eval(fac, ea);
      auto nul = left_kernel(fa);
      if (!best || nul.size() < best->null_space.size()) best = Probe{elt, fac, nul, fa};
    }
    if (best && best->null_space.size() == poly_degree(best->factor)) break;
  }
  const Probe& pr = *best;

  // A seed in the null space that spins to all of `a`.
  std::optional<SpinTrace> trace;
  const std::size_t k = pr.null_space.size();
  auto combos = [&](auto&& visit) {
    // Enumerates nonzero combinations of a basis, first nonzero coefficient 1.
    std::vector<Residue> c(k, 0);
    std::size_t count = 0;
    for (std::size_t lead = 0; lead < k; ++lead) {
      std::fill(c.begin(), c.end(), 0);
      c[lead] = 1;
      for (;;) {
        if (++count > candidate_budget) throw BudgetExceeded("isomorphism candidate budget exceeded");
        if (visit(c)) return true;
        std::size_t i = lead + 1;
        while (i < k && c[i] == f.p() - 1) c[i++] = 0;
        if (i >= k) break;
        ++c[i];
      }
    }
    return false;
  };
  auto combine = [&](const std::vector<Vec>& basis, const std::vector<Residue>& c) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i])
        for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(c[i], basis[i][j]));
    return v;
  };
  combos([&](const std::vector<Residue>& c) {
    auto t = spin_trace(a, {combine(pr.null_space, c)});
    if (t.space.dim() == n) {
      trace = std::move(t);
      return true;
    }
    return false;
  });
  if (!trace) throw PreconditionError("standard-basis method needs a cyclic null space; module is reducible");

  FMatrix eb = evaluate(pr.elt, b);
  auto nul_b = left_kernel(poly_eval(pr.factor, eb));
  if (nul_b.size() != k) return std::nullopt;
  FMatrix b1 = FMatrix::from_rows(f, trace->raw, n);

  std::optional<FMatrix> found;
  // Every nonzero vector of the null space on `b` is a candidate image.
  combos([&](const std::vector<Residue>& c) {
    Vec base = combine(nul_b, c);
    for (Residue s = 1; s < f.p(); ++s) {
      std::vector<Vec> raw{base};
      for (auto& x : raw[0]) x = f.mul(x, s);
      for (const auto& [src, g] : trace->recipe) raw.push_back(vec_mul(f, raw[src], b.action(g)));
      FMatrix b2 = FMatrix::from_rows(f, raw, n);
      if (rank(b2) != n) continue;
      FMatrix t = mat_mul(mat_inverse(b2), b1);
      FMatrix ti = mat_inverse(t);
      bool ok = true;
      for (std::size_t g = 0; g < a.ngens() && ok; ++g)
        ok = mat_mul(mat_mul(ti, b.action(g)), t) == a.action(g);
      if (ok) {
        found = std::move(t);
        return true;
      }
    }
    return false;
  });
  return found;
}

std::string embedding_description(const PrimeField& f, unsigned conductor) {
  if ((f.p() - 1) % conductor != 0)
    throw PreconditionError("conductor " + std::to_string(conductor) + " does not divide p-1 = " +
                            std::to_string(f.p() - 1));
  Residue w = f.primitive_root();
  Residue z = f.pow(w, (f.p() - 1) / conductor);
  return "z" + std::to_string(conductor) + " -> " + std::to_string(z) + " = " + std::to_string(w) + "^" +
         std::to_string((f.p() - 1) / conductor) + " mod " + std::to_string(f.p());
}

std::vector<Vec> idempotent_project(const GModule& pm, const ClassFunction& chi, const ClassList& cl,
                                    std::size_t element_budget) {
  const PrimeField& f = pm.field();
  const std::size_t n = pm.dim();
  if (!chi.table) throw PreconditionError("character without a table");
  if (chi.table->classes.size() != cl.classes.size() || chi.values.size() != cl.classes.size())
    throw PreconditionError("character table does not match the class list");
  if (!cl.has_orbits()) throw PreconditionError("class list lacks class orbits");

  std::vector<Permutation> perms;
  for (const auto& a : pm.actions()) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t ones = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j) == 1) {
          img[i] = static_cast<Point>(j);
          ++ones;
        } else if (a(i, j) != 0) {
          ones = 2;
        }
      }
      if (ones != 1) throw PreconditionError("action is not a permutation matrix");
    }
    perms.push_back(Permutation(std::move(img)));
  }
  BSGS g = bsgs_build(perms, n);
  BigInt order = g.order();
  if (order % f.p() == 0) throw PreconditionError("p divides |G|");
  if (order > element_budget) throw BudgetExceeded("group order exceeds the element budget");

  unsigned cond = 1;
  for (const auto& v : chi.values) cond = std::lcm(cond, v.minimal().conductor());
  embedding_description(f, cond);
  std::vector<Residue> inv_val;  // chi(g^-1) mod p per class
  for (const auto& v : chi.values) inv_val.push_back(v.conj().reduce_mod(f));
  auto deg = chi.values[0].to_rational();
  if (!deg) throw PreconditionError("character degree is not rational");

  std::vector<std::vector<Residue>> e(n, std::vector<Residue>(n, 0));
  for (const auto& x : g.elements(element_budget)) {
    auto k = cl.class_of(x);
    if (!k) throw PreconditionError("element outside the class list");
    Residue c = inv_val[*k];
    if (!c) continue;
    for (std::size_t i = 0; i < n; ++i) e[i][x[i]] = f.add(e[i][x[i]], c);
  }
  Residue scale = Cyclotomic(*deg / Rational(order)).reduce_mod(f);
  FMatrix em(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) em.set(i, j, f.mul(scale, e[i][j]));
  auto piv = row_reduce(em);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) {
    auto r = em.row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

}  // namespace cgtk
