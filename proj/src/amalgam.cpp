#include "cgtk/amalgam.hpp"

#include <istream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "cgtk/poly.hpp"

namespace cgtk {

BlockGroupSpec::BlockGroupSpec(PrimeField f, std::vector<std::size_t> sizes) : field(f), blocks(std::move(sizes)) {
  if (blocks.empty()) throw PreconditionError("block shape is empty");
  for (auto b : blocks)
    if (b == 0) throw PreconditionError("block sizes must be positive");
}

std::size_t BlockGroupSpec::dim() const {
  std::size_t n = 0;
  for (auto b : blocks) n += b;
  return n;
}

std::vector<std::size_t> BlockGroupSpec::offsets() const {
  std::vector<std::size_t> out;
  std::size_t o = 0;
  for (auto b : blocks) {
    out.push_back(o);
    o += b;
  }
  return out;
}

BigInt gl_order(std::size_t n, std::uint64_t p) {
  BigInt q = 1, pn = 1;
  for (std::size_t i = 0; i < n; ++i) pn *= p;
  BigInt pi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    q *= pn - pi;
    pi *= p;
  }
  return q;
}

BigInt BlockGroupSpec::order() const {
  BigInt o = 1;
  for (auto b : blocks) o *= gl_order(b, field.p());
  return o;
}

BlockGroupSpec parse_block_spec(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag != "BLOCKS") throw ParseError("expected 'BLOCKS p n1 n2 ...', got '" + line + "'");
    std::uint64_t p;
    if (!(ls >> p)) throw ParseError("BLOCKS line lacks a prime");
    std::vector<std::size_t> sizes;
    long n;
    while (ls >> n) {
      if (n <= 0) throw ParseError("block sizes must be positive");
      sizes.push_back(static_cast<std::size_t>(n));
    }
    if (!ls.eof()) throw ParseError("malformed block size in '" + line + "'");
    if (sizes.empty()) throw ParseError("BLOCKS line lists no blocks");
    return BlockGroupSpec(PrimeField(p), sizes);
  }
  throw ParseError("no BLOCKS line");
}

std::string format_block_spec(const BlockGroupSpec& s) {
  std::string out = "BLOCKS " + std::to_string(s.field.p());
  for (auto b : s.blocks) out += " " + std::to_string(b);
  return out;
}

DoubleCosetProblem read_double_coset_problem(std::istream& in) {
  std::string line, header;
  std::map<std::string, std::string> sections;
  std::string* current = &header;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag, name;
    ls >> tag;
    if (tag == "subgroup") {
      if (!(ls >> name) || (name != "H" && name != "E")) throw ParseError("expected 'subgroup H' or 'subgroup E'");
      if (sections.count(name)) throw ParseError("subgroup " + name + " given twice");
      current = &sections[name];
      continue;
    }
    *current += line + "\n";
  }
  if (!sections.count("H") || !sections.count("E")) throw ParseError("problem needs subgroup H and subgroup E");
  BlockGroupSpec spec = parse_block_spec(header);
  auto gens_of = [&](const std::string& name) {
    std::istringstream gs(sections[name]);
    std::vector<FMatrix> out;
    for (auto& nm : read_generator_set(gs)) out.push_back(std::move(nm.matrix));
    return DiagSubgroup(spec, std::move(out));
  };
  return {spec, gens_of("H"), gens_of("E")};
}

DiagSubgroup::DiagSubgroup(const BlockGroupSpec& sp, std::vector<FMatrix> g) : spec(sp), gens(std::move(g)) {
  const std::size_t n = spec.dim();
  auto off = spec.offsets();
  std::vector<std::size_t> owner(n);
  for (std::size_t k = 0; k < spec.blocks.size(); ++k)
    for (std::size_t i = 0; i < spec.blocks[k]; ++i) owner[off[k] + i] = k;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const auto& m = gens[gi];
    if (!(m.field() == spec.field)) throw FieldMismatch("generator over another field");
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("generator size differs from the block shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (owner[i] != owner[j] && m(i, j) != 0)
          throw PreconditionError("generator " + std::to_string(gi + 1) + " has entries off the block diagonal");
    for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
      FMatrix b = block(spec, m, k);
      std::size_t r = rank(b);
      if (r != b.rows()) throw SingularMatrix(r, b.rows());
    }
  }
}

FMatrix DiagSubgroup::block(const BlockGroupSpec& spec, const FMatrix& m, std::size_t k) {
  auto off = spec.offsets();
  return m.submatrix(off.at(k), off.at(k), spec.blocks.at(k), spec.blocks.at(k));
}

std::string BlockPattern::to_string() const {
  std::string out;
  for (const auto& row : nonzero) {
    for (bool b : row) out += b ? 'X' : '.';
    out += '\n';
  }
  return out;
}

BlockPattern block_pattern(const FMatrix& m, const std::vector<std::size_t>& dims) {
  std::size_t n = 0;
  for (auto d : dims) n += d;
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("matrix size differs from the block dimensions");
  BlockPattern p{dims, std::vector<std::vector<bool>>(dims.size(), std::vector<bool>(dims.size(), false))};
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < dims.size(); r0 += dims[i++]) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < dims.size(); c0 += dims[j++])
      p.nonzero[i][j] = !m.submatrix(r0, c0, dims[i], dims[j]).is_zero();
  }
  return p;
}

namespace {

// Group elements stored as concatenated row-major diagonal blocks.
using Packed = std::vector<Residue>;

struct PackedHash {
  std::size_t operator()(const Packed& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

Packed pack(const BlockGroupSpec& s, const FMatrix& m) {
  Packed out;
  auto off = s.offsets();
  for (std::size_t k = 0; k < s.blocks.size(); ++k)
    for (std::size_t i = 0; i < s.blocks[k]; ++i)
      for (std::size_t j = 0; j < s.blocks[k]; ++j) out.push_back(m(off[k] + i, off[k] + j));
  return out;
}

Packed packed_mul(const BlockGroupSpec& s, const Packed& a, const Packed& b) {
  const PrimeField& f = s.field;
  Packed out(a.size(), 0);
  std::size_t base = 0;
  for (auto n : s.blocks) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        Residue x = a[base + i * n + k];
        if (!x) continue;
        for (std::size_t j = 0; j < n; ++j)
          out[base + i * n + j] = f.add(out[base + i * n + j], f.mul(x, b[base + k * n + j]));
      }
    base += n * n;
  }
  return out;
}

Packed packed_identity(const BlockGroupSpec& s) {
  Packed out;
  for (auto n : s.blocks)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.push_back(i == j ? 1 : 0);
  return out;
}

std::vector<Packed> enumerate(const BlockGroupSpec& s, const std::vector<FMatrix>& gens, std::size_t budget) {
  std::vector<Packed> g;
  for (const auto& m : gens) g.push_back(pack(s, m));
  std::vector<Packed> out{packed_identity(s)};
  std::unordered_set<Packed, PackedHash> seen(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& x : g) {
      Packed y = packed_mul(s, out[i], x);
      if (seen.insert(y).second) {
        if (out.size() >= budget) throw BudgetExceeded("subgroup exceeds the element budget");
        out.push_back(std::move(y));
      }
    }
  return out;
}

FMatrix block_of(const BlockGroupSpec& s, const Packed& v, std::size_t k) {
  std::size_t base = 0;
  for (std::size_t i = 0; i < k; ++i) base += s.blocks[i] * s.blocks[i];
  std::size_t n = s.blocks[k];
  std::vector<std::int64_t> e(v.begin() + base, v.begin() + base + n * n);
  return FMatrix(s.field, n, n, e);
}

// Similarity invariant: for each irreducible factor g of the characteristic
// polynomial, the ranks of g(A)^k until they stabilize.
std::string similarity_key(const FMatrix& a) {
  const PrimeField& f = a.field();
  std::mt19937_64 rng(1);
  std::string key;
  for (const auto& g : irreducible_factors(f, charpoly(a), rng)) {
    key += "[";
    for (auto c : g) key += std::to_string(c) + ",";
    key += ":";
    FMatrix m = poly_eval(g, a), pw = m;
    std::size_t prev = a.rows() + 1;
    for (;;) {
      std::size_t r = rank(pw);
      if (r == prev) break;
      key += std::to_string(r) + ",";
      prev = r;
      pw = mat_mul(pw, m);
    }
    key += "]";
  }
  return key;
}

BigInt centralizer_order(const FMatrix& a, std::uint64_t budget) {
  const PrimeField& f = a.field();
  const std::size_t n = a.rows();
  const std::uint64_t p = f.p();
  if (n == 1) return BigInt(p - 1);
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < n * n; ++i) {
    if (total > budget / p) {
      small = false;
      break;
    }
    total *= p;
  }
  if (small) {
    BigInt count = 0;
    std::vector<std::int64_t> e(n * n, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (auto& x : e) {
        x = static_cast<std::int64_t>(c % p);
        c /= p;
      }
      FMatrix x(f, n, n, e);
      if (mat_mul(a, x) == mat_mul(x, a) && rank(x) == n) ++count;
    }
    return count;
  }
  // Diagonalizable over GF(p): product of GL over eigenspaces.
  std::mt19937_64 rng(1);
  BigInt order = 1;
  std::size_t covered = 0;
  for (const auto& g : irreducible_factors(f, charpoly(a), rng)) {
    FMatrix m = poly_eval(g, a);
    if (g.size() != 2 || rank(m) != rank(mat_mul(m, m)))
      throw BudgetExceeded("block too large to enumerate and not diagonalizable over GF(p)");
    std::size_t mult = n - rank(m);
    covered += mult;
    order *= gl_order(mult, p);
  }
  if (covered != n) throw BudgetExceeded("block too large to enumerate and not diagonalizable over GF(p)");
  return order;
}

BigInt burnside(const BlockGroupSpec& s, const DiagSubgroup& h, const DiagSubgroup& e,
                const DoubleCosetOptions& opt) {
  auto hs = enumerate(s, h.gens, opt.element_budget);
  auto es = enumerate(s, e.gens, opt.element_budget);
  const std::size_t nb = s.blocks.size();
  std::vector<std::unordered_map<Packed, std::string, PackedHash>> key_cache(nb), inv_key_cache(nb);
  std::map<std::string, FMatrix> rep_of_key;  // per-block key -> representative
  auto block_key = [&](std::size_t k, const FMatrix& b) {
    std::string key = std::to_string(b.rows()) + "|" + similarity_key(b);
    rep_of_key.emplace(key, b);
    return key;
  };
  auto element_key = [&](const Packed& x, bool inverse) {
    std::vector<std::string> parts;
    for (std::size_t k = 0; k < nb; ++k) {
      FMatrix b = block_of(s, x, k);
      auto& cache = inverse ? inv_key_cache[k] : key_cache[k];
      Packed bp(b.data().begin(), b.data().end());
      auto it = cache.find(bp);
      if (it == cache.end()) it = cache.emplace(bp, block_key(k, inverse ? mat_inverse(b) : b)).first;
      parts.push_back(it->second);
    }
    return parts;
  };
  std::map<std::vector<std::string>, BigInt> count_h;
  for (const auto& x : hs) count_h[element_key(x, false)] += 1;
  std::map<std::vector<std::string>, BigInt> count_e;
  for (const auto& x : es) count_e[element_key(x, true)] += 1;
  std::map<std::string, BigInt> cent_cache;
  BigInt total = 0;
  for (const auto& [key, ch] : count_h) {
    auto it = count_e.find(key);
    if (it == count_e.end()) continue;
    BigInt cent = 1;
    for (const auto& part : key) {
      auto c = cent_cache.find(part);
      if (c == cent_cache.end())
        c = cent_cache.emplace(part, centralizer_order(rep_of_key.at(part), opt.block_enumeration_budget)).first;
      cent *= c->second;
    }
    total += ch * it->second * cent;
  }
  BigInt denom = BigInt(hs.size()) * BigInt(es.size());
  if (total % denom != 0) throw Error("Burnside sum is not divisible by |H||E|");
  return total / denom;
}

bool is_diagonal(const FMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

bool is_primitive(const PrimeField& f, Residue w) {
  if (w == 0) return false;
  Residue x = w;
  for (std::uint64_t k = 1; k < f.p() - 1; ++k) {
    if (x == 1) return false;
    x = f.mul(x, w);
  }
  return true;
}

BigInt normal_form(const BlockGroupSpec& s, const DiagSubgroup& h, const DiagSubgroup& e,
                   const DoubleCosetOptions& opt) {
  const PrimeField& f = s.field;
  for (const auto* g : {&h, &e})
    for (const auto& m : g->gens)
      if (!is_diagonal(m)) throw PreconditionError("normal form needs diagonal generators");
  auto off = s.offsets();
  const std::size_t n = s.dim();
  std::vector<std::size_t> gl_blocks, scalar_slots;
  for (std::size_t k = 0; k < s.blocks.size(); ++k)
    (s.blocks[k] > 1 ? gl_blocks : scalar_slots).push_back(k);

  // First-column generators diag(w,1,...,1) on a single block.
  std::vector<bool> used(e.gens.size(), false);
  for (std::size_t k : gl_blocks) {
    bool found = false;
    for (std::size_t gi = 0; gi < e.gens.size() && !found; ++gi) {
      if (used[gi]) continue;
      const auto& m = e.gens[gi];
      bool ok = is_primitive(f, m(off[k], off[k]));
      for (std::size_t i = 0; i < n && ok; ++i)
        if (i != off[k]) ok = m(i, i) == 1;
      if (ok) {
        used[gi] = true;
        found = true;
      }
    }
    if (!found)
      throw PreconditionError("normal form needs a generator diag(w,1,...,1) of E on block " + std::to_string(k + 1));
  }
  std::vector<FMatrix> rest;
  for (std::size_t gi = 0; gi < e.gens.size(); ++gi)
    if (!used[gi]) rest.push_back(e.gens[gi]);

  auto hs = enumerate(s, h.gens, opt.element_budget);
  auto rs = enumerate(s, rest, opt.element_budget);
  if (BigInt(hs.size()) * BigInt(rs.size()) > BigInt(opt.element_budget) * 100)
    throw BudgetExceeded("too many (h, e) pairs for the normal-form check");
  // Packed offsets of the diagonal entries.
  std::vector<std::size_t> base(s.blocks.size());
  for (std::size_t k = 1; k < s.blocks.size(); ++k) base[k] = base[k - 1] + s.blocks[k - 1] * s.blocks[k - 1];
  auto diag = [&](const Packed& x, std::size_t k, std::size_t i) { return x[base[k] + i * s.blocks[k] + i]; };

  std::set<std::vector<Residue>> image;
  for (const auto& x : hs)
    for (const auto& y : rs) {
      std::vector<Residue> t;
      bool trivial = true;
      for (std::size_t k : scalar_slots) {
        t.push_back(f.mul(diag(x, k, 0), diag(y, k, 0)));
        trivial = trivial && t.back() == 1;
      }
      image.insert(std::move(t));
      if (!trivial) continue;
      for (std::size_t k : gl_blocks) {
        Residue c = diag(x, k, 0);
        for (std::size_t i = 1; i < s.blocks[k]; ++i)
          if (diag(x, k, i) != c || f.mul(c, diag(y, k, i)) != 1)
            throw PreconditionError("normal form: an element fixing the scalar factors moves block " +
                                    std::to_string(k + 1) + " modulo first-column scalars");
      }
    }
  BigInt torus = 1;
  for (std::size_t i = 0; i < scalar_slots.size(); ++i) torus *= f.p() - 1;
  BigInt count = torus / BigInt(image.size());
  for (std::size_t k : gl_blocks) count *= gl_order(s.blocks[k], f.p()) / (f.p() - 1);
  return count;
}

}  // namespace

BigInt double_coset_count(const BlockGroupSpec& spec, const DiagSubgroup& h, const DiagSubgroup& e,
                          CosetMethod method, const DoubleCosetOptions& opt) {
  if (!(h.spec.field == spec.field) || h.spec.blocks != spec.blocks || !(e.spec.field == spec.field) ||
      e.spec.blocks != spec.blocks)
    throw PreconditionError("subgroups belong to another block shape");
  return method == CosetMethod::burnside ? burnside(spec, h, e, opt) : normal_form(spec, h, e, opt);
}

FMatrix instantiate(const PrimeField& f, const ConjugatorTemplate& t, const std::vector<Residue>& values) {
  const std::size_t k = t.dims.size();
  if (t.slots.size() != k) throw DimensionMismatch("template grid is not square");
  std::size_t n = 0;
  for (auto d : t.dims) n += d;
  FMatrix m(f, n, n);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < k; r0 += t.dims[i++]) {
    if (t.slots[i].size() != k) throw DimensionMismatch("template grid is not square");
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < k; c0 += t.dims[j++]) {
      const auto& slot = t.slots[i][j];
      if (slot.kind == TemplateSlot::Kind::zero) continue;
      if (t.dims[i] != t.dims[j]) throw PreconditionError("nonzero template slot between blocks of different sizes");
      Residue v = slot.kind == TemplateSlot::Kind::constant ? slot.value % f.p() : values.at(slot.unknown);
      for (std::size_t d = 0; d < t.dims[i]; ++d) m.set(r0 + d, c0 + d, v);
    }
  }
  return m;
}

namespace {

// r f' - f' r with f' = T^-1 f T, or nothing when T is singular.
std::optional<FMatrix> commutator_defect(const FMatrix& r, const FMatrix& fm, const FMatrix& t) {
  if (rank(t) != t.rows()) return std::nullopt;
  FMatrix fp = mat_mul(mat_mul(mat_inverse(t), fm), t);
  return mat_sub(mat_mul(r, fp), mat_mul(fp, r));
}

}  // namespace

SolveResult amalgam_solve(const PrimeField& f, const FMatrix& r, const FMatrix& fm, const ConjugatorTemplate& tmpl,
                          const std::vector<SolveStage>& plan, std::uint64_t seed) {
  const std::size_t nu = tmpl.unknown_names.size();
  std::vector<int> stage_of(nu, -1);
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (plan[s].unknowns.size() > 6) throw PreconditionError("stage " + std::to_string(s + 1) + " has more than 6 unknowns");
    for (auto u : plan[s].unknowns) {
      if (u >= nu) throw PreconditionError("stage refers to an unknown out of range");
      if (stage_of[u] != -1) throw PreconditionError("unknown " + tmpl.unknown_names[u] + " is fixed by two stages");
      stage_of[u] = static_cast<int>(s);
    }
    for (auto [i, j] : plan[s].equations)
      if (i >= tmpl.dims.size() || j >= tmpl.dims.size()) throw PreconditionError("stage equation block out of range");
  }
  for (std::size_t u = 0; u < nu; ++u)
    if (stage_of[u] == -1) throw PreconditionError("unknown " + tmpl.unknown_names[u] + " is not fixed by any stage");
  FMatrix probe = instantiate(f, tmpl, std::vector<Residue>(nu, 0));
  if (r.rows() != probe.rows() || fm.rows() != probe.rows() || !r.square() || !fm.square())
    throw DimensionMismatch("r, f and the template differ in size");

  std::vector<std::size_t> off(tmpl.dims.size(), 0);
  for (std::size_t i = 1; i < off.size(); ++i) off[i] = off[i - 1] + tmpl.dims[i - 1];
  auto stage_blocks = [&](const FMatrix& c, const SolveStage& st) {
    std::vector<FMatrix> out;
    for (auto [i, j] : st.equations) out.push_back(c.submatrix(off[i], off[j], tmpl.dims[i], tmpl.dims[j]));
    return out;
  };

  std::mt19937_64 rng(seed);
  SolveResult res;
  std::vector<std::vector<Residue>> partial{std::vector<Residue>(nu, 0)};
  for (std::size_t s = 0; s < plan.size(); ++s) {
    const auto& st = plan[s];
    std::vector<std::size_t> later;
    for (std::size_t u = 0; u < nu; ++u)
      if (stage_of[u] > static_cast<int>(s)) later.push_back(u);
    auto complete = [&](std::vector<Residue> v) -> std::optional<std::pair<FMatrix, FMatrix>> {
      for (int attempt = 0; attempt < (later.empty() ? 1 : 32); ++attempt) {
        for (auto u : later) v[u] = static_cast<Residue>(rng() % f.p());
        FMatrix t = instantiate(f, tmpl, v);
        if (auto c = commutator_defect(r, fm, t)) return std::make_pair(t, *c);
      }
      return std::nullopt;
    };
    std::vector<std::vector<Residue>> next;
    const std::size_t m = st.unknowns.size();
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < m; ++i) combos *= f.p();
    for (const auto& base : partial)
      for (std::uint64_t code = 0; code < combos; ++code) {
        std::vector<Residue> v = base;
        std::uint64_t c = code;
        for (std::size_t i = m; i-- > 0;) {
          v[st.unknowns[i]] = static_cast<Residue>(c % f.p());
          c /= f.p();
        }
        auto first = complete(v);
        if (!first) continue;
        auto blocks = stage_blocks(first->second, st);
        if (!later.empty()) {
          if (auto second = complete(v); second && stage_blocks(second->second, st) != blocks)
            throw PreconditionError("stage " + std::to_string(s + 1) + " equations depend on unknowns of later stages");
        }
        bool ok = true;
        for (const auto& b : blocks) ok = ok && b.is_zero();
        if (ok) next.push_back(std::move(v));
      }
    if (next.empty()) {
      res.failed_stage = s;
      res.detail = "no assignment satisfies stage " + std::to_string(s + 1);
      return res;
    }
    partial = std::move(next);
  }
  for (auto& v : partial) {
    auto c = commutator_defect(r, fm, instantiate(f, tmpl, v));
    if (c && c->is_zero()) res.assignments.push_back(std::move(v));
  }
  if (res.assignments.empty()) {
    res.failed_stage = plan.size();
    res.detail = "stage solutions fail the full commuting condition";
  }
  return res;
}

}  // namespace cgtk

namespace cgtk {

namespace {

using nlohmann::json;

FMatrix json_matrix(const PrimeField& f, const json& rows, std::size_t n, const char* what) {
  if (!rows.is_array() || rows.size() != n) throw ParseError(std::string(what) + " must have " + std::to_string(n) + " rows");
  std::vector<std::int64_t> e;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw ParseError(std::string(what) + " rows must have " + std::to_string(n) + " entries");
    for (const auto& x : row) e.push_back(x.get<std::int64_t>());
  }
  return FMatrix(f, n, n, e);
}

json matrix_json(const FMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

AmalgamProblem parse_amalgam_problem(const std::string& text) {
  try {
    json j = json::parse(text);
    PrimeField f(j.at("p").get<std::uint64_t>());
    ConjugatorTemplate t;
    t.dims = j.at("dims").get<std::vector<std::size_t>>();
    t.unknown_names = j.at("unknowns").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < t.unknown_names.size(); ++i)
      if (!index.emplace(t.unknown_names[i], i).second) throw ParseError("duplicate unknown " + t.unknown_names[i]);
    auto lookup = [&](const std::string& name) {
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("undeclared unknown " + name);
      return it->second;
    };
    const auto& cells = j.at("template");
    if (!cells.is_array() || cells.size() != t.dims.size()) throw ParseError("template must be a square grid over dims");
    for (const auto& row : cells) {
      if (!row.is_array() || row.size() != t.dims.size()) throw ParseError("template must be a square grid over dims");
      std::vector<TemplateSlot> slots;
      for (const auto& c : row) {
        if (c.is_string()) {
          slots.push_back({TemplateSlot::Kind::unknown, 0, lookup(c.get<std::string>())});
        } else {
          Residue v = f.reduce(c.get<std::int64_t>());
          slots.push_back(v == 0 ? TemplateSlot{} : TemplateSlot{TemplateSlot::Kind::constant, v, 0});
        }
      }
      t.slots.push_back(std::move(slots));
    }
    std::size_t n = 0;
    for (auto d : t.dims) n += d;
    std::vector<SolveStage> plan;
    for (const auto& st : j.at("plan")) {
      SolveStage s;
      for (const auto& u : st.at("unknowns")) s.unknowns.push_back(lookup(u.get<std::string>()));
      for (const auto& e : st.at("equations")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("equations are [row block, column block] pairs");
        s.equations.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
      }
      plan.push_back(std::move(s));
    }
    return {f, json_matrix(f, j.at("r"), n, "r"), json_matrix(f, j.at("f"), n, "f"), std::move(t), std::move(plan)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("amalgam problem: ") + e.what());
  }
}

std::string amalgam_problem_json(const AmalgamProblem& pr) {
  json j;
  j["p"] = pr.field.p();
  j["dims"] = pr.tmpl.dims;
  j["unknowns"] = pr.tmpl.unknown_names;
  j["r"] = matrix_json(pr.r);
  j["f"] = matrix_json(pr.f);
  json cells = json::array();
  for (const auto& row : pr.tmpl.slots) {
    json r = json::array();
    for (const auto& s : row) {
      if (s.kind == TemplateSlot::Kind::unknown)
        r.push_back(pr.tmpl.unknown_names.at(s.unknown));
      else
        r.push_back(s.kind == TemplateSlot::Kind::zero ? 0 : s.value);
    }
    cells.push_back(r);
  }
  j["template"] = cells;
  json plan = json::array();
  for (const auto& st : pr.plan) {
    json s;
    s["unknowns"] = json::array();
    for (auto u : st.unknowns) s["unknowns"].push_back(pr.tmpl.unknown_names.at(u));
    s["equations"] = json::array();
    for (auto [a, b] : st.equations) s["equations"].push_back({a, b});
    plan.push_back(s);
  }
  j["plan"] = plan;
  return j.dump(2);
}

}  // namespace cgtk
