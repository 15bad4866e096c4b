#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace oracle {

std::size_t rank_mod_p(IntMat m, std::int64_t p) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  auto md = [p](std::int64_t x) { return ((x % p) + p) % p; };
  auto inv = [&](std::int64_t a) {
    std::int64_t t = 0, nt = 1, rr = p, nr = md(a);
    while (nr) {
      std::int64_t q = rr / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(rr, nr) = std::make_pair(nr, rr - q * nr);
    }
    return md(t);
  };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (md(m[i][c]) != 0) {
        best = i;
        break;
      }
    if (best == rows) continue;
    std::swap(m[r], m[best]);
    std::int64_t iv = inv(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::int64_t f = md(m[i][c]) * iv % p;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = md(m[i][j] - f * md(m[r][j]));
    }
    ++r;
  }
  return r;
}

IntMat mul_mod_p(const IntMat& a, const IntMat& b, std::int64_t p) {
  IntMat c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < b.size(); ++k) s = (s + a[i][k] * b[k][j]) % p;
      c[i][j] = (s + p) % p;
    }
  return c;
}

namespace {
bool is_identity(const IntMat& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}
IntMat power(IntMat a, std::uint64_t e, std::int64_t p) {
  IntMat r(a.size(), std::vector<std::int64_t>(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i][i] = 1;
  while (e) {
    if (e & 1) r = mul_mod_p(r, a, p);
    a = mul_mod_p(a, a, p);
    e >>= 1;
  }
  return r;
}
}  // namespace

std::uint64_t matrix_order_by_squaring(const IntMat& a, std::int64_t p,
                                       std::uint64_t bound) {
  // Smallest divisor d of some exponent with a^d = I: test d = 1..bound
  // using fast powering (no incremental products).
  for (std::uint64_t d = 1; d <= bound; ++d)
    if (is_identity(power(a, d, p))) return d;
  throw std::runtime_error("order exceeds bound");
}

std::string fixture_path(const std::string& name) {
  const char* env = std::getenv("CGTK_FIXTURES");
  std::string dir = env ? env : CGTK_FIXTURE_DIR;
  return dir + "/" + name;
}

}  // namespace oracle

#include <map>
#include <numeric>
#include <set>

namespace oracle {

P compose(const P& a, const P& b) {
  P r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

P invert(const P& a) {
  P r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

int perm_order(const P& a) {
  P x = a;
  int k = 1;
  P id(a.size());
  std::iota(id.begin(), id.end(), 0);
  while (x != id) {
    x = compose(x, a);
    ++k;
  }
  return k;
}

std::vector<P> closure(const std::vector<P>& gens, std::size_t degree, std::size_t cap) {
  P id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<P> seen{id};
  std::vector<P> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      P y = compose(out[i], g);
      if (seen.insert(y).second) {
        out.push_back(y);
        if (out.size() > cap) throw std::runtime_error("closure cap");
      }
    }
  return out;
}

std::vector<BruteClass> brute_classes(const std::vector<P>& elements) {
  std::set<P> done;
  std::vector<BruteClass> out;
  for (const auto& x : elements) {
    if (done.count(x)) continue;
    std::set<P> cls;
    for (const auto& g : elements) cls.insert(compose(compose(invert(g), x), g));
    for (const auto& y : cls) done.insert(y);
    out.push_back({*cls.begin(), cls.size(), perm_order(x)});
  }
  return out;
}

}  // namespace oracle

namespace oracle {

namespace {
P random_perm_on(std::mt19937_64& rng, std::size_t degree, std::size_t lo, std::size_t hi) {
  P p(degree);
  std::iota(p.begin(), p.end(), 0);
  int kind = static_cast<int>(rng() % 3);
  std::vector<int> pts(hi - lo);
  std::iota(pts.begin(), pts.end(), static_cast<int>(lo));
  std::shuffle(pts.begin(), pts.end(), rng);
  if (kind == 0) {
    P q = pts;
    std::shuffle(q.begin(), q.end(), rng);
    for (std::size_t i = 0; i < pts.size(); ++i) p[pts[i]] = q[i];
  } else if (kind == 1) {
    std::size_t len = 2 + rng() % (pts.size() - 1);
    for (std::size_t i = 0; i < len; ++i) p[pts[i]] = pts[(i + 1) % len];
  } else {
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2)
      if (rng() & 1) std::swap(p[pts[i]], p[pts[i + 1]]);
  }
  return p;
}
}  // namespace

SmallGroup random_small_group(std::mt19937_64& rng) {
  SmallGroup g;
  std::size_t ngens = 1 + rng() % 3;
  if (rng() % 4 == 0) {
    g.degree = 9;
    for (std::size_t i = 0; i < ngens; ++i) {
      P a = random_perm_on(rng, 9, 0, 5), b = random_perm_on(rng, 9, 5, 9);
      g.gens.push_back(compose(a, b));
    }
  } else {
    g.degree = 3 + rng() % 6;
    for (std::size_t i = 0; i < ngens; ++i) g.gens.push_back(random_perm_on(rng, g.degree, 0, g.degree));
  }
  return g;
}

}  // namespace oracle

namespace oracle {

namespace {

using i64 = std::int64_t;

i64 pmod(i64 a, i64 p) { return ((a % p) + p) % p; }

i64 ppow(i64 a, i64 e, i64 p) {
  i64 r = 1;
  a = pmod(a, p);
  for (; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

i64 pinv(i64 a, i64 p) { return ppow(a, p - 2, p); }

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Rows of the result span {x : a x = 0} for an s x s matrix a.
std::vector<std::vector<i64>> null_space(std::vector<std::vector<i64>> a, i64 p) {
  std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  std::vector<int> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    i64 iv = pinv(a[r][c], p);
    for (auto& v : a[r]) v = v * iv % p;
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && a[i][c]) {
        i64 f = a[i][c];
        for (std::size_t j = 0; j < m; ++j) a[i][j] = pmod(a[i][j] - f * a[r][j], p);
      }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<i64>> out;
  for (std::size_t free = 0; free < m; ++free) {
    if (std::find(pivcol.begin(), pivcol.end(), static_cast<int>(free)) != pivcol.end()) continue;
    std::vector<i64> x(m, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = pmod(-a[i][free], p);
    out.push_back(x);
  }
  return out;
}

// Column basis in reduced form: rows of `basis` are the spanning vectors;
// after reduction basis[i][piv[i]] = 1 and other basis rows vanish there.
struct Sub {
  std::vector<std::vector<i64>> basis;
  std::vector<std::size_t> piv;
};

Sub reduce_sub(std::vector<std::vector<i64>> b, i64 p) {
  Sub s;
  std::size_t r = 0, m = b.empty() ? 0 : b[0].size();
  for (std::size_t c = 0; c < m && r < b.size(); ++c) {
    std::size_t piv = r;
    while (piv < b.size() && b[piv][c] == 0) ++piv;
    if (piv == b.size()) continue;
    std::swap(b[piv], b[r]);
    i64 iv = pinv(b[r][c], p);
    for (auto& v : b[r]) v = v * iv % p;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (i != r && b[i][c]) {
        i64 f = b[i][c];
        for (std::size_t j = 0; j < m; ++j) b[i][j] = pmod(b[i][j] - f * b[r][j], p);
      }
    s.piv.push_back(c);
    ++r;
  }
  b.resize(r);
  s.basis = std::move(b);
  return s;
}

}  // namespace

BruteTable dixon_table(const std::vector<P>& gens, std::size_t degree) {
  BruteTable t;
  t.elements = closure(gens, degree);
  auto cls = brute_classes(t.elements);
  for (std::size_t k = 0; k < cls.size(); ++k) {
    t.reps.push_back(cls[k].rep);
    t.sizes.push_back(cls[k].size);
    t.orders.push_back(cls[k].order);
    for (const auto& g : t.elements) t.class_of[compose(compose(invert(g), cls[k].rep), g)] = k;
  }
  const std::size_t r = cls.size();
  const i64 order = static_cast<i64>(t.elements.size());
  for (int o : t.orders) t.exponent = std::lcm(t.exponent, o);
  const i64 e = t.exponent;
  i64 p = e + 1;
  while (!is_prime(p) || p * p <= 4 * order) p += e;

  // c[j][i][k] = #{x in K_j : x^-1 g_k in K_i}.
  std::vector<std::vector<std::vector<i64>>> c(r, std::vector<std::vector<i64>>(r, std::vector<i64>(r, 0)));
  for (const auto& x : t.elements) {
    std::size_t j = t.class_of.at(x);
    P xi = invert(x);
    for (std::size_t k = 0; k < r; ++k) c[j][t.class_of.at(compose(xi, t.reps[k]))][k] += 1;
  }

  std::vector<std::vector<i64>> id(r, std::vector<i64>(r, 0));
  for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
  std::vector<Sub> spaces{reduce_sub(id, p)};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<Sub> next;
    for (const auto& s : spaces) {
      std::size_t d = s.basis.size();
      if (d == 1) {
        next.push_back(s);
        continue;
      }
      // a = restriction of M_j to the subspace, read off at the pivot rows.
      std::vector<std::vector<i64>> a(d, std::vector<i64>(d, 0));
      for (std::size_t col = 0; col < d; ++col)
        for (std::size_t row = 0; row < d; ++row) {
          i64 v = 0;
          std::size_t i = s.piv[row];
          for (std::size_t k = 0; k < r; ++k) v += c[j][i][k] * s.basis[col][k] % p;
          a[row][col] = v % p;
        }
      std::size_t found = 0;
      for (i64 lam = 0; lam < p && found < d; ++lam) {
        auto b = a;
        for (std::size_t i = 0; i < d; ++i) b[i][i] = pmod(b[i][i] - lam, p);
        auto ns = null_space(b, p);
        if (ns.empty()) continue;
        std::vector<std::vector<i64>> vecs;
        for (const auto& x : ns) {
          std::vector<i64> v(r, 0);
          for (std::size_t q = 0; q < d; ++q)
            for (std::size_t k = 0; k < r; ++k) v[k] = (v[k] + x[q] * s.basis[q][k]) % p;
          vecs.push_back(v);
        }
        found += vecs.size();
        next.push_back(reduce_sub(vecs, p));
      }
      if (found != d) throw std::runtime_error("dixon: class matrix not diagonalizable");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw std::runtime_error("dixon: eigenspaces did not split");

  std::size_t idc = 0;
  while (t.orders[idc] != 1) ++idc;
  std::vector<std::size_t> inv_class(r);
  for (std::size_t k = 0; k < r; ++k) inv_class[k] = t.class_of.at(invert(t.reps[k]));
  // A generator of GF(p)^*.
  i64 w = 2;
  for (;; ++w) {
    bool gen = true;
    for (i64 q = 2; q < p; ++q)
      if ((p - 1) % q == 0 && is_prime(q) && ppow(w, (p - 1) / q, p) == 1) gen = false;
    if (gen) break;
  }
  i64 zeta = ppow(w, (p - 1) / e, p);

  for (const auto& s : spaces) {
    std::vector<i64> v = s.basis[0];
    i64 norm = pinv(v[idc], p);
    for (auto& x : v) x = x * norm % p;
    i64 sum = 0;
    for (std::size_t k = 0; k < r; ++k)
      sum = (sum + v[k] * v[inv_class[k]] % p * pinv(static_cast<i64>(t.sizes[k]) % p, p)) % p;
    i64 target = order % p * pinv(sum, p) % p;
    int deg = 0;
    for (int d = 1; static_cast<i64>(d) * d <= order; ++d)
      if (static_cast<i64>(d) * d % p == target) deg = d;
    if (deg == 0) throw std::runtime_error("dixon: no degree found");
    std::vector<i64> chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = v[k] * deg % p * pinv(static_cast<i64>(t.sizes[k]) % p, p) % p;
    std::vector<std::vector<int>> row;
    for (std::size_t k = 0; k < r; ++k) {
      std::vector<int> m(e, 0);
      P g = t.reps[k];
      std::vector<i64> pw(e);
      P x(g.size());
      std::iota(x.begin(), x.end(), 0);
      for (i64 j = 0; j < e; ++j) {
        pw[j] = chi[t.class_of.at(x)];
        x = compose(x, g);
      }
      i64 einv = pinv(e % p, p);
      for (i64 tt = 0; tt < e; ++tt) {
        i64 acc = 0;
        for (i64 j = 0; j < e; ++j) acc = (acc + pw[j] * ppow(zeta, pmod(-j * tt, e), p)) % p;
        acc = acc * einv % p;
        if (acc > deg) throw std::runtime_error("dixon: multiplicity out of range");
        m[tt] = static_cast<int>(acc);
      }
      row.push_back(m);
    }
    t.chars.push_back(row);
    t.degrees.push_back(deg);
  }
  // Trivial character first, then by degree.
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    bool ta = true, tb = true;
    for (std::size_t k = 0; k < r; ++k) {
      ta = ta && t.chars[a][k][0] == 1 && t.degrees[a] == 1;
      tb = tb && t.chars[b][k][0] == 1 && t.degrees[b] == 1;
    }
    if (ta != tb) return ta;
    return t.degrees[a] < t.degrees[b];
  });
  auto chars = t.chars;
  auto degs = t.degrees;
  for (std::size_t i = 0; i < r; ++i) {
    t.chars[i] = chars[idx[i]];
    t.degrees[i] = degs[idx[i]];
  }
  return t;
}

}  // namespace oracle
