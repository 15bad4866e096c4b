#include "cgtk/poly.hpp"

#include <algorithm>

namespace cgtk {

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t poly_degree(const Poly& a) { return a.empty() ? 0 : a.size() - 1; }

Poly poly_add(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  poly_trim(r);
  return r;
}

Poly poly_sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  poly_trim(r);
  return r;
}

Poly poly_mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  poly_trim(r);
  return r;
}

std::pair<Poly, Poly> poly_divmod(const PrimeField& f, const Poly& a, const Poly& b) {
  if (b.empty()) throw PreconditionError("polynomial division by zero");
  Poly r = a;
  poly_trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  Residue lead_inv = f.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    Residue c = f.mul(r[k + b.size() - 1], lead_inv);
    q[k] = c;
    if (c)
      for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = f.sub(r[k + j], f.mul(c, b[j]));
  }
  poly_trim(q);
  poly_trim(r);
  return {q, r};
}

Poly poly_mod(const PrimeField& f, const Poly& a, const Poly& m) { return poly_divmod(f, a, m).second; }

Poly poly_monic(const PrimeField& f, Poly a) {
  poly_trim(a);
  if (a.empty()) return a;
  Residue inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

Poly poly_gcd(const PrimeField& f, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, a);
}

Poly poly_powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly r{1};
  r = poly_mod(f, r, m);
  base = poly_mod(f, base, m);
  while (e) {
    if (e & 1) r = poly_mod(f, poly_mul(f, r, base), m);
    e >>= 1;
    if (e) base = poly_mod(f, poly_mul(f, base, base), m);
  }
  return r;
}

Poly charpoly(const FMatrix& a) {
  if (!a.square()) throw DimensionMismatch("charpoly of a non-square matrix");
  const PrimeField& f = a.field();
  const std::size_t n = a.rows();
  std::vector<std::vector<Residue>> h(n, std::vector<Residue>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = a(i, j);

  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    Residue piv_inv = f.inv(h[m][m - 1]);
    for (std::size_t j = m + 1; j < n; ++j) {
      Residue u = f.mul(h[j][m - 1], piv_inv);
      if (!u) continue;
      for (std::size_t k = 0; k < n; ++k) h[j][k] = f.sub(h[j][k], f.mul(u, h[m][k]));
      for (std::size_t k = 0; k < n; ++k) h[k][m] = f.add(h[k][m], f.mul(u, h[k][j]));
    }
  }

  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Poly x_minus{f.neg(h[m - 1][m - 1]), 1};
    Poly cur = poly_mul(f, x_minus, p[m - 1]);
    Residue t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = f.mul(t, h[i][i - 1]);
      Residue c = f.mul(h[i - 1][m - 1], t);
      if (c) cur = poly_sub(f, cur, poly_mul(f, Poly{c}, p[i - 1]));
    }
    p[m] = cur;
  }
  return p[n];
}

FMatrix poly_eval(const Poly& p, const FMatrix& a) {
  const PrimeField& f = a.field();
  FMatrix r(f, a.rows(), a.cols());
  for (std::size_t k = p.size(); k-- > 0;) {
    r = mat_mul(r, a);
    for (std::size_t i = 0; i < a.rows(); ++i) r.set(i, i, f.add(r(i, i), p[k]));
  }
  return r;
}

namespace {

Poly random_poly(const PrimeField& f, std::size_t deg, std::mt19937_64& rng) {
  Poly r(deg + 1);
  for (auto& c : r) c = static_cast<Residue>(rng() % f.p());
  poly_trim(r);
  return r;
}

// Splits a squarefree product of distinct degree-d irreducibles.
void equal_degree_split(const PrimeField& f, const Poly& g, std::size_t d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  if (poly_degree(g) == d) {
    out.push_back(g);
    return;
  }
  const Residue p = f.p();
  for (;;) {
    Poly a = random_poly(f, poly_degree(g) - 1, rng);
    if (poly_degree(a) == 0) continue;
    Poly t;
    if (p == 2) {
      // Trace a + a^2 + ... + a^(2^(d-1)).
      Poly s = poly_mod(f, a, g), cur = s;
      for (std::size_t j = 1; j < d; ++j) {
        cur = poly_mod(f, poly_mul(f, cur, cur), g);
        s = poly_add(f, s, cur);
      }
      t = s;
    } else {
      // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2).
      Poly norm{1}, cur = poly_mod(f, a, g);
      for (std::size_t j = 0; j < d; ++j) {
        norm = poly_mod(f, poly_mul(f, norm, cur), g);
        if (j + 1 < d) cur = poly_powmod(f, cur, p, g);
      }
      t = poly_sub(f, poly_powmod(f, norm, (p - 1) / 2, g), Poly{1});
    }
    Poly h = poly_gcd(f, t, g);
    std::size_t dh = poly_degree(h);
    if (h.empty() || dh == 0 || dh == poly_degree(g)) continue;
    equal_degree_split(f, h, d, rng, out);
    equal_degree_split(f, poly_divmod(f, g, h).first, d, rng, out);
    return;
  }
}

}  // namespace

std::vector<Poly> irreducible_factors(const PrimeField& f, const Poly& a, std::mt19937_64& rng) {
  Poly rem = poly_monic(f, a);
  if (rem.empty()) throw PreconditionError("factoring the zero polynomial");
  std::vector<Poly> out;
  const Poly x{0, 1};
  Poly xp = x;  // x^(p^i) mod rem
  for (std::size_t i = 1; poly_degree(rem) >= 2 * i; ++i) {
    xp = poly_powmod(f, xp, f.p(), rem);
    Poly g = poly_gcd(f, poly_sub(f, xp, x), rem);
    if (poly_degree(g) == 0) continue;
    for (Poly c = g; poly_degree(c) > 0; c = poly_gcd(f, rem, g)) rem = poly_divmod(f, rem, c).first;
    xp = poly_mod(f, xp, rem);
    equal_degree_split(f, g, i, rng, out);
  }
  if (poly_degree(rem) > 0) out.push_back(rem);
  std::sort(out.begin(), out.end(), [](const Poly& u, const Poly& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
  });
  return out;
}

}  // namespace cgtk
