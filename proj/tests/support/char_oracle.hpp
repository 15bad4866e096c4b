#pragma once

// Brute-force character tables wrapped as library tables, for tests.

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <numeric>

#include "cgtk/chartab.hpp"
#include "oracles.hpp"

namespace oracle {

using cgtk::CharacterTable;
using cgtk::ClassRecord;
using cgtk::Cyclotomic;
using cgtk::Permutation;
using cgtk::Point;
using cgtk::Rational;

inline P cyc(std::size_t n, std::vector<std::vector<int>> cycles) {
  P p(n);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) p[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  return p;
}

inline Permutation to_perm(const P& p) { return Permutation(std::vector<Point>(p.begin(), p.end())); }

inline P power(const P& g, int k) {
  P x(g.size());
  std::iota(x.begin(), x.end(), 0);
  for (int i = 0; i < k; ++i) x = oracle::compose(x, g);
  return x;
}

inline std::vector<std::uint64_t> primes_of(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  return out;
}

struct Built {
  oracle::BruteTable bt;
  std::shared_ptr<CharacterTable> table;
};

inline Built build(const std::vector<P>& gens, std::size_t degree) {
  Built b{oracle::dixon_table(gens, degree), std::make_shared<CharacterTable>()};
  auto& t = *b.table;
  const auto& bt = b.bt;
  t.order = bt.elements.size();
  t.conductor = bt.exponent;
  for (std::size_t k = 0; k < bt.reps.size(); ++k) {
    ClassRecord r;
    r.name = std::to_string(bt.orders[k]) + "_" + std::to_string(k);
    r.element_order = bt.orders[k];
    r.size = bt.sizes[k];
    r.centralizer = bt.elements.size() / bt.sizes[k];
    for (auto q : primes_of(bt.elements.size())) r.powermap[q] = bt.class_of.at(power(bt.reps[k], q));
    t.classes.push_back(r);
  }
  for (const auto& row : bt.chars) {
    std::vector<Cyclotomic> v;
    for (const auto& m : row) {
      std::map<long, Rational> c;
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j]) c[static_cast<long>(j)] = m[j];
      v.push_back(Cyclotomic::from_powers(bt.exponent, c));
    }
    t.chars.push_back(v);
  }
  return b;
}

/// The brute-force table reordered to follow a library class list.
inline std::shared_ptr<const CharacterTable> aligned_table(const BruteTable& bt, const CharacterTable& t,
                                                           const cgtk::ClassList& cl) {
  std::vector<std::vector<Cyclotomic>> chars(t.chars.size());
  for (const auto& c : cl.classes) {
    const auto& imgs = c.rep->images();
    std::size_t k = bt.class_of.at(P(imgs.begin(), imgs.end()));
    for (std::size_t i = 0; i < chars.size(); ++i) chars[i].push_back(t.chars[i][k]);
  }
  return std::make_shared<const CharacterTable>(cgtk::table_from_classes(cl, chars));
}

// Complex value of an oracle character entry.
inline std::complex<double> cval(const std::vector<int>& m) {
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < m.size(); ++j)
    s += double(m[j]) * std::polar(1.0, 2 * M_PI * double(j) / double(m.size()));
  return s;
}

// Class fusion of a subgroup table into the group table by conjugacy.
inline cgtk::Fusion fuse(const Built& h, const Built& g) {
  cgtk::Fusion f;
  for (const auto& r : h.bt.reps) f.push_back(g.bt.class_of.at(r));
  return f;
}

inline std::vector<P> centralizer(const std::vector<P>& els, const P& z) {
  std::vector<P> out;
  for (const auto& x : els)
    if (compose(x, z) == compose(z, x)) out.push_back(x);
  return out;
}

inline bool is_identity(const P& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

// Brute force: pairs (x, y) in z^G x u^G with w a power of xy.
inline std::size_t brute_r(const Built& g, std::size_t zc, std::size_t uc, const P& w) {
  std::vector<P> zs, us;
  for (const auto& x : g.bt.elements) {
    auto k = g.bt.class_of.at(x);
    if (k == zc) zs.push_back(x);
    if (k == uc) us.push_back(x);
  }
  std::size_t n = 0;
  for (const auto& x : zs)
    for (const auto& y : us) {
      P xy = compose(x, y), acc = xy;
      for (int i = 0; i < 64 && !is_identity(acc); ++i) {
        if (acc == w) {
          ++n;
          break;
        }
        acc = compose(acc, xy);
      }
    }
  return n;
}

// r(z,u,w) through the character table of C_G(w).
inline Rational table_r(const Built& g, std::size_t zc, std::size_t uc, const P& w, std::size_t degree) {
  auto cw = centralizer(g.bt.elements, w);
  Built h = build(cw, degree);
  auto f = fuse(h, g);
  std::vector<std::size_t> z, u, t;
  for (std::size_t k = 0; k < h.bt.reps.size(); ++k) {
    if (*f[k] == zc) z.push_back(k);
    if (*f[k] == uc) u.push_back(k);
    int o = h.bt.orders[k];
    if (o % 2 == 0 && power(h.bt.reps[k], o / 2) == w) t.push_back(k);
  }
  if (z.empty() || u.empty()) return 0;
  return cgtk::thompson_r(*h.table, z, u, t);
}

inline std::vector<std::size_t> involution_classes(const Built& g) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < g.bt.orders.size(); ++k)
    if (g.bt.orders[k] == 2) out.push_back(k);
  return out;
}

inline bool order_at_most(const std::vector<P>& gens, std::size_t degree, std::size_t n) {
  try {
    closure(gens, degree, n);
    return true;
  } catch (const std::runtime_error&) {
    return false;
  }
}

inline std::vector<P> sym_gens(std::size_t n) {
  std::vector<int> c(n);
  std::iota(c.begin(), c.end(), 1);
  return {cyc(n, {{1, 2}}), cyc(n, {c})};
}

}  // namespace oracle
