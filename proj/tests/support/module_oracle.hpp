#pragma once

// Brute-force references for modules over small prime fields.

#include <algorithm>
#include <numeric>
#include <random>

#include "cgtk/modrep.hpp"
#include "oracles.hpp"

namespace oracle {

using cgtk::FMatrix;
using cgtk::GModule;
using cgtk::PrimeField;
using cgtk::Residue;
using cgtk::Vec;


inline IntMat to_int(const FMatrix& m) {
  IntMat r(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

inline IntMat rows_of(const std::vector<Vec>& vs) {
  IntMat r;
  for (const auto& v : vs) r.emplace_back(v.begin(), v.end());
  return r;
}

inline FMatrix random_matrix(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  FMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<Residue>(rng() % f.p()));
  return m;
}

inline FMatrix random_invertible(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    FMatrix m = random_matrix(f, n, rng);
    if (cgtk::rank(m) == n) return m;
  }
}

// Dimension of the span of v under the generators, by rank growth mod p.
inline std::size_t oracle_spin_dim(const std::vector<IntMat>& gens, const std::vector<std::int64_t>& v,
                            std::int64_t p) {
  IntMat basis{v};
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : gens) {
      IntMat w = mul_mod_p({basis[i]}, g, p);
      IntMat trial = basis;
      trial.push_back(w[0]);
      if (rank_mod_p(trial, p) > basis.size()) basis.push_back(w[0]);
    }
  return basis.size();
}

// Irreducible iff every nonzero vector spins to the whole space.
inline bool oracle_irreducible(const GModule& m) {
  const std::int64_t p = m.field().p();
  const std::size_t n = m.dim();
  std::vector<IntMat> gens;
  for (const auto& a : m.actions()) gens.push_back(to_int(a));
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<std::int64_t> v(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= p) v[i] = static_cast<std::int64_t>(c % p);
    if (oracle_spin_dim(gens, v, p) < n) return false;
  }
  return true;
}

inline bool invariant(const GModule& m, const std::vector<Vec>& basis) {
  if (basis.empty()) return true;
  const std::int64_t p = m.field().p();
  IntMat b = rows_of(basis);
  for (const auto& a : m.actions()) {
    IntMat img = mul_mod_p(b, to_int(a), p), both = b;
    both.insert(both.end(), img.begin(), img.end());
    if (rank_mod_p(both, p) != rank_mod_p(b, p)) return false;
  }
  return true;
}

inline GModule random_small_module(const PrimeField& f, std::mt19937_64& rng) {
  std::size_t n = 1 + rng() % 6;
  if (f.p() == 3 && n > 5) n = 5;
  switch (rng() % 5) {
    case 0: {  // a few random generators
      std::vector<FMatrix> g;
      for (std::size_t k = 0; k < 1 + rng() % 2; ++k) g.push_back(random_invertible(f, n, rng));
      return GModule(f, n, g);
    }
    case 1: {  // cyclic group
      return GModule(f, n, {random_invertible(f, n, rng)});
    }
    case 2: {  // block upper triangular
      if (n < 2) n = 2;
      std::size_t k = 1 + rng() % (n - 1);
      std::vector<FMatrix> g;
      for (int t = 0; t < 2; ++t) {
        FMatrix a = random_invertible(f, k, rng), b = random_invertible(f, n - k, rng);
        FMatrix m = FMatrix::block_diagonal({a, b});
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = k; j < n; ++j) m.set(i, j, static_cast<Residue>(rng() % f.p()));
        g.push_back(m);
      }
      return GModule(f, n, g);
    }
    case 3: {  // permutation matrices
      std::vector<FMatrix> g;
      for (int t = 0; t < 2; ++t) {
        std::vector<std::size_t> pi(n);
        std::iota(pi.begin(), pi.end(), 0);
        std::shuffle(pi.begin(), pi.end(), rng);
        FMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, pi[i], 1);
        g.push_back(m);
      }
      return GModule(f, n, g);
    }
    default: {  // conjugated monomial-type generators
      FMatrix c = random_invertible(f, n, rng), ci = cgtk::mat_inverse(c);
      std::vector<FMatrix> g;
      for (int t = 0; t < 2; ++t) {
        FMatrix d(f, n, n);
        std::vector<std::size_t> pi(n);
        std::iota(pi.begin(), pi.end(), 0);
        std::rotate(pi.begin(), pi.begin() + (t == 0 ? 1 % n : 0), pi.end());
        for (std::size_t i = 0; i < n; ++i) d.set(i, pi[i], static_cast<Residue>(1 + rng() % (f.p() - 1)));
        g.push_back(cgtk::mat_mul(cgtk::mat_mul(ci, d), c));
      }
      return GModule(f, n, g);
    }
  }
}

// Every invertible matrix of GL(n, p), by enumeration.
inline bool oracle_isomorphic(const GModule& a, const GModule& b) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= f.p();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::int64_t> e(n * n);
    std::size_t c = code;
    for (auto& x : e) {
      x = static_cast<std::int64_t>(c % f.p());
      c /= f.p();
    }
    FMatrix t(f, n, n, e);
    if (cgtk::rank(t) != n) continue;
    bool ok = true;
    for (std::size_t g = 0; g < a.ngens() && ok; ++g)
      ok = cgtk::mat_mul(a.action(g), t) == cgtk::mat_mul(t, b.action(g));
    if (ok) return true;
  }
  return false;
}

}  // namespace oracle
