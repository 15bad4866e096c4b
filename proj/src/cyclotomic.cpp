#include "cgtk/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace cgtk {

namespace {

std::vector<BigInt> compute_phi(unsigned n);

const std::vector<BigInt>& phi_cached(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<BigInt>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_phi(n)).first;
  return it->second;
}

// Exact division of a by the monic polynomial b.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  std::size_t db = b.size() - 1;
  std::vector<BigInt> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    BigInt c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::vector<BigInt> compute_phi(unsigned n) {
  std::vector<BigInt> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(std::move(p), compute_phi(d));
  return p;
}

Residue residue_of(const Rational& q, const PrimeField& f) {
  BigInt num = boost::multiprecision::numerator(q) % f.p();
  BigInt den = boost::multiprecision::denominator(q) % f.p();
  if (den == 0) throw PreconditionError("denominator divisible by p");
  auto r = [&](const BigInt& x) {
    long long v = static_cast<long long>(x);
    return f.reduce(v);
  };
  return f.mul(r(num), f.inv(r(den)));
}

long mod_floor(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw PreconditionError("conductor must be positive");
  return phi_cached(n);
}

unsigned euler_phi(unsigned n) {
  unsigned r = n;
  for (unsigned p = 2, m = n; m > 1; ++p) {
    if (p * p > m) p = m;
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  }
  return r;
}

Cyclotomic::Cyclotomic(Rational q) : n_(1), c_{std::move(q)} {}

void Cyclotomic::reduce_from(std::vector<Rational> full) {
  // Fold exponents modulo n, then divide by Phi_n.
  std::vector<Rational> folded(n_, Rational(0));
  for (std::size_t j = 0; j < full.size(); ++j) folded[j % n_] += full[j];
  const auto& phi = cyclotomic_polynomial(n_);
  std::size_t d = phi.size() - 1;
  for (std::size_t i = folded.size(); i-- > d;) {
    Rational c = folded[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) folded[i - d + j] -= c * Rational(phi[j]);
  }
  folded.resize(d);
  c_ = std::move(folded);
}

Cyclotomic Cyclotomic::zeta(unsigned n, long k) { return from_powers(n, {{k, Rational(1)}}); }

Cyclotomic Cyclotomic::from_powers(unsigned n, const std::map<long, Rational>& coeffs) {
  if (n == 0) throw PreconditionError("conductor must be positive");
  std::vector<Rational> full(n, Rational(0));
  for (const auto& [k, c] : coeffs) full[mod_floor(k, n)] += c;
  Cyclotomic x;
  x.n_ = n;
  x.reduce_from(std::move(full));
  return x;
}

Cyclotomic Cyclotomic::in_field(unsigned m) const {
  if (m == 0 || m % n_ != 0)
    throw PreconditionError("Q(zeta_" + std::to_string(n_) + ") is not contained in Q(zeta_" +
                            std::to_string(m) + ")");
  if (m == n_) return *this;
  std::vector<Rational> full(m, Rational(0));
  unsigned step = m / n_;
  for (std::size_t k = 0; k < c_.size(); ++k) full[k * step] += c_[k];
  Cyclotomic x;
  x.n_ = m;
  x.reduce_from(std::move(full));
  return x;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

std::optional<Rational> Cyclotomic::to_rational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return std::nullopt;
  return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::galois(long k) const {
  if (std::gcd(static_cast<unsigned long>(mod_floor(k, n_)), static_cast<unsigned long>(n_)) != 1)
    throw PreconditionError("Galois exponent not prime to the conductor");
  std::vector<Rational> full(n_, Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) full[mod_floor(static_cast<long>(j) * k, n_)] += c_[j];
  Cyclotomic x;
  x.n_ = n_;
  x.reduce_from(std::move(full));
  return x;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  unsigned m = std::lcm(n_, o.n_);
  if (m != n_) *this = in_field(m);
  Cyclotomic b = o.in_field(m);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic x = *this;
  for (auto& c : x.c_) c = -c;
  return x;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  unsigned m = std::lcm(n_, o.n_);
  Cyclotomic a = in_field(m), b = o.in_field(m);
  std::vector<Rational> full(a.c_.size() + b.c_.size(), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) full[i + j] += a.c_[i] * b.c_[j];
  }
  n_ = m;
  reduce_from(std::move(full));
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& c : c_) c *= q;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& q) {
  if (q == 0) throw PreconditionError("division by zero");
  for (auto& c : c_) c /= q;
  return *this;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  unsigned m = std::lcm(n_, o.n_);
  return in_field(m).c_ == o.in_field(m).c_;
}

Cyclotomic Cyclotomic::minimal() const {
  for (unsigned d = 1; d < n_; ++d) {
    if (n_ % d != 0) continue;
    // Solve sum_j x_j zeta_d^j = *this over Q, columns in the Q(zeta_n) basis.
    const std::size_t rows = c_.size(), cols = euler_phi(d);
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j) {
      auto col = zeta(n_, static_cast<long>(j * (n_ / d))).in_field(n_).coeffs();
      for (std::size_t i = 0; i < rows; ++i) m[i][j] = col[i];
    }
    for (std::size_t i = 0; i < rows; ++i) m[i][cols] = c_[i];
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
      std::size_t i = r;
      while (i < rows && m[i][j] == 0) ++i;
      if (i == rows) continue;
      std::swap(m[i], m[r]);
      for (std::size_t k = 0; k < rows; ++k) {
        if (k == r || m[k][j] == 0) continue;
        Rational t = m[k][j] / m[r][j];
        for (std::size_t c = j; c <= cols; ++c) m[k][c] -= t * m[r][c];
      }
      piv.push_back(j);
      ++r;
    }
    bool consistent = true;
    for (std::size_t i = r; i < rows; ++i) consistent = consistent && m[i][cols] == 0;
    if (!consistent) continue;
    std::map<long, Rational> coeffs;
    for (std::size_t k = 0; k < piv.size(); ++k) coeffs[static_cast<long>(piv[k])] = m[k][cols] / m[k][piv[k]];
    return from_powers(d, coeffs);
  }
  return *this;
}

Residue Cyclotomic::reduce_mod(const PrimeField& f) const {
  if ((f.p() - 1) % n_ != 0) {
    Cyclotomic m = minimal();
    if (m.n_ < n_) return m.reduce_mod(f);
  }
  if ((f.p() - 1) % n_ != 0)
    throw PreconditionError("conductor " + std::to_string(n_) + " does not divide p-1 = " +
                            std::to_string(f.p() - 1));
  Residue z = f.pow(f.primitive_root(), (f.p() - 1) / n_);
  Residue acc = 0, zk = 1;
  for (const auto& c : c_) {
    acc = f.add(acc, f.mul(residue_of(c, f), zk));
    zk = f.mul(zk, z);
  }
  return acc;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    Rational c = c_[k];
    bool neg = c < 0;
    if (neg) c = -c;
    std::string term;
    std::string zs = "z" + std::to_string(n_) + (k > 1 ? "^" + std::to_string(k) : "");
    if (k == 0)
      term = cgtk::to_string(c);
    else if (c == 1)
      term = zs;
    else
      term = cgtk::to_string(c) + "*" + zs;
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace cgtk
