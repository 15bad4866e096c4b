#pragma once

// Elements of the cyclotomic field Q(zeta_n), stored as rational
// coefficients of zeta_n^0 .. zeta_n^(phi(n)-1) reduced modulo the n-th
// cyclotomic polynomial.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgtk/bigint.hpp"
#include "cgtk/gf.hpp"

namespace cgtk {

/// Coefficients of Phi_n, lowest degree first.
std::vector<BigInt> cyclotomic_polynomial(unsigned n);
unsigned euler_phi(unsigned n);

class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(Rational(0)) {}
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(Rational q);                          // NOLINT(google-explicit-constructor)

  /// zeta_n^k.
  static Cyclotomic zeta(unsigned n, long k = 1);
  /// Sum of coeff * zeta_n^k over the map entries; k may be any integer.
  static Cyclotomic from_powers(unsigned n, const std::map<long, Rational>& coeffs);

  unsigned conductor() const noexcept { return n_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  /// The same number written over Q(zeta_m); requires n | m.
  Cyclotomic in_field(unsigned m) const;

  /// The same number written over its smallest cyclotomic field.
  Cyclotomic minimal() const;

  bool is_zero() const;
  std::optional<Rational> to_rational() const;
  /// Complex conjugate, zeta -> zeta^-1.
  Cyclotomic conj() const;
  /// Galois image zeta -> zeta^k for k prime to the conductor.
  Cyclotomic galois(long k) const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& q);
  /// Throws PreconditionError on division by zero.
  Cyclotomic& operator/=(const Rational& q);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& q) { return a /= q; }
  Cyclotomic operator-() const;
  /// Equal as complex numbers, whatever the fields they are written over.
  bool operator==(const Cyclotomic& o) const;

  /// Image in GF(p) under zeta_n -> w^((p-1)/n), w the least primitive root,
  /// with n the minimal conductor. Throws PreconditionError unless n | p-1
  /// and denominators are prime to p.
  Residue reduce_mod(const PrimeField& f) const;

  /// "3", "-1/2", "1 + z7^2 - 2*z7^4".
  std::string to_string() const;

 private:
  Cyclotomic(unsigned n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}
  void reduce_from(std::vector<Rational> full);

  unsigned n_ = 1;
  std::vector<Rational> c_;
};

}  // namespace cgtk
