#pragma once

// Univariate polynomials over GF(p), coefficients lowest degree first with
// no trailing zeros (the zero polynomial is empty).

#include <cstdint>
#include <random>
#include <vector>

#include "cgtk/gf.hpp"

namespace cgtk {

using Poly = std::vector<Residue>;

void poly_trim(Poly& a);
std::size_t poly_degree(const Poly& a);  // 0 for constants and zero
Poly poly_add(const PrimeField& f, const Poly& a, const Poly& b);
Poly poly_sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly poly_mul(const PrimeField& f, const Poly& a, const Poly& b);
/// Quotient and remainder; throws PreconditionError for a zero divisor.
std::pair<Poly, Poly> poly_divmod(const PrimeField& f, const Poly& a, const Poly& b);
Poly poly_mod(const PrimeField& f, const Poly& a, const Poly& m);
/// Monic gcd.
Poly poly_gcd(const PrimeField& f, Poly a, Poly b);
Poly poly_monic(const PrimeField& f, Poly a);
Poly poly_powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m);

/// Characteristic polynomial det(xI - a), via Hessenberg reduction.
Poly charpoly(const FMatrix& a);
/// p(a) by Horner's rule.
FMatrix poly_eval(const Poly& p, const FMatrix& a);

/// Distinct monic irreducible factors (multiplicities dropped), sorted by
/// degree then coefficients. Randomized equal-degree splitting uses `rng`.
std::vector<Poly> irreducible_factors(const PrimeField& f, const Poly& a, std::mt19937_64& rng);

}  // namespace cgtk
