#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

namespace cgtk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Prime factorization by trial division; intended for smooth group orders.
/// The last factor may be a composite cofactor if it exceeds `limit`^2.
std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n, std::uint64_t limit = 1u << 20);

/// "2^21 * 3^16 * 5^2 * 7^3 * 11" style rendering.
std::string factorization_string(const BigInt& n);

BigInt parse_bigint(const std::string& s);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

}  // namespace cgtk
