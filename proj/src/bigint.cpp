#include "cgtk/bigint.hpp"

#include "cgtk/error.hpp"

namespace cgtk {

std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n, std::uint64_t limit) {
  if (n <= 0) throw PreconditionError("factorize: nonpositive input");
  std::vector<std::pair<BigInt, unsigned>> out;
  for (std::uint64_t d = 2; d <= limit && BigInt(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(BigInt(d), e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::string factorization_string(const BigInt& n) {
  if (n == 1) return "1";
  std::string s;
  for (const auto& [p, e] : factorize(n)) {
    if (!s.empty()) s += " * ";
    s += p.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("bad integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw ParseError("bad integer '" + s + "'");
  return BigInt(s);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(parse_bigint(s.substr(0, slash)), den);
}

std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace cgtk
