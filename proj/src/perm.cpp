#include "cgtk/perm.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cgtk {

Permutation::Permutation(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x])
      throw PreconditionError("image list is not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (Point x : c) {
      if (x < 1 || x > degree) throw PreconditionError("cycle point out of range");
      if (used[x - 1]) throw PreconditionError("cycles are not disjoint");
      used[x - 1] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  }
  Permutation p;
  p.img_ = std::move(img);
  return p;
}

Permutation Permutation::parse_cycles(std::size_t degree, const std::string& text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("cycle string '" + text + "': " + msg);
  };
  for (skip(); i < text.size(); skip()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<Point> c;
    for (skip(); i < text.size() && text[i] != ')'; skip()) {
      if (!c.empty()) {
        if (text[i] != ',') fail("expected ','");
        ++i;
        skip();
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) fail("expected a point");
      c.push_back(static_cast<Point>(std::stoul(text.substr(i, j - i))));
      i = j;
    }
    if (i >= text.size()) fail("unterminated cycle");
    ++i;
    if (!c.empty()) cycles.push_back(std::move(c));
  }
  return from_cycles(degree, cycles);
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DimensionMismatch("permutation degrees differ");
  Permutation r;
  r.img_.resize(a.img_.size());
  for (std::size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
  return r;
}

Permutation Permutation::power(std::int64_t k) const {
  Permutation base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  return power_by_squaring(base, e, Permutation(degree()),
                           [](const Permutation& x, const Permutation& y) { return x * y; });
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> out;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Permutation::order() const {
  std::uint64_t o = 1;
  for (auto len : cycle_type()) o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

std::size_t Permutation::fixed_points() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < img_.size(); ++i) n += img_[i] == i;
  return n;
}

std::string Permutation::to_cycle_string() const {
  std::string s;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    s += '(';
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      if (j != i) s += ',';
      s += std::to_string(j + 1);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::vector<Permutation> read_permutations(std::istream& in) {
  std::string line;
  auto next = [&](std::string& out) {
    while (std::getline(in, out)) {
      auto hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next(line)) throw ParseError("PERM: empty input");
  std::istringstream hs(line);
  std::string tag;
  long long n = -1, count = -1;
  if (!(hs >> tag >> n >> count) || tag != "PERM" || n < 0 || count < 0)
    throw ParseError("bad PERM header: '" + line + "'");
  std::vector<Permutation> out;
  for (long long k = 0; k < count; ++k) {
    std::vector<Point> img;
    while (static_cast<long long>(img.size()) < n) {
      if (!next(line)) throw ParseError("PERM: truncated input");
      std::istringstream ls(line);
      long long x;
      while (ls >> x) {
        if (x < 1 || x > n) throw ParseError("PERM: point " + std::to_string(x) + " out of range");
        img.push_back(static_cast<Point>(x - 1));
      }
    }
    if (static_cast<long long>(img.size()) != n) throw ParseError("PERM: row length mismatch");
    try {
      out.emplace_back(std::move(img));
    } catch (const PreconditionError& e) {
      throw ParseError(std::string("PERM: ") + e.what());
    }
  }
  return out;
}

void write_permutations(std::ostream& out, const std::vector<Permutation>& ps) {
  std::size_t n = ps.empty() ? 0 : ps[0].degree();
  out << "PERM " << n << ' ' << ps.size() << '\n';
  for (const auto& p : ps) {
    for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << p[static_cast<Point>(i)] + 1;
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

std::vector<Permutation> matrix_to_permutation(const std::vector<FMatrix>& gens,
                                               const VectorActionOptions& opt) {
  if (gens.empty()) return {};
  const auto& f = gens[0].field();
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens) {
    if (!g.square() || g.rows() != n) throw DimensionMismatch("generators must be square of equal size");
    if (!(g.field() == f)) throw FieldMismatch("generators over different fields");
  }
  const std::uint64_t p = f.p();

  if (opt.orbit_seeds.empty()) {
    // Point count p^n - 1 must fit the budget.
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total *= p;
      if (total - 1 > opt.point_budget)
        throw BudgetExceeded("vector action exceeds point budget " + std::to_string(opt.point_budget));
    }
    const std::size_t points = static_cast<std::size_t>(total - 1);
    std::vector<Permutation> out;
    Vec v(n);
    for (const auto& g : gens) {
      std::vector<Point> img(points);
      for (std::size_t idx = 0; idx < points; ++idx) {
        std::uint64_t x = idx + 1;
        for (std::size_t j = n; j-- > 0;) {
          v[j] = static_cast<Residue>(x % p);
          x /= p;
        }
        Vec w = vec_mul(f, v, g);
        std::uint64_t y = 0;
        for (std::size_t j = 0; j < n; ++j) y = y * p + w[j];
        if (y == 0) throw SingularMatrix(rank(g), n);
        img[idx] = static_cast<Point>(y - 1);
      }
      out.emplace_back(std::move(img));
    }
    return out;
  }

  struct VecHash {
    std::size_t operator()(const Vec& v) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto x : v) {
        h ^= x;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::vector<Vec> pts;
  std::unordered_map<Vec, std::size_t, VecHash> seen;
  for (auto s : opt.orbit_seeds) {
    if (s.size() != n) throw DimensionMismatch("seed vector length");
    for (auto& x : s) x %= p;
    if (std::all_of(s.begin(), s.end(), [](Residue x) { return x == 0; }))
      throw PreconditionError("zero seed vector");
    if (seen.emplace(s, pts.size()).second) pts.push_back(s);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (const auto& g : gens) {
      Vec w = vec_mul(f, pts[i], g);
      if (std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; }))
        throw SingularMatrix(rank(g), n);
      if (seen.emplace(w, pts.size()).second) {
        pts.push_back(std::move(w));
        if (pts.size() > opt.point_budget)
          throw BudgetExceeded("orbit exceeds point budget " + std::to_string(opt.point_budget));
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  seen.clear();
  for (std::size_t i = 0; i < pts.size(); ++i) seen.emplace(pts[i], i);
  std::vector<Permutation> out;
  for (const auto& g : gens) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      img[i] = static_cast<Point>(seen.at(vec_mul(f, pts[i], g)));
    out.emplace_back(std::move(img));
  }
  return out;
}

}  // namespace cgtk
