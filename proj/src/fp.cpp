#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "cgtk/fp.hpp"

namespace cgtk {

std::size_t Presentation::gen_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == name) return i;
  throw ParseError("unknown generator '" + name + "'");
}

void Presentation::add_relator(GenWord w, std::string text) {
  if (!w.empty() && w.max_generator() >= gens.size())
    throw PreconditionError("relator references an undeclared generator");
  relators.push_back(std::move(w));
  relator_text.push_back(std::move(text));
}

namespace {

class WordParser {
 public:
  WordParser(const std::string& s, const std::vector<std::string>& gens) : s_(s), gens_(gens) {}

  GenWord parse_all() {
    GenWord w = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

  std::vector<GenWord> relation() {
    std::vector<GenWord> terms{word()};
    skip();
    while (pos_ < s_.size() && s_[pos_] == '=') {
      ++pos_;
      terms.push_back(word());
      skip();
    }
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (terms.size() == 1) return terms;
    std::vector<GenWord> out;
    GenWord last_inv = terms.back().inverse();
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) out.push_back(terms[i] * last_inv);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("word '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '1';
  }

  GenWord word() {
    GenWord w;
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '.')) {
        ++pos_;
        continue;
      }
      if (!at_factor_start()) break;
      w *= factor();
    }
    return w;
  }

  std::string ident() {
    std::size_t b = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    return s_.substr(b, pos_ - b);
  }

  std::optional<std::size_t> find_gen(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i] == name) return i;
    return std::nullopt;
  }

  GenWord named(const std::string& name) {
    if (auto g = find_gen(name)) return GenWord::letter(*g);
    fail("unknown generator '" + name + "'");
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  GenWord atom() {
    skip();
    char c = s_[pos_];
    if (c == '1' && (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    if (c == '(') {
      ++pos_;
      GenWord a = word();
      skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        GenWord b = word();
        expect(')');
        return commutator(a, b);
      }
      expect(')');
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = ident();
      skip();
      if (name == "comm" && !find_gen(name) && pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        GenWord a = word();
        expect(',');
        GenWord b = word();
        expect(')');
        return commutator(a, b);
      }
      return named(name);
    }
    fail("expected a generator");
  }

  GenWord factor() {
    GenWord base = atom();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '^') return base;
      ++pos_;
      skip();
      if (pos_ >= s_.size()) fail("dangling '^'");
      char c = s_[pos_];
      if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
        int sign = 1;
        if (c == '-' || c == '+') {
          sign = c == '-' ? -1 : 1;
          ++pos_;
          skip();
        }
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected exponent");
        base = base.power(sign * std::stoll(s_.substr(b, pos_ - b)));
      } else if (c == '(') {
        ++pos_;
        GenWord by = word();
        expect(')');
        base = conjugate(base, by);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        base = conjugate(base, named(ident()));
      } else {
        fail("bad exponent");
      }
    }
  }

  const std::string& s_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

GenWord parse_word(const std::string& text, const std::vector<std::string>& gens) {
  return WordParser(text, gens).parse_all();
}

std::vector<GenWord> parse_relation(const std::string& text, const std::vector<std::string>& gens) {
  return WordParser(text, gens).relation();
}

Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return read_presentation(in);
}

Presentation read_presentation(std::istream& in) {
  Presentation p;
  bool have_gens = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
    try {
      if (key == "gens") {
        if (have_gens) throw ParseError("duplicate gens line");
        std::istringstream gs(val);
        std::string g;
        while (gs >> g) {
          for (const auto& h : p.gens)
            if (h == g) throw ParseError("duplicate generator " + g);
          p.gens.push_back(g);
        }
        have_gens = true;
      } else if (key == "rel") {
        if (!have_gens) throw ParseError("rel before gens");
        std::istringstream rs(val);
        std::string part;
        while (std::getline(rs, part, ';')) {
          part = trim(part);
          if (part.empty()) continue;
          for (auto& w : parse_relation(part, p.gens)) p.add_relator(std::move(w), part);
        }
      } else if (key == "sub") {
        if (!have_gens) throw ParseError("sub before gens");
        std::istringstream rs(val);
        std::string part;
        while (std::getline(rs, part, ';')) {
          part = trim(part);
          if (!part.empty()) p.subgroup.push_back(parse_word(part, p.gens));
        }
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_gens) throw ParseError("presentation has no gens line");
  return p;
}

void write_presentation(std::ostream& out, const Presentation& p) {
  out << "gens:";
  for (const auto& g : p.gens) out << ' ' << g;
  out << '\n';
  for (const auto& r : p.relators) out << "rel: " << r.to_string(p.gens) << '\n';
  for (const auto& s : p.subgroup) out << "sub: " << s.to_string(p.gens) << '\n';
}

// ---------------------------------------------------------------------------

namespace {
std::string relator_label(const Presentation& pres, std::size_t i) {
  if (i < pres.relator_text.size() && !pres.relator_text[i].empty()) return pres.relator_text[i];
  return pres.relators[i].to_string(pres.gens);
}
}  // namespace

VerifyReport verify_relations(const Presentation& pres, const std::vector<GroupElement>& images) {
  if (images.size() != pres.gens.size())
    throw PreconditionError("expected " + std::to_string(pres.gens.size()) + " images, got " +
                            std::to_string(images.size()));
  VerifyReport rep;
  if (images.empty()) {
    for (std::size_t i = 0; i < pres.relators.size(); ++i)
      rep.results.push_back({i, relator_label(pres, i), true});
    return rep;
  }
  const bool is_matrix = std::holds_alternative<FMatrix>(images[0]);
  for (const auto& im : images)
    if (std::holds_alternative<FMatrix>(im) != is_matrix)
      throw PreconditionError("images mix matrices and permutations");

  std::vector<bool> pass(pres.relators.size());
  if (is_matrix) {
    std::vector<FMatrix> m;
    for (const auto& im : images) m.push_back(std::get<FMatrix>(im));
    for (std::size_t i = 0; i < pres.relators.size(); ++i)
      pass[i] = evaluate_word(pres.relators[i], m).is_identity();
  } else {
    std::vector<Permutation> ps;
    for (const auto& im : images) ps.push_back(std::get<Permutation>(im));
    const std::size_t n = ps[0].degree();
    for (const auto& q : ps)
      if (q.degree() != n) throw DimensionMismatch("permutation images of different degrees");
    for (std::size_t i = 0; i < pres.relators.size(); ++i)
      pass[i] = evaluate_word_generic(
                    pres.relators[i], ps, Permutation(n),
                    [](const Permutation& a, const Permutation& b) { return a * b; },
                    [](const Permutation& a) { return a.inverse(); })
                    .is_identity();
  }
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    rep.results.push_back({i, relator_label(pres, i), pass[i]});
    rep.pass = rep.pass && pass[i];
  }
  return rep;
}

}  // namespace cgtk
