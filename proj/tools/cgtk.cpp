// Command-line front end. Exit codes: 0 pass, 1 check failure, 2 usage or
// input error, 3 budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cgtk/amalgam.hpp"
#include "cgtk/chartab.hpp"
#include "cgtk/cohom.hpp"
#include "cgtk/fp.hpp"
#include "cgtk/modrep.hpp"

using namespace cgtk;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;  // 0: library default
  std::string format = "text";
  bool json() const { return format == "json"; }
};

struct UsageError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::istringstream open_file(const std::string& path) { return std::istringstream(slurp(path)); }

std::string str(const BigInt& n) { return n.str(); }

template <class T>
T budget_or(const Common& c, T fallback) {
  return c.budget ? static_cast<T>(c.budget) : fallback;
}

// Output sink: text lines or one JSON document.
struct Report {
  const Common& common;
  json doc = json::object();
  std::ostringstream text;

  void emit() const {
    if (common.json())
      std::cout << doc.dump(2) << '\n';
    else
      std::cout << text.str();
  }
};

struct Generators {
  std::vector<std::string> names;
  std::vector<FMatrix> matrices;
  std::vector<Permutation> perms;
  bool is_matrix = false;
};

Generators load_generators(const std::string& matrices, const std::string& perms) {
  Generators g;
  if (!matrices.empty() == !perms.empty()) throw UsageError("give exactly one of --matrices or --perms");
  if (!matrices.empty()) {
    auto in = open_file(matrices);
    GModule m = read_module(in);
    g.names = m.names();
    g.matrices = m.actions();
    g.is_matrix = true;
  } else {
    auto in = open_file(perms);
    g.perms = read_permutations(in);
    for (std::size_t i = 0; i < g.perms.size(); ++i) g.names.push_back("g" + std::to_string(i + 1));
  }
  return g;
}

std::vector<Permutation> as_permutations(const Generators& g, const Common& c) {
  if (!g.is_matrix) return g.perms;
  VectorActionOptions opt;
  opt.point_budget = budget_or<std::size_t>(c, opt.point_budget);
  return matrix_to_permutation(g.matrices, opt);
}

BSGS group_of(const std::vector<Permutation>& perms, const Common& c) {
  if (perms.empty()) throw UsageError("no generators");
  BsgsOptions opt;
  opt.seed = c.seed;
  return bsgs_build(perms, perms.front().degree(), opt);
}

int cmd_order(const Common& c, const std::string& matrices, const std::string& perms) {
  auto g = load_generators(matrices, perms);
  auto ps = as_permutations(g, c);
  BSGS b = group_of(ps, c);
  Report r{c};
  r.doc = {{"order", str(b.order())}, {"factorization", factorization_string(b.order())},
           {"degree", b.degree()}, {"base_length", b.base().size()}};
  r.text << b.order() << '\n';
  r.emit();
  return 0;
}

int cmd_classes(const Common& c, const std::string& matrices, const std::string& perms, const std::string& check) {
  Report r{c};
  if (!check.empty()) {
    auto in = open_file(check);
    ClassList cl = read_class_table(in);
    auto rep = check_class_data(cl);
    r.doc = {{"classes", cl.classes.size()}, {"group_order", str(cl.group_order)},
             {"size_sum", str(rep.size_sum)}, {"ok", rep.ok}, {"failures", rep.failures}};
    r.text << "classes " << cl.classes.size() << "\ngroup order " << cl.group_order << "\nsize sum "
           << rep.size_sum << '\n';
    for (const auto& f : rep.failures) r.text << "FAIL " << f << '\n';
    r.text << (rep.ok ? "PASS" : "FAIL") << '\n';
    r.emit();
    return rep.ok ? 0 : 1;
  }
  auto g = load_generators(matrices, perms);
  BSGS b = group_of(as_permutations(g, c), c);
  ClassList cl = conjugacy_classes(b, c.seed, budget_or<std::size_t>(c, 1u << 22));
  if (!cl.complete) throw BudgetExceeded("class enumeration stopped at the orbit budget");
  r.doc["group_order"] = str(cl.group_order);
  r.doc["classes"] = json::array();
  for (const auto& k : cl.classes)
    r.doc["classes"].push_back({{"name", k.name}, {"order", k.element_order}, {"size", str(k.size)},
                                {"centralizer", str(k.centralizer)}});
  write_class_table(r.text, cl);
  r.emit();
  return 0;
}

std::vector<GenWord> parse_word_list(const std::string& text, const std::vector<std::string>& gens) {
  std::vector<GenWord> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_word(part, gens));
  return out;
}

int cmd_tc(const Common& c, const std::string& pres_path, const std::string& sub, const std::string& strategy,
           bool dump) {
  auto in = open_file(pres_path);
  Presentation p = read_presentation(in);
  std::vector<GenWord> subgroup;
  if (sub == "full") {
    for (std::size_t i = 0; i < p.gens.size(); ++i) subgroup.push_back(GenWord::letter(i));
  } else if (sub == "trivial") {
    subgroup.clear();
    p.subgroup.clear();
  } else if (sub != "pres") {
    subgroup = parse_word_list(sub, p.gens);
  }
  TcOptions opt;
  opt.max_cosets = budget_or<std::size_t>(c, 10'000'000);
  if (strategy == "felsch")
    opt.strategy = TcStrategy::Felsch;
  else if (strategy != "hlt")
    throw UsageError("strategy must be hlt or felsch");
  auto table = todd_coxeter(p, subgroup, opt);
  Report r{c};
  r.doc = {{"closed", table.closed}, {"index", table.index()}, {"defined", table.defined},
           {"max_active", table.max_active}};
  if (table.closed) {
    r.text << "index " << table.index() << '\n';
    if (dump) table.write(r.text);
  } else {
    r.text << "capped: " << table.active << " active cosets after " << table.defined << " definitions\n";
  }
  r.emit();
  return table.closed ? 0 : 3;
}

std::vector<GroupElement> as_elements(const Generators& g) {
  std::vector<GroupElement> out;
  if (g.is_matrix)
    for (const auto& m : g.matrices) out.emplace_back(m);
  else
    for (const auto& p : g.perms) out.emplace_back(p);
  return out;
}

int cmd_verify(const Common& c, const std::string& pres_path, const std::string& matrices, const std::string& perms) {
  auto in = open_file(pres_path);
  Presentation p = read_presentation(in);
  auto g = load_generators(matrices, perms);
  auto rep = verify_relations(p, as_elements(g));
  Report r{c};
  r.doc["pass"] = rep.pass;
  r.doc["results"] = json::array();
  for (const auto& x : rep.results) {
    r.doc["results"].push_back({{"index", x.index}, {"relator", x.text}, {"pass", x.pass}});
    r.text << (x.pass ? "ok   " : "FAIL ") << x.index << ' ' << x.text << '\n';
  }
  r.text << (rep.pass ? "PASS" : "FAIL") << '\n';
  r.emit();
  return rep.pass ? 0 : 1;
}

GModule load_module(const std::string& path) {
  auto in = open_file(path);
  return read_module(in);
}

int cmd_meataxe(const Common& c, const std::string& path) {
  GModule m = load_module(path);
  MeataxeOptions opt;
  opt.seed = c.seed;
  opt.max_trials = budget_or<std::size_t>(c, opt.max_trials);
  auto res = meataxe_irreducible(m, opt);
  const char* verdict = res.verdict == MeataxeResult::Verdict::irreducible ? "irreducible"
                        : res.verdict == MeataxeResult::Verdict::reducible ? "reducible"
                                                                             : "inconclusive";
  Report r{c};
  r.doc = {{"verdict", verdict}, {"dim", m.dim()}, {"trials", res.trials}, {"submodule_dim", res.submodule.size()},
           {"detail", res.detail}};
  r.text << verdict << " (dim " << m.dim() << ", " << res.trials << " trials";
  if (!res.submodule.empty()) r.text << ", submodule of dim " << res.submodule.size();
  r.text << ")\n";
  r.emit();
  return res.verdict == MeataxeResult::Verdict::inconclusive ? 1 : 0;
}

int cmd_isom(const Common& c, const std::string& a_path, const std::string& b_path, bool dual_second) {
  GModule a = load_module(a_path), b = load_module(b_path);
  if (dual_second) b = dual(b);
  MeataxeOptions opt;
  opt.seed = c.seed;
  auto t = module_isomorphism(a, b, opt, budget_or<std::size_t>(c, 1u << 16));
  Report r{c};
  r.doc = {{"isomorphic", t.has_value()}};
  r.text << (t ? "isomorphic" : "not isomorphic") << '\n';
  if (t) write_gfmat(r.text, *t);
  r.emit();
  return 0;
}

std::shared_ptr<const CharacterTable> load_table(const std::string& path) {
  auto in = open_file(path);
  return std::make_shared<const CharacterTable>(read_character_table(in));
}

json values_json(const std::vector<Cyclotomic>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

int cmd_perm_char(const Common& c, const std::string& perms, const std::string& sub) {
  auto g = load_generators("", perms);
  auto hin = open_file(sub);
  auto hgens = read_permutations(hin);
  BSGS bg = group_of(g.perms, c);
  BSGS bh = bsgs_build(hgens, bg.degree());
  ClassList cl = conjugacy_classes(bg, c.seed);
  auto table = std::make_shared<const CharacterTable>(table_from_classes(cl));
  auto chi = permutation_character(bg, bh, cl, table, budget_or<std::size_t>(c, 1u << 22));
  Report r{c};
  r.doc["index"] = str(bg.order() / bh.order());
  r.doc["classes"] = json::array();
  for (std::size_t k = 0; k < cl.classes.size(); ++k) {
    r.doc["classes"].push_back({{"class", cl.classes[k].name}, {"value", chi.values[k].to_string()}});
    r.text << cl.classes[k].name << ' ' << chi.values[k].to_string() << '\n';
  }
  r.emit();
  return 0;
}

int cmd_restrict(const Common& c, const std::string& gt, const std::string& ht, const std::string& fusion_path,
                 std::size_t index) {
  auto g = load_table(gt), h = load_table(ht);
  auto fin = open_file(fusion_path);
  Fusion fu = read_fusion(fin, *h, *g);
  if (index == 0 || index > g->chars.size()) throw UsageError("--char is 1-based and must name an irreducible");
  auto res = restrict_with_fusion(irreducible(g, index - 1), h, fu);
  auto dec = decompose(res);
  Report r{c};
  r.doc = {{"values", values_json(res.values)}, {"decomposition", values_json(dec)}};
  r.text << "values";
  for (const auto& v : res.values) r.text << ' ' << v.to_string();
  r.text << "\nconstituents";
  for (std::size_t i = 0; i < dec.size(); ++i)
    if (!dec[i].is_zero()) r.text << ' ' << dec[i].to_string() << "*chi" << i + 1;
  r.text << '\n';
  r.emit();
  return 0;
}

int cmd_pairs(const Common& c, const std::string& at, const std::string& gt, const std::string& ht,
              const std::string& fa, const std::string& fg, std::uint64_t degree, bool mult_free) {
  auto a = load_table(at), g = load_table(gt), h = load_table(ht);
  auto ina = open_file(fa), ing = open_file(fg);
  Fusion fusa = read_fusion(ina, *h, *a), fusg = read_fusion(ing, *h, *g);
  auto pairs = compatible_pairs(*a, *g, *h, fusa, fusg, degree, mult_free, budget_or<std::size_t>(c, 1u << 20));
  Report r{c};
  r.doc["pairs"] = json::array();
  auto names = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (auto i : v) s += (s.empty() ? "" : "+") + ("chi" + std::to_string(i + 1));
    return s;
  };
  for (const auto& p : pairs) {
    r.doc["pairs"].push_back({{"a", p.a_chars}, {"g", p.g_chars}});
    r.text << names(p.a_chars) << " | " << names(p.g_chars) << '\n';
  }
  r.text << pairs.size() << " pairs\n";
  r.emit();
  return 0;
}

std::vector<std::size_t> class_indices(const CharacterTable& t, const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) out.push_back(t.class_index(name));
  return out;
}

int cmd_thompson(const Common& c, const std::string& identity, const std::string& table, const std::string& z,
                 const std::string& u, const std::string& t) {
  Report r{c};
  if (!identity.empty()) {
    auto rep = thompson_identity_check(slurp(identity));
    r.doc = {{"order", str(rep.order)}, {"factorization", rep.factorization},
             {"printed_conflict", rep.printed_conflict}};
    r.doc["printed"] = json::array();
    r.text << "sum " << rep.order << "\nfactorization " << rep.factorization << '\n';
    bool any = false;
    for (const auto& p : rep.printed) {
      r.doc["printed"].push_back({{"label", p.label}, {"factorization", p.text}, {"matches", p.matches}});
      r.text << (p.matches ? "MATCH    " : "MISMATCH ") << p.label << ": " << p.text << '\n';
      any = any || p.matches;
    }
    if (rep.printed_conflict) r.text << "FLAG printed factorizations disagree with each other\n";
    r.emit();
    return any || rep.printed.empty() ? 0 : 1;
  }
  if (table.empty()) throw UsageError("give --identity-check or --table with --z, --u, --t");
  auto h = load_table(table);
  Rational v = thompson_r(*h, class_indices(*h, z), class_indices(*h, u), class_indices(*h, t));
  r.doc = {{"r", to_string(v)}};
  r.text << "r = " << to_string(v) << '\n';
  r.emit();
  return 0;
}

int cmd_dcosets(const Common& c, const std::string& path, const std::string& method, const std::string& expect) {
  auto in = open_file(path);
  auto pr = read_double_coset_problem(in);
  DoubleCosetOptions opt;
  opt.element_budget = budget_or<std::size_t>(c, opt.element_budget);
  Report r{c};
  std::vector<std::pair<std::string, CosetMethod>> methods;
  if (method == "burnside" || method == "both") methods.emplace_back("burnside", CosetMethod::burnside);
  if (method == "normal-form" || method == "both") methods.emplace_back("normal-form", CosetMethod::normal_form);
  if (methods.empty()) throw UsageError("method must be burnside, normal-form or both");
  std::vector<BigInt> counts;
  for (const auto& [name, m] : methods) {
    counts.push_back(double_coset_count(pr.spec, pr.h, pr.e, m, opt));
    r.doc[name] = str(counts.back());
    r.text << name << ' ' << counts.back() << '\n';
  }
  bool ok = std::all_of(counts.begin(), counts.end(), [&](const BigInt& x) { return x == counts.front(); });
  if (!ok) r.text << "FAIL methods disagree\n";
  if (!expect.empty()) {
    bool match = counts.front() == parse_bigint(expect);
    ok = ok && match;
    r.text << (match ? "MATCH expected " : "MISMATCH expected ") << expect << '\n';
  }
  r.doc["ok"] = ok;
  r.emit();
  return ok ? 0 : 1;
}

int cmd_solve(const Common& c, const std::string& path) {
  auto pr = parse_amalgam_problem(slurp(path));
  auto res = amalgam_solve(pr.field, pr.r, pr.f, pr.tmpl, pr.plan, c.seed);
  Report r{c};
  r.doc["solutions"] = json::array();
  for (const auto& a : res.assignments) {
    json s;
    std::string line;
    for (std::size_t i = 0; i < a.size(); ++i) {
      s[pr.tmpl.unknown_names[i]] = a[i];
      line += (i ? " " : "") + pr.tmpl.unknown_names[i] + "=" + std::to_string(a[i]);
    }
    r.doc["solutions"].push_back(s);
    r.text << line << '\n';
  }
  if (res.failed_stage) {
    r.doc["failed_stage"] = *res.failed_stage;
    r.doc["detail"] = res.detail;
    r.text << "no solution: " << res.detail << '\n';
  } else {
    r.text << res.assignments.size() << " solutions\n";
  }
  r.emit();
  return res.failed_stage ? 1 : 0;
}

int cmd_h2(const Common& c, const std::string& perms, const std::string& module_path, std::uint64_t trivial_p) {
  auto g = load_generators("", perms);
  GModule m = module_path.empty()
                  ? GModule(PrimeField(trivial_p), 1,
                            std::vector<FMatrix>(g.perms.size(), FMatrix::identity(PrimeField(trivial_p), 1)))
                  : load_module(module_path);
  CohomOptions opt;
  opt.unknown_budget = budget_or<std::size_t>(c, opt.unknown_budget);
  auto s = h2_bruteforce(g.perms, m, opt);
  Report r{c};
  r.doc = {{"group_order", s.elements.size()}, {"dim_z2", s.dim_z2}, {"dim_b2", s.dim_b2}, {"dim_h2", s.dimension()}};
  r.text << "|G| " << s.elements.size() << "\ndim Z2 " << s.dim_z2 << "\ndim B2 " << s.dim_b2 << "\ndim H2 "
         << s.dimension() << '\n';
  r.emit();
  return 0;
}

int cmd_extend(const Common& c, const std::string& path, std::uint64_t p, bool run_tc) {
  auto in = open_file(path);
  auto tp = read_tailed_presentation(in);
  Presentation ext = extension_from_tails(tp, tp.module_gens.size(), p);
  Report r{c};
  std::ostringstream pres;
  write_presentation(pres, ext);
  r.doc = {{"presentation", pres.str()}, {"relators", ext.relators.size()}};
  if (tp.complete) r.doc["complete"] = *tp.complete;
  if (tp.complete && !*tp.complete) r.text << "# relator set flagged incomplete\n";
  r.text << pres.str();
  int status = 0;
  if (run_tc) {
    TcOptions opt;
    opt.max_cosets = budget_or<std::size_t>(c, 1'000'000);
    auto table = todd_coxeter(ext, {}, opt);
    r.doc["closed"] = table.closed;
    r.doc["order"] = table.index();
    r.text << (table.closed ? "# order " : "# capped at ") << table.index() << '\n';
    status = table.closed ? 0 : 3;
  }
  r.emit();
  return status;
}

Permutation evaluate_permutation_word(const GenWord& w, const std::vector<Permutation>& gens) {
  Permutation x(gens.front().degree());
  for (auto [gen, sign] : w.letters()) x = x * (sign > 0 ? gens[gen] : gens[gen].inverse());
  return x;
}

int cmd_probe(const Common& c, const std::string& matrices, const std::string& perms, const std::string& words_path,
              const std::vector<std::string>& words, const std::string& names) {
  auto g = load_generators(matrices, perms);
  if (!names.empty()) {
    std::istringstream ns(names);
    g.names.clear();
    std::string n;
    while (ns >> n) g.names.push_back(n);
    if (g.names.size() != (g.is_matrix ? g.matrices.size() : g.perms.size()))
      throw UsageError("--names must list one name per generator");
  }
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& w : words) items.emplace_back(w, w);
  if (!words_path.empty()) {
    auto in = open_file(words_path);
    std::string line;
    while (std::getline(in, line)) {
      line = line.substr(0, line.find('#'));
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos)
        items.emplace_back(line, line);
      else
        items.emplace_back(line.substr(0, colon), line.substr(colon + 1));
    }
  }
  Report r{c};
  r.doc["orders"] = json::array();
  for (const auto& [label, text] : items) {
    GenWord w = parse_word(text, g.names);
    std::uint64_t ord;
    if (g.is_matrix)
      ord = matrix_order(evaluate_word(w, g.matrices), budget_or<std::uint64_t>(c, 1u << 24));
    else
      ord = evaluate_permutation_word(w, g.perms).order();
    r.doc["orders"].push_back({{"word", label}, {"order", ord}});
    r.text << label << ' ' << ord << '\n';
  }
  r.emit();
  return 0;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgtk: computational group theory toolkit"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--budget", common.budget, "Size limit for the command's main search (0: default)");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string matrices, perms, pres, sub = "pres", strategy = "hlt", check, module_a, module_b, table, table2,
                                     fusion, fusion2, table3, identity, zs, us, ts, problem, method = "both", expect,
                                     words_path, names, module;
  bool dump = false, dual_second = false, mult_free = false, run_tc = false;
  std::size_t char_index = 0;
  std::uint64_t degree = 0, prime = 2;
  std::vector<std::string> words;
  std::function<int()> action;

  auto* order = app.add_subcommand("order", "Group order from matrix or permutation generators");
  order->add_option("--matrices", matrices, "Generator-set file");
  order->add_option("--perms", perms, "Permutation file");
  order->callback([&] { action = [&] { return cmd_order(common, matrices, perms); }; });

  auto* classes = app.add_subcommand("classes", "Conjugacy classes, or consistency of class data");
  classes->add_option("--matrices", matrices);
  classes->add_option("--perms", perms);
  classes->add_option("--check", check, "Class table file to check");
  classes->callback([&] { action = [&] { return cmd_classes(common, matrices, perms, check); }; });

  auto* tc = app.add_subcommand("tc", "Todd-Coxeter coset enumeration");
  tc->add_option("--pres", pres)->required();
  tc->add_option("--sub", sub, "full, trivial, pres, or ';'-separated words");
  tc->add_option("--strategy", strategy, "hlt or felsch");
  tc->add_flag("--dump", dump, "Print the coset permutations");
  tc->callback([&] { action = [&] { return cmd_tc(common, pres, sub, strategy, dump); }; });

  auto* verify = app.add_subcommand("verify-pres", "Check relators on generator images");
  verify->add_option("--pres", pres)->required();
  verify->add_option("--matrices", matrices);
  verify->add_option("--perms", perms);
  verify->callback([&] { action = [&] { return cmd_verify(common, pres, matrices, perms); }; });

  auto* meataxe = app.add_subcommand("meataxe", "Irreducibility test");
  meataxe->add_option("--module", module_a)->required();
  meataxe->callback([&] { action = [&] { return cmd_meataxe(common, module_a); }; });

  auto* isom = app.add_subcommand("isom", "Module isomorphism test");
  isom->add_option("--module", module_a)->required();
  isom->add_option("--other", module_b)->required();
  isom->add_flag("--dual-other", dual_second, "Compare with the dual of the second module");
  isom->callback([&] { action = [&] { return cmd_isom(common, module_a, module_b, dual_second); }; });

  auto* pchar = app.add_subcommand("perm-char", "Permutation character on the cosets of a subgroup");
  pchar->add_option("--perms", perms)->required();
  pchar->add_option("--sub", module, "Permutation file with subgroup generators")->required();
  pchar->callback([&] { action = [&] { return cmd_perm_char(common, perms, module); }; });

  auto* restrict = app.add_subcommand("restrict", "Restrict an irreducible along a class fusion");
  restrict->add_option("--table", table, "Character table of G (JSON)")->required();
  restrict->add_option("--sub-table", table2, "Character table of H (JSON)")->required();
  restrict->add_option("--fusion", fusion)->required();
  restrict->add_option("--char", char_index, "1-based irreducible of G")->required();
  restrict->callback([&] { action = [&] { return cmd_restrict(common, table, table2, fusion, char_index); }; });

  auto* pairs = app.add_subcommand("pairs", "Compatible character pairs over a common subgroup");
  pairs->add_option("--a", table, "Character table of A")->required();
  pairs->add_option("--g", table2, "Character table of G")->required();
  pairs->add_option("--sub-table", table3, "Character table of the common subgroup")->required();
  pairs->add_option("--fusion-a", fusion)->required();
  pairs->add_option("--fusion-g", fusion2)->required();
  pairs->add_option("--degree", degree)->required();
  pairs->add_flag("--multiplicity-free", mult_free);
  pairs->callback([&] {
    action = [&] { return cmd_pairs(common, table, table2, table3, fusion, fusion2, degree, mult_free); };
  });

  auto* thompson = app.add_subcommand("thompson", "Thompson order formula");
  thompson->add_option("--identity-check", identity, "JSON with r values, centralizer orders, printed factorizations");
  thompson->add_option("--table", table, "Character table of the involution centralizer");
  thompson->add_option("--z", zs, "Comma-separated class names");
  thompson->add_option("--u", us);
  thompson->add_option("--t", ts);
  thompson->callback([&] { action = [&] { return cmd_thompson(common, identity, table, zs, us, ts); }; });

  auto* dc = app.add_subcommand("dcosets", "Double cosets of diagonal subgroups");
  dc->add_option("--problem", problem)->required();
  dc->add_option("--method", method, "burnside, normal-form or both");
  dc->add_option("--expect", expect, "Expected count");
  dc->callback([&] { action = [&] { return cmd_dcosets(common, problem, method, expect); }; });

  auto* solve = app.add_subcommand("solve-amalgam", "Staged conjugator search");
  solve->add_option("--problem", problem)->required();
  solve->callback([&] { action = [&] { return cmd_solve(common, problem); }; });

  auto* h2 = app.add_subcommand("h2", "Second cohomology by cocycle linear algebra");
  h2->add_option("--perms", perms)->required();
  h2->add_option("--module", module, "Generator-set file; default is the trivial 1-dim module");
  h2->add_option("--p", prime, "Field of the trivial module");
  h2->callback([&] { action = [&] { return cmd_h2(common, perms, module, prime); }; });

  auto* extend = app.add_subcommand("extend", "Extension presentation from relator tails");
  extend->add_option("--tpres", pres)->required();
  extend->add_option("--p", prime);
  extend->add_flag("--tc", run_tc, "Enumerate the extension over the trivial subgroup");
  extend->callback([&] { action = [&] { return cmd_extend(common, pres, prime, run_tc); }; });

  auto* probe = app.add_subcommand("probe-orders", "Orders of words in the generators");
  probe->add_option("--matrices", matrices);
  probe->add_option("--perms", perms);
  probe->add_option("--words", words_path, "File of 'label: word' lines");
  probe->add_option("--word", words, "Word to evaluate (repeatable)");
  probe->add_option("--names", names, "Space-separated generator names");
  probe->callback([&] { action = [&] { return cmd_probe(common, matrices, perms, words_path, words, names); }; });

  for (auto* s : app.get_subcommands({})) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const ParseError& e) {
    print_error("parse", e.what());
    return 2;
  } catch (const BudgetExceeded& e) {
    print_error("budget", e.what());
    return 3;
  } catch (const Error& e) {
    print_error("error", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
}
