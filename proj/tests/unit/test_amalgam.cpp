#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "cgtk/amalgam.hpp"
#include "dcoset_oracle.hpp"
#include "oracles.hpp"

using namespace cgtk;
using oracle::IntMat;

namespace {

DoubleCosetProblem load(const std::string& name) {
  std::ifstream in(oracle::fixture_path(name));
  REQUIRE(in);
  return read_double_coset_problem(in);
}

FMatrix diag(const PrimeField& f, const std::vector<std::int64_t>& d) {
  FMatrix m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, f.reduce(d[i]));
  return m;
}

using oracle::all_invertible;
using oracle::orbit_count;
using oracle::random_block_element;
using oracle::to_int;

// diag(w,1,...,1) on block k, identity elsewhere.
FMatrix first_column_generator(const BlockGroupSpec& s, std::size_t k) {
  std::vector<std::int64_t> d(s.dim(), 1);
  d[s.offsets()[k]] = s.field.primitive_root();
  return diag(s.field, d);
}

}  // namespace

TEST_CASE("block specs parse and report orders", "[amalgam]") {
  auto s = parse_block_spec("# comment\nBLOCKS 13 2 1 1\n");
  CHECK(s.field.p() == 13);
  CHECK(s.blocks == std::vector<std::size_t>{2, 1, 1});
  CHECK(s.dim() == 4);
  CHECK(s.offsets() == std::vector<std::size_t>{0, 2, 3});
  CHECK(format_block_spec(s) == "BLOCKS 13 2 1 1");
  CHECK(s.order() == gl_order(2, 13) * 144);
  CHECK_THROWS_AS(parse_block_spec("BLOCKS 12 1"), Error);
  CHECK_THROWS_AS(parse_block_spec("BLOCKS 13"), ParseError);
  CHECK_THROWS_AS(parse_block_spec("BLOCKS 13 0"), ParseError);
  CHECK_THROWS_AS(parse_block_spec("SHAPE 13 2"), ParseError);
  CHECK_THROWS_AS(parse_block_spec(""), ParseError);
}

TEST_CASE("gl_order matches counting invertible matrices", "[amalgam]") {
  for (auto [n, p] : std::vector<std::pair<std::size_t, std::int64_t>>{{1, 13}, {2, 2}, {2, 3}, {2, 5}, {3, 2}})
    CHECK(gl_order(n, p) == BigInt(all_invertible(n, p).size()));
  CHECK(gl_order(2, 13) == 26208);
}

TEST_CASE("diagonal subgroups reject bad generators", "[amalgam]") {
  PrimeField f(5);
  BlockGroupSpec s(f, {2, 1});
  FMatrix off_block = diag(f, {1, 1, 1});
  off_block.set(0, 2, 1);
  CHECK_THROWS_AS(DiagSubgroup(s, {off_block}), PreconditionError);
  CHECK_THROWS_AS(DiagSubgroup(s, {diag(f, {1, 0, 1})}), SingularMatrix);
  CHECK_THROWS_AS(DiagSubgroup(s, {diag(f, {1, 1})}), DimensionMismatch);
  CHECK_THROWS_AS(DiagSubgroup(s, {diag(PrimeField(7), {1, 1, 1})}), FieldMismatch);
  FMatrix inner = diag(f, {1, 1, 2});
  inner.set(0, 1, 3);
  DiagSubgroup ok(s, {inner});
  CHECK(DiagSubgroup::block(s, inner, 0) == FMatrix(f, 2, 2, {1, 3, 0, 1}));
  CHECK(DiagSubgroup::block(s, inner, 1) == FMatrix(f, 1, 1, {2}));
}

TEST_CASE("block patterns", "[amalgam]") {
  PrimeField f(7);
  FMatrix m(f, 3, 3, {1, 0, 0, 0, 0, 3, 0, 0, 0});
  auto bp = block_pattern(m, {1, 2});
  CHECK(bp.nonzero == std::vector<std::vector<bool>>{{true, false}, {false, true}});
  CHECK(bp.to_string() == "X.\n.X\n");
  CHECK_THROWS_AS(block_pattern(m, {1, 1}), DimensionMismatch);
}

TEST_CASE("scalar group with trivial subgroups has p-1 double cosets", "[amalgam]") {
  BlockGroupSpec s(PrimeField(13), {1});
  DiagSubgroup h(s, {}), e(s, {});
  CHECK(double_coset_count(s, h, e, CosetMethod::burnside) == 12);
  CHECK(double_coset_count(s, h, e, CosetMethod::normal_form) == 12);
}

TEST_CASE("Burnside count agrees with explicit orbit enumeration", "[amalgam]") {
  std::mt19937_64 rng(20261016);
  const std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> shapes{
      {2, {3}}, {3, {2}}, {3, {2, 1}}, {5, {2}}, {2, {2, 2}}, {5, {1, 1, 1}}, {7, {2}}, {3, {2, 1, 1}}};
  for (const auto& [p, blocks] : shapes)
    for (int trial = 0; trial < 3; ++trial) {
      BlockGroupSpec s(PrimeField(p), blocks);
      std::vector<FMatrix> hg, eg;
      for (int i = 0; i < trial % 2 + 1; ++i) hg.push_back(random_block_element(s, rng, trial == 2));
      for (int i = 0; i < trial; ++i) eg.push_back(random_block_element(s, rng, false));
      CAPTURE(p, blocks, trial);
      CHECK(double_coset_count(s, DiagSubgroup(s, hg), DiagSubgroup(s, eg), CosetMethod::burnside) ==
            BigInt(orbit_count(s, hg, eg)));
    }
}

TEST_CASE("normal form agrees with Burnside and orbit counts", "[amalgam]") {
  std::mt19937_64 rng(77);
  std::size_t validated = 0, rejected = 0;
  const std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> shapes{
      {5, {2, 1}}, {7, {2, 1}}, {5, {2, 1, 1}}, {3, {2, 2, 1}}, {7, {2, 1, 1}}, {5, {3, 1}}};
  for (const auto& [p, blocks] : shapes)
    for (int trial = 0; trial < 6; ++trial) {
      BlockGroupSpec s(PrimeField(p), blocks);
      std::vector<FMatrix> hg, eg;
      for (std::size_t k = 0; k < blocks.size(); ++k)
        if (blocks[k] > 1) eg.push_back(first_column_generator(s, k));
      const int nh = 1 + trial % 2, ne = trial % 3;
      for (int i = 0; i < nh; ++i) {
        // Scalar on GL blocks, so the validation can succeed.
        FMatrix x = random_block_element(s, rng, true);
        auto off = s.offsets();
        for (std::size_t k = 0; k < blocks.size(); ++k)
          for (std::size_t j = 1; j < blocks[k]; ++j) x.set(off[k] + j, off[k] + j, x(off[k], off[k]));
        hg.push_back(x);
      }
      for (int i = 0; i < ne; ++i) eg.push_back(random_block_element(s, rng, true));
      DiagSubgroup h(s, hg), e(s, eg);
      BigInt b = double_coset_count(s, h, e, CosetMethod::burnside);
      CAPTURE(p, blocks, trial);
      try {
        BigInt nf = double_coset_count(s, h, e, CosetMethod::normal_form);
        CHECK(nf == b);
        ++validated;
      } catch (const PreconditionError&) {
        ++rejected;
      }
      if (s.order() <= 20000) CHECK(b == BigInt(orbit_count(s, hg, eg)));
    }
  CHECK(validated >= 10);
  INFO("rejected " << rejected);
}

TEST_CASE("normal form refuses non-scalar action on a GL block", "[amalgam]") {
  PrimeField f(5);
  BlockGroupSpec s(f, {2, 1});
  DiagSubgroup h(s, {diag(f, {2, 1, 1})}), e(s, {first_column_generator(s, 0)});
  CHECK_THROWS_AS(double_coset_count(s, h, e, CosetMethod::normal_form), PreconditionError);
  DiagSubgroup e_missing(s, {diag(f, {1, 1, 2})});
  CHECK_THROWS_AS(double_coset_count(s, h, e_missing, CosetMethod::normal_form), PreconditionError);
  FMatrix full = diag(f, {1, 1, 1});
  full.set(0, 1, 1);
  DiagSubgroup h_full(s, {full});
  CHECK_THROWS_AS(double_coset_count(s, h_full, e, CosetMethod::normal_form), PreconditionError);
  CHECK(double_coset_count(s, h_full, e, CosetMethod::burnside) == BigInt(orbit_count(s, {full}, e.gens)));
}

TEST_CASE("centralizer closed form matches enumeration", "[amalgam]") {
  PrimeField f(5);
  BlockGroupSpec s(f, {2, 1});
  DiagSubgroup h(s, {diag(f, {2, 3, 4}), diag(f, {4, 4, 1})}), e(s, {diag(f, {3, 2, 2})});
  DoubleCosetOptions small;
  small.block_enumeration_budget = 1;
  CHECK(double_coset_count(s, h, e, CosetMethod::burnside, small) ==
        double_coset_count(s, h, e, CosetMethod::burnside));
  FMatrix jordan = diag(f, {1, 1, 1});
  jordan.set(0, 1, 1);
  DiagSubgroup hj(s, {jordan});
  CHECK_THROWS_AS(double_coset_count(s, hj, hj, CosetMethod::burnside, small), BudgetExceeded);
  DoubleCosetOptions tiny;
  tiny.element_budget = 2;
  CHECK_THROWS_AS(double_coset_count(s, h, e, CosetMethod::burnside, tiny), BudgetExceeded);
}

TEST_CASE("double coset counts for the GF(13) datasets", "[amalgam][slow]") {
  auto a = load("dcoset_a.dc");
  CHECK(a.spec.blocks == std::vector<std::size_t>{2, 2, 1, 1, 1, 1, 1});
  CHECK(double_coset_count(a.spec, a.h, a.e, CosetMethod::normal_form) == BigInt("57238272"));
  CHECK(double_coset_count(a.spec, a.h, a.e, CosetMethod::burnside) == BigInt("57238272"));
  auto b = load("dcoset_b.dc");
  CHECK(b.spec.blocks == std::vector<std::size_t>{2, 1, 1, 1, 1, 1, 1, 1, 1});
  const BigInt expected("45287424");
  CHECK(expected == BigInt(2184) * 12 * 12 * 12 * 12);
  CHECK(double_coset_count(b.spec, b.h, b.e, CosetMethod::normal_form) == expected);
  CHECK(double_coset_count(b.spec, b.h, b.e, CosetMethod::burnside) == expected);
}

TEST_CASE("double coset problem files reject malformed input", "[amalgam]") {
  std::istringstream no_e("BLOCKS 5 1\nsubgroup H\n");
  CHECK_THROWS_AS(read_double_coset_problem(no_e), ParseError);
  std::istringstream bad("BLOCKS 5 1\nsubgroup X\n");
  CHECK_THROWS_AS(read_double_coset_problem(bad), ParseError);
  std::istringstream ok("BLOCKS 5 1\nsubgroup H\ngen a\nGFMAT 5 1 1\n2\nsubgroup E\n");
  auto pr = read_double_coset_problem(ok);
  CHECK(pr.h.gens.size() == 1);
  CHECK(pr.e.gens.empty());
  CHECK(double_coset_count(pr.spec, pr.h, pr.e, CosetMethod::burnside) == 1);
}

namespace {

TemplateSlot unknown(std::size_t i) { return {TemplateSlot::Kind::unknown, 0, i}; }
TemplateSlot constant(Residue v) { return {TemplateSlot::Kind::constant, v, 0}; }
TemplateSlot zero() { return {}; }

// Full assignments in lexicographic order satisfying the commuting
// condition, checked with the oracle's integer arithmetic.
std::vector<std::vector<Residue>> brute_solutions(const PrimeField& f, const FMatrix& r, const FMatrix& fm,
                                                  const ConjugatorTemplate& t) {
  const std::int64_t p = f.p();
  const std::size_t nu = t.unknown_names.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < nu; ++i) total *= static_cast<std::size_t>(p);
  std::vector<std::vector<Residue>> out;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Residue> v(nu);
    std::size_t c = code;
    for (std::size_t i = nu; i-- > 0;) {
      v[i] = static_cast<Residue>(c % p);
      c /= p;
    }
    FMatrix tm = instantiate(f, t, v);
    IntMat ti = to_int(tm);
    if (oracle::rank_mod_p(ti, p) != tm.rows()) continue;
    // r commutes with T^-1 f T iff T r T^-1 commutes with f.
    FMatrix tinv = mat_inverse(tm);
    IntMat conj = oracle::mul_mod_p(oracle::mul_mod_p(ti, to_int(r), p), to_int(tinv), p);
    if (oracle::mul_mod_p(conj, to_int(fm), p) == oracle::mul_mod_p(to_int(fm), conj, p)) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("instantiate places scalar blocks", "[amalgam]") {
  PrimeField f(7);
  ConjugatorTemplate t{{2, 1}, {{constant(3), zero()}, {zero(), unknown(0)}}, {"x"}};
  CHECK(instantiate(f, t, {5}) == diag(f, {3, 3, 5}));
  ConjugatorTemplate bad{{2, 1}, {{constant(1), unknown(0)}, {zero(), constant(1)}}, {"x"}};
  CHECK_THROWS_AS(instantiate(f, bad, {1}), PreconditionError);
}

TEST_CASE("single-unknown scalar instance has p-1 solutions", "[amalgam]") {
  PrimeField f(13);
  ConjugatorTemplate t{{1}, {{unknown(0)}}, {"x"}};
  FMatrix r(f, 1, 1, {3}), fm(f, 1, 1, {5});
  auto res = amalgam_solve(f, r, fm, t, {{{0}, {{0, 0}}}});
  CHECK_FALSE(res.failed_stage);
  CHECK(res.assignments.size() == 12);
  CHECK(res.assignments.front() == std::vector<Residue>{1});
}

TEST_CASE("staged solver matches full enumeration on planted instances", "[amalgam]") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {3u, 5u, 7u}) {
    PrimeField f(p);
    // Two independent 2x2 unitriangular conjugators on blocks {0,1}, {2,3}.
    ConjugatorTemplate t{{1, 1, 1, 1},
                         {{constant(1), unknown(0), zero(), zero()},
                          {zero(), unknown(1), zero(), zero()},
                          {zero(), zero(), constant(1), unknown(2)},
                          {zero(), zero(), zero(), constant(1)}},
                         {"x", "y", "z"}};
    for (int trial = 0; trial < 4; ++trial) {
      BlockGroupSpec two(f, {2, 2});
      FMatrix r = random_block_element(two, rng, false);
      // f = T0 g T0^-1 with g a polynomial in r, so T0 is a solution.
      FMatrix g = mat_add(mat_mul(r, r), mat_scale(r, static_cast<Residue>(trial)));
      std::vector<Residue> planted{static_cast<Residue>(rng() % p), static_cast<Residue>(1 + rng() % (p - 1)),
                                   static_cast<Residue>(rng() % p)};
      FMatrix t0 = instantiate(f, t, planted);
      FMatrix fm = mat_mul(mat_mul(t0, g), mat_inverse(t0));
      std::vector<SolveStage> plan{{{0, 1}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
                                   {{2}, {{2, 2}, {2, 3}, {3, 2}, {3, 3}}}};
      auto res = amalgam_solve(f, r, fm, t, plan, trial);
      auto brute = brute_solutions(f, r, fm, t);
      CAPTURE(p, trial);
      CHECK_FALSE(res.failed_stage);
      CHECK(res.assignments == brute);
      CHECK(std::find(brute.begin(), brute.end(), planted) != brute.end());
      std::vector<SolveStage> single{{{0, 1, 2}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}}};
      CHECK(amalgam_solve(f, r, fm, t, single).assignments == brute);
    }
  }
}

TEST_CASE("solver reports the failing stage", "[amalgam]") {
  PrimeField f(5);
  ConjugatorTemplate t{{1, 1}, {{unknown(0), zero()}, {zero(), unknown(1)}}, {"x", "y"}};
  FMatrix r = diag(f, {1, 2});
  FMatrix fm(f, 2, 2, {1, 1, 0, 1});
  auto res = amalgam_solve(f, r, fm, t, {{{0}, {{0, 0}}}, {{1}, {{0, 1}}}});
  REQUIRE(res.failed_stage);
  CHECK(*res.failed_stage == 1);
  CHECK(res.assignments.empty());
  CHECK_FALSE(res.detail.empty());
}

TEST_CASE("solver rejects plans whose stages look ahead", "[amalgam]") {
  PrimeField f(7);
  ConjugatorTemplate t{{1, 1, 1},
                       {{constant(1), unknown(0), unknown(1)},
                        {zero(), constant(1), unknown(2)},
                        {zero(), zero(), constant(1)}},
                       {"x", "y", "z"}};
  FMatrix r(f, 3, 3, {1, 2, 0, 3, 1, 4, 0, 5, 6});
  FMatrix fm(f, 3, 3, {2, 0, 1, 1, 3, 0, 4, 1, 1});
  std::vector<SolveStage> plan{{{0}, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 2}}}, {{1, 2}, {{1, 2}, {2, 0}}}};
  CHECK_THROWS_AS(amalgam_solve(f, r, fm, t, plan), PreconditionError);
  CHECK_THROWS_AS(amalgam_solve(f, r, fm, t, {{{0, 1}, {}}}), PreconditionError);  // z unassigned
  CHECK_THROWS_AS(amalgam_solve(f, r, fm, t, {{{0, 1, 2, 0}, {}}}), PreconditionError);
  CHECK_THROWS_AS(amalgam_solve(f, r, fm, t, {{{0, 1, 2}, {{3, 0}}}}), PreconditionError);
}

TEST_CASE("amalgam problem files", "[amalgam]") {
  std::ifstream in(oracle::fixture_path("amalgam_demo.json"));
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  auto pr = parse_amalgam_problem(buf.str());
  CHECK(pr.field.p() == 5);
  CHECK(pr.tmpl.unknown_names.size() == 3);
  auto res = amalgam_solve(pr.field, pr.r, pr.f, pr.tmpl, pr.plan);
  CHECK_FALSE(res.failed_stage);
  CHECK(res.assignments == brute_solutions(pr.field, pr.r, pr.f, pr.tmpl));
  CHECK(std::find(res.assignments.begin(), res.assignments.end(), std::vector<Residue>{2, 3, 1}) !=
        res.assignments.end());
  auto again = parse_amalgam_problem(amalgam_problem_json(pr));
  CHECK(again.r == pr.r);
  CHECK(again.f == pr.f);
  CHECK(again.plan.size() == pr.plan.size());
  CHECK(amalgam_solve(again.field, again.r, again.f, again.tmpl, again.plan).assignments == res.assignments);
  CHECK_THROWS_AS(parse_amalgam_problem("{}"), ParseError);
  CHECK_THROWS_AS(parse_amalgam_problem(R"({"p":5,"dims":[1],"unknowns":["x"],"template":[["y"]],"r":[[1]],"f":[[1]],"plan":[]})"),
                  ParseError);
}
