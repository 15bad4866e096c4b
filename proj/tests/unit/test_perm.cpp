#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cgtk/classes.hpp"
#include "oracles.hpp"

using namespace cgtk;

namespace {

Permutation to_perm(const oracle::P& p) {
  return Permutation(std::vector<Point>(p.begin(), p.end()));
}

oracle::P to_p(const Permutation& p) {
  return oracle::P(p.images().begin(), p.images().end());
}

std::vector<Permutation> symmetric_gens(std::size_t n) {
  std::vector<Point> cyc(n);
  std::iota(cyc.begin(), cyc.end(), Point{0});
  std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  return {Permutation::from_cycles(n, {{1, 2}}), Permutation(cyc)};
}

std::vector<FMatrix> load_v1() {
  std::ifstream in(oracle::fixture_path("m24_v1.gens"));
  std::vector<FMatrix> out;
  for (auto& nm : read_generator_set(in)) out.push_back(nm.matrix);
  return out;
}

}  // namespace

TEST_CASE("permutation basics") {
  auto a = Permutation::from_cycles(4, {{1, 2}});
  auto b = Permutation::from_cycles(4, {{1, 2, 3, 4}});
  // Right action: a*b applies a first.
  CHECK((a * b)[0] == b[a[0]]);
  CHECK(b.order() == 4);
  CHECK((b * b.inverse()).is_identity());
  CHECK(b.power(-1) == b.inverse());
  CHECK(b.to_cycle_string() == "(1,2,3,4)");
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0}), PreconditionError);
  std::stringstream ss;
  write_permutations(ss, {a, b});
  auto back = read_permutations(ss);
  CHECK(back == std::vector<Permutation>{a, b});
}

TEST_CASE("bsgs small examples") {
  auto s3 = bsgs_build(symmetric_gens(3), 3);
  CHECK(s3.order() == 6);
  std::vector<Point> c11(11);
  std::iota(c11.begin(), c11.end(), Point{1});
  c11[10] = 0;
  CHECK(bsgs_build({Permutation(c11)}, 11).order() == 11);
  CHECK(bsgs_build({}, 5).order() == 1);
  CHECK(bsgs_build({Permutation(5)}, 5).order() == 1);
  auto s8 = bsgs_build(symmetric_gens(8), 8, {.seed = 99});
  CHECK(s8.order() == 40320);
  CHECK(s8.elements().size() == 40320);
}

TEST_CASE("bsgs on the 2047-point vector action of the printed generators") {
  auto perms = matrix_to_permutation(load_v1());
  REQUIRE(perms.size() == 10);
  CHECK(perms[0].degree() == 2047);
  auto g = bsgs_build(perms, 2047, {.seed = 1});
  CHECK(g.order() == BigInt(244823040));
  CHECK(bsgs_build(perms, 2047, {.seed = 2024}).order() == BigInt(244823040));
}

TEST_CASE("matrix_to_permutation") {
  PrimeField f13(13), f2(2);
  auto id = matrix_to_permutation({FMatrix::identity(f2, 3)});
  CHECK(id[0].is_identity());
  CHECK(id[0].degree() == 7);
  auto two = matrix_to_permutation({FMatrix(f13, 1, 1, {2})});
  CHECK(two[0].degree() == 12);
  CHECK(two[0].order() == 12);
  auto v1 = load_v1();
  auto pa = matrix_to_permutation({v1[0]});
  oracle::IntMat a1(11, std::vector<std::int64_t>(11));
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = 0; j < 11; ++j) a1[i][j] = v1[0](i, j);
  CHECK(pa[0].order() == oracle::matrix_order_by_squaring(a1, 2, 1000));
  // Point numbering: vector (0,...,0,1) is point 0 (value 1).
  FMatrix swap(f2, 2, 2, {0, 1, 1, 0});
  auto ps = matrix_to_permutation({swap});
  CHECK(ps[0].images() == std::vector<Point>{1, 0, 2});
  // Seeded orbit: orbit of e1 under the swap is {(1,0),(0,1)}, sorted.
  auto orb = matrix_to_permutation({swap}, {.orbit_seeds = {{1, 0}}});
  CHECK(orb[0].images() == std::vector<Point>{1, 0});
  CHECK_THROWS_AS(matrix_to_permutation({FMatrix::identity(f13, 7)}, {.point_budget = 1000}),
                  BudgetExceeded);
  CHECK_THROWS_AS(matrix_to_permutation({FMatrix(f2, 2, 2, {1, 1, 1, 1})}), SingularMatrix);
}

TEST_CASE("conjugacy classes of small groups") {
  auto triv = bsgs_build({}, 3);
  auto ct = conjugacy_classes(triv, 1);
  REQUIRE(ct.classes.size() == 1);
  CHECK(ct.complete);

  auto s4 = bsgs_build(symmetric_gens(4), 4);
  auto cl = conjugacy_classes(s4, 5);
  REQUIRE(cl.complete);
  std::multiset<BigInt> sizes;
  for (auto& c : cl.classes) sizes.insert(c.size);
  CHECK(sizes == std::multiset<BigInt>{1, 6, 3, 8, 6});
  auto brute = oracle::brute_classes(oracle::closure({to_p(symmetric_gens(4)[0]), to_p(symmetric_gens(4)[1])}, 4));
  CHECK(brute.size() == 5);

  // 4-cycle class squares into the (2,2) class; identity maps to identity.
  auto pm = class_power_map(cl, s4, 2);
  for (std::size_t i = 0; i < cl.classes.size(); ++i) {
    auto ctype = cl.classes[i].rep->cycle_type();
    if (ctype == std::vector<std::size_t>{4}) {
      CHECK(cl.classes[pm[i]].rep->cycle_type() == std::vector<std::size_t>{2, 2});
    }
    if (cl.classes[i].element_order == 1) CHECK(pm[i] == i);
  }
}

TEST_CASE("S6 classes match brute force") {
  auto gens = symmetric_gens(6);
  auto s6 = bsgs_build(gens, 6);
  auto cl = conjugacy_classes(s6, 3);
  REQUIRE(cl.complete);
  auto brute = oracle::brute_classes(oracle::closure({to_p(gens[0]), to_p(gens[1])}, 6));
  REQUIRE(cl.classes.size() == 11);
  REQUIRE(brute.size() == 11);
  std::map<oracle::P, std::size_t> brute_size;
  for (auto& b : brute) brute_size[b.rep] = b.size;
  for (auto& c : cl.classes) {
    auto it = brute_size.find(to_p(*c.rep));
    REQUIRE(it != brute_size.end());  // canonical rep = lexicographic minimum
    CHECK(c.size == it->second);
    CHECK(c.centralizer == 720 / it->second);
  }
  // Deterministic for a fixed seed.
  auto again = conjugacy_classes(s6, 3);
  for (std::size_t i = 0; i < 11; ++i) CHECK(again.classes[i].rep == cl.classes[i].rep);
}

TEST_CASE("orbit budget yields an incomplete list") {
  auto s6 = bsgs_build(symmetric_gens(6), 6);
  auto cl = conjugacy_classes(s6, 3, 50);
  CHECK_FALSE(cl.complete);
  CHECK_THROWS_AS(class_power_map(cl, s6, 2), PreconditionError);
}

TEST_CASE("property: BSGS order agrees with brute-force closure") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    auto sg = oracle::random_small_group(rng);
    std::vector<Permutation> gens;
    for (auto& p : sg.gens) gens.push_back(to_perm(p));
    auto b = bsgs_build(gens, sg.degree, {.seed = static_cast<std::uint64_t>(trial)});
    auto elems = oracle::closure(sg.gens, sg.degree);
    REQUIRE(b.order() == elems.size());

    // Products of up to five generators are members.
    for (int k = 0; k < 20; ++k) {
      Permutation x(sg.degree);
      for (std::size_t l = 0, len = 1 + rng() % 5; l < len; ++l) x = x * gens[rng() % gens.size()];
      CHECK(b.contains(x));
    }
    // Random permutations: membership agrees with the closure.
    std::set<oracle::P> eset(elems.begin(), elems.end());
    for (int k = 0; k < 100; ++k) {
      oracle::P r(sg.degree);
      std::iota(r.begin(), r.end(), 0);
      std::shuffle(r.begin(), r.end(), rng);
      CHECK(b.contains(to_perm(r)) == (eset.count(r) > 0));
    }

    if (elems.size() <= 5000) {
      auto cl = conjugacy_classes(b, trial);
      REQUIRE(cl.complete);
      BigInt sum = 0;
      for (auto& c : cl.classes) {
        sum += c.size;
        CHECK(c.size * c.centralizer == b.order());
      }
      CHECK(sum == b.order());
      CHECK(cl.classes.size() == oracle::brute_classes(elems).size());
      for (auto q : cl.primes) {
        auto pm = class_power_map(cl, b, q);
        for (std::size_t i = 0; i < pm.size(); ++i) {
          auto o = cl.classes[i].element_order;
          CHECK(cl.classes[pm[i]].element_order == o / std::gcd(o, q));
        }
      }
      CHECK(check_class_data(cl).ok);
    }
  }
}

TEST_CASE("class table text round trip") {
  auto s4 = bsgs_build(symmetric_gens(4), 4);
  auto cl = conjugacy_classes(s4, 5);
  std::stringstream ss;
  write_class_table(ss, cl);
  auto back = read_class_table(ss);
  REQUIRE(back.classes.size() == cl.classes.size());
  CHECK(back.group_order == 24);
  for (std::size_t i = 0; i < cl.classes.size(); ++i) {
    CHECK(back.classes[i].name == cl.classes[i].name);
    CHECK(back.classes[i].powermap == cl.classes[i].powermap);
  }
  CHECK(check_class_data(back).ok);
}

TEST_CASE("transcribed class data of E") {
  std::ifstream in(oracle::fixture_path("cc_E.classes"));
  auto cl = read_class_table(in);
  BigInt order = BigInt(1) << 21;
  order *= 27 * 5 * 7 * 11 * 23;
  CHECK(cl.group_order == order);
  auto rep = check_class_data(cl);
  CHECK(rep.ok);
  CHECK(rep.size_sum == order);
  CHECK(cl.classes.size() == 72);
  std::size_t i45 = 0, i21 = 0;
  for (std::size_t i = 0; i < cl.classes.size(); ++i) {
    if (cl.classes[i].name == "4_5") i45 = i;
    if (cl.classes[i].name == "2_1") i21 = i;
  }
  CHECK(cl.classes[i45].rep_text == "e");
  CHECK(cl.classes[i45].powermap.at(2) == i21);
}
