#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "coxiota/poincare.hpp"
#include "coxiota/presets.hpp"
#include "oracles.hpp"

using namespace coxiota;

namespace {

GroupSpec spec(const std::string& name) { return resolve_group(name); }

Element walk_twisted(const GroupSpec& g, std::mt19937& rng, int steps) {
  std::uniform_int_distribution<int> pick(0, g.system.rank() - 1);
  Element w = g.system.identity();
  for (int i = 0; i < steps; ++i) w = twisted_action(g.system, g.theta, w, pick(rng));
  return w;
}

}  // namespace

TEST_CASE("check_automorphism") {
  const GroupSpec a5 = spec("A5");
  CHECK(check_automorphism(a5.system, TwistedAutomorphism::identity(5)));
  CHECK(check_automorphism(a5.system, spec("A5:flip").theta));
  const GroupSpec a3 = spec("A3");
  TwistedAutomorphism bad;
  bad.image = {1, 0, 2};  // m(s1,s3) != m(s2,s3)
  CHECK_FALSE(check_automorphism(a3.system, bad));
  TwistedAutomorphism not_perm;
  not_perm.image = {0, 0, 2};
  CHECK_FALSE(check_automorphism(a3.system, not_perm));
}

TEST_CASE("twisted action basics") {
  // theta = id: e.s = s
  const GroupSpec a2 = spec("A2");
  CHECK(twisted_action(a2.system, a2.theta, a2.system.identity(), 0) ==
        a2.system.generator(0));

  // A2 flip: e.s1 = s2 s1
  const GroupSpec a2f = spec("A2:flip");
  CHECK(twisted_action(a2f.system, a2f.theta, a2f.system.identity(), 0) ==
        a2f.system.eval_word(std::vector<int>{1, 0}));

  // affine: e.s3 = s2 s3
  const GroupSpec aff = spec("affineA2");
  CHECK(twisted_action(aff.system, aff.theta, aff.system.identity(), 2) ==
        aff.system.eval_word(std::vector<int>{1, 2}));
}

TEST_CASE("the underline letters are involutions (property)") {
  std::mt19937 rng(5);
  for (const char* name : {"A3:flip", "A5:flip", "affineA2", "I2(5):swap"}) {
    const GroupSpec g = spec(name);
    for (int trial = 0; trial < 25; ++trial) {
      const Element w = walk_twisted(g, rng, trial % 7);
      for (int s = 0; s < g.system.rank(); ++s) {
        const Element ws = twisted_action(g.system, g.theta, w, s);
        CHECK(twisted_action(g.system, g.theta, ws, s) == w);
      }
    }
  }
}

TEST_CASE("eval_sexpr") {
  const GroupSpec aff = spec("affineA2");
  CHECK(eval_sexpr(aff.system, aff.theta, std::vector<int>{}) == aff.system.identity());
  // underline(2 1 3) = s2 s1 s3 s2 s1 s3
  CHECK(eval_sexpr(aff.system, aff.theta, std::vector<int>{1, 0, 2}) ==
        aff.system.eval_word(std::vector<int>{1, 0, 2, 1, 0, 2}));

  // the label 2312 names a rank-4 twisted identity
  const GroupSpec a5 = spec("A5:flip");
  const Element w = eval_sexpr(a5.system, a5.theta, std::vector<int>{1, 2, 0, 1});
  const TwistedElement te = make_twisted(a5.system, a5.theta, w);
  CHECK(te.rho == 4);
  CHECK(te.ell_theta == 0);
}

TEST_CASE("twisted involution membership") {
  const GroupSpec aff = spec("affineA2");
  CHECK(is_twisted_involution(aff.system, aff.theta, aff.system.identity()));
  CHECK(is_twisted_involution(aff.system, aff.theta,
                              aff.system.eval_word(std::vector<int>{1, 2})));
  CHECK_FALSE(is_twisted_involution(aff.system, aff.theta, aff.system.generator(1)));

  // theta = id: reflections are involutions
  const GroupSpec a3 = spec("A3");
  const Element t = a3.system.eval_word(std::vector<int>{0, 1, 0});
  CHECK(is_twisted_involution(a3.system, a3.theta, t));
}

TEST_CASE("rho and twisted absolute length") {
  const GroupSpec aff = spec("affineA2");
  CHECK(rho_of(aff.system, aff.theta, aff.system.identity()) == 0);
  const Element v = aff.system.eval_word(std::vector<int>{1, 0, 2, 1, 0, 2});
  CHECK(rho_of(aff.system, aff.theta, v) == 3);
  // underline(2)underline(3) = s3 s2 s3 has twisted absolute length 1
  CHECK(ell_theta_of(aff.system, aff.theta,
                     aff.system.eval_word(std::vector<int>{2, 1, 2})) == 1);

  // A2 flip: rho(w0) = 2, found by nothing shorter
  const GroupSpec a2f = spec("A2:flip");
  const Element w0 = a2f.system.longest_element({0, 1});
  CHECK(rho_of(a2f.system, a2f.theta, w0) == 2);
  bool found_shorter = false;
  for (int s = 0; s < 2 && !found_shorter; ++s)
    found_shorter = eval_sexpr(a2f.system, a2f.theta, std::vector<int>{s}) == w0;
  CHECK_FALSE(found_shorter);
  CHECK(ell_theta_of(a2f.system, a2f.theta, w0) == 1);
  CHECK_FALSE(is_twisted_identity(a2f.system, a2f.theta, w0));

  // theta = id: twisted absolute length equals absolute length on involutions
  const GroupSpec a3 = spec("A3");
  const Enumeration en = a3.system.enumerate(std::nullopt);
  for (std::int64_t i = 0; i < en.size(); ++i) {
    const Element& w = en.at(i);
    if (!is_twisted_involution(a3.system, a3.theta, w)) continue;
    CHECK(ell_theta_of(a3.system, a3.theta, w) == a3.system.absolute_length(w));
  }
}

TEST_CASE("twisted identities") {
  const GroupSpec aff = spec("affineA2");
  CHECK(is_twisted_identity(aff.system, aff.theta, aff.system.identity()));
  CHECK(is_twisted_identity(aff.system, aff.theta,
                            aff.system.eval_word(std::vector<int>{1, 2})));
  CHECK_FALSE(is_twisted_identity(aff.system, aff.theta,
                                  aff.system.eval_word(std::vector<int>{2, 1, 2})));
}

TEST_CASE("enumeration of twisted involutions") {
  // theta = id on A2: the classical involutions
  const GroupSpec a2 = spec("A2");
  const TwistedEnumeration ten = TwistedEnumeration::run(a2.system, a2.theta, std::nullopt);
  CHECK(ten.size() == 4);
  CHECK(ten.iota_indices() == std::vector<int>{0});

  // A5 flip: |J| = 76, counted independently in the permutation model
  const GroupSpec a5 = spec("A5:flip");
  const TwistedEnumeration t5 = TwistedEnumeration::run(a5.system, a5.theta, std::nullopt);
  int oracle = 0;
  const testutil::Perm w0 = testutil::perm_reversal(6);
  for (const testutil::Perm& p : testutil::all_perms(6)) {
    const testutil::Perm theta_p =
        testutil::perm_compose(testutil::perm_compose(w0, p), w0);
    if (theta_p == testutil::perm_inverse(p)) ++oracle;
  }
  CHECK(oracle == 76);
  CHECK(t5.size() == 76);
  CHECK(t5.iota_indices().size() == 15);

  // rank profile of iota is 1,2,3,3,3,2,1
  std::vector<int> profile(7, 0);
  for (int i : t5.iota_indices()) ++profile[t5.at(i).rho];
  CHECK(profile == std::vector<int>{1, 2, 3, 3, 3, 2, 1});

  // affine truncation contains underline(2 1 3) at rank 3
  const GroupSpec aff = spec("affineA2");
  const TwistedEnumeration ta = TwistedEnumeration::run(aff.system, aff.theta, 3);
  const auto idx = ta.index_of(aff.system.eval_word(std::vector<int>{1, 0, 2, 1, 0, 2}));
  REQUIRE(idx.has_value());
  CHECK(ta.at(*idx).rho == 3);
  CHECK(ta.at(*idx).sexpr == std::vector<int>{1, 0, 2});
  CHECK_FALSE(ta.complete());
  CHECK(ta.truncation_rank() == 3);
}

TEST_CASE("iota enumeration is descent-closed and an order ideal") {
  for (const char* name : {"A5:flip", "D4:swap", "F4:flip"}) {
    const GroupSpec g = spec(name);
    const TwistedEnumeration ten = TwistedEnumeration::run(g.system, g.theta, std::nullopt);
    for (int i : ten.iota_indices())
      for (int s = 0; s < g.system.rank(); ++s) {
        if (!ten.descent(i, s)) continue;
        const int down = ten.action(i, s);
        REQUIRE(down != TwistedEnumeration::kOutside);
        CHECK(ten.in_iota(down));
      }
  }
}

TEST_CASE("type D twisted identities form a chain") {
  for (int n : {4, 5}) {
    const GroupSpec g = spec("D" + std::to_string(n) + ":swap");
    const TwistedEnumeration ten = TwistedEnumeration::run(g.system, g.theta, std::nullopt);
    std::set<int> expected;  // indices of underline(s2 s3 ... sk)
    std::vector<int> expr;
    expected.insert(*ten.index_of(eval_sexpr(g.system, g.theta, expr)));
    for (int k = 1; k < n; ++k) {
      expr.push_back(k);  // s_{k+1} in 1-based labels
      expected.insert(*ten.index_of(eval_sexpr(g.system, g.theta, expr)));
    }
    std::set<int> actual(ten.iota_indices().begin(), ten.iota_indices().end());
    CHECK(actual == expected);
  }
}

TEST_CASE("rho changes by one under the action, down iff descent (property)") {
  std::mt19937 rng(17);
  for (const char* name : {"A4:flip", "affineA2"}) {
    const GroupSpec g = spec(name);
    for (int trial = 0; trial < 25; ++trial) {
      const Element w = walk_twisted(g, rng, trial % 6);
      const std::int64_t r = rho_of(g.system, g.theta, w);
      for (int s = 0; s < g.system.rank(); ++s) {
        const Element ws = twisted_action(g.system, g.theta, w, s);
        const std::int64_t rs = rho_of(g.system, g.theta, ws);
        CHECK(std::abs(rs - r) == 1);
        CHECK((rs == r - 1) == g.system.is_right_descent(w, s));
      }
    }
  }
}

TEST_CASE("twisted Bruhat order") {
  const GroupSpec aff = spec("affineA2");
  const TwistedEnumeration ten = TwistedEnumeration::run(aff.system, aff.theta, 3);
  auto by_sexpr = [&](const std::vector<int>& expr) {
    return make_twisted(aff.system, aff.theta, eval_sexpr(aff.system, aff.theta, expr));
  };
  const TwistedElement u = by_sexpr({2});           // s2 s3
  const TwistedElement v = by_sexpr({1, 0, 2});     // the ungraded-witness top
  const TwistedElement s2b = by_sexpr({1});
  const TwistedElement s2s1 = by_sexpr({1, 0});
  CHECK(bruhat_leq_twisted(aff.system, aff.theta, by_sexpr({}), v));
  CHECK(bruhat_leq_twisted(aff.system, aff.theta, u, v));
  CHECK(bruhat_leq_twisted(aff.system, aff.theta, s2b, v));
  CHECK(bruhat_leq_twisted(aff.system, aff.theta, s2s1, v));
  CHECK_FALSE(bruhat_leq_twisted(aff.system, aff.theta, v, u));
  CHECK_FALSE(bruhat_leq_twisted(aff.system, aff.theta, u, s2s1));

  // leq table agrees with the pairwise recursion
  const TwistedLeqTable table = compute_leq_table(ten);
  for (int i = 0; i < ten.size(); ++i)
    for (int j = 0; j < ten.size(); ++j)
      CHECK(table.leq(i, j) ==
            bruhat_leq_twisted(aff.system, aff.theta, ten.at(i), ten.at(j)));
}

TEST_CASE("twisted Bruhat order restricts the ordinary one") {
  for (const char* pair : {"A3:flip", "A5:flip"}) {
    const GroupSpec g = spec(pair);
    const TwistedEnumeration ten = TwistedEnumeration::run(g.system, g.theta, std::nullopt);
    const TwistedLeqTable table = compute_leq_table(ten);
    for (int i = 0; i < ten.size(); ++i)
      for (int j = 0; j < ten.size(); ++j)
        CHECK(table.leq(i, j) ==
              g.system.bruhat_leq(ten.at(i).element, ten.at(j).element));
  }
  // affine case, truncated to rank 5
  const GroupSpec aff = spec("affineA2");
  const TwistedEnumeration ten = TwistedEnumeration::run(aff.system, aff.theta, 5);
  const TwistedLeqTable table = compute_leq_table(ten);
  for (int i = 0; i < ten.size(); ++i)
    for (int j = 0; j < ten.size(); ++j)
      CHECK(table.leq(i, j) ==
            aff.system.bruhat_leq(ten.at(i).element, ten.at(j).element));
}

TEST_CASE("subword property against brute force") {
  const GroupSpec g = spec("A3:flip");
  const TwistedEnumeration ten = TwistedEnumeration::run(g.system, g.theta, std::nullopt);
  const TwistedLeqTable table = compute_leq_table(ten);
  for (int i = 0; i < ten.size(); ++i)
    for (int j = 0; j < ten.size(); ++j) {
      const bool lifting = table.leq(i, j);
      // the module's oracle on the canonical expression
      CHECK(lifting == subword_check_bruteforce(g.system, g.theta,
                                                ten.at(i).element, ten.at(j).sexpr));
      // and the bitmask oracle over every reduced S-expression of v
      for (const std::vector<int>& expr :
           all_reduced_sexprs(g.system, g.theta, ten.at(j)))
        CHECK(lifting == testutil::subword_sexpr_bruteforce(g.system, g.theta, expr,
                                                            ten.at(i).element));
    }
}

TEST_CASE("subword oracle basics") {
  const GroupSpec a5 = spec("A5:flip");
  const std::vector<int> expr{1, 2, 0, 1};  // 2312
  CHECK(subword_check_bruteforce(a5.system, a5.theta, a5.system.identity(), expr));
  CHECK(subword_check_bruteforce(a5.system, a5.theta,
                                 eval_sexpr(a5.system, a5.theta, std::vector<int>{1}),
                                 expr));
  const GroupSpec aff = spec("affineA2");
  // indices 1 and 3 of underline(2 1 3) give underline(2)underline(3)
  CHECK(subword_check_bruteforce(
      aff.system, aff.theta, aff.system.eval_word(std::vector<int>{2, 1, 2}),
      std::vector<int>{1, 0, 2}));
  CHECK_THROWS_AS(subword_check_bruteforce(a5.system, a5.theta, a5.system.identity(),
                                           std::vector<int>(21, 0)),
                  error);
}

TEST_CASE("NOF property") {
  CHECK(has_nof(spec("A3").system, spec("A3").theta));  // identity theta
  CHECK(has_nof(spec("A5:flip").system, spec("A5:flip").theta));
  CHECK_FALSE(has_nof(spec("A4:flip").system, spec("A4:flip").theta));
  const GroupSpec aff = spec("affineA2");
  CHECK_FALSE(has_nof(aff.system, aff.theta));  // m(s2,s3) = 3 is flipped
  CHECK(has_nof(spec("D4:swap").system, spec("D4:swap").theta));
  CHECK(has_nof(spec("I2(4):swap").system, spec("I2(4):swap").theta));
  CHECK_FALSE(has_nof(spec("I2(5):swap").system, spec("I2(5):swap").theta));
}

TEST_CASE("full intervals") {
  const GroupSpec aff = spec("affineA2");
  const TwistedEnumeration ten = TwistedEnumeration::run(aff.system, aff.theta, 3);
  const TwistedLeqTable table = compute_leq_table(ten);
  const int u = *ten.index_of(aff.system.eval_word(std::vector<int>{1, 2}));
  const int v = *ten.index_of(aff.system.eval_word(std::vector<int>{1, 0, 2, 1, 0, 2}));
  CHECK(is_full(ten, table, u, u));
  CHECK_FALSE(is_full(ten, table, u, v));  // contains s3 s2 s3

  const GroupSpec a5 = spec("A5:flip");
  const TwistedEnumeration t5 = TwistedEnumeration::run(a5.system, a5.theta, std::nullopt);
  const TwistedLeqTable tb5 = compute_leq_table(t5);
  const int e = *t5.index_of(a5.system.identity());
  const int s2b = *t5.index_of(eval_sexpr(a5.system, a5.theta, std::vector<int>{1}));
  CHECK(is_full(t5, tb5, e, s2b));
  CHECK_THROWS_AS(is_full(t5, tb5, s2b, e), error);
}

TEST_CASE("full-interval closure lemma") {
  // For full [u,v] and s outside both descent sets: u.s = us or [u, v.s] full.
  for (const char* name : {"A5:flip", "D4:swap"}) {
    const GroupSpec g = spec(name);
    const TwistedEnumeration ten = TwistedEnumeration::run(g.system, g.theta, std::nullopt);
    const TwistedLeqTable table = compute_leq_table(ten);
    for (int u : ten.iota_indices())
      for (int v : ten.iota_indices()) {
        if (!table.leq(u, v) || !is_full(ten, table, u, v)) continue;
        for (int s = 0; s < g.system.rank(); ++s) {
          if (ten.descent(u, s) || ten.descent(v, s)) continue;
          const bool branch_one = ten.at(ten.action(u, s)).ell_theta == 1;
          if (branch_one) continue;
          const int vs = ten.action(v, s);
          REQUIRE(vs != TwistedEnumeration::kOutside);
          CHECK(ten.in_iota(vs));
          CHECK(is_full(ten, table, u, vs));
        }
      }
  }
}

TEST_CASE("Proposition: iota equals J when no generator meets its image") {
  const GroupSpec f4 = spec("F4:flip");
  const auto classes = f4.system.generator_conjugacy_classes();
  for (int s = 0; s < 4; ++s)
    for (const auto& cls : classes)
      if (std::find(cls.begin(), cls.end(), s) != cls.end())
        CHECK(std::find(cls.begin(), cls.end(), f4.theta(s)) == cls.end());
  const TwistedEnumeration ten = TwistedEnumeration::run(f4.system, f4.theta, std::nullopt);
  CHECK(static_cast<int>(ten.iota_indices().size()) == ten.size());
}

TEST_CASE("fixed subgroup generators") {
  const GroupSpec a3 = spec("A3");
  CHECK(fixed_subgroup_generators(a3.system, a3.theta).size() == 3);  // S itself

  const GroupSpec a5 = spec("A5:flip");
  const std::vector<Element> gens = fixed_subgroup_generators(a5.system, a5.theta);
  REQUIRE(gens.size() == 3);
  CHECK(gens[0] == a5.system.multiply(a5.system.generator(0), a5.system.generator(4)));
  CHECK(gens[1] == a5.system.multiply(a5.system.generator(1), a5.system.generator(3)));
  CHECK(gens[2] == a5.system.generator(2));

  const GroupSpec a2f = spec("A2:flip");
  const std::vector<Element> g2 = fixed_subgroup_generators(a2f.system, a2f.theta);
  REQUIRE(g2.size() == 1);
  CHECK(g2[0] == a2f.system.eval_word(std::vector<int>{0, 1, 0}));

  // infinite bond pairs contribute nothing and raise the flag
  CoxeterSystem inf = CoxeterSystem::build(CoxeterMatrix(std::vector<std::vector<int>>{{1, 0}, {0, 1}}));
  TwistedAutomorphism swap;
  swap.image = {1, 0};
  bool had = false;
  CHECK(fixed_subgroup_generators(inf, swap, &had).empty());
  CHECK(had);
}

TEST_CASE("iota_from_group_element and coset invariance") {
  const GroupSpec a5 = spec("A5:flip");
  CHECK(iota_from_group_element(a5.system, a5.theta, a5.system.identity()).rho == 0);
  const Element s1 = a5.system.generator(0);
  CHECK(iota_from_group_element(a5.system, a5.theta, s1).element ==
        a5.system.multiply(a5.system.generator(4), s1));

  const std::vector<Element> fix_gens = fixed_subgroup_generators(a5.system, a5.theta);
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> pick(0, 4), pickf(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Element w = a5.system.identity();
    for (int i = 0; i < trial % 9; ++i) w = a5.system.multiply_gen(w, pick(rng));
    Element f = fix_gens[pickf(rng)];
    CHECK(iota_from_group_element(a5.system, a5.theta, w).element ==
          iota_from_group_element(a5.system, a5.theta, a5.system.multiply(f, w)).element);
  }
}

TEST_CASE("make_twisted rejects non-involutions") {
  const GroupSpec aff = spec("affineA2");
  CHECK_THROWS_AS(make_twisted(aff.system, aff.theta, aff.system.generator(1)),
                  error);
  CHECK_THROWS_AS(rho_of(aff.system, aff.theta, aff.system.generator(2)), error);
}

TEST_CASE("dual conjugacy model") {
  // A1: the class of w0 is just {s1}
  const GroupSpec a1 = spec("A1");
  const DualConjugacyModel m1 = dual_conjugacy_model(a1.system, a1.theta);
  CHECK(m1.matches_w0_class);
  REQUIRE(m1.elements.size() == 1);
  CHECK(m1.elements[0] == a1.system.generator(0));

  const GroupSpec a3 = spec("A3:flip");
  const DualConjugacyModel m3 = dual_conjugacy_model(a3.system, a3.theta);
  CHECK(m3.matches_w0_class);
  CHECK(m3.elements.size() == testutil::fpf_involutions(2).size());  // 3

  const GroupSpec a5 = spec("A5:flip");
  const DualConjugacyModel m5 = dual_conjugacy_model(a5.system, a5.theta);
  CHECK(m5.matches_w0_class);
  CHECK(m5.elements.size() == 15);
  CHECK(m5.class_size == testutil::fpf_involutions(3).size());

  // theta must be conjugation by w0
  const GroupSpec d4 = spec("D4:swap");
  CHECK_THROWS_AS(dual_conjugacy_model(d4.system, d4.theta), error);
}

TEST_CASE("squares") {
  const GroupSpec inner = spec("A2");
  auto [sq, swap] = square_with_swap(inner.system);
  CHECK(sq.rank() == 4);
  CHECK(check_automorphism(sq, swap));
  const TwistedEnumeration ten = TwistedEnumeration::run(sq, swap, std::nullopt);
  CHECK(ten.iota_indices().size() == 6);  // |iota| = |W|

  // Poin(iota) = Poin(W) for the square of I2(4)
  const CoxeterSystem i4 = spec("I2(4)").system;
  auto [sq4, swap4] = square_with_swap(i4);
  const IntPolynomial inner_poin = poincare_w(i4.enumerate(std::nullopt));
  const IntPolynomial iota_poin = poincare_iota(sq4, swap4);
  CHECK(iota_poin == inner_poin);
}
