#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctinv/verify.hpp"
#include "ctinv/whitehead.hpp"

using namespace ctinv;

static CTData load_cubic() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/cubic.ct");
}

TEST_CASE("basis inversion on twisted bases") {
  std::mt19937 rng(41);
  for (int rank : {2, 3, 4, 5}) {
    std::uniform_int_distribution<int> gi(0, rank - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      Endo e = Endo::identity(rank);
      for (int step = 0; step < 6; ++step) {
        Endo el = Endo::identity(rank);
        int i = gi(rng), j = gi(rng);
        if (i == j) continue;
        Word yj = Word::generator(j + 1, rank);
        if (coin(rng)) yj = yj.inverse();
        Word yi = Word::generator(i + 1, rank);
        el.images[i] = coin(rng) ? yi * yj : yj * yi;
        e = coin(rng) ? e.compose(el) : el.compose(e);
      }
      REQUIRE(is_automorphism(e));
      Endo inv = invert(e);
      for (int i = 1; i <= rank; ++i) {
        CHECK(e.apply(inv.images[i - 1]) == Word::generator(i, rank));
        CHECK(inv.apply(e.images[i - 1]) == Word::generator(i, rank));
      }
    }
  }
  // a non-basis is rejected
  Endo bad;
  bad.images = {parse_word("aa", 2), parse_word("b", 2)};
  CHECK(!is_automorphism(bad));
  CHECK_THROWS_AS(invert(bad), error);
}

TEST_CASE("outer equality") {
  OuterAuto id = OuterAuto::identity(2);
  OuterAuto u = OuterAuto::parse("x1 -> a; x2 -> b", 2);
  CHECK(outer_equal(u, id));
  // conjugation by x1
  OuterAuto inner = OuterAuto::parse("x1 -> a; x2 -> abA", 2);
  CHECK(outer_equal(inner, id));
  OuterAuto twist = OuterAuto::parse("x1 -> a; x2 -> ba", 2);
  CHECK(!outer_equal(twist, id));
  CHECK_THROWS_AS(OuterAuto::parse("x1 -> a; x2 -> aa", 2), error);
}

TEST_CASE("outer equality is an equivalence on random triples") {
  std::mt19937 rng(9);
  std::vector<Endo> gens = whitehead_automorphisms(2);
  std::uniform_int_distribution<int> pick(0, (int)gens.size() - 1);
  std::uniform_int_distribution<int> count(1, 3);
  auto rand_auto = [&]() {
    Endo e = Endo::identity(2);
    for (int i = 0; i < count(rng); ++i) e = gens[pick(rng)].compose(e);
    return OuterAuto(e);
  };
  for (int t = 0; t < 10; ++t) {
    OuterAuto a = rand_auto(), b = rand_auto(), c = rand_auto();
    CHECK(outer_equal(a, a));
    CHECK(outer_equal(a, b) == outer_equal(b, a));
    if (outer_equal(a, b) && outer_equal(b, c)) CHECK(outer_equal(a, c));
  }
}

TEST_CASE("verify_conjugator") {
  CTData c = load_cubic();
  OuterAuto phi = ct_outer(c);
  OuterAuto id = OuterAuto::identity(5);
  CHECK(verify_conjugator(phi, phi, id));
  CHECK(verify_conjugator(phi, phi, phi));
  CHECK(verify_conjugator(phi, phi, phi.compose(phi)));
  // different abelianized growth: no theta works
  OuterAuto psi = OuterAuto::parse(
      "x1 -> a; x2 -> b; x3 -> c; x4 -> d; x5 -> e", 5);
  CHECK(!verify_conjugator(phi, psi, id));
  CHECK(!verify_conjugator(phi, psi, phi));
  // symmetry property
  std::mt19937 rng(4);
  std::vector<Endo> gens = whitehead_automorphisms(2);
  std::uniform_int_distribution<int> pick(0, (int)gens.size() - 1);
  for (int t = 0; t < 6; ++t) {
    OuterAuto a(gens[pick(rng)]);
    OuterAuto b(gens[pick(rng)]);
    OuterAuto theta(gens[pick(rng)]);
    CHECK(verify_conjugator(a, b, theta) ==
          verify_conjugator(b, a, theta.inverse()));
  }
}

TEST_CASE("recognition criterion") {
  CTData c = load_cubic();
  // identity correspondence preserves coordinates
  std::map<std::string, std::string> ident;
  for (const CyclicWord& ax : axes_oriented(c))
    for (const StrongAxis& s : strong_axes(c, ax)) {
      std::string k = strong_axis_key(c, s);
      ident[k] = k;
    }
  CHECK(recognition_check(c, c, ident));
  // swapping the b-site and p-site breaks tau (degrees 1 vs 2)
  std::map<std::string, std::string> swapped = ident;
  for (const CyclicWord& ax : axes_oriented(c)) {
    std::vector<StrongAxis> sa = strong_axes(c, ax);
    std::string kb, kp;
    for (const StrongAxis& s : sa) {
      if (s.site_edge == c.graph.edge_by_name('b')) kb = strong_axis_key(c, s);
      if (s.site_edge == c.graph.edge_by_name('p')) kp = strong_axis_key(c, s);
    }
    swapped[kb] = kp;
    swapped[kp] = kb;
  }
  CHECK(!recognition_check(c, c, swapped));
  // a non-bijection is rejected
  std::map<std::string, std::string> broken = ident;
  broken.begin()->second = (++broken.begin())->second;
  CHECK_THROWS_AS(recognition_check(c, c, broken), error);
}

TEST_CASE("x membership") {
  CTData c = load_cubic();
  SpecialChain chain = special_chain(c, default_chain_order(c));
  OuterAuto id = OuterAuto::identity(5);
  XMembership xm = x_membership(c, chain, id);
  CHECK(xm.all());
  OuterAuto phi = ct_outer(c);
  XMembership xp = x_membership(c, chain, phi);
  CHECK(xp.chain_preserved);
  CHECK(xp.factors_fixed);
  CHECK(xp.fix_classes_fixed);
  CHECK(xp.added_lines_fixed);
  CHECK(xp.limit_line_pairs_fixed);
  CHECK(xp.axes_fixed);
  CHECK(xp.strong_axes_fixed);
  CHECK(xp.all());
  // group property, spot check: phi^2 also passes
  XMembership x2 = x_membership(c, chain, phi.compose(phi));
  CHECK(x2.all());
  // a basis permutation violating F_0
  OuterAuto perm = OuterAuto::parse(
      "x1 -> c; x2 -> b; x3 -> a; x4 -> d; x5 -> e", 5);
  XMembership xb = x_membership(c, chain, perm);
  CHECK(!xb.factors_fixed);
  CHECK(!xb.all());
}
