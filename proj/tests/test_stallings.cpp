#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ctinv/stallings.hpp"

using namespace ctinv;

static Word W(const std::string& s, int rank = 3) { return parse_word(s, rank); }

static SubgroupGraph SG(const std::vector<std::string>& gens, int rank = 3) {
  std::vector<Word> ws;
  for (const std::string& s : gens) ws.push_back(W(s, rank));
  return SubgroupGraph::fold(ws, rank);
}

// brute-force membership: products of at most `depth` generators or inverses
static std::set<Word> enumerate_subgroup(const std::vector<Word>& gens,
                                         int rank, int depth) {
  std::set<Word> cur = {Word::identity(rank)};
  for (int d = 0; d < depth; ++d) {
    std::set<Word> next = cur;
    for (const Word& w : cur)
      for (const Word& g : gens) {
        next.insert(w * g);
        next.insert(w * g.inverse());
      }
    cur = next;
  }
  return cur;
}

TEST_CASE("fold and membership") {
  SubgroupGraph h = SG({"aa", "b"});
  CHECK(h.contains(W("aab")));
  CHECK(!h.contains(W("a")));
  CHECK(h.contains(W("baaB")));
  CHECK(h.subgroup_rank() == 2);

  SubgroupGraph loop = SG({"a"});
  CHECK(loop.vertex_count() == 1);
  CHECK(loop.subgroup_rank() == 1);

  // <a, ab> folds to the full rank-2 rose
  SubgroupGraph full = SG({"a", "ab"}, 2);
  CHECK(full.subgroup_rank() == 2);
  CHECK(full.contains(W("b", 2)));
}

TEST_CASE("membership agrees with brute force") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> letter(1, 6);
  auto rand_word = [&](int len) {
    Letters raw;
    for (int i = 0; i < len; ++i) {
      int l = letter(rng);
      raw.push_back(l <= 3 ? l : -(l - 3));
    }
    return Word(raw, 3);
  };
  for (int t = 0; t < 25; ++t) {
    std::vector<Word> gens;
    int k = 1 + t % 3;
    for (int i = 0; i < k; ++i) gens.push_back(rand_word(1 + (t + i) % 4));
    SubgroupGraph h = SubgroupGraph::fold(gens, 3);
    std::set<Word> brute = enumerate_subgroup(gens, 3, 4);
    for (const Word& w : brute) CHECK(h.contains(w));
    for (int j = 0; j < 40; ++j) {
      Word w = rand_word(1 + j % 8);
      if (!h.contains(w)) CHECK(!brute.count(w));
    }
  }
}

TEST_CASE("folding preserves membership under word sampling") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> letter(1, 6);
  std::vector<Word> gens = {W("abA"), W("bb"), W("cba")};
  SubgroupGraph h = SubgroupGraph::fold(gens, 3);
  auto brute = enumerate_subgroup(gens, 3, 4);
  int checked = 0;
  for (const Word& w : brute) {
    CHECK(h.contains(w));
    if (++checked > 1000) break;
  }
}

TEST_CASE("conjugacy classes of subgroups") {
  SubgroupConjClass a = SubgroupConjClass::from_generators({W("a")}, 3);
  SubgroupConjClass b = SubgroupConjClass::from_generators({W("baB")}, 3);
  CHECK(conj_class_equal(a, b));
  auto witness = conjugacy_witness(SG({"a"}), SG({"baB"}));
  REQUIRE(witness.has_value());
  // B = g A g^-1
  CHECK(W("baB") == W("a").conjugate(*witness));

  SubgroupConjClass sq = SubgroupConjClass::from_generators({W("aa")}, 3);
  CHECK(!conj_class_equal(a, sq));

  SubgroupConjClass p = SubgroupConjClass::from_generators({W("aa"), W("b")}, 3);
  SubgroupConjClass q =
      SubgroupConjClass::from_generators({W("aa"), W("abA")}, 3);
  // core comparison decides; verify against a hand witness attempt
  bool eq = conj_class_equal(p, q);
  // g <aa, b> g^-1 = <aa, aba^-1> would need g = a, but a<aa,b>A contains
  // abA and aaa... check: a<aa,b>A = <aa, abA> indeed (a*aa*A = aa)
  CHECK(eq == true);
}

TEST_CASE("conj class equality is an equivalence on random samples") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> letter(1, 6);
  auto rand_word = [&](int len) {
    Letters raw;
    for (int i = 0; i < len; ++i) {
      int l = letter(rng);
      raw.push_back(l <= 3 ? l : -(l - 3));
    }
    return Word(raw, 3);
  };
  std::vector<SubgroupConjClass> cls;
  for (int t = 0; t < 12; ++t)
    cls.push_back(SubgroupConjClass::from_generators(
        {rand_word(1 + t % 3), rand_word(2)}, 3));
  for (const auto& x : cls) CHECK(conj_class_equal(x, x));
  for (const auto& x : cls)
    for (const auto& y : cls)
      CHECK(conj_class_equal(x, y) == conj_class_equal(y, x));
}

TEST_CASE("normalizer quotients") {
  CHECK_THROWS_AS(normalizer_quotient(SG({}, 2)), error);
  FiniteGroupTable t1 = normalizer_quotient(SG({"a"}, 2));
  CHECK(t1.order() == 1);
  FiniteGroupTable t2 = normalizer_quotient(SG({"aa"}, 2));
  CHECK(t2.order() == 2);
  // the nontrivial coset is represented by a (up to H)
  SubgroupGraph h = SG({"aa"}, 2);
  bool found = false;
  for (const Word& r : t2.reps)
    if (!h.contains(r) && h.contains(r * W("a", 2).inverse())) found = true;
  CHECK(found);
  FiniteGroupTable t3 = normalizer_quotient(SG({"a", "b"}, 2));
  CHECK(t3.order() == 1);
  // table closure sanity
  for (int i = 0; i < t2.order(); ++i)
    for (int j = 0; j < t2.order(); ++j) CHECK(t2.mult[i][j] >= 0);
  // cyclic of order 3
  FiniteGroupTable t4 = normalizer_quotient(SG({"aaa"}, 2));
  CHECK(t4.order() == 3);
  // an index-2 normal subgroup: N(H) = F_2, N/H of order 2
  SubgroupGraph h2 = SG({"b", "abA", "aa"}, 2);
  FiniteGroupTable t5 = normalizer_quotient(h2);
  CHECK(t5.order() == 2);
  // every representative really normalizes
  for (const Word& r : t5.reps)
    for (const Word& g : h2.basis()) CHECK(h2.contains(g.conjugate(r)));
}

TEST_CASE("splitting a class into H-classes") {
  // one class
  auto r1 = split_conj_class(SG({"a"}, 2), SG({"a", "b"}, 2));
  CHECK(r1.size() == 1);
  // two classes
  auto r2 = split_conj_class(SG({"a"}, 2), SG({"a", "baB"}, 2));
  CHECK(r2.size() == 2);
  // empty
  auto r3 = split_conj_class(SG({"b"}, 2), SG({"a"}, 2));
  CHECK(r3.empty());
  // representatives really are subgroups of H conjugate to K
  SubgroupGraph h = SG({"a", "baB"}, 2);
  for (const SubgroupInH& s : r2) {
    for (const Word& g : s.generators) CHECK(h.contains(g));
    CHECK(conj_class_equal(SubgroupConjClass::from_generators(s.generators, 2),
                           SubgroupConjClass::from_generators({W("a", 2)}, 2)));
  }
}

TEST_CASE("split count is conjugation invariant") {
  std::vector<Word> hgens = {W("a", 2), W("baB", 2)};
  SubgroupGraph h = SubgroupGraph::fold(hgens, 2);
  for (const std::string& conj : {"b", "ab", "Ba"}) {
    Word g = W(conj, 2);
    SubgroupGraph k2 = SubgroupGraph::fold({W("a", 2).conjugate(g)}, 2);
    CHECK(split_conj_class(k2, h).size() == 2);
  }
}

TEST_CASE("good pairs") {
  CHECK(is_good_pair(SG({"a"}), SG({"b"})));
  CHECK(!is_good_pair(SG({"a"}), SG({"a"})));
  CHECK(is_good_pair(SG({"a"}), SG({"baB"})));
  CHECK(is_good_pair(SG({"b"}), SG({"a"})));  // symmetry
  CHECK_THROWS_AS(is_good_pair(SG({}), SG({"a"})), error);
}

TEST_CASE("pair equality") {
  // simultaneous conjugation in F_3
  CHECK(pairs_equal(SG({"a"}), SG({"b"}), SG({"caC"}), SG({"cbC"})));
  // ordered pairs: the swap is not allowed
  CHECK(!pairs_equal(SG({"a"}, 2), SG({"b"}, 2), SG({"b"}, 2), SG({"a"}, 2)));
  // second coordinate conjugated independently, join = F_2
  CHECK(pairs_equal(SG({"a"}, 2), SG({"b"}, 2), SG({"a"}, 2), SG({"abA"}, 2)));
  CHECK_THROWS_AS(
      pairs_equal(SG({"a"}, 2), SG({"a"}, 2), SG({"a"}, 2), SG({"b"}, 2)),
      error);
  // proper join <a,b> inside F_3
  CHECK(pairs_equal(SG({"a"}), SG({"b"}), SG({"a"}), SG({"abA"})));
  CHECK(!pairs_equal(SG({"a"}), SG({"b"}), SG({"b"}), SG({"a"})));
}
