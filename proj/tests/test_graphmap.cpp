#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "ctinv/ct.hpp"
#include "ctinv/graphmap.hpp"

using namespace ctinv;

static CTData load_cubic() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/cubic.ct");
}

TEST_CASE("tighten") {
  CTData c = load_cubic();
  const MarkedGraph& g = c.graph;
  // (e, ebar, e') -> (e')
  EdgePath p = g.parse_path("aAb");
  CHECK(tighten(g, p) == g.parse_path("b"));
  EdgePath tight = g.parse_path("qc");
  CHECK(tighten(g, tight) == tight);
  CHECK(tighten(g, tighten(g, p)) == tighten(g, p));
  // running example: no cancellation in q c c b
  EdgePath qccb = g.parse_path("qccb");
  CHECK(tighten(g, qccb) == qccb);
  // non-composable steps
  CHECK_THROWS_AS(tighten(g, g.parse_path("qq")), error);
}

TEST_CASE("tighten only removes inverse pairs") {
  CTData c = load_cubic();
  const MarkedGraph& g = c.graph;
  std::mt19937 rng(2);
  // random closed-ish walks at v0 using loop edges a,b,c
  std::uniform_int_distribution<int> pick(0, 5);
  for (int t = 0; t < 200; ++t) {
    EdgePath p;
    for (int i = 0; i < 12; ++i) {
      int k = pick(rng);
      int e = g.edge_by_name("abc"[k % 3]);
      p.push_back(k < 3 ? step_of_edge(e) : -step_of_edge(e));
    }
    EdgePath q = tighten(g, p);
    // multiset of steps minus cancelled pairs has the same parity per edge
    long long sum_before = 0, sum_after = 0;
    for (Step s : p) sum_before += s;
    for (Step s : q) sum_after += s;
    CHECK(sum_before == sum_after);  // cancellation removes (s, -s) pairs
  }
}

TEST_CASE("map_path on the running example") {
  CTData c = load_cubic();
  const GraphSelfMap& f = c.self_map();
  const MarkedGraph& g = c.graph;
  CHECK(f.map_path(g.parse_path("q")) == g.parse_path("qc"));
  CHECK(f.map_path(g.parse_path("a")) == g.parse_path("a"));
  EdgePath p = g.parse_path("q");
  for (int i = 0; i < 3; ++i) p = f.map_path(p);
  CHECK(p == g.parse_path("qccbcbba"));
  CHECK(p.size() == 8);
}

TEST_CASE("map_path is multiplicative") {
  CTData c = load_cubic();
  const GraphSelfMap& f = c.self_map();
  const MarkedGraph& g = c.graph;
  std::vector<std::pair<std::string, std::string>> cases = {
      {"q", "c"}, {"ba", "b"}, {"cb", "ba"}, {"a", "a"}};
  for (auto& [l, r] : cases) {
    EdgePath pl = g.parse_path(l), pr = g.parse_path(r);
    EdgePath lr = pl;
    lr.insert(lr.end(), pr.begin(), pr.end());
    EdgePath image_cat = f.map_path(pl);
    EdgePath rimg = f.map_path(pr);
    image_cat.insert(image_cat.end(), rimg.begin(), rimg.end());
    CHECK(f.map_path(tighten(g, lr)) == tighten(g, image_cat));
  }
}

TEST_CASE("iterate_length") {
  CTData c = load_cubic();
  const GraphSelfMap& f = c.self_map();
  int q = c.graph.edge_by_name('q');
  CHECK(f.iterate_length(q, 0) == 1);
  CHECK(f.iterate_length(q, 2) == 4);
  CHECK(f.iterate_length(q, 10) == 176);
  for (int k = 0; k <= 30; ++k)
    CHECK(f.iterate_length(q, k) ==
          ((long long)k * k * k + 5 * k + 6) / 6);
}

TEST_CASE("circuits and circuit_of") {
  CTData c = load_cubic();
  const MarkedGraph& g = c.graph;
  // rose-like loop a
  Circuit ca = circuit_of(conjugacy_class(parse_word("a", 5)), g);
  CHECK(ca == Circuit(g, g.parse_path("a")));
  // the class of x4 = marking of edge e traverses Dbar e
  Circuit cd = circuit_of(conjugacy_class(parse_word("d", 5)), g);
  CHECK(cd == Circuit(g, g.parse_path("De")));
  // rotation canonicalization
  CHECK(Circuit(g, g.parse_path("ab")) == Circuit(g, g.parse_path("ba")));
  CHECK_THROWS_AS(circuit_of(conjugacy_class(Word::identity(5)), g), error);
}

TEST_CASE("circuit_of is injective on sampled classes") {
  CTData c = load_cubic();
  const MarkedGraph& g = c.graph;
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> letter(1, 10);
  std::vector<CyclicWord> classes;
  std::vector<Circuit> circuits;
  for (int t = 0; t < 60; ++t) {
    Letters raw;
    for (int i = 0; i < 1 + t % 5; ++i) {
      int l = letter(rng);
      raw.push_back(l <= 5 ? l : -(l - 5));
    }
    Word w(raw, 5);
    if (w.trivial()) continue;
    CyclicWord cls = conjugacy_class(w);
    if (cls.size() == 0) continue;
    Circuit circ = circuit_of(cls, g);
    for (size_t i = 0; i < classes.size(); ++i) {
      if (classes[i] == cls)
        CHECK(circuits[i] == circ);
      else
        CHECK(!(circuits[i] == circ));
    }
    classes.push_back(cls);
    circuits.push_back(circ);
  }
}

TEST_CASE("bounded cancellation bound") {
  CTData c = load_cubic();
  const MarkedGraph& g = c.graph;
  const GraphSelfMap& f = c.self_map();
  std::vector<EdgePath> images;
  for (int e = 0; e < g.edge_count(); ++e) images.push_back(c.edge_images[e]);
  long long bound = bcc(g, images);
  CHECK(bound >= 3);  // e |-> e bbb alone contributes 4
  // cancellation at the juncture of tight concatenations stays within bound
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, 5);
  int checked = 0;
  for (int t = 0; t < 600 && checked < 200; ++t) {
    EdgePath p, q;
    for (int i = 0; i < 6; ++i) {
      int k = pick(rng);
      int e = g.edge_by_name("abc"[k % 3]);
      p.push_back(k < 3 ? step_of_edge(e) : -step_of_edge(e));
      k = pick(rng);
      e = g.edge_by_name("abc"[k % 3]);
      q.push_back(k < 3 ? step_of_edge(e) : -step_of_edge(e));
    }
    p = tighten(g, p);
    q = tighten(g, q);
    EdgePath cat = p;
    cat.insert(cat.end(), q.begin(), q.end());
    if (tighten(g, cat).size() != p.size() + q.size()) continue;  // not tight
    ++checked;
    long long cancel = (long long)f.map_path(p).size() +
                       (long long)f.map_path(q).size() -
                       (long long)f.map_path(cat).size();
    CHECK(cancel >= 0);
    CHECK(cancel <= 2 * bound);
    // composition bound for f o f
    EdgePath p2 = f.map_path(f.map_path(p));
    EdgePath q2 = f.map_path(f.map_path(q));
    EdgePath cat2 = f.map_path(f.map_path(cat));
    long long cancel2 =
        (long long)p2.size() + (long long)q2.size() - (long long)cat2.size();
    long long lip = 0;
    for (int e = 0; e < g.edge_count(); ++e)
      lip = std::max<long long>(lip, (long long)c.edge_images[e].size());
    CHECK(cancel2 <= 2 * (bound + lip * bound));
  }
  CHECK(checked == 200);
}

TEST_CASE("induced outer automorphism") {
  CTData c = load_cubic();
  Endo phi = c.self_map().induced_outer();
  // x1 .. x5 = a b c d e with d = Dbar e loop, e = Pbar q loop
  CHECK(phi.images[0] == parse_word("a", 5));
  CHECK(phi.images[1] == parse_word("ba", 5));
  CHECK(phi.images[2] == parse_word("cb", 5));
  CHECK(phi.images[3] == parse_word("BBdbbb", 5));
  CHECK(phi.images[4] == parse_word("AAec", 5));
}
