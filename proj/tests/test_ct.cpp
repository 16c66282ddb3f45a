#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ctinv/ct.hpp"
#include "ctinv/splitting.hpp"

using namespace ctinv;

static std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

static CTData load_cubic() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/cubic.ct");
}
static CTData load_fixededge() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/fixededge.ct");
}

TEST_CASE("the shipped files validate") {
  CHECK(validate_ct(load_cubic()).empty());
  CHECK(validate_ct(load_fixededge()).empty());
}

TEST_CASE("constructed violations are caught") {
  std::string text = slurp(std::string(CTINV_DATA_DIR) + "/cubic.ct");
  {
    // f(b) = b a b: tail leaves G_{i-1}
    std::string bad = text;
    auto pos = bad.find("image=ba ");
    bad.replace(pos, 9, "image=bab");
    CTData c = parse_ct(bad);
    auto v = validate_ct(c);
    CHECK(!v.empty());
    bool tail_violation = false;
    for (const std::string& msg : v)
      if (msg.find("G_{i-1}") != std::string::npos) tail_violation = true;
    CHECK(tail_violation);
  }
  {
    // image not starting with the edge
    std::string bad = text;
    auto pos = bad.find("image=qc");
    bad.replace(pos, 8, "image=cq");
    CTData c = parse_ct(bad);
    auto v = validate_ct(c);
    CHECK(!v.empty());
  }
  {
    // missing twist degree on a linear edge is a parse failure
    std::string bad = text;
    auto pos = bad.find(" degree=1");
    bad.erase(pos, 9);
    CHECK_THROWS_AS(parse_ct(bad), error);
  }
  {
    // wrong declared degree
    std::string bad = text;
    auto pos = bad.find("twist=a degree=2");
    bad.replace(pos, 16, "twist=a degree=3");
    CTData c = parse_ct(bad);
    auto v = validate_ct(c);
    CHECK(!v.empty());
  }
  {
    // a twist path that is not a Nielsen path
    std::string bad = text;
    auto pos = bad.find("twist=a degree=1");
    bad.replace(pos, 16, "twist=b degree=1");
    auto pos2 = bad.find("image=ba ");
    bad.replace(pos2, 9, "image=bb ");
    CTData c = parse_ct(bad);
    auto v = validate_ct(c);
    bool nielsen_violation = false;
    for (const std::string& msg : v)
      if (msg.find("Nielsen") != std::string::npos) nielsen_violation = true;
    CHECK(nielsen_violation);
  }
  {
    // two edges in one linear family sharing a degree
    std::string bad = text;
    auto pos = bad.find("image=paa twist=a degree=2");
    bad.replace(pos, 26, "image=pa twist=a degree=1");
    CTData c = parse_ct(bad);
    auto v = validate_ct(c);
    bool degree_violation = false;
    for (const std::string& msg : v)
      if (msg.find("share degree") != std::string::npos)
        degree_violation = true;
    CHECK(degree_violation);
  }
  {
    // a twist path that is a proper power
    std::string source =
        "rank 2\nvertices v0\n"
        "edge a v0 v0 class=fixed image=a\n"
        "edge b v0 v0 class=linear image=baa twist=aa degree=1\n"
        "order a b\nmarking tree= words: a=a b=b\n";
    CTData c = parse_ct(source);
    auto v = validate_ct(c);
    bool power_violation = false;
    for (const std::string& msg : v)
      if (msg.find("proper power") != std::string::npos)
        power_violation = true;
    CHECK(power_violation);
  }
}

TEST_CASE("classification") {
  auto names = [](const CTData& ct, const std::vector<int>& edges) {
    std::string s;
    for (int e : edges) s += ct.graph.edge(e).name;
    return s;
  };
  CTData c = load_cubic();
  EdgeClassification cls = classify_edges(c);
  CHECK(names(c, cls.fixed) == "a");
  CHECK(names(c, cls.lin) == "bp");
  CHECK(names(c, cls.higher) == "cdeq");

  CTData fe = load_fixededge();
  EdgeClassification cls2 = classify_edges(fe);
  CHECK(names(fe, cls2.fixed) == "ae");
  CHECK(names(fe, cls2.lin) == "b");
  CHECK(names(fe, cls2.higher) == "cdgh");
}

TEST_CASE("identity on a rose is all fixed") {
  std::string rose =
      "rank 2\n"
      "vertices v0\n"
      "edge a v0 v0 class=fixed image=a\n"
      "edge b v0 v0 class=fixed image=b\n"
      "order a b\n"
      "marking tree= words: a=a b=b\n";
  CTData c = parse_ct(rose);
  CHECK(validate_ct(c).empty());
  EdgeClassification cls = classify_edges(c);
  CHECK(cls.fixed.size() == 2);
  CHECK(cls.lin.empty());
  CHECK(cls.higher.empty());
}

TEST_CASE("complete splitting") {
  CTData c = load_cubic();
  Splitter sp(c);
  const MarkedGraph& g = c.graph;
  // f(q) = q.c: two single-edge terms
  Terms t1 = sp.split(g.parse_path("qc"));
  REQUIRE(t1.size() == 2);
  CHECK(t1[0].kind == TermKind::Single);
  CHECK(t1[1].kind == TermKind::Single);
  // b a b: three singles
  Terms t2 = sp.split(g.parse_path("bab"));
  REQUIRE(t2.size() == 3);
  for (const SplitTerm& t : t2) CHECK(t.kind == TermKind::Single);
  // b a bbar: a single iNP
  Terms t3 = sp.split(g.parse_path("baB"));
  REQUIRE(t3.size() == 1);
  CHECK(t3[0].kind == TermKind::INP);
  CHECK(t3[0].power == 1);
  // b a a pbar: exceptional (degrees 1 and 2, same sign)
  Terms t4 = sp.split(g.parse_path("baaP"));
  REQUIRE(t4.size() == 1);
  CHECK(t4[0].kind == TermKind::Exceptional);
  CHECK(t4[0].power == 2);
  // splitting of f(E_i) starts with E_i
  for (int e : c.filtration) {
    if (c.edge_class[e] == EdgeClass::Fixed) continue;
    Terms ts = sp.split(c.edge_images[e]);
    CHECK(ts.front().kind == TermKind::Single);
    CHECK(ts.front().step == step_of_edge(e));
  }
}

TEST_CASE("image of a splitting is the splitting of the image") {
  CTData c = load_cubic();
  Splitter sp(c);
  const MarkedGraph& g = c.graph;
  for (const std::string& s : {"qc", "cb", "bab", "baB", "dbb"}) {
    Terms ts = sp.split(g.parse_path(s));
    Terms image_terms = sp.image(ts);
    EdgePath image_path = c.self_map().map_path(g.parse_path(s));
    CHECK(sp.terms_path(image_terms) == image_path);
    CHECK(sp.split(image_path) == image_terms);
  }
}

TEST_CASE("initial segment property") {
  CTData c = load_cubic();
  const GraphSelfMap& f = c.self_map();
  const MarkedGraph& g = c.graph;
  for (char nm : {'b', 'c', 'd', 'e', 'p', 'q'}) {
    EdgePath prev = g.parse_path(std::string(1, nm));
    for (int k = 1; k <= 5; ++k) {
      EdgePath next = f.map_path(prev);
      CHECK(std::equal(prev.begin(), prev.end(), next.begin()));
      prev = next;
    }
  }
}

TEST_CASE("no Nielsen or exceptional path crosses a higher edge") {
  CTData c = load_cubic();
  Splitter sp(c);
  // grammar check: INP and exceptional terms reference linear edges only
  for (int e : c.higher_edges()) {
    Terms stream = sp.ray_terms(e, 300);
    for (const SplitTerm& t : stream) {
      if (t.kind == TermKind::Single) continue;
      CHECK(c.edge_class[t.lin1] == EdgeClass::Linear);
      if (t.kind == TermKind::Exceptional)
        CHECK(c.edge_class[t.lin2] == EdgeClass::Linear);
    }
  }
}

TEST_CASE("growth polynomials") {
  CTData c = load_cubic();
  int q = c.graph.edge_by_name('q');
  GrowthPoly pq = growth_polynomial_edge(c, q);
  CHECK(pq.degree() == 3);
  CHECK(pq.k0 == 0);
  CHECK(pq.str() == "(k^3 + 5*k + 6)/6");
  for (int k = 0; k <= 30; ++k) {
    Rational v = pq.eval(k);
    CHECK(v.den == 1);
    CHECK(v.num == c.self_map().iterate_length(q, k));
  }
  GrowthPoly pa = growth_polynomial_edge(c, c.graph.edge_by_name('a'));
  CHECK(pa.degree() == 0);
  CHECK(pa.str() == "1");
  GrowthPoly pb = growth_polynomial_edge(c, c.graph.edge_by_name('b'));
  CHECK(pb.str() == "k + 1");
}

TEST_CASE("growth of a conjugacy class") {
  CTData c = load_cubic();
  // [x5] = [Pbar q] grows like q
  GrowthPoly p = growth_polynomial_class(c, conjugacy_class(parse_word("e", 5)));
  CHECK(p.degree() == 3);
}

TEST_CASE("stabilization constant") {
  CTData c = load_cubic();
  CHECK(stabilization_constant(c) == 2);
  // a CT with no higher-order edges: M = 1
  std::string lin =
      "rank 2\n"
      "vertices v0\n"
      "edge a v0 v0 class=fixed image=a\n"
      "edge b v0 v0 class=linear image=ba twist=a degree=1\n"
      "order a b\n"
      "marking tree= words: a=a b=b\n";
  CTData c2 = parse_ct(lin);
  CHECK(validate_ct(c2).empty());
  CHECK(stabilization_constant(c2) == 1);
  CTData fe = load_fixededge();
  int m = stabilization_constant(fe);
  CHECK(m >= 1);
  CHECK(m <= 3);
}
