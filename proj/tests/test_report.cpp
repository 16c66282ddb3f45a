#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctinv/report.hpp"

using namespace ctinv;

static CTData load_cubic() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/cubic.ct");
}

TEST_CASE("reports are deterministic") {
  CTData a = load_cubic();
  CTData b = load_cubic();
  Report ra = invariants_report(a, parse_chain_order(a, "c,d,e,q"), 24);
  Report rb = invariants_report(b, parse_chain_order(b, "c,d,e,q"), 24);
  CHECK(ra.text() == rb.text());
  CHECK(ra.json() == rb.json());
}

TEST_CASE("depth only changes ray prefix lines") {
  CTData c = load_cubic();
  Report r1 = invariants_report(c, parse_chain_order(c, "c,d,e,q"), 8);
  Report r2 = invariants_report(c, parse_chain_order(c, "c,d,e,q"), 16);
  for (size_t s = 0; s < r1.sections.size(); ++s) {
    if (r1.sections[s].name == "limit-lines") continue;
    CHECK(r1.sections[s].lines == r2.sections[s].lines);
  }
}

TEST_CASE("golden file") {
  CTData c = load_cubic();
  Report r = invariants_report(c, parse_chain_order(c, "c,d,e,q"), 24);
  std::string path = std::string(CTINV_GOLDEN_DIR) + "/cubic_invariants.txt";
  std::ifstream f(path);
  REQUIRE_MESSAGE(f.good(), "golden file missing: " << path);
  std::ostringstream os;
  os << f.rdbuf();
  CHECK(r.text() == os.str());
}

TEST_CASE("json mirrors the text content") {
  CTData c = load_cubic();
  Report r = invariants_report(c, parse_chain_order(c, "c,d,e,q"), 24);
  auto j = nlohmann::json::parse(r.json());
  REQUIRE(j.is_array());
  CHECK(j.size() == r.sections.size());
  for (size_t i = 0; i < r.sections.size(); ++i) {
    CHECK(j[i]["name"] == r.sections[i].name);
    CHECK(j[i]["lines"].size() == r.sections[i].lines.size());
  }
}

TEST_CASE("compare: a file against itself") {
  CTData a = load_cubic();
  CTData b = load_cubic();
  CompareResult res = compare_cts(a, parse_chain_order(a, "c,d,e,q"), b,
                                  parse_chain_order(b, "c,d,e,q"));
  CHECK(res.indistinguishable);
  CHECK(res.verdict == "indistinguishable");
}

TEST_CASE("compare: relabeled copies are indistinguishable") {
  // same CT with edges renamed (z for q, y for c) and reordered lines
  std::string relabeled =
      "rank 5\n"
      "vertices w0 w1 w2\n"
      "edge y w0 w0 class=higher image=yb\n"
      "edge a w0 w0 class=fixed image=a\n"
      "edge b w0 w0 class=linear image=ba twist=a degree=1\n"
      "edge d w2 w0 class=higher image=dbb\n"
      "edge e w2 w0 class=higher image=ebbb\n"
      "edge p w1 w0 class=linear image=paa twist=a degree=2\n"
      "edge z w1 w0 class=higher image=zy\n"
      "order a b y d e p z\n"
      "marking tree=d,p words: a=a b=b y=c e=d z=e\n";
  CTData a = load_cubic();
  CTData b = parse_ct(relabeled);
  REQUIRE(validate_ct(b).empty());
  CompareResult res =
      compare_cts(a, parse_chain_order(a, "c,d,e,q"), b,
                  parse_chain_order(b, "y,d,e,z"));
  CHECK(res.indistinguishable);
}

TEST_CASE("compare: the two shipped examples are distinguished") {
  CTData a = load_cubic();
  CTData b = load_ct(std::string(CTINV_DATA_DIR) + "/fixededge.ct");
  CompareResult res = compare_cts(a, parse_chain_order(a, ""), b,
                                  parse_chain_order(b, ""));
  CHECK(!res.indistinguishable);
  // both chains realize the standard factors of ranks 2..5; Fix(phi) is the
  // first component that differs
  CHECK(res.verdict == "fixed-subgroups");
}
