// Acceptance suite: one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "ctinv/report.hpp"
#include "ctinv/staples.hpp"
#include "ctinv/verify.hpp"
#include "ctinv/whitehead.hpp"

using namespace ctinv;

static int failures = 0;

static void criterion(const std::string& name, bool ok) {
  std::printf("%-72s %s\n", name.c_str(), ok ? "PASS" : "FAIL");
  if (!ok) ++failures;
}

static CTData cubic() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/cubic.ct");
}
static CTData fixededge() {
  return load_ct(std::string(CTINV_DATA_DIR) + "/fixededge.ct");
}
static int E(const CTData& c, char n) { return c.graph.edge_by_name(n); }

int main() {
  auto t0 = std::chrono::steady_clock::now();

  // 1. cubic growth, exact, < 1s
  {
    auto s = std::chrono::steady_clock::now();
    CTData c = cubic();
    const GraphSelfMap& f = c.self_map();
    bool ok = true;
    for (long long k = 0; k <= 30; ++k)
      ok = ok && f.iterate_length(E(c, 'q'), (int)k) == (k * k * k + 5 * k + 6) / 6;
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - s)
                      .count();
    criterion("1. |f^k(q)| = (k^3+5k+6)/6 for 0<=k<=30, exact, <1s",
              ok && secs < 1.0);
  }

  // 2. classification
  {
    CTData c = cubic();
    EdgeClassification cls = classify_edges(c);
    auto names = [&](const std::vector<int>& es) {
      std::string s;
      for (int e : es) s += c.graph.edge(e).name;
      return s;
    };
    criterion("2. lin(f)={b,p}, E_f={c,d,e,q}, fixed={a}",
              names(cls.fixed) == "a" && names(cls.lin) == "bp" &&
                  names(cls.higher) == "cdeq");
  }

  // 3. limit lines of r_q
  {
    CTData c = cubic();
    EdgePath abar = reverse_path(c.graph.parse_path("a"));
    std::set<LineDescriptor> expect = {
        make_line(c, RayDescriptor::periodic(abar), {},
                  RayDescriptor::eigen(E(c, 'c'))),
        make_line(c, RayDescriptor::periodic(abar), {},
                  RayDescriptor::linear_tail(E(c, 'b'), 1)),
        make_periodic_line(c, c.graph.parse_path("a"))};
    bool ok = limit_lines(c, E(c, 'q')) == expect;
    ok = ok && acc_np(c, E(c, 'q')).size() == 2;
    criterion("3. Omega(r_q) = {a^oo R_c, a^oo b a^oo, a^oo}, |acc_NP| = 2",
              ok);
  }

  // 4. partial order
  {
    CTData c = cubic();
    auto pairs = ray_partial_order(c).relation_pairs();
    criterion("4. partial order on {c,d,e,q} is exactly {r_c < r_q}",
              pairs.size() == 1 && pairs[0].first == E(c, 'c') &&
                  pairs[0].second == E(c, 'q'));
  }

  // 5. strong axes
  {
    CTData c = cubic();
    std::vector<StrongAxis> sa =
        strong_axes(c, conjugacy_class(parse_word("a", 5)));
    std::multiset<int> degs;
    for (const StrongAxis& s : sa) degs.insert(s.degree);
    const StrongAxis *base = nullptr, *bsite = nullptr;
    for (const StrongAxis& s : sa) {
      if (s.site_edge < 0) base = &s;
      if (s.site_edge == E(c, 'b')) bsite = &s;
    }
    criterion("5. |SA(phi,[a])| = 3, degrees {0,1,2}, tau(b-site,base) = 1",
              sa.size() == 3 && degs == std::multiset<int>({0, 1, 2}) &&
                  base && bsite && twist_coordinate(*bsite, *base) == 1);
  }

  // 6. the special chain for order (c,d,e,q)
  {
    CTData c = cubic();
    SpecialChain chain = special_chain(
        c, {E(c, 'c'), E(c, 'd'), E(c, 'e'), E(c, 'q')});
    bool ok = chain.elements.size() == 4;
    std::vector<std::vector<int>> profiles = {{2}, {3}, {4}, {5}};
    for (size_t i = 0; i < 4 && ok; ++i)
      ok = chain.elements[i].rank_profile() == profiles[i];
    // the d addition produces no new FFS
    for (const auto& st : chain.steps) ok = ok && st.d_edge != E(c, 'd');
    criterion("6. chain(c,d,e,q): 4 elements, ranks (2)(3)(4)(5), d skipped",
              ok);
  }

  // 7. extension data
  {
    CTData c = cubic();
    SpecialChain chain = special_chain(
        c, {E(c, 'c'), E(c, 'd'), E(c, 'e'), E(c, 'q')});
    ExtensionData e1 = extension_type(c, chain, 0);
    ExtensionData e2 = extension_type(c, chain, 1);
    ExtensionData e3 = extension_type(c, chain, 2);
    bool types_ok = e1.arc == ArcType::H && e1.flag == ExtFlag::Large &&
                    e2.arc == ArcType::HH &&
                    e2.flag == ExtFlag::Contractible &&
                    e3.arc == ArcType::LH &&
                    e3.flag == ExtFlag::InfiniteCyclic;
    AddedLines hh = added_lines(c, chain, 1);
    LineDescriptor de = make_line(c, RayDescriptor::eigen(E(c, 'd')), {},
                                  RayDescriptor::eigen(E(c, 'e')));
    std::vector<LineDescriptor> want_hh = {de, line_inverse(c, de)};
    std::sort(want_hh.begin(), want_hh.end());
    AddedLines lh = added_lines(c, chain, 2);
    std::vector<LineDescriptor> want_lh = {
        make_line(c, RayDescriptor::linear_tail(E(c, 'p'), -1), {},
                  RayDescriptor::eigen(E(c, 'q'))),
        make_line(c, RayDescriptor::linear_tail(E(c, 'p'), 1), {},
                  RayDescriptor::eigen(E(c, 'q')))};
    std::sort(want_lh.begin(), want_lh.end());
    criterion(
        "7. extension types (H,large),(HH,contr),(LH,inf-cyc); added lines",
        types_ok && !hh.algebraic_only && hh.lines == want_hh &&
            !lh.algebraic_only && lh.lines == want_lh);
  }

  // 8. staples
  {
    CTData c = cubic();
    EdgePath abar = reverse_path(c.graph.parse_path("a"));
    LineDescriptor aba = make_line(c, RayDescriptor::periodic(abar), {},
                                   RayDescriptor::linear_tail(E(c, 'b'), 1));
    LineDescriptor aRc = make_line(c, RayDescriptor::periodic(abar), {},
                                   RayDescriptor::eigen(E(c, 'c')));
    std::vector<LineDescriptor> s = staples_global(c);
    std::sort(s.begin(), s.end());
    std::vector<LineDescriptor> want_s = {aba, aRc};
    std::sort(want_s.begin(), want_s.end());
    std::vector<StaplePair> pairs = staple_pairs_global(c);
    std::set<std::pair<LineDescriptor, LineDescriptor>> got;
    for (const StaplePair& p : pairs) got.insert({p.l1, p.l2});
    std::set<std::pair<LineDescriptor, LineDescriptor>> expect = {
        {aba, aba}, {aba, aRc}};
    bool m_ok = false;
    for (const StaplePair& p : pairs)
      if (p.l1 == aba && p.l2 == aba && m_of_phi(c, p) == 1) m_ok = true;
    criterion("8. S(phi), S_2(phi) match; m_b(phi) = 1 on the linear pair",
              s == want_s && got == expect && m_ok);
  }

  // 9. the complement of the fixed edge is not special
  {
    CTData c = fixededge();
    std::vector<int> comp;
    for (int e = 0; e < c.graph.edge_count(); ++e)
      if (c.graph.edge(e).name != 'e') comp.push_back(e);
    criterion("9. fixed-edge example: complement of e is not special",
              !is_special_ffs(c, comp));
  }

  // 10a. stallings membership vs brute force
  {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> letter(1, 6);
    auto rand_word = [&](int len) {
      Letters raw;
      for (int i = 0; i < len; ++i) {
        int l = letter(rng);
        raw.push_back(l <= 3 ? l : -(l - 3));
      }
      return Word(raw, 3);
    };
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      std::vector<Word> gens;
      for (int i = 0; i < 1 + t % 3; ++i)
        gens.push_back(rand_word(1 + (t + i) % 4));
      SubgroupGraph h = SubgroupGraph::fold(gens, 3);
      std::set<Word> brute = {Word::identity(3)};
      for (int d = 0; d < 4; ++d) {
        std::set<Word> next = brute;
        for (const Word& w : brute)
          for (const Word& g : gens) {
            next.insert(w * g);
            next.insert(w * g.inverse());
          }
        brute = next;
      }
      for (const Word& w : brute) ok = ok && h.contains(w);
      for (int j = 0; j < 30; ++j) {
        Word w = rand_word(1 + j % 6);
        if (brute.count(w)) ok = ok && h.contains(w);
      }
    }
    criterion("10a. membership = brute-force enumeration, 50 subgroups",
              ok);
  }

  // 10b. tighten idempotence, multiplicativity, line invariance
  {
    CTData c = cubic();
    const MarkedGraph& g = c.graph;
    const GraphSelfMap& f = c.self_map();
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> pick(0, 5);
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
      EdgePath p;
      for (int i = 0; i < 10; ++i) {
        int k = pick(rng);
        int e = g.edge_by_name("abc"[k % 3]);
        p.push_back(k < 3 ? step_of_edge(e) : -step_of_edge(e));
      }
      EdgePath tp = tighten(g, p);
      ok = ok && tighten(g, tp) == tp;
      EdgePath q;
      for (int i = 0; i < 6; ++i) {
        int k = pick(rng);
        int e = g.edge_by_name("abc"[k % 3]);
        q.push_back(k < 3 ? step_of_edge(e) : -step_of_edge(e));
      }
      EdgePath cat = tp;
      EdgePath tq = tighten(g, q);
      cat.insert(cat.end(), tq.begin(), tq.end());
      EdgePath img1 = f.map_path(tighten(g, cat));
      EdgePath img2 = f.map_path(tp);
      EdgePath imgq = f.map_path(tq);
      img2.insert(img2.end(), imgq.begin(), imgq.end());
      ok = ok && img1 == tighten(g, img2);
    }
    for (int e : c.higher_edges())
      for (const LineDescriptor& l : limit_lines(c, e))
        ok = ok && line_f_invariant(c, l, 50);
    criterion(
        "10b. tighten idempotent; f_# multiplicative; f_#(L) = L to depth 50",
        ok);
  }

  // 10c. Whitehead vs exhaustive search on F_2 cyclic words of length <= 4
  {
    std::vector<CyclicWord> words;
    std::function<void(Letters&)> gen = [&](Letters& cur) {
      if (!cur.empty()) {
        Word w(cur, 2);
        if ((int)cur.size() == w.size()) {
          CyclicWord cw = conjugacy_class(w);
          if (cw.size() == (int)cur.size()) words.push_back(cw);
        }
      }
      if (cur.size() == 4) return;
      for (int l : {1, -1, 2, -2}) {
        cur.push_back(l);
        gen(cur);
        cur.pop_back();
      }
    };
    Letters cur;
    gen(cur);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    // exhaustive search: compositions of <= 3 type-II Whitehead moves,
    // interleaved with arbitrary signed permutations of the basis (the
    // length-preserving type-I moves act as normalization)
    std::vector<Endo> t2 = whitehead_type_two(2);
    std::vector<Endo> t1;
    for (const Endo& g : whitehead_automorphisms(2)) {
      bool letters = true;
      for (const Word& im : g.images) letters = letters && im.size() == 1;
      if (letters) t1.push_back(g);
    }
    auto canon1 = [&](const CyclicWord& w) {
      CyclicWord best = w;
      for (const Endo& g : t1) {
        CyclicWord y = conjugacy_class(g.apply(w.word()));
        if (y < best) best = y;
      }
      return best;
    };
    auto ball3 = [&](const CyclicWord& w) {
      std::set<CyclicWord> out = {canon1(w)};
      std::set<CyclicWord> frontier = out;
      for (int step = 0; step < 3; ++step) {
        std::set<CyclicWord> next;
        for (const CyclicWord& x : frontier)
          for (const Endo& g : t2) {
            CyclicWord y = canon1(conjugacy_class(g.apply(x.word())));
            if (!out.count(y)) next.insert(y);
          }
        for (const CyclicWord& y : next) out.insert(y);
        frontier = next;
      }
      return out;
    };
    bool ok = true;
    for (const CyclicWord& u : words) {
      std::set<CyclicWord> ball = ball3(u);
      for (const CyclicWord& v : words) {
        bool brute = ball.count(canon1(v)) > 0;
        bool mine = whitehead_orbit({u}, {v}, 2).equivalent;
        if (brute != mine) ok = false;
      }
      if (!ok) break;
    }
    criterion("10c. whitehead_orbit = exhaustive <=3-move search (F_2, len<=4)",
              ok);
  }

  // 10d. iterated sets vs exhaustive isomorphism search
  {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> pick(0, 2);
    const char* labels[3] = {"a", "b", "ab"};
    std::function<IteratedSet(int)> random_tree = [&](int depth) {
      if (depth == 0 || pick(rng) == 0)
        return IteratedSet::atom(
            AtomRef::element_class(conjugacy_class(parse_word(labels[pick(rng)], 2))));
      std::vector<IteratedSet> ch;
      for (int i = 0; i < 2 + pick(rng) % 2; ++i)
        ch.push_back(random_tree(depth - 1));
      return IteratedSet::node(pick(rng) == 1, std::move(ch));
    };
    std::function<int(const IteratedSet&, const IteratedSet&)> count_iso =
        [&](const IteratedSet& x, const IteratedSet& y) -> int {
      if (x.is_leaf() != y.is_leaf()) return 0;
      if (x.is_leaf()) return x.leaf->equals(*y.leaf) ? 1 : 0;
      if (x.ordered != y.ordered || x.children.size() != y.children.size())
        return 0;
      size_t n = x.children.size();
      if (x.ordered) {
        int prod = 1;
        for (size_t i = 0; i < n; ++i) {
          prod *= count_iso(x.children[i], y.children[i]);
          if (!prod) return 0;
        }
        return prod;
      }
      std::vector<int> perm(n);
      for (size_t i = 0; i < n; ++i) perm[i] = (int)i;
      int total = 0;
      do {
        int prod = 1;
        for (size_t i = 0; i < n && prod; ++i)
          prod *= count_iso(x.children[i], y.children[perm[i]]);
        total += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return total;
    };
    bool ok = true;
    for (int t = 0; t < 40; ++t) {
      IteratedSet x = random_tree(2), y = random_tree(2);
      if (x.leaf_count() > 8 || y.leaf_count() > 8) continue;
      ok = ok && equivalent(x, y).has_value() == (count_iso(x, y) > 0);
      ok = ok && automorphisms(x).order() == count_iso(x, x);
    }
    criterion("10d. iterset equivalent/automorphisms = exhaustive search",
              ok);
  }

  // 10e. verify_conjugator and x_membership on phi
  {
    CTData c = cubic();
    OuterAuto phi = ct_outer(c);
    OuterAuto id = OuterAuto::identity(5);
    bool ok = verify_conjugator(phi, phi, id) &&
              verify_conjugator(phi, phi, phi) &&
              verify_conjugator(phi, phi, phi.compose(phi));
    SpecialChain chain = special_chain(c, default_chain_order(c));
    ok = ok && x_membership(c, chain, phi).all();
    criterion("10e. verify_conjugator(phi,phi,phi^k) k=0,1,2; x_membership",
              ok);
  }

  double total = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  std::printf("total: %.1fs (budget 60s) %s\n", total,
              total < 60.0 ? "PASS" : "FAIL");
  if (total >= 60.0) ++failures;
  return failures == 0 ? 0 : 1;
}
