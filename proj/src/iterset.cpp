#include "ctinv/iterset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "ctinv/whitehead.hpp"

namespace ctinv {

// ---- atom construction ------------------------------------------------------

namespace {

std::string words_key(const std::vector<Word>& gens, int rank) {
  return SubgroupConjClass::from_generators(gens, rank).key();
}

// Canonical representative of the simultaneous-conjugacy orbit of an ordered
// pair of elements: first coordinate cyclically reduced over all rotations,
// second minimized over the residual centralizer.
std::pair<Letters, Letters> canonical_element_pair(const Word& a,
                                                   const Word& b) {
  int rank = std::max(a.rank(), b.rank());
  if (a.trivial()) {
    CyclicWord cb = conjugacy_class(b);
    return {Letters{}, cb.letters()};
  }
  // a = p ahat p^-1 with ahat cyclically reduced
  const Letters& ls = a.letters();
  size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  Word p(Letters(ls.begin(), ls.begin() + lo), rank);
  Word ahat(Letters(ls.begin() + lo, ls.begin() + hi), rank);
  std::optional<std::pair<Letters, Letters>> best;
  for (size_t i = 0; i < (size_t)ahat.size(); ++i) {
    Letters rot = ahat.letters();
    std::rotate(rot.begin(), rot.begin() + i, rot.end());
    Word rho(rot, rank);
    Word s(Letters(ahat.letters().begin(), ahat.letters().begin() + i), rank);
    Word g = (p * s).inverse();  // g a g^-1 = rho
    Word b1 = b.conjugate(g);
    RootPower rp = root_decomposition(rho);
    Word z = rp.root;
    long long range = b1.size() + 2;
    for (long long k = -range; k <= range; ++k) {
      Word b2 = b1.conjugate(z.power((int)k));
      std::pair<Letters, Letters> cand{rot, b2.letters()};
      if (!best || cand < *best) best = cand;
    }
  }
  return *best;
}

std::string letters_pair_key(const std::pair<Letters, Letters>& p) {
  return letters_to_string(p.first) + "|" + letters_to_string(p.second);
}

}  // namespace

AtomRef AtomRef::subgroup_class(const std::vector<Word>& gens, int rank) {
  AtomRef a;
  a.type_ = Type::SubgroupClass;
  a.rank_ = rank;
  a.sub1_ = gens;
  a.finish();
  return a;
}
AtomRef AtomRef::element_class(const CyclicWord& c) {
  AtomRef a;
  a.type_ = Type::ElementClass;
  a.rank_ = c.rank();
  a.cls_ = c;
  a.finish();
  return a;
}
AtomRef AtomRef::unoriented_class(const CyclicWord& c) {
  AtomRef a;
  a.type_ = Type::UnorientedClass;
  a.rank_ = c.rank();
  a.cls_ = c.unoriented();
  a.finish();
  return a;
}
AtomRef AtomRef::element_pair(const Word& a1, const Word& a2) {
  AtomRef a;
  a.type_ = Type::ElementPair;
  a.rank_ = std::max(a1.rank(), a2.rank());
  a.w1_ = a1;
  a.w2_ = a2;
  a.finish();
  return a;
}
AtomRef AtomRef::elt_subgroup(const Word& w, const std::vector<Word>& h,
                              int rank) {
  AtomRef a;
  a.type_ = Type::EltSubgroupPair;
  a.rank_ = rank;
  a.w1_ = w;
  a.sub1_ = h;
  a.finish();
  return a;
}
AtomRef AtomRef::subgroup_elt(const std::vector<Word>& h, const Word& w,
                              int rank) {
  AtomRef a;
  a.type_ = Type::SubgroupEltPair;
  a.rank_ = rank;
  a.w1_ = w;
  a.sub1_ = h;
  a.finish();
  return a;
}
AtomRef AtomRef::good_pair(const std::vector<Word>& h,
                           const std::vector<Word>& k, int rank) {
  AtomRef a;
  a.type_ = Type::GoodPair;
  a.rank_ = rank;
  a.sub1_ = h;
  a.sub2_ = k;
  a.finish();
  return a;
}
AtomRef AtomRef::contain_pair(const std::vector<Word>& h,
                              const std::vector<Word>& k, int rank) {
  AtomRef a;
  a.type_ = Type::ContainPair;
  a.rank_ = rank;
  a.sub1_ = h;
  a.sub2_ = k;
  a.finish();
  return a;
}
AtomRef AtomRef::contain_sub_elt(const std::vector<Word>& h, const Word& w,
                                 int rank) {
  AtomRef a;
  a.type_ = Type::ContainSubElt;
  a.rank_ = rank;
  a.w1_ = w;
  a.sub1_ = h;
  a.finish();
  return a;
}

void AtomRef::finish() {
  std::ostringstream os;
  switch (type_) {
    case Type::SubgroupClass:
      os << "S:" << words_key(sub1_, rank_);
      break;
    case Type::ElementClass:
      os << "c:" << cls_.str();
      break;
    case Type::UnorientedClass:
      os << "u:" << cls_.str();
      break;
    case Type::ElementPair:
      os << "ee:" << letters_pair_key(canonical_element_pair(w1_, w2_));
      break;
    case Type::EltSubgroupPair:
      os << "eS:" << conjugacy_class(w1_).str() << ";"
         << words_key(sub1_, rank_);
      break;
    case Type::SubgroupEltPair:
      os << "Se:" << words_key(sub1_, rank_) << ";"
         << conjugacy_class(w1_).str();
      break;
    case Type::GoodPair: {
      std::vector<Word> join = sub1_;
      join.insert(join.end(), sub2_.begin(), sub2_.end());
      os << "SS:" << words_key(sub1_, rank_) << ";" << words_key(sub2_, rank_)
         << ";" << words_key(join, rank_);
      break;
    }
    case Type::ContainPair:
      os << "S<S:" << words_key(sub1_, rank_) << ";"
         << words_key(sub2_, rank_);
      break;
    case Type::ContainSubElt:
      os << "S:e:" << words_key(sub1_, rank_) << ";"
         << conjugacy_class(w1_).str();
      break;
  }
  signature_ = os.str();
}

namespace {

// For an element (here called a) and target a', all conjugators are
// c0 * root(a')^k; search the bounded k-range for one also conjugating the
// subgroup coordinate correctly.
bool pair_elt_subgroup_equal(const Word& a, const std::vector<Word>& h,
                             const Word& a2, const std::vector<Word>& h2,
                             int rank) {
  if (conjugacy_class(a) != conjugacy_class(a2)) return false;
  if (SubgroupConjClass::from_generators(h, rank) !=
      SubgroupConjClass::from_generators(h2, rank))
    return false;
  if (a.trivial())
    return SubgroupGraph::fold(h, rank).debug_str() ==
           SubgroupGraph::fold(h2, rank).debug_str();
  // find c0 with c0 a c0^-1 = a2
  CyclicWord target = conjugacy_class(a);
  // a = p ahat p^-1, a2 = q ahat2 q^-1 with rotations matching
  auto split = [&](const Word& w, Word& pre, Word& core) {
    const Letters& ls = w.letters();
    size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
      ++lo;
      --hi;
    }
    pre = Word(Letters(ls.begin(), ls.begin() + lo), rank);
    core = Word(Letters(ls.begin() + lo, ls.begin() + hi), rank);
  };
  Word p, ah, q, ah2;
  split(a, p, ah);
  split(a2, q, ah2);
  // rotation of ah matching ah2
  Word c0;
  bool found = false;
  for (size_t i = 0; i < (size_t)ah.size() && !found; ++i) {
    Letters rot = ah.letters();
    std::rotate(rot.begin(), rot.begin() + i, rot.end());
    if (rot == ah2.letters()) {
      Word s(Letters(ah.letters().begin(), ah.letters().begin() + i), rank);
      // (q) rot (q^-1) = a2 and rot = (ps)^-1 a (ps)
      c0 = q * (p * s).inverse();
      found = true;
    }
  }
  if (!found) return false;
  Word z = root_decomposition(a2).root;
  SubgroupGraph target_graph = SubgroupGraph::fold(h2, rank);
  std::string target_str = target_graph.debug_str();
  long long bound = 4;
  for (const Word& w : h) bound += w.size();
  for (const Word& w : h2) bound += w.size();
  bound += c0.size() + z.size();
  for (long long k = -bound; k <= bound; ++k) {
    Word g = z.power((int)k) * c0;
    std::vector<Word> hk;
    for (const Word& w : h) hk.push_back(w.conjugate(g));
    if (SubgroupGraph::fold(hk, rank).debug_str() == target_str) return true;
  }
  return false;
}

bool contain_pair_equal(const std::vector<Word>& h1, const std::vector<Word>& k1,
                        const std::vector<Word>& h2, const std::vector<Word>& k2,
                        int rank) {
  SubgroupGraph gk1 = SubgroupGraph::fold(k1, rank);
  SubgroupGraph gk2 = SubgroupGraph::fold(k2, rank);
  auto t0 = conjugacy_witness(gk1, gk2);
  if (!t0) return false;
  std::string want = class_key_in(gk2, h2);
  auto conj_all = [&](const std::vector<Word>& gens, const Word& g) {
    std::vector<Word> out;
    for (const Word& w : gens) out.push_back(w.conjugate(g));
    return out;
  };
  if (gk2.subgroup_rank() == 0) return true;  // both trivial
  FiniteGroupTable nq = normalizer_quotient(gk2);
  for (const Word& n : nq.reps) {
    try {
      if (class_key_in(gk2, conj_all(h1, n * *t0)) == want) return true;
    } catch (const error&) {
    }
  }
  return false;
}

bool contain_sub_elt_equal(const std::vector<Word>& h1, const Word& a1,
                           const std::vector<Word>& h2, const Word& a2,
                           int rank) {
  SubgroupGraph g1 = SubgroupGraph::fold(h1, rank);
  SubgroupGraph g2 = SubgroupGraph::fold(h2, rank);
  auto t0 = conjugacy_witness(g1, g2);
  if (!t0) return false;
  FiniteGroupTable nq = normalizer_quotient(g2);
  for (const Word& n : nq.reps) {
    Word cand = a1.conjugate(n * *t0);
    if (!g2.contains(cand)) continue;
    if (conjugate_in_subgroup(g2, cand, a2)) return true;
  }
  return false;
}

}  // namespace

bool AtomRef::equals(const AtomRef& o) const {
  if (type_ != o.type_) return false;
  switch (type_) {
    case Type::SubgroupClass:
    case Type::ElementClass:
    case Type::UnorientedClass:
    case Type::ElementPair:
      return signature_ == o.signature_;
    case Type::EltSubgroupPair:
    case Type::SubgroupEltPair:
      if (signature_ != o.signature_) return false;
      return pair_elt_subgroup_equal(w1_, sub1_, o.w1_, o.sub1_, rank_);
    case Type::GoodPair: {
      if (signature_ != o.signature_) return false;
      SubgroupGraph a1 = SubgroupGraph::fold(sub1_, rank_);
      SubgroupGraph a2 = SubgroupGraph::fold(sub2_, rank_);
      SubgroupGraph b1 = SubgroupGraph::fold(o.sub1_, rank_);
      SubgroupGraph b2 = SubgroupGraph::fold(o.sub2_, rank_);
      return pairs_equal(a1, a2, b1, b2);
    }
    case Type::ContainPair:
      if (signature_ != o.signature_) return false;
      return contain_pair_equal(sub1_, sub2_, o.sub1_, o.sub2_, rank_);
    case Type::ContainSubElt:
      if (signature_ != o.signature_) return false;
      return contain_sub_elt_equal(sub1_, w1_, o.sub1_, o.w1_, rank_);
  }
  return false;
}

std::string AtomRef::str() const {
  auto sub = [](const std::vector<Word>& gens) {
    std::string s = "<";
    for (const Word& w : gens) s += " " + w.str();
    return s + " >";
  };
  switch (type_) {
    case Type::SubgroupClass: return "[" + sub(sub1_) + "]";
    case Type::ElementClass: return cls_.str();
    case Type::UnorientedClass: return cls_.str() + "_u";
    case Type::ElementPair: return "[ " + w1_.str() + " , " + w2_.str() + " ]";
    case Type::EltSubgroupPair:
      return "[ " + w1_.str() + " , " + sub(sub1_) + " ]";
    case Type::SubgroupEltPair:
      return "[ " + sub(sub1_) + " , " + w1_.str() + " ]";
    case Type::GoodPair:
    case Type::ContainPair:
      return "[ " + sub(sub1_) + " , " + sub(sub2_) + " ]";
    case Type::ContainSubElt:
      return "[ " + sub(sub1_) + " , " + w1_.str() + " ]";
  }
  return signature_;
}

// ---- iterated sets ----------------------------------------------------------

int IteratedSet::leaf_count() const {
  if (is_leaf()) return 1;
  int c = 0;
  for (const IteratedSet& ch : children) c += ch.leaf_count();
  return c;
}

std::string IteratedSet::digest() const {
  if (is_leaf()) return "<" + leaf->signature() + ">";
  std::vector<std::string> parts;
  for (const IteratedSet& ch : children) parts.push_back(ch.digest());
  if (!ordered) std::sort(parts.begin(), parts.end());
  std::string s = ordered ? "(o" : "(u";
  for (const std::string& p : parts) s += p;
  s += ")";
  return s;
}

namespace {

// preorder indexing
void index_nodes(const IteratedSet& t, std::vector<const IteratedSet*>& out) {
  out.push_back(&t);
  for (const IteratedSet& ch : t.children) index_nodes(ch, out);
}

struct Matcher {
  std::vector<const IteratedSet*> xs, ys;
  std::map<const IteratedSet*, int> xid, yid;

  // match label-preserving (equivalence) or just morphism-compatible
  bool want_equivalence;

  bool leaves_compatible(const AtomRef& a, const AtomRef& b) const {
    if (want_equivalence) return a.equals(b);
    return a.same_type(b);
  }

  bool match(const IteratedSet& x, const IteratedSet& y, TreeIso& iso) {
    if (x.is_leaf() != y.is_leaf()) return false;
    if (x.is_leaf()) {
      if (!leaves_compatible(*x.leaf, *y.leaf)) return false;
      iso[xid.at(&x)] = yid.at(&y);
      return true;
    }
    if (x.ordered != y.ordered) return false;
    if (x.children.size() != y.children.size()) return false;
    iso[xid.at(&x)] = yid.at(&y);
    if (x.ordered) {
      for (size_t i = 0; i < x.children.size(); ++i)
        if (!match(x.children[i], y.children[i], iso)) return false;
      return true;
    }
    // unordered: backtracking over digest-compatible children
    size_t n = x.children.size();
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::vector<std::string> xd(n), yd(n);
    for (size_t i = 0; i < n; ++i) {
      xd[i] = x.children[i].digest();
      yd[i] = y.children[i].digest();
    }
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
      if (i == n) return true;
      for (size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        if (want_equivalence && xd[i] != yd[j]) continue;
        TreeIso save = cur;
        if (match(x.children[i], y.children[j], cur)) {
          used[j] = true;
          assign[i] = (int)j;
          if (rec(i + 1)) return true;
          used[j] = false;
        }
        cur = save;
      }
      return false;
    };
    // `cur` aliases iso during recursion
    std::swap(cur, iso);
    bool ok = rec(0);
    std::swap(cur, iso);
    return ok;
  }

  TreeIso cur;
};

}  // namespace

std::optional<TreeIso> equivalent(const IteratedSet& x, const IteratedSet& y) {
  // digests are a fast complete test for all atom types whose signatures are
  // complete; for the others, the backtracking below re-checks leaf equality
  Matcher m;
  index_nodes(x, m.xs);
  index_nodes(y, m.ys);
  for (size_t i = 0; i < m.xs.size(); ++i) m.xid[m.xs[i]] = (int)i;
  for (size_t i = 0; i < m.ys.size(); ++i) m.yid[m.ys[i]] = (int)i;
  if (m.xs.size() != m.ys.size()) return std::nullopt;
  m.want_equivalence = true;
  TreeIso iso(m.xs.size(), -1);
  m.cur.assign(m.xs.size(), -1);
  if (m.match(x, y, iso)) return iso;
  return std::nullopt;
}

namespace {

void enumerate_isos(const IteratedSet& x, const IteratedSet& y,
                    const std::map<const IteratedSet*, int>& xid,
                    const std::map<const IteratedSet*, int>& yid,
                    bool equivalence_only, TreeIso& cur,
                    std::vector<TreeIso>& out,
                    const std::function<bool(const TreeIso&)>& accept);

// enumerate all matchings recursively; calls accept at the root level
struct FullEnum {
  const std::map<const IteratedSet*, int>& xid;
  const std::map<const IteratedSet*, int>& yid;
  bool equivalence_only;

  bool rec(const IteratedSet& x, const IteratedSet& y, TreeIso& cur,
           const std::function<void(TreeIso&)>& done) {
    // collects all assignments rooted here by continuation passing
    if (x.is_leaf() != y.is_leaf()) return false;
    if (x.is_leaf()) {
      bool ok = equivalence_only ? x.leaf->equals(*y.leaf)
                                 : x.leaf->same_type(*y.leaf);
      if (!ok) return false;
      cur[xid.at(&x)] = yid.at(&y);
      done(cur);
      return true;
    }
    if (x.ordered != y.ordered || x.children.size() != y.children.size())
      return false;
    cur[xid.at(&x)] = yid.at(&y);
    size_t n = x.children.size();
    bool any = false;
    if (x.ordered) {
      std::function<void(size_t, TreeIso&)> go = [&](size_t i, TreeIso& c) {
        if (i == n) {
          done(c);
          any = true;
          return;
        }
        rec(x.children[i], y.children[i], c,
            [&](TreeIso& c2) { go(i + 1, c2); });
      };
      go(0, cur);
      return any;
    }
    std::vector<bool> used(n, false);
    std::function<void(size_t, TreeIso&)> go = [&](size_t i, TreeIso& c) {
      if (i == n) {
        done(c);
        any = true;
        return;
      }
      for (size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        TreeIso save = c;
        rec(x.children[i], y.children[j], c,
            [&](TreeIso& c2) { go(i + 1, c2); });
        c = save;
        used[j] = false;
      }
    };
    go(0, cur);
    return any;
  }
};

}  // namespace

AutGroup automorphisms(const IteratedSet& x) {
  std::vector<const IteratedSet*> nodes;
  index_nodes(x, nodes);
  std::map<const IteratedSet*, int> xid;
  for (size_t i = 0; i < nodes.size(); ++i) xid[nodes[i]] = (int)i;
  FullEnum fe{xid, xid, true};
  std::vector<TreeIso> elements;
  TreeIso cur(nodes.size(), -1);
  fe.rec(x, x, cur, [&](TreeIso& c) {
    if (std::find(elements.begin(), elements.end(), c) == elements.end())
      elements.push_back(c);
  });
  // identity first
  TreeIso id(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) id[i] = (int)i;
  std::stable_sort(elements.begin(), elements.end(),
                   [&](const TreeIso& a, const TreeIso& b) {
                     return (a == id) > (b == id);
                   });
  AutGroup g;
  g.elements = elements;
  int m = (int)elements.size();
  g.mult.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      TreeIso comp(nodes.size());
      for (size_t t = 0; t < nodes.size(); ++t)
        comp[t] = elements[i][elements[j][t]];
      for (int k = 0; k < m; ++k)
        if (elements[k] == comp) {
          g.mult[i][j] = k;
          break;
        }
      if (g.mult[i][j] < 0)
        throw error(errc::internal, "automorphism table not closed");
    }
  return g;
}

std::optional<Endo> orbit_search(const IteratedSet& x, const IteratedSet& y,
                                 const AtomTupleOracle& oracle) {
  std::vector<const IteratedSet*> xs, ys;
  index_nodes(x, xs);
  index_nodes(y, ys);
  for (const TreeIso& f : label_twist_candidates(x, y)) {
    std::vector<AtomRef> from, to;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (!xs[i]->is_leaf()) continue;
      from.push_back(*xs[i]->leaf);
      to.push_back(*ys[f[i]]->leaf);
    }
    if (auto theta = oracle(from, to)) return theta;
  }
  return std::nullopt;
}

AtomTupleOracle element_whitehead_oracle(int rank) {
  return [rank](const std::vector<AtomRef>& from,
                const std::vector<AtomRef>& to) -> std::optional<Endo> {
    std::vector<CyclicWord> t1, t2;
    for (const AtomRef& a : from) {
      if (a.type() != AtomRef::Type::ElementClass) return std::nullopt;
      t1.push_back(a.element_value());
    }
    for (const AtomRef& a : to) {
      if (a.type() != AtomRef::Type::ElementClass) return std::nullopt;
      t2.push_back(a.element_value());
    }
    WhiteheadResult r = whitehead_orbit(t1, t2, rank);
    if (r.equivalent) return r.witness;
    return std::nullopt;
  };
}

std::vector<TreeIso> label_twist_candidates(const IteratedSet& x,
                                            const IteratedSet& y) {
  std::vector<const IteratedSet*> xs, ys;
  index_nodes(x, xs);
  index_nodes(y, ys);
  if (xs.size() != ys.size()) return {};
  std::map<const IteratedSet*, int> xid, yid;
  for (size_t i = 0; i < xs.size(); ++i) xid[xs[i]] = (int)i;
  for (size_t i = 0; i < ys.size(); ++i) yid[ys[i]] = (int)i;
  FullEnum fe{xid, yid, false};
  std::vector<TreeIso> out;
  TreeIso cur(xs.size(), -1);
  fe.rec(x, y, cur, [&](TreeIso& c) {
    // consistency on labels: equal labels must map to equal labels
    for (size_t i = 0; i < xs.size(); ++i) {
      if (!xs[i]->is_leaf()) continue;
      for (size_t j = i + 1; j < xs.size(); ++j) {
        if (!xs[j]->is_leaf()) continue;
        if (xs[i]->leaf->equals(*xs[j]->leaf)) {
          if (!ys[c[i]]->leaf->equals(*ys[c[j]]->leaf)) return;
        }
      }
    }
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  });
  return out;
}

}  // namespace ctinv
