#include "ctinv/stallings.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace ctinv {

namespace {

struct Edge {
  int src, dst, label;
};

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

struct FoldBuilder {
  int rank;
  std::vector<Edge> edges;
  int nverts = 1;  // vertex 0 is the base

  int add_vertex() { return nverts++; }

  void add_word_loop(const Word& w) {
    int prev = 0;
    const Letters& ls = w.letters();
    for (size_t i = 0; i < ls.size(); ++i) {
      int next = (i + 1 == ls.size()) ? 0 : add_vertex();
      Letter l = ls[i];
      if (l > 0)
        edges.push_back({prev, next, l});
      else
        edges.push_back({next, prev, -l});
      prev = next;
    }
  }

  SubgroupGraph build() {
    UF uf(nverts);
    bool changed = true;
    while (changed) {
      changed = false;
      // identify targets of equal-label edges out of one vertex, and
      // sources of equal-label edges into one vertex
      std::map<std::pair<int, int>, int> out_seen, in_seen;
      for (const Edge& e : edges) {
        int s = uf.find(e.src), d = uf.find(e.dst);
        auto [it1, new1] = out_seen.try_emplace({s, e.label}, d);
        if (!new1 && uf.find(it1->second) != d) {
          uf.unite(it1->second, d);
          changed = true;
          break;
        }
        auto [it2, new2] = in_seen.try_emplace({d, e.label}, s);
        if (!new2 && uf.find(it2->second) != s) {
          uf.unite(it2->second, s);
          changed = true;
          break;
        }
      }
    }
    // compact
    std::map<int, int> remap;
    auto id_of = [&](int v) {
      int r = uf.find(v);
      auto [it, fresh] = remap.try_emplace(r, (int)remap.size());
      (void)fresh;
      return it->second;
    };
    int base = id_of(0);
    std::set<std::tuple<int, int, int>> dedup;
    for (const Edge& e : edges)
      dedup.insert({id_of(e.src), id_of(e.dst), e.label});
    SubgroupGraph g;
    g.rank_ = rank;
    g.base_ = base;
    int n = (int)remap.size();
    g.out_.assign(n, std::vector<int>(rank, -1));
    g.in_.assign(n, std::vector<int>(rank, -1));
    for (auto [s, d, l] : dedup) {
      g.out_[s][l - 1] = d;
      g.in_[d][l - 1] = s;
    }
    return g;
  }
};

SubgroupGraph SubgroupGraph::fold(const std::vector<Word>& generators,
                                  int rank) {
  FoldBuilder fb;
  fb.rank = rank;
  for (const Word& w : generators) fb.add_word_loop(w);
  return fb.build();
}

int SubgroupGraph::edge_count() const {
  int c = 0;
  for (const auto& row : out_)
    for (int t : row)
      if (t >= 0) ++c;
  return c;
}

bool SubgroupGraph::contains(const Word& w) const {
  int v = base_;
  for (Letter l : w.letters()) {
    v = l > 0 ? out_[v][l - 1] : in_[v][-l - 1];
    if (v < 0) return false;
  }
  return v == base_;
}

SubgroupGraph SubgroupGraph::pruned(bool keep_base) const {
  int n = vertex_count();
  std::vector<int> deg(n, 0);
  std::vector<bool> dead(n, false);
  for (int v = 0; v < n; ++v)
    for (int l = 1; l <= rank_; ++l) {
      if (out_[v][l - 1] >= 0) {
        ++deg[v];
        ++deg[out_[v][l - 1]];
      }
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (dead[v] || deg[v] > 1) continue;
      if (keep_base && v == base_) continue;
      dead[v] = true;
      changed = true;
      for (int l = 1; l <= rank_; ++l) {
        int t = out_[v][l - 1];
        if (t >= 0 && !dead[t]) --deg[t];
        int s = in_[v][l - 1];
        if (s >= 0 && !dead[s]) --deg[s];
      }
      deg[v] = 0;
    }
  }
  // isolated vertices other than a kept base also go
  for (int v = 0; v < n; ++v)
    if (!dead[v] && deg[v] == 0 && !(keep_base && v == base_)) dead[v] = true;

  std::map<int, int> remap;
  for (int v = 0; v < n; ++v)
    if (!dead[v]) remap[v] = (int)remap.size();
  SubgroupGraph g;
  g.rank_ = rank_;
  int m = (int)remap.size();
  if (m == 0) {
    // trivial subgroup: single base vertex, no edges
    g.base_ = 0;
    g.out_.assign(1, std::vector<int>(rank_, -1));
    g.in_.assign(1, std::vector<int>(rank_, -1));
    return g;
  }
  g.base_ = (keep_base && remap.count(base_)) ? remap[base_] : 0;
  g.out_.assign(m, std::vector<int>(rank_, -1));
  g.in_.assign(m, std::vector<int>(rank_, -1));
  for (int v = 0; v < n; ++v) {
    if (dead[v]) continue;
    for (int l = 1; l <= rank_; ++l) {
      int t = out_[v][l - 1];
      if (t >= 0 && !dead[t]) {
        g.out_[remap[v]][l - 1] = remap[t];
        g.in_[remap[t]][l - 1] = remap[v];
      }
    }
  }
  return g;
}

bool SubgroupGraph::is_tree() const { return edge_count() == vertex_count() - 1; }

int SubgroupGraph::subgroup_rank() const {
  SubgroupGraph c = pruned(false);
  if (c.edge_count() == 0) return 0;
  return c.edge_count() - c.vertex_count() + 1;
}

std::vector<int> SubgroupGraph::core_vertices() const {
  SubgroupGraph c = pruned(false);
  (void)c;
  // recompute which original vertices survive by re-running the same pruning
  int n = vertex_count();
  std::vector<int> deg(n, 0);
  std::vector<bool> dead(n, false);
  for (int v = 0; v < n; ++v)
    for (int l = 1; l <= rank_; ++l)
      if (out_[v][l - 1] >= 0) {
        ++deg[v];
        ++deg[out_[v][l - 1]];
      }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (dead[v] || deg[v] > 1) continue;
      dead[v] = true;
      changed = true;
      for (int l = 1; l <= rank_; ++l) {
        int t = out_[v][l - 1];
        if (t >= 0 && !dead[t]) --deg[t];
        int s = in_[v][l - 1];
        if (s >= 0 && !dead[s]) --deg[s];
      }
      deg[v] = 0;
    }
  }
  std::vector<int> keep;
  for (int v = 0; v < n; ++v)
    if (!dead[v] && deg[v] > 0) keep.push_back(v);
  return keep;
}

Word SubgroupGraph::path_word(int from, int to) const {
  std::vector<int> prev(vertex_count(), -1);
  std::vector<Letter> via(vertex_count(), 0);
  std::queue<int> q;
  q.push(from);
  prev[from] = from;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == to) break;
    for (int l = 1; l <= rank_; ++l) {
      int t = out_[v][l - 1];
      if (t >= 0 && prev[t] < 0) {
        prev[t] = v;
        via[t] = l;
        q.push(t);
      }
      int s = in_[v][l - 1];
      if (s >= 0 && prev[s] < 0) {
        prev[s] = v;
        via[s] = -l;
        q.push(s);
      }
    }
  }
  if (prev[to] < 0) throw error(errc::internal, "path_word: disconnected");
  Letters ls;
  for (int v = to; v != from; v = prev[v]) ls.push_back(via[v]);
  std::reverse(ls.begin(), ls.end());
  return Word(ls, rank_);
}

std::vector<Word> SubgroupGraph::basis() const {
  // spanning tree by BFS from base; one basis word per non-tree edge
  int n = vertex_count();
  std::vector<int> prev(n, -1);
  std::vector<Letter> via(n, 0);
  std::vector<int> order;
  std::queue<int> q;
  q.push(base_);
  prev[base_] = base_;
  std::set<std::pair<int, int>> tree;  // (src, label)
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    for (int l = 1; l <= rank_; ++l) {
      int t = out_[v][l - 1];
      if (t >= 0 && prev[t] < 0) {
        prev[t] = v;
        via[t] = l;
        tree.insert({v, l});
        q.push(t);
      }
      int s = in_[v][l - 1];
      if (s >= 0 && prev[s] < 0) {
        prev[s] = v;
        via[s] = -l;
        tree.insert({s, l});
        q.push(s);
      }
    }
  }
  auto to_base = [&](int v) {
    Letters ls;
    for (int u = v; u != base_; u = prev[u]) ls.push_back(via[u]);
    std::reverse(ls.begin(), ls.end());
    return Word(ls, rank_);
  };
  std::vector<Word> out_words;
  for (int v : order)
    for (int l = 1; l <= rank_; ++l) {
      int t = out_[v][l - 1];
      if (t < 0 || tree.count({v, l})) continue;
      out_words.push_back(to_base(v) * Word::generator(l, rank_) *
                          to_base(t).inverse());
    }
  return out_words;
}

Word SubgroupGraph::express_in_basis(const Word& w) const {
  // Re-derive the same spanning tree as basis() and trace w, recording
  // non-tree crossings.
  int n = vertex_count();
  std::vector<int> prev(n, -1);
  std::vector<Letter> via(n, 0);
  std::vector<int> order;
  std::queue<int> q;
  q.push(base_);
  prev[base_] = base_;
  std::set<std::pair<int, int>> tree;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    for (int l = 1; l <= rank_; ++l) {
      int t = out_[v][l - 1];
      if (t >= 0 && prev[t] < 0) {
        prev[t] = v;
        via[t] = l;
        tree.insert({v, l});
        q.push(t);
      }
      int s = in_[v][l - 1];
      if (s >= 0 && prev[s] < 0) {
        prev[s] = v;
        via[s] = -l;
        tree.insert({s, l});
        q.push(s);
      }
    }
  }
  std::map<std::pair<int, int>, int> nontree_index;
  int idx = 0;
  for (int v : order)
    for (int l = 1; l <= rank_; ++l) {
      int t = out_[v][l - 1];
      if (t < 0 || tree.count({v, l})) continue;
      nontree_index[{v, l}] = ++idx;  // 1-based letters
    }
  Letters ys;
  int v = base_;
  for (Letter l : w.letters()) {
    if (l > 0) {
      int t = out_[v][l - 1];
      if (t < 0) throw error(errc::internal, "express_in_basis: not a member");
      auto it = nontree_index.find({v, l});
      if (it != nontree_index.end()) ys.push_back(it->second);
      v = t;
    } else {
      int s = in_[v][-l - 1];
      if (s < 0) throw error(errc::internal, "express_in_basis: not a member");
      auto it = nontree_index.find({s, -l});
      if (it != nontree_index.end()) ys.push_back(-it->second);
      v = s;
    }
  }
  if (v != base_) throw error(errc::internal, "express_in_basis: not a member");
  return Word(ys, idx == 0 ? 1 : idx);
}

std::string SubgroupGraph::debug_str() const {
  std::ostringstream os;
  os << "V=" << vertex_count() << " base=" << base_ << " edges:";
  for (int v = 0; v < vertex_count(); ++v)
    for (int l = 1; l <= rank_; ++l)
      if (out_[v][l - 1] >= 0)
        os << " " << v << "-" << (char)('a' + l - 1) << "->" << out_[v][l - 1];
  return os.str();
}

// ---- canonical forms ----------------------------------------------------

namespace {

// BFS signature of a folded graph from a given start; also returns the
// discovery-ordered vertex list.
std::pair<std::vector<int>, std::vector<int>> bfs_signature(
    const SubgroupGraph& g, int start) {
  int n = g.vertex_count();
  int rank = g.rank_ambient();
  std::vector<int> id(n, -1);
  std::vector<int> order;
  id[start] = 0;
  order.push_back(start);
  std::vector<int> sig;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int v = order[qi];
    for (int l = 1; l <= rank; ++l) {
      for (int dir = 0; dir < 2; ++dir) {
        int t = dir == 0 ? g.out(v, l) : g.in(v, l);
        if (t < 0) {
          sig.push_back(-1);
          continue;
        }
        if (id[t] < 0) {
          id[t] = (int)order.size();
          order.push_back(t);
        }
        sig.push_back(id[t]);
      }
    }
  }
  sig.push_back(n);
  return {sig, order};
}

std::string sig_to_string(const std::vector<int>& sig) {
  std::ostringstream os;
  for (int x : sig) os << x << ",";
  return os.str();
}

}  // namespace

SubgroupConjClass::SubgroupConjClass(const SubgroupGraph& g) {
  rank_ = g.rank_ambient();
  SubgroupGraph core = g.pruned(false);
  subgroup_rank_ = g.subgroup_rank();
  if (core.edge_count() == 0) {
    key_ = "trivial";
    return;
  }
  std::vector<int> best;
  for (int v = 0; v < core.vertex_count(); ++v) {
    auto [sig, order] = bfs_signature(core, v);
    if (best.empty() || sig < best) best = sig;
  }
  key_ = sig_to_string(best);
}

SubgroupConjClass SubgroupConjClass::from_generators(
    const std::vector<Word>& gens, int rank) {
  return SubgroupConjClass(SubgroupGraph::fold(gens, rank));
}

bool conj_class_equal(const SubgroupConjClass& a, const SubgroupConjClass& b) {
  return a == b;
}

std::optional<Word> conjugacy_witness(const SubgroupGraph& a,
                                      const SubgroupGraph& b) {
  int rank = a.rank_ambient();
  SubgroupGraph ca = a.pruned(false), cb = b.pruned(false);
  if (ca.edge_count() == 0 && cb.edge_count() == 0)
    return Word::identity(rank);
  if (ca.edge_count() == 0 || cb.edge_count() == 0) return std::nullopt;

  std::vector<int> best_a;
  int start_a = -1;
  for (int v = 0; v < ca.vertex_count(); ++v) {
    auto [sig, order] = bfs_signature(ca, v);
    if (best_a.empty() || sig < best_a) {
      best_a = sig;
      start_a = v;
    }
  }
  for (int v = 0; v < cb.vertex_count(); ++v) {
    auto [sig, order] = bfs_signature(cb, v);
    if (sig == best_a) {
      // match core vertices back to the original graphs
      std::vector<int> keep_a = a.core_vertices(), keep_b = b.core_vertices();
      Word pa = a.path_word(a.base(), keep_a[start_a]);
      Word pb = b.path_word(b.base(), keep_b[v]);
      return pb * pa.inverse();
    }
  }
  return std::nullopt;
}

// ---- normalizer ---------------------------------------------------------

namespace {

// Label-preserving automorphism of a folded core graph determined by
// start |-> target, or nullopt.
std::optional<std::vector<int>> extend_iso(const SubgroupGraph& g, int start,
                                           int target,
                                           const SubgroupGraph& h) {
  int rank = g.rank_ambient();
  std::vector<int> m(g.vertex_count(), -1);
  m[start] = target;
  std::vector<int> stack = {start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int l = 1; l <= rank; ++l) {
      for (int dir = 0; dir < 2; ++dir) {
        int t = dir == 0 ? g.out(v, l) : g.in(v, l);
        int u = dir == 0 ? h.out(m[v], l) : h.in(m[v], l);
        if (t < 0) continue;
        if (u < 0) return std::nullopt;
        if (m[t] < 0) {
          m[t] = u;
          stack.push_back(t);
        } else if (m[t] != u) {
          return std::nullopt;
        }
      }
    }
  }
  // must be a bijection on vertices and hit every edge of h
  std::vector<bool> hit(h.vertex_count(), false);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (m[v] < 0) return std::nullopt;  // disconnected core shouldn't happen
    if (hit[m[v]]) return std::nullopt;
    hit[m[v]] = true;
  }
  if (g.vertex_count() != h.vertex_count()) return std::nullopt;
  if (g.edge_count() != h.edge_count()) return std::nullopt;
  return m;
}

}  // namespace

FiniteGroupTable normalizer_quotient(const SubgroupGraph& h) {
  int rank = h.rank_ambient();
  SubgroupGraph core = h.pruned(false);
  if (core.edge_count() == 0)
    throw error(errc::trivial_subgroup, "normalizer of the trivial subgroup");
  std::vector<int> keep = h.core_vertices();
  // access path from the base into the core
  int c0_orig = keep[0];
  {
    // prefer the base itself when it lies in the core
    for (int v : keep)
      if (v == h.base()) c0_orig = v;
  }
  int c0 = 0;
  for (size_t i = 0; i < keep.size(); ++i)
    if (keep[i] == c0_orig) c0 = (int)i;
  Word p = h.path_word(h.base(), c0_orig);

  // subgroup read at c0 inside the core
  SubgroupGraph based_core = core;
  // rebase: core graphs from pruned(false) have base 0; build a copy rooted
  // at c0 by tracing membership from c0 directly.
  auto member_at = [&](int vtx, const Word& w) {
    int v = vtx;
    for (Letter l : w.letters()) {
      v = l > 0 ? core.out(v, l) : core.in(v, -l);
      if (v < 0) return false;
    }
    return v == vtx;
  };

  FiniteGroupTable table;
  std::vector<Word> us;  // path words c0 -> sigma(c0), u^-1 H' u = H'
  for (int v = 0; v < core.vertex_count(); ++v) {
    auto m = extend_iso(core, c0, v, core);
    if (!m) continue;
    us.push_back(core.path_word(c0, v));
  }
  // ensure identity first
  std::stable_sort(us.begin(), us.end(), [](const Word& a, const Word& b) {
    return a.size() < b.size();
  });
  for (const Word& u : us) table.reps.push_back(p * u * p.inverse());

  int m = (int)us.size();
  table.mult.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Word prod = us[i] * us[j];
      for (int k = 0; k < m; ++k) {
        if (member_at(c0, prod * us[k].inverse())) {
          table.mult[i][j] = k;
          break;
        }
      }
      if (table.mult[i][j] < 0)
        throw error(errc::internal, "normalizer table not closed");
    }
  return table;
}

// ---- split classes and pairs --------------------------------------------

namespace {

// Enumerate label-preserving graph maps core(K) -> core(H) (each determined
// by the image of vertex 0 of core(K)).
std::vector<std::vector<int>> immersions(const SubgroupGraph& coreK,
                                         const SubgroupGraph& coreH) {
  std::vector<std::vector<int>> maps;
  int rank = coreK.rank_ambient();
  for (int tgt = 0; tgt < coreH.vertex_count(); ++tgt) {
    std::vector<int> m(coreK.vertex_count(), -1);
    m[0] = tgt;
    std::vector<int> stack = {0};
    bool ok = true;
    while (!stack.empty() && ok) {
      int v = stack.back();
      stack.pop_back();
      for (int l = 1; l <= rank && ok; ++l) {
        for (int dir = 0; dir < 2; ++dir) {
          int t = dir == 0 ? coreK.out(v, l) : coreK.in(v, l);
          if (t < 0) continue;
          int u = dir == 0 ? coreH.out(m[v], l) : coreH.in(m[v], l);
          if (u < 0) {
            ok = false;
            break;
          }
          if (m[t] < 0) {
            m[t] = u;
            stack.push_back(t);
          } else if (m[t] != u) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) maps.push_back(m);
  }
  return maps;
}

// Edge id within a folded graph: (src * rank + (label-1)).
int edge_id(const SubgroupGraph& g, int src, int label) {
  return src * g.rank_ambient() + (label - 1);
}

// Canonical key of an immersion core(K) -> core(H): BFS signatures over all
// starts of core(K), recording the H-edge image of each traversed K-edge.
std::string immersion_key(const SubgroupGraph& coreK, const SubgroupGraph& coreH,
                          const std::vector<int>& m) {
  int rank = coreK.rank_ambient();
  std::vector<int> best;
  for (int start = 0; start < coreK.vertex_count(); ++start) {
    std::vector<int> id(coreK.vertex_count(), -1);
    std::vector<int> order = {start};
    id[start] = 0;
    std::vector<int> sig;
    for (size_t qi = 0; qi < order.size(); ++qi) {
      int v = order[qi];
      for (int l = 1; l <= rank; ++l) {
        for (int dir = 0; dir < 2; ++dir) {
          int t = dir == 0 ? coreK.out(v, l) : coreK.in(v, l);
          if (t < 0) {
            sig.push_back(-1);
            sig.push_back(-1);
            continue;
          }
          if (id[t] < 0) {
            id[t] = (int)order.size();
            order.push_back(t);
          }
          sig.push_back(id[t]);
          int hs = dir == 0 ? m[v] : m[t];
          sig.push_back(edge_id(coreH, hs, l));
        }
      }
    }
    if (best.empty() || sig < best) best = sig;
  }
  return sig_to_string(best);
}

std::vector<Word> immersion_generators(const SubgroupGraph& coreK,
                                       const SubgroupGraph& h,
                                       const std::vector<int>& keepH,
                                       const std::vector<int>& m) {
  // subgroup L <= H: base path in H to the image of coreK's vertex 0, then
  // the loops of coreK read off a spanning tree.
  int rank = coreK.rank_ambient();
  // spanning tree of coreK from vertex 0
  int n = coreK.vertex_count();
  std::vector<int> prev(n, -1);
  std::vector<Letter> via(n, 0);
  std::vector<int> order = {0};
  prev[0] = 0;
  std::set<std::pair<int, int>> tree;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int v = order[qi];
    for (int l = 1; l <= rank; ++l) {
      int t = coreK.out(v, l);
      if (t >= 0 && prev[t] < 0) {
        prev[t] = v;
        via[t] = l;
        tree.insert({v, l});
        order.push_back(t);
      }
      int s = coreK.in(v, l);
      if (s >= 0 && prev[s] < 0) {
        prev[s] = v;
        via[s] = -l;
        tree.insert({s, l});
        order.push_back(s);
      }
    }
  }
  auto to_root = [&](int v) {
    Letters ls;
    for (int u = v; u != 0; u = prev[u]) ls.push_back(via[u]);
    std::reverse(ls.begin(), ls.end());
    return Word(ls, rank);
  };
  Word access = h.path_word(h.base(), keepH[m[0]]);
  std::vector<Word> gens;
  for (int v : order)
    for (int l = 1; l <= rank; ++l) {
      int t = coreK.out(v, l);
      if (t < 0 || tree.count({v, l})) continue;
      Word loop = to_root(v) * Word::generator(l, rank) * to_root(t).inverse();
      gens.push_back(access * loop * access.inverse());
    }
  return gens;
}

}  // namespace

std::vector<SubgroupInH> split_conj_class(const SubgroupGraph& k,
                                          const SubgroupGraph& h) {
  SubgroupGraph coreK = k.pruned(false), coreH = h.pruned(false);
  std::vector<SubgroupInH> out;
  if (coreK.edge_count() == 0) {
    out.push_back({"trivial", {}});
    return out;
  }
  if (coreH.edge_count() == 0) return out;  // K nontrivial cannot embed
  std::vector<int> keepH = h.core_vertices();
  std::set<std::string> seen;
  for (const auto& m : immersions(coreK, coreH)) {
    std::string key = immersion_key(coreK, coreH, m);
    if (seen.insert(key).second)
      out.push_back({key, immersion_generators(coreK, h, keepH, m)});
  }
  return out;
}

bool is_good_pair(const SubgroupGraph& h1, const SubgroupGraph& h2) {
  int r1 = h1.subgroup_rank(), r2 = h2.subgroup_rank();
  if (r1 == 0 || r2 == 0)
    throw error(errc::trivial_subgroup, "good pair needs non-trivial subgroups");
  std::vector<Word> gens = h1.basis();
  for (const Word& w : h2.basis()) gens.push_back(w);
  SubgroupGraph join = SubgroupGraph::fold(gens, h1.rank_ambient());
  return join.subgroup_rank() == r1 + r2;
}

std::string class_key_in(const SubgroupGraph& h,
                         const std::vector<Word>& a_gens) {
  int rank = h.rank_ambient();
  SubgroupGraph a = SubgroupGraph::fold(a_gens, rank);
  SubgroupGraph coreA = a.pruned(false);
  if (coreA.edge_count() == 0) return "trivial";
  // trace core(A) through H: the based map sends a.base -> h.base; transport
  // to a core vertex of A along its access path.
  std::vector<int> keepA = a.core_vertices();
  Word access = a.path_word(a.base(), keepA[0]);
  // image of coreA's vertex 0 in h: trace access from h's base
  int v = h.base();
  for (Letter l : access.letters()) {
    v = l > 0 ? h.out(v, l) : h.in(v, -l);
    if (v < 0) throw error(errc::internal, "class_key_in: not a subgroup of H");
  }
  // v is in h's full graph; translate to core(H) index
  SubgroupGraph coreH = h.pruned(false);
  std::vector<int> keepH = h.core_vertices();
  int v_core = -1;
  for (size_t i = 0; i < keepH.size(); ++i)
    if (keepH[i] == v) v_core = (int)i;
  if (v_core < 0)
    throw error(errc::internal, "class_key_in: image not in core of H");
  // extend to a full map core(A) -> core(H)
  std::vector<int> m(coreA.vertex_count(), -1);
  m[0] = v_core;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int l = 1; l <= rank; ++l)
      for (int dir = 0; dir < 2; ++dir) {
        int t = dir == 0 ? coreA.out(x, l) : coreA.in(x, l);
        if (t < 0) continue;
        int u = dir == 0 ? coreH.out(m[x], l) : coreH.in(m[x], l);
        if (u < 0)
          throw error(errc::internal, "class_key_in: tracing left core of H");
        if (m[t] < 0) {
          m[t] = u;
          stack.push_back(t);
        }
      }
  }
  return immersion_key(coreA, coreH, m);
}

bool pairs_equal(const SubgroupGraph& k1, const SubgroupGraph& k2,
                 const SubgroupGraph& l1, const SubgroupGraph& l2) {
  int rank = k1.rank_ambient();
  if (!is_good_pair(k1, k2) || !is_good_pair(l1, l2))
    throw error(errc::not_good_pair, "pairs_equal requires good pairs");
  auto join_of = [&](const SubgroupGraph& a, const SubgroupGraph& b) {
    std::vector<Word> gens = a.basis();
    for (const Word& w : b.basis()) gens.push_back(w);
    return SubgroupGraph::fold(gens, rank);
  };
  SubgroupGraph jk = join_of(k1, k2), jl = join_of(l1, l2);
  auto g0 = conjugacy_witness(jk, jl);
  if (!g0) return false;

  if (jl.subgroup_rank() == rank) {
    // join is all of F_n: componentwise class equality suffices
    return SubgroupConjClass(k1) == SubgroupConjClass(l1) &&
           SubgroupConjClass(k2) == SubgroupConjClass(l2);
  }

  auto conj_gens = [&](const SubgroupGraph& g, const Word& c) {
    std::vector<Word> out;
    for (const Word& w : g.basis()) out.push_back(w.conjugate(c));
    return out;
  };
  std::string t1 = class_key_in(jl, l1.basis());
  std::string t2 = class_key_in(jl, l2.basis());
  FiniteGroupTable nq = normalizer_quotient(jl);
  for (const Word& u : nq.reps) {
    Word c = u * *g0;
    try {
      if (class_key_in(jl, conj_gens(k1, c)) == t1 &&
          class_key_in(jl, conj_gens(k2, c)) == t2)
        return true;
    } catch (const error&) {
      // conjugate landed outside jl for this coset; not a match
    }
  }
  return false;
}

bool conjugate_in_subgroup(const SubgroupGraph& h, const Word& u,
                           const Word& v) {
  Word yu = h.express_in_basis(u);
  Word yv = h.express_in_basis(v);
  int r = std::max({yu.rank(), yv.rank(), 1});
  Word yu2(yu.letters(), r), yv2(yv.letters(), r);
  return conjugacy_class(yu2) == conjugacy_class(yv2);
}

}  // namespace ctinv
