#include "ctinv/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace ctinv {

// ---- small path helpers -----------------------------------------------------

namespace {

bool has_prefix(const EdgePath& p, const EdgePath& pre) {
  if (pre.empty() || pre.size() > p.size()) return false;
  return std::equal(pre.begin(), pre.end(), p.begin());
}

bool has_suffix(const EdgePath& p, const EdgePath& suf) {
  if (suf.empty() || suf.size() > p.size()) return false;
  return std::equal(suf.rbegin(), suf.rend(), p.rbegin());
}

// spanning tree paths inside an arbitrary edge subset, from `from` to `to`
EdgePath subgraph_path(const CTData& c, const std::vector<int>& edges, int from,
                       int to) {
  const MarkedGraph& g = c.graph;
  std::map<int, std::pair<int, Step>> prev;  // vertex -> (prev vertex, step)
  std::queue<int> q;
  q.push(from);
  prev[from] = {from, 0};
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == to) break;
    for (int e : edges) {
      const GraphEdge& ge = g.edge(e);
      if (ge.src == v && !prev.count(ge.dst)) {
        prev[ge.dst] = {v, step_of_edge(e)};
        q.push(ge.dst);
      }
      if (ge.dst == v && !prev.count(ge.src)) {
        prev[ge.src] = {v, -step_of_edge(e)};
        q.push(ge.src);
      }
    }
  }
  if (!prev.count(to))
    throw error(errc::internal, "subgraph_path: vertices not connected");
  EdgePath p;
  for (int v = to; v != from; v = prev[v].first) p.push_back(prev[v].second);
  std::reverse(p.begin(), p.end());
  return p;
}

// generator loops of pi_1(subgraph component containing base, base)
std::vector<EdgePath> subgraph_loops(const CTData& c,
                                     const std::vector<int>& edges, int base) {
  const MarkedGraph& g = c.graph;
  std::map<int, std::pair<int, Step>> prev;
  std::vector<int> order;
  std::queue<int> q;
  q.push(base);
  prev[base] = {base, 0};
  std::vector<bool> tree(g.edge_count(), false);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    for (int e : edges) {
      const GraphEdge& ge = g.edge(e);
      if (ge.src == v && !prev.count(ge.dst)) {
        prev[ge.dst] = {v, step_of_edge(e)};
        tree[e] = true;
        q.push(ge.dst);
      } else if (ge.dst == v && !prev.count(ge.src)) {
        prev[ge.src] = {v, -step_of_edge(e)};
        tree[e] = true;
        q.push(ge.src);
      }
    }
  }
  auto to_base = [&](int v) {
    EdgePath p;
    for (int x = v; x != base; x = prev[x].first) p.push_back(prev[x].second);
    std::reverse(p.begin(), p.end());
    return p;
  };
  std::vector<EdgePath> loops;
  for (int e : edges) {
    if (tree[e]) continue;
    const GraphEdge& ge = g.edge(e);
    if (!prev.count(ge.src) || !prev.count(ge.dst)) continue;  // other comp
    EdgePath loop = to_base(ge.src);
    loop.push_back(step_of_edge(e));
    EdgePath back = reverse_path(to_base(ge.dst));
    loop.insert(loop.end(), back.begin(), back.end());
    loops.push_back(loop);
  }
  return loops;
}

std::vector<Word> loop_words(const CTData& c,
                             const std::vector<EdgePath>& loops) {
  std::vector<Word> out;
  for (const EdgePath& p : loops) out.push_back(c.graph.word_of_path(p));
  return out;
}

}  // namespace

// ---- rays ---------------------------------------------------------------------

bool ray_end_periodic(const RayDescriptor& r) {
  return r.kind != RayDescriptor::Kind::Eigen;
}

int ray_start_vertex(const CTData& c, const RayDescriptor& r) {
  switch (r.kind) {
    case RayDescriptor::Kind::Eigen:
    case RayDescriptor::Kind::LinearTail:
      return c.graph.edge(r.edge).src;
    case RayDescriptor::Kind::Periodic:
      return c.graph.src_of(r.period.front());
  }
  return -1;
}

EdgePath ray_prefix(const CTData& c, const RayDescriptor& r, long long depth) {
  EdgePath out;
  switch (r.kind) {
    case RayDescriptor::Kind::Eigen: {
      Splitter sp(c);
      Terms ts = sp.ray_terms(r.edge, depth);
      out = sp.terms_path(ts);
      break;
    }
    case RayDescriptor::Kind::LinearTail: {
      const EdgePath& w = c.twist_paths[c.twist_of[r.edge]];
      EdgePath unit = r.sign > 0 ? w : reverse_path(w);
      out.push_back(step_of_edge(r.edge));
      while ((long long)out.size() < depth)
        out.insert(out.end(), unit.begin(), unit.end());
      break;
    }
    case RayDescriptor::Kind::Periodic: {
      while ((long long)out.size() < depth)
        out.insert(out.end(), r.period.begin(), r.period.end());
      break;
    }
  }
  if ((long long)out.size() > depth) out.resize(depth);
  return out;
}

std::string ray_str(const CTData& c, const RayDescriptor& r) {
  switch (r.kind) {
    case RayDescriptor::Kind::Eigen:
      return "R_" + c.edge_name(r.edge);
    case RayDescriptor::Kind::LinearTail: {
      std::string w = c.graph.path_str(c.twist_paths[c.twist_of[r.edge]]);
      return c.edge_name(r.edge) + " " + w + (r.sign > 0 ? "^oo" : "^-oo");
    }
    case RayDescriptor::Kind::Periodic: {
      for (size_t t = 0; t < c.twist_paths.size(); ++t) {
        if (r.period == c.twist_paths[t])
          return c.graph.path_str(c.twist_paths[t]) + "^oo";
        if (r.period == reverse_path(c.twist_paths[t]))
          return c.graph.path_str(c.twist_paths[t]) + "^-oo";
      }
      return c.graph.path_str(r.period) + "^oo";
    }
  }
  return "?";
}

// ---- lines --------------------------------------------------------------------

LineDescriptor make_periodic_line(const CTData& c, const EdgePath& period) {
  LineDescriptor l;
  l.periodic = true;
  l.axis = Circuit(c.graph, period);
  return l;
}

LineDescriptor make_line(const CTData& c, RayDescriptor left, EdgePath rho,
                         RayDescriptor right) {
  rho = tighten(c.graph, rho);
  if (left.kind == RayDescriptor::Kind::Periodic) {
    EdgePath unit = reverse_path(left.period);
    while (has_prefix(rho, unit)) rho.erase(rho.begin(), rho.begin() + unit.size());
  }
  if (right.kind == RayDescriptor::Kind::Periodic) {
    const EdgePath& unit = right.period;
    while (has_suffix(rho, unit)) rho.resize(rho.size() - unit.size());
  }
  if (rho.empty() && left.kind == RayDescriptor::Kind::Periodic &&
      right.kind == RayDescriptor::Kind::Periodic &&
      reverse_path(left.period) == right.period)
    return make_periodic_line(c, right.period);
  LineDescriptor l;
  l.left = std::move(left);
  l.rho = std::move(rho);
  l.right = std::move(right);
  return l;
}

LineDescriptor line_inverse(const CTData& c, const LineDescriptor& l) {
  if (l.periodic) {
    LineDescriptor r;
    r.periodic = true;
    r.axis = l.axis.reversed(c.graph);
    return r;
  }
  return make_line(c, l.right, reverse_path(l.rho), l.left);
}

std::string line_str(const CTData& c, const LineDescriptor& l) {
  if (l.periodic) {
    // report the class of the axis, oriented
    for (size_t t = 0; t < c.twist_paths.size(); ++t) {
      Circuit ct(c.graph, c.twist_paths[t]);
      if (l.axis == ct) return c.graph.path_str(c.twist_paths[t]) + "^oo";
      if (l.axis == ct.reversed(c.graph))
        return c.graph.path_str(c.twist_paths[t]) + "^-oo";
    }
    return c.graph.path_str(l.axis.steps()) + "^oo";
  }
  auto left_str = [&](const RayDescriptor& r) -> std::string {
    switch (r.kind) {
      case RayDescriptor::Kind::Eigen:
        return "R_" + c.edge_name(r.edge) + "^-1";
      case RayDescriptor::Kind::LinearTail: {
        std::string w = c.graph.path_str(c.twist_paths[c.twist_of[r.edge]]);
        char nm = c.graph.edge(r.edge).name;
        return w + (r.sign > 0 ? "^-oo " : "^oo ") +
               std::string(1, (char)(nm - 'a' + 'A'));
      }
      case RayDescriptor::Kind::Periodic: {
        // the incoming tail reads the reverse of the outgoing period
        EdgePath rev = reverse_path(r.period);
        for (size_t t = 0; t < c.twist_paths.size(); ++t) {
          if (rev == c.twist_paths[t])
            return c.graph.path_str(c.twist_paths[t]) + "^oo";
          if (rev == reverse_path(c.twist_paths[t]))
            return c.graph.path_str(c.twist_paths[t]) + "^-oo";
        }
        return c.graph.path_str(rev) + "^oo";
      }
    }
    return "?";
  };
  std::string s = left_str(l.left);
  if (!l.rho.empty()) s += " " + c.graph.path_str(l.rho);
  s += " " + ray_str(c, l.right);
  return s;
}

EdgePath line_window(const CTData& c, const LineDescriptor& l,
                     long long depth) {
  if (l.periodic) {
    EdgePath p;
    while ((long long)p.size() < 2 * depth)
      p.insert(p.end(), l.axis.steps().begin(), l.axis.steps().end());
    return p;
  }
  EdgePath left = reverse_path(ray_prefix(c, l.left, depth));
  EdgePath out = left;
  out.insert(out.end(), l.rho.begin(), l.rho.end());
  EdgePath right = ray_prefix(c, l.right, depth);
  out.insert(out.end(), right.begin(), right.end());
  return tighten(c.graph, out);
}

bool line_f_invariant(const CTData& c, const LineDescriptor& l,
                      long long depth) {
  EdgePath want = line_window(c, l, depth);
  EdgePath big = line_window(c, l, 3 * depth + 40);
  EdgePath img = c.self_map().map_path(big);
  return std::search(img.begin(), img.end(), want.begin(), want.end()) !=
         img.end();
}

bool line_lifts_to_eigengraph(const CTData& c, const LineDescriptor& l) {
  auto ray_ok = [&](const RayDescriptor& r) {
    switch (r.kind) {
      case RayDescriptor::Kind::Eigen:
        return c.edge_class[r.edge] == EdgeClass::Higher;
      case RayDescriptor::Kind::LinearTail:
        return c.edge_class[r.edge] == EdgeClass::Linear;
      case RayDescriptor::Kind::Periodic: {
        for (const EdgePath& w : c.twist_paths)
          if (r.period == w || r.period == reverse_path(w)) return true;
        return false;
      }
    }
    return false;
  };
  if (l.periodic) {
    for (const EdgePath& w : c.twist_paths) {
      Circuit cw(c.graph, w);
      if (l.axis == cw || l.axis == cw.reversed(c.graph)) return true;
    }
    return false;
  }
  if (!ray_ok(l.left) || !ray_ok(l.right)) return false;
  if (l.rho.empty()) return true;
  Splitter sp(c);
  try {
    for (const SplitTerm& t : sp.split(l.rho))
      if (!sp.is_nielsen(t)) return false;
  } catch (const error&) {
    return false;
  }
  return true;
}

// ---- f_infinity -----------------------------------------------------------------

FInfinity f_infinity(const CTData& c, const Splitter& sp, const Terms& sigma) {
  EdgePath rho;
  Terms cur = sigma;
  for (int guard = 0; guard < 200; ++guard) {
    size_t i = 0;
    while (i < cur.size() && sp.is_nielsen(cur[i])) {
      EdgePath tp = sp.term_path(cur[i]);
      rho.insert(rho.end(), tp.begin(), tp.end());
      ++i;
    }
    if (i == cur.size())
      throw error(errc::not_growing, "path has no growing term");
    const SplitTerm nu = cur[i];
    if (nu.kind == TermKind::Exceptional) {
      int d = c.degree_of[nu.lin1] - c.degree_of[nu.lin2];
      return {tighten(c.graph, rho),
              RayDescriptor::linear_tail(nu.lin1, d > 0 ? 1 : -1)};
    }
    int e = edge_of_step(nu.step);
    bool fwd = step_forward(nu.step);
    if (c.edge_class[e] == EdgeClass::Linear) {
      const EdgePath& w = c.twist_paths[c.twist_of[e]];
      int d = c.degree_of[e];
      if (fwd)
        return {tighten(c.graph, rho),
                RayDescriptor::linear_tail(e, d > 0 ? 1 : -1)};
      EdgePath period = d > 0 ? reverse_path(w) : w;
      return {tighten(c.graph, rho), RayDescriptor::periodic(period)};
    }
    // higher order
    if (fwd) return {tighten(c.graph, rho), RayDescriptor::eigen(e)};
    // reversed higher edge: pass to the image and keep only the part
    // preceding the surviving growing term
    cur = sp.term_image(nu);
  }
  throw error(errc::internal, "f_infinity did not stabilize");
}

// ---- limit lines -----------------------------------------------------------------

namespace {

struct Coarse {
  std::vector<Terms> rho;          // rho[0..q]
  std::vector<SplitTerm> sigma;    // sigma[0..q-1]
};

Coarse coarsen(const Splitter& sp, const Terms& ts) {
  Coarse c;
  c.rho.emplace_back();
  for (const SplitTerm& t : ts) {
    if (sp.is_nielsen(t)) {
      c.rho.back().push_back(t);
    } else {
      c.sigma.push_back(t);
      c.rho.emplace_back();
    }
  }
  return c;
}

void limit_lines_rec(const CTData& c, const Splitter& sp, int E,
                     std::map<int, std::set<LineDescriptor>>& memo) {
  if (memo.count(E)) return;
  memo[E] = {};  // guards against cycles (cannot occur: heights decrease)
  Terms gamma = sp.tail_terms(E);
  Terms second = sp.image(sp.tail_terms(E));
  gamma.insert(gamma.end(), second.begin(), second.end());
  Coarse co = coarsen(sp, gamma);
  std::set<LineDescriptor> lines;
  size_t q = co.sigma.size();
  for (size_t k = 0; k + 1 < q; ++k) {
    FInfinity left = f_infinity(c, sp, {sp.term_reverse(co.sigma[k])});
    FInfinity right = f_infinity(c, sp, {co.sigma[k + 1]});
    EdgePath mid = reverse_path(left.rho);
    EdgePath rk = sp.terms_path(co.rho[k + 1]);
    mid.insert(mid.end(), rk.begin(), rk.end());
    mid.insert(mid.end(), right.rho.begin(), right.rho.end());
    lines.insert(make_line(c, left.ray, mid, right.ray));
  }
  for (const SplitTerm& s : co.sigma) {
    if (s.kind == TermKind::Exceptional) {
      int d = c.degree_of[s.lin1] - c.degree_of[s.lin2];
      const EdgePath& w = c.twist_paths[c.twist_of[s.lin1]];
      lines.insert(make_periodic_line(c, d > 0 ? w : reverse_path(w)));
      continue;
    }
    int e = edge_of_step(s.step);
    bool fwd = step_forward(s.step);
    if (c.edge_class[e] == EdgeClass::Linear) {
      const EdgePath& w = c.twist_paths[c.twist_of[e]];
      int d = c.degree_of[e];
      bool positive = fwd ? d > 0 : d < 0;
      lines.insert(make_periodic_line(c, positive ? w : reverse_path(w)));
    } else {  // higher
      limit_lines_rec(c, sp, e, memo);
      if (fwd)
        for (const LineDescriptor& l : memo[e]) lines.insert(l);
      else
        for (const LineDescriptor& l : memo[e])
          lines.insert(line_inverse(c, l));
    }
  }
  memo[E] = lines;
}

}  // namespace

std::set<LineDescriptor> limit_lines(const CTData& c, int higher_edge) {
  if (c.edge_class[higher_edge] != EdgeClass::Higher)
    throw error(errc::not_higher_order,
                c.edge_name(higher_edge) + " is not higher order");
  Splitter sp(c);
  std::map<int, std::set<LineDescriptor>> memo;
  limit_lines_rec(c, sp, higher_edge, memo);
  return memo[higher_edge];
}

std::set<LineDescriptor> acc_np(const CTData& c, int higher_edge) {
  std::set<LineDescriptor> out;
  for (const LineDescriptor& l : limit_lines(c, higher_edge))
    if (!l.periodic) out.insert(l);
  return out;
}

std::set<LineDescriptor> acc_np_all(const CTData& c) {
  std::set<LineDescriptor> out;
  for (int e : c.higher_edges())
    for (const LineDescriptor& l : acc_np(c, e)) out.insert(l);
  return out;
}

// ---- eigengraph -------------------------------------------------------------------

namespace {

Eigengraph build_eigengraph(const CTData& c, const std::vector<int>& edges) {
  const MarkedGraph& g = c.graph;
  std::vector<bool> in_sub(g.edge_count(), false);
  for (int e : edges) in_sub[e] = true;
  std::vector<bool> vertex_in(g.vertex_count(), false);
  for (int e : edges) {
    vertex_in[g.edge(e).src] = true;
    vertex_in[g.edge(e).dst] = true;
  }
  // components of (vertices, fixed edges)
  std::vector<int> comp(g.vertex_count(), -1);
  int nc = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!vertex_in[v] || comp[v] >= 0) continue;
    std::queue<int> q;
    q.push(v);
    comp[v] = nc;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int e : edges) {
        if (c.edge_class[e] != EdgeClass::Fixed) continue;
        const GraphEdge& ge = g.edge(e);
        if (ge.src == x && comp[ge.dst] < 0) {
          comp[ge.dst] = nc;
          q.push(ge.dst);
        }
        if (ge.dst == x && comp[ge.src] < 0) {
          comp[ge.src] = nc;
          q.push(ge.src);
        }
      }
    }
    ++nc;
  }
  Eigengraph eg;
  eg.comp_of_vertex = comp;
  eg.components.resize(nc);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (vertex_in[v]) eg.components[comp[v]].vertices.push_back(v);
  for (int e : edges) {
    switch (c.edge_class[e]) {
      case EdgeClass::Fixed:
        eg.components[comp[g.edge(e).src]].fixed_edges.push_back(e);
        break;
      case EdgeClass::Linear:
        eg.components[comp[g.edge(e).src]].lollipops.push_back(e);
        break;
      case EdgeClass::Higher:
        eg.components[comp[g.edge(e).src]].rays.push_back(e);
        break;
    }
  }
  for (EigengraphComponent& comp_data : eg.components) {
    comp_data.base_vertex = comp_data.vertices.front();
    int vcount = (int)comp_data.vertices.size();
    int fcount = (int)comp_data.fixed_edges.size();
    comp_data.core_rank = (fcount - vcount + 1) + (int)comp_data.lollipops.size();
    comp_data.flag = comp_data.core_rank == 0
                         ? EigengraphComponent::Flag::Contractible
                         : (comp_data.core_rank == 1
                                ? EigengraphComponent::Flag::InfiniteCyclic
                                : EigengraphComponent::Flag::Large);
    // pi_1 of the core: fixed-edge loops plus lollipop circuits
    std::vector<EdgePath> loops =
        subgraph_loops(c, comp_data.fixed_edges, comp_data.base_vertex);
    for (int le : comp_data.lollipops) {
      EdgePath loop = subgraph_path(c, comp_data.fixed_edges,
                                    comp_data.base_vertex, g.edge(le).src);
      loop.push_back(step_of_edge(le));
      const EdgePath& w = c.twist_paths[c.twist_of[le]];
      loop.insert(loop.end(), w.begin(), w.end());
      loop.push_back(-step_of_edge(le));
      EdgePath back = reverse_path(subgraph_path(
          c, comp_data.fixed_edges, comp_data.base_vertex, g.edge(le).src));
      loop.insert(loop.end(), back.begin(), back.end());
      loops.push_back(loop);
    }
    comp_data.fix_generators = loop_words(c, loops);
    comp_data.fix_class = SubgroupConjClass::from_generators(
        comp_data.fix_generators, g.rank());
  }
  return eg;
}

}  // namespace

Eigengraph eigengraph(const CTData& c) {
  std::vector<int> all(c.graph.edge_count());
  std::iota(all.begin(), all.end(), 0);
  return build_eigengraph(c, all);
}

Eigengraph eigengraph_restricted(const CTData& c,
                                 const std::vector<int>& subgraph_edges) {
  return build_eigengraph(c, subgraph_edges);
}

// ---- axes -----------------------------------------------------------------------

Word twist_word(const CTData& c, int twist_index) {
  return c.graph.word_of_path(c.twist_paths[twist_index]);
}

std::vector<CyclicWord> axes(const CTData& c) {
  std::vector<CyclicWord> out;
  for (size_t t = 0; t < c.twist_paths.size(); ++t)
    out.push_back(conjugacy_class(twist_word(c, (int)t)).unoriented());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CyclicWord> axes_oriented(const CTData& c) {
  std::vector<CyclicWord> out;
  for (size_t t = 0; t < c.twist_paths.size(); ++t) {
    CyclicWord w = conjugacy_class(twist_word(c, (int)t));
    out.push_back(w);
    out.push_back(w.inverse());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<StrongAxis> strong_axes(const CTData& c, const CyclicWord& axis) {
  for (size_t t = 0; t < c.twist_paths.size(); ++t) {
    CyclicWord w = conjugacy_class(twist_word(c, (int)t));
    int orient = 0;
    if (axis == w)
      orient = 1;
    else if (axis == w.inverse())
      orient = -1;
    else
      continue;
    std::vector<StrongAxis> out;
    out.push_back({axis, (int)t, orient, -1, 0});
    for (int e : c.linear_edges()) {
      if (c.twist_of[e] != (int)t) continue;
      out.push_back({axis, (int)t, orient, e, orient * c.degree_of[e]});
    }
    return out;
  }
  throw error(errc::not_an_axis, "class is not an axis");
}

int twist_coordinate(const StrongAxis& a, const StrongAxis& b) {
  if (a.twist != b.twist || a.orientation != b.orientation)
    throw error(errc::axis_mismatch,
                "strong axes lie on different oriented axes");
  return a.degree - b.degree;
}

// ---- partial order -----------------------------------------------------------------

bool RayOrder::is_less(int e1, int e2) const {
  int i = -1, j = -1;
  for (size_t t = 0; t < higher.size(); ++t) {
    if (higher[t] == e1) i = (int)t;
    if (higher[t] == e2) j = (int)t;
  }
  if (i < 0 || j < 0) return false;
  return less[i][j];
}

bool RayOrder::covers(int e1, int e2) const {
  if (!is_less(e1, e2)) return false;
  for (int m : higher)
    if (m != e1 && m != e2 && is_less(e1, m) && is_less(m, e2)) return false;
  return true;
}

std::vector<std::pair<int, int>> RayOrder::relation_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < higher.size(); ++i)
    for (size_t j = 0; j < higher.size(); ++j)
      if (less[i][j]) out.push_back({higher[i], higher[j]});
  return out;
}

RayOrder ray_partial_order(const CTData& c) {
  Splitter sp(c);
  RayOrder ro;
  ro.higher = c.higher_edges();
  size_t n = ro.higher.size();
  ro.less.assign(n, std::vector<bool>(n, false));
  auto idx = [&](int e) {
    for (size_t i = 0; i < n; ++i)
      if (ro.higher[i] == e) return (int)i;
    return -1;
  };
  for (size_t j = 0; j < n; ++j) {
    for (const SplitTerm& t : sp.tail_terms(ro.higher[j])) {
      if (t.kind != TermKind::Single) continue;
      int e = edge_of_step(t.step);
      if (c.edge_class[e] != EdgeClass::Higher) continue;
      ro.less[idx(e)][j] = true;
    }
  }
  // transitive closure
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (ro.less[i][k] && ro.less[k][j]) ro.less[i][j] = true;
  return ro;
}

// ---- free factor systems and chains -------------------------------------------------

std::vector<int> FFS::rank_profile() const {
  std::vector<int> out;
  for (const FFSComponent& comp : components) out.push_back(comp.rank);
  std::sort(out.begin(), out.end());
  return out;
}

bool FFS::same_ffs(const FFS& o) const {
  std::vector<std::string> a, b;
  for (const FFSComponent& comp : components) a.push_back(comp.cls.key());
  for (const FFSComponent& comp : o.components) b.push_back(comp.cls.key());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

FFS ffs_of_subgraph(const CTData& c, std::vector<int> edges) {
  const MarkedGraph& g = c.graph;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  FFS f;
  f.subgraph_edges = edges;
  // iterated valence-1 pruning
  std::vector<bool> alive(g.edge_count(), false);
  for (int e : edges) alive[e] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> deg(g.vertex_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e)
      if (alive[e]) {
        ++deg[g.edge(e).src];
        ++deg[g.edge(e).dst];
      }
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!alive[e]) continue;
      if (deg[g.edge(e).src] == 1 || deg[g.edge(e).dst] == 1) {
        alive[e] = false;
        changed = true;
      }
    }
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (alive[e]) f.core_edges.push_back(e);
  // components of the core
  std::vector<int> comp(g.vertex_count(), -1);
  int nc = 0;
  for (int start = 0; start < g.vertex_count(); ++start) {
    bool incident = false;
    for (int e : f.core_edges)
      if (g.edge(e).src == start || g.edge(e).dst == start) incident = true;
    if (!incident || comp[start] >= 0) continue;
    std::queue<int> q;
    q.push(start);
    comp[start] = nc;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : f.core_edges) {
        const GraphEdge& ge = g.edge(e);
        if (ge.src == v && comp[ge.dst] < 0) {
          comp[ge.dst] = nc;
          q.push(ge.dst);
        }
        if (ge.dst == v && comp[ge.src] < 0) {
          comp[ge.src] = nc;
          q.push(ge.src);
        }
      }
    }
    ++nc;
  }
  f.components.resize(nc);
  for (int e : f.core_edges) {
    FFSComponent& fc = f.components[comp[g.edge(e).src]];
    fc.core_edges.push_back(e);
  }
  for (FFSComponent& fc : f.components) {
    std::vector<bool> seen(g.vertex_count(), false);
    for (int e : fc.core_edges) {
      seen[g.edge(e).src] = true;
      seen[g.edge(e).dst] = true;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
      if (seen[v]) fc.vertices.push_back(v);
    fc.base_vertex = fc.vertices.front();
    fc.rank = (int)fc.core_edges.size() - (int)fc.vertices.size() + 1;
    fc.generators = loop_words(c, subgraph_loops(c, fc.core_edges, fc.base_vertex));
    fc.cls = SubgroupConjClass::from_generators(fc.generators, g.rank());
  }
  return f;
}

FFS linear_ffs(const CTData& c) {
  std::vector<int> k0;
  for (int e = 0; e < c.graph.edge_count(); ++e)
    if (c.edge_class[e] != EdgeClass::Higher) k0.push_back(e);
  return ffs_of_subgraph(c, k0);
}

SpecialChain special_chain(const CTData& c, const std::vector<int>& total_order) {
  RayOrder ro = ray_partial_order(c);
  std::vector<int> higher = c.higher_edges();
  {
    std::vector<int> a = higher, b = total_order;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw error(errc::invalid_total_order,
                  "order must list every higher-order edge exactly once");
  }
  for (size_t i = 0; i < total_order.size(); ++i)
    for (size_t j = i + 1; j < total_order.size(); ++j)
      if (ro.is_less(total_order[j], total_order[i]))
        throw error(errc::invalid_total_order,
                    "order does not extend the partial order: " +
                        c.edge_name(total_order[j]) + " < " +
                        c.edge_name(total_order[i]));
  SpecialChain chain;
  chain.order = total_order;
  std::vector<int> current;
  for (int e = 0; e < c.graph.edge_count(); ++e)
    if (c.edge_class[e] != EdgeClass::Higher) current.push_back(e);
  chain.elements.push_back(ffs_of_subgraph(c, current));
  for (int e : total_order) {
    current.push_back(e);
    FFS next = ffs_of_subgraph(c, current);
    if (next.same_ffs(chain.elements.back())) continue;
    SpecialChain::Step st;
    st.d_edge = e;
    for (int ce : next.core_edges) {
      const std::vector<int>& prev = chain.elements.back().core_edges;
      if (std::find(prev.begin(), prev.end(), ce) == prev.end())
        st.new_core_edges.push_back(ce);
    }
    chain.steps.push_back(st);
    chain.elements.push_back(next);
  }
  return chain;
}

std::vector<int> default_chain_order(const CTData& c) {
  RayOrder ro = ray_partial_order(c);
  std::vector<int> rest = c.higher_edges();
  std::vector<int> out;
  while (!rest.empty()) {
    for (size_t i = 0; i < rest.size(); ++i) {
      bool minimal = true;
      for (int other : rest)
        if (other != rest[i] && ro.is_less(other, rest[i])) minimal = false;
      if (minimal) {
        out.push_back(rest[i]);
        rest.erase(rest.begin() + i);
        break;
      }
    }
  }
  return out;
}

bool is_special_ffs(const CTData& c, const std::vector<int>& subgraph_edges) {
  FFS target = ffs_of_subgraph(c, subgraph_edges);
  RayOrder ro = ray_partial_order(c);
  std::vector<int> higher = c.higher_edges();
  std::vector<int> k0;
  for (int e = 0; e < c.graph.edge_count(); ++e)
    if (c.edge_class[e] != EdgeClass::Higher) k0.push_back(e);
  size_t n = higher.size();
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    bool admissible = true;
    for (size_t j = 0; j < n && admissible; ++j) {
      if (!(mask & (size_t(1) << j))) continue;
      for (size_t i = 0; i < n; ++i) {
        if (!(mask & (size_t(1) << i)) && ro.is_less(higher[i], higher[j])) {
          admissible = false;
          break;
        }
      }
    }
    if (!admissible) continue;
    std::vector<int> edges = k0;
    for (size_t j = 0; j < n; ++j)
      if (mask & (size_t(1) << j)) edges.push_back(higher[j]);
    if (ffs_of_subgraph(c, edges).same_ffs(target)) return true;
  }
  return false;
}

// ---- extensions ----------------------------------------------------------------------

const char* arc_type_name(ArcType t) {
  switch (t) {
    case ArcType::H: return "H";
    case ArcType::HH: return "HH";
    case ArcType::LH: return "LH";
  }
  return "?";
}
const char* ext_flag_name(ExtFlag f) {
  switch (f) {
    case ExtFlag::Contractible: return "contractible";
    case ExtFlag::InfiniteCyclic: return "infinite-cyclic";
    case ExtFlag::Large: return "large";
  }
  return "?";
}

ExtensionData extension_type(const CTData& c, const SpecialChain& chain,
                             int step) {
  const SpecialChain::Step& st = chain.steps[step];
  const FFS& prev = chain.elements[step];
  const FFS& next = chain.elements[step + 1];
  ExtensionData out;
  out.d_edge = st.d_edge;
  out.c_edge = -1;
  for (int e : st.new_core_edges)
    if (c.edge_class[e] == EdgeClass::Higher) out.new_rays.push_back(e);
  if (out.new_rays.size() == 2) {
    out.arc = ArcType::HH;
    out.c_edge =
        out.new_rays[0] == st.d_edge ? out.new_rays[1] : out.new_rays[0];
  } else if (out.new_rays.size() == 1) {
    // LH iff some linear family gains an edge inside the core
    int gained = -1;
    for (int e : st.new_core_edges)
      if (c.edge_class[e] == EdgeClass::Linear) gained = e;
    if (gained >= 0) {
      out.arc = ArcType::LH;
      out.c_edge = gained;
    } else {
      out.arc = ArcType::H;
    }
  } else {
    throw error(errc::internal, "extension adds no new ray");
  }
  (void)prev;
  // flag: component of the restricted eigengraph containing R_D
  Eigengraph eg = eigengraph_restricted(c, next.core_edges);
  const EigengraphComponent& comp =
      eg.components[eg.comp_of_vertex[c.graph.edge(st.d_edge).src]];
  switch (comp.flag) {
    case EigengraphComponent::Flag::Contractible:
      out.flag = ExtFlag::Contractible;
      break;
    case EigengraphComponent::Flag::InfiniteCyclic:
      out.flag = ExtFlag::InfiniteCyclic;
      break;
    case EigengraphComponent::Flag::Large:
      out.flag = ExtFlag::Large;
      break;
  }
  return out;
}

namespace {

// minimal chain element whose core contains the tail of a higher edge,
// and the loops of its component at the tail's basepoint
std::vector<Word> carrier_loops(const CTData& c, const SpecialChain& chain,
                                int higher_edge, int* element_out) {
  EdgePath u = c.tail(higher_edge);
  std::set<int> tail_edges;
  for (Step s : u) tail_edges.insert(edge_of_step(s));
  for (size_t i = 0; i < chain.elements.size(); ++i) {
    const FFS& f = chain.elements[i];
    bool ok = true;
    for (int e : tail_edges)
      if (std::find(f.core_edges.begin(), f.core_edges.end(), e) ==
          f.core_edges.end())
        ok = false;
    if (!ok) continue;
    if (element_out) *element_out = (int)i;
    int base = c.graph.edge(higher_edge).dst;  // u is a loop here
    std::vector<EdgePath> loops;
    // restrict to the component of the core containing base
    for (const FFSComponent& fc : f.components) {
      if (std::find(fc.vertices.begin(), fc.vertices.end(), base) ==
          fc.vertices.end())
        continue;
      loops = subgraph_loops(c, fc.core_edges, base);
      break;
    }
    return loop_words(c, loops);
  }
  throw error(errc::internal, "no chain element carries the ray tail");
}

}  // namespace

AddedLines added_lines(const CTData& c, const SpecialChain& chain, int step) {
  ExtensionData ext = extension_type(c, chain, step);
  const FFS& next = chain.elements[step + 1];
  Eigengraph eg = eigengraph_restricted(c, next.core_edges);
  const EigengraphComponent& comp =
      eg.components[eg.comp_of_vertex[c.graph.edge(ext.d_edge).src]];
  AddedLines out;
  if (ext.flag == ExtFlag::Contractible) {
    for (int n : ext.new_rays) {
      if (std::find(comp.rays.begin(), comp.rays.end(), n) == comp.rays.end())
        continue;
      for (int x : comp.rays) {
        if (x == n) continue;
        EdgePath rho = subgraph_path(c, comp.fixed_edges, c.graph.edge(x).src,
                                     c.graph.edge(n).src);
        out.lines.push_back(make_line(c, RayDescriptor::eigen(x), rho,
                                      RayDescriptor::eigen(n)));
      }
    }
    std::sort(out.lines.begin(), out.lines.end());
    out.lines.erase(std::unique(out.lines.begin(), out.lines.end()),
                    out.lines.end());
    return out;
  }
  if (ext.flag == ExtFlag::InfiniteCyclic) {
    for (int n : ext.new_rays) {
      if (std::find(comp.rays.begin(), comp.rays.end(), n) == comp.rays.end())
        continue;
      if (!comp.lollipops.empty()) {
        int le = comp.lollipops.front();
        EdgePath rho = subgraph_path(c, comp.fixed_edges,
                                     c.graph.edge(le).src, c.graph.edge(n).src);
        out.lines.push_back(make_line(c, RayDescriptor::linear_tail(le, 1),
                                      rho, RayDescriptor::eigen(n)));
        out.lines.push_back(make_line(c, RayDescriptor::linear_tail(le, -1),
                                      rho, RayDescriptor::eigen(n)));
      } else {
        // core circle made of fixed edges
        std::vector<EdgePath> loops =
            subgraph_loops(c, comp.fixed_edges, comp.base_vertex);
        if (loops.size() != 1)
          throw error(errc::internal, "infinite-cyclic component core");
        EdgePath cyc = tighten(c.graph, loops.front());
        EdgePath rho = subgraph_path(c, comp.fixed_edges, comp.base_vertex,
                                     c.graph.edge(n).src);
        out.lines.push_back(make_line(c, RayDescriptor::periodic(cyc), rho,
                                      RayDescriptor::eigen(n)));
        out.lines.push_back(
            make_line(c, RayDescriptor::periodic(reverse_path(cyc)), rho,
                      RayDescriptor::eigen(n)));
      }
    }
    std::sort(out.lines.begin(), out.lines.end());
    out.lines.erase(std::unique(out.lines.begin(), out.lines.end()),
                    out.lines.end());
    return out;
  }
  // large: the algebraic pair [Fix(Phi), F_c(r+)]
  out.algebraic_only = true;
  int s = c.graph.edge(ext.d_edge).src;
  std::vector<EdgePath> fix_loops;
  {
    // component core loops based at src(D)
    std::vector<EdgePath> loops = subgraph_loops(c, comp.fixed_edges, s);
    for (int le : comp.lollipops) {
      EdgePath loop =
          subgraph_path(c, comp.fixed_edges, s, c.graph.edge(le).src);
      loop.push_back(step_of_edge(le));
      const EdgePath& w = c.twist_paths[c.twist_of[le]];
      loop.insert(loop.end(), w.begin(), w.end());
      loop.push_back(-step_of_edge(le));
      EdgePath back = reverse_path(
          subgraph_path(c, comp.fixed_edges, s, c.graph.edge(le).src));
      loop.insert(loop.end(), back.begin(), back.end());
      loops.push_back(loop);
    }
    fix_loops = loops;
  }
  std::vector<Word> h1 = loop_words(c, fix_loops);
  std::vector<Word> carrier = carrier_loops(c, chain, ext.d_edge, nullptr);
  std::vector<Word> h2;
  Word d_word = c.graph.word_of_path({step_of_edge(ext.d_edge)});
  for (const Word& w : carrier) h2.push_back(w.conjugate(d_word));
  out.pair = AtomRef::good_pair(h1, h2, c.graph.rank());
  return out;
}

// ---- algebraic data --------------------------------------------------------------------

const char* line_type_name(LineType t) {
  switch (t) {
    case LineType::PP: return "P-P";
    case LineType::PNP: return "P-NP";
    case LineType::NPP: return "NP-P";
    case LineType::NPNP: return "NP-NP";
  }
  return "?";
}

namespace {

// the element read by the incoming (left) tail, as a loop at the junction
Word left_axis_word(const CTData& c, const RayDescriptor& r) {
  if (r.kind == RayDescriptor::Kind::Periodic)
    return c.graph.word_of_path(reverse_path(r.period));
  // LinearTail(E, s): loop E (w^{-s}) E^-1 read against the line
  const EdgePath& w = c.twist_paths[c.twist_of[r.edge]];
  EdgePath loop = {step_of_edge(r.edge)};
  EdgePath unit = r.sign > 0 ? reverse_path(w) : w;
  loop.insert(loop.end(), unit.begin(), unit.end());
  loop.push_back(-step_of_edge(r.edge));
  return c.graph.word_of_path(loop);
}

Word right_axis_word(const CTData& c, const EdgePath& rho,
                     const RayDescriptor& r) {
  EdgePath loop = rho;
  if (r.kind == RayDescriptor::Kind::Periodic) {
    loop.insert(loop.end(), r.period.begin(), r.period.end());
  } else {
    const EdgePath& w = c.twist_paths[c.twist_of[r.edge]];
    EdgePath unit = r.sign > 0 ? w : reverse_path(w);
    loop.push_back(step_of_edge(r.edge));
    loop.insert(loop.end(), unit.begin(), unit.end());
    loop.push_back(-step_of_edge(r.edge));
  }
  EdgePath back = reverse_path(rho);
  loop.insert(loop.end(), back.begin(), back.end());
  return c.graph.word_of_path(tighten(c.graph, loop));
}

std::vector<Word> ray_carrier_words(const CTData& c, const SpecialChain& chain,
                                    const EdgePath& access, int higher_edge) {
  std::vector<Word> loops = carrier_loops(c, chain, higher_edge, nullptr);
  EdgePath acc = access;
  acc.push_back(step_of_edge(higher_edge));
  Word conj = c.graph.word_of_path(acc);
  std::vector<Word> out;
  for (const Word& w : loops) out.push_back(w.conjugate(conj));
  return out;
}

}  // namespace

AlgebraicLine algebraic_line(const CTData& c, const LineDescriptor& l,
                             const SpecialChain& chain) {
  if (l.periodic)
    throw error(errc::untyped, "periodic lines carry no H_c type");
  bool left_p = ray_end_periodic(l.left);
  bool right_p = ray_end_periodic(l.right);
  int rank = c.graph.rank();
  if (left_p && right_p) {
    Word a = left_axis_word(c, l.left);
    Word b = right_axis_word(c, l.rho, l.right);
    return {LineType::PP, AtomRef::element_pair(a, b)};
  }
  if (left_p && !right_p) {
    Word a = left_axis_word(c, l.left);
    std::vector<Word> f = ray_carrier_words(c, chain, l.rho, l.right.edge);
    return {LineType::PNP, AtomRef::elt_subgroup(a, f, rank)};
  }
  if (!left_p && right_p) {
    std::vector<Word> f = ray_carrier_words(c, chain, {}, l.left.edge);
    Word b = right_axis_word(c, l.rho, l.right);
    return {LineType::NPP, AtomRef::subgroup_elt(f, b, rank)};
  }
  std::vector<Word> f1 = ray_carrier_words(c, chain, {}, l.left.edge);
  std::vector<Word> f2 = ray_carrier_words(c, chain, l.rho, l.right.edge);
  return {LineType::NPNP, AtomRef::good_pair(f1, f2, rank)};
}

std::vector<AtomRef> fix_atoms(const CTData& c) {
  Eigengraph eg = eigengraph(c);
  std::vector<AtomRef> out;
  for (const EigengraphComponent& comp : eg.components)
    out.push_back(AtomRef::subgroup_class(comp.fix_generators, c.graph.rank()));
  return out;
}

std::vector<AtomRef> large_strong_axis_atoms(const CTData& c) {
  Eigengraph eg = eigengraph(c);
  std::vector<AtomRef> out;
  int rank = c.graph.rank();
  for (size_t t = 0; t < c.twist_paths.size(); ++t) {
    const EdgePath& w = c.twist_paths[t];
    int wbase = c.graph.src_of(w.front());
    // base site
    {
      const EigengraphComponent& comp = eg.component_of(wbase);
      if (comp.flag == EigengraphComponent::Flag::Large) {
        EdgePath loop =
            subgraph_path(c, comp.fixed_edges, comp.base_vertex, wbase);
        loop.insert(loop.end(), w.begin(), w.end());
        EdgePath back = reverse_path(
            subgraph_path(c, comp.fixed_edges, comp.base_vertex, wbase));
        loop.insert(loop.end(), back.begin(), back.end());
        Word a = c.graph.word_of_path(tighten(c.graph, loop));
        out.push_back(AtomRef::contain_sub_elt(comp.fix_generators, a, rank));
        out.push_back(
            AtomRef::contain_sub_elt(comp.fix_generators, a.inverse(), rank));
      }
    }
    for (int e : c.linear_edges()) {
      if (c.twist_of[e] != (int)t) continue;
      const EigengraphComponent& comp = eg.component_of(c.graph.edge(e).src);
      if (comp.flag != EigengraphComponent::Flag::Large) continue;
      EdgePath loop = subgraph_path(c, comp.fixed_edges, comp.base_vertex,
                                    c.graph.edge(e).src);
      loop.push_back(step_of_edge(e));
      loop.insert(loop.end(), w.begin(), w.end());
      loop.push_back(-step_of_edge(e));
      EdgePath back = reverse_path(subgraph_path(
          c, comp.fixed_edges, comp.base_vertex, c.graph.edge(e).src));
      loop.insert(loop.end(), back.begin(), back.end());
      Word a = c.graph.word_of_path(tighten(c.graph, loop));
      out.push_back(AtomRef::contain_sub_elt(comp.fix_generators, a, rank));
      out.push_back(
          AtomRef::contain_sub_elt(comp.fix_generators, a.inverse(), rank));
    }
  }
  return out;
}

IteratedSet assemble_Ic(const CTData& c, const SpecialChain& chain) {
  int rank = c.graph.rank();
  std::vector<IteratedSet> top;

  // 1. the chain
  {
    std::vector<IteratedSet> elems;
    for (const FFS& f : chain.elements) {
      std::vector<IteratedSet> comps;
      for (const FFSComponent& fc : f.components)
        comps.push_back(
            IteratedSet::atom(AtomRef::subgroup_class(fc.generators, rank)));
      elems.push_back(IteratedSet::node(false, std::move(comps)));
    }
    top.push_back(IteratedSet::node(true, std::move(elems)));
  }
  // 2. Fix(phi)
  {
    std::vector<IteratedSet> fixes;
    for (const AtomRef& a : fix_atoms(c)) fixes.push_back(IteratedSet::atom(a));
    top.push_back(IteratedSet::node(false, std::move(fixes)));
  }
  // 3. algebraic added lines, ordered by the chain
  {
    std::vector<IteratedSet> steps;
    for (size_t s = 0; s < chain.steps.size(); ++s) {
      AddedLines al = added_lines(c, chain, (int)s);
      std::vector<IteratedSet> atoms;
      if (al.algebraic_only) {
        atoms.push_back(IteratedSet::atom(*al.pair));
      } else {
        for (const LineDescriptor& l : al.lines)
          atoms.push_back(
              IteratedSet::atom(algebraic_line(c, l, chain).atom));
      }
      steps.push_back(IteratedSet::node(false, std::move(atoms)));
    }
    top.push_back(IteratedSet::node(true, std::move(steps)));
  }
  // 4. algebraic limit lines
  {
    std::vector<AtomRef> atoms;
    for (const LineDescriptor& l : acc_np_all(c)) {
      AtomRef a = algebraic_line(c, l, chain).atom;
      bool dup = false;
      for (const AtomRef& b : atoms)
        if (b.equals(a)) dup = true;
      if (!dup) atoms.push_back(a);
    }
    std::vector<IteratedSet> leaves;
    for (const AtomRef& a : atoms) leaves.push_back(IteratedSet::atom(a));
    top.push_back(IteratedSet::node(false, std::move(leaves)));
  }
  // 5. axes
  {
    std::vector<IteratedSet> leaves;
    for (const CyclicWord& a : axes(c))
      leaves.push_back(IteratedSet::atom(AtomRef::unoriented_class(a)));
    top.push_back(IteratedSet::node(false, std::move(leaves)));
  }
  // 6. algebraic strong axes (large fixed subgroup)
  {
    std::vector<IteratedSet> leaves;
    for (const AtomRef& a : large_strong_axis_atoms(c))
      leaves.push_back(IteratedSet::atom(a));
    top.push_back(IteratedSet::node(false, std::move(leaves)));
  }
  return IteratedSet::node(true, std::move(top));
}

}  // namespace ctinv
