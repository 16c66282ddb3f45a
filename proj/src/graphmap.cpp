#include "ctinv/graphmap.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "ctinv/stallings.hpp"

namespace ctinv {

EdgePath reverse_path(const EdgePath& p) {
  EdgePath r(p.rbegin(), p.rend());
  for (Step& s : r) s = -s;
  return r;
}

MarkedGraph::MarkedGraph(int rank, std::vector<std::string> vertex_names,
                         std::vector<GraphEdge> edges,
                         std::vector<int> tree_edges,
                         std::map<int, Word> marking)
    : rank_(rank),
      vertex_names_(std::move(vertex_names)),
      edges_(std::move(edges)),
      tree_edges_(std::move(tree_edges)),
      marking_(std::move(marking)) {}

bool MarkedGraph::in_tree(int e) const {
  return std::find(tree_edges_.begin(), tree_edges_.end(), e) !=
         tree_edges_.end();
}

int MarkedGraph::src_of(Step s) const {
  const GraphEdge& e = edges_[edge_of_step(s)];
  return step_forward(s) ? e.src : e.dst;
}

int MarkedGraph::dst_of(Step s) const {
  const GraphEdge& e = edges_[edge_of_step(s)];
  return step_forward(s) ? e.dst : e.src;
}

int MarkedGraph::edge_by_name(char name) const {
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[i].name == name) return i;
  return -1;
}

EdgePath MarkedGraph::parse_path(const std::string& text) const {
  EdgePath p;
  for (char ch : text) {
    if (ch == ' ' || ch == '.') continue;
    bool rev = (ch >= 'A' && ch <= 'Z');
    char low = rev ? (char)(ch - 'A' + 'a') : ch;
    int e = edge_by_name(low);
    if (e < 0)
      throw error(errc::parse_error, std::string("unknown edge '") + ch + "'");
    p.push_back(rev ? -step_of_edge(e) : step_of_edge(e));
  }
  return p;
}

std::string MarkedGraph::path_str(const EdgePath& p) const {
  std::string s;
  for (Step st : p) {
    char c = edges_[edge_of_step(st)].name;
    s += step_forward(st) ? c : (char)(c - 'a' + 'A');
  }
  if (s.empty()) s = "1";
  return s;
}

EdgePath MarkedGraph::tree_path(int u, int v) const {
  std::vector<int> prev(vertex_count(), -1);
  std::vector<Step> via(vertex_count(), 0);
  std::queue<int> q;
  q.push(u);
  prev[u] = u;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (int ei : tree_edges_) {
      const GraphEdge& e = edges_[ei];
      if (e.src == x && prev[e.dst] < 0) {
        prev[e.dst] = x;
        via[e.dst] = step_of_edge(ei);
        q.push(e.dst);
      }
      if (e.dst == x && prev[e.src] < 0) {
        prev[e.src] = x;
        via[e.src] = -step_of_edge(ei);
        q.push(e.src);
      }
    }
  }
  if (prev[v] < 0) throw error(errc::internal, "tree is not spanning");
  EdgePath p;
  for (int x = v; x != u; x = prev[x]) p.push_back(via[x]);
  std::reverse(p.begin(), p.end());
  return p;
}

EdgePath MarkedGraph::generator_loop(int e) const {
  EdgePath p = tree_path(0, edges_[e].src);
  p.push_back(step_of_edge(e));
  EdgePath back = tree_path(edges_[e].dst, 0);
  p.insert(p.end(), back.begin(), back.end());
  return p;
}

Word MarkedGraph::word_of_path(const EdgePath& p) const {
  Word w = Word::identity(rank_);
  for (Step s : p) {
    auto it = marking_.find(edge_of_step(s));
    if (it == marking_.end()) continue;
    w = w * (step_forward(s) ? it->second : it->second.inverse());
  }
  return w;
}

std::vector<int> MarkedGraph::nontree_edges() const {
  std::vector<int> out;
  for (int i = 0; i < edge_count(); ++i)
    if (!in_tree(i)) out.push_back(i);
  return out;
}

std::vector<Word> MarkedGraph::marking_basis() const {
  std::vector<Word> out;
  for (int i : nontree_edges()) out.push_back(marking_.at(i));
  return out;
}

EdgePath MarkedGraph::expand_basis_word(const Word& y_word) const {
  std::vector<int> nt = nontree_edges();
  EdgePath p;
  for (Letter l : y_word.letters()) {
    int e = nt[std::abs(l) - 1];
    EdgePath loop = generator_loop(e);
    if (l < 0) loop = reverse_path(loop);
    p.insert(p.end(), loop.begin(), loop.end());
  }
  return p;
}

EdgePath tighten(const MarkedGraph& g, const EdgePath& p) {
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (g.dst_of(p[i]) != g.src_of(p[i + 1]))
      throw error(errc::broken_path, "steps do not compose at position " +
                                         std::to_string(i));
  EdgePath out;
  for (Step s : p) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Circuit::Circuit(const MarkedGraph& g, const EdgePath& closed) {
  EdgePath p = tighten(g, closed);
  if (!p.empty() && g.src_of(p.front()) != g.dst_of(p.back()))
    throw error(errc::broken_path, "circuit is not closed");
  // cyclic reduction
  while (p.size() >= 2 && p.front() == -p.back()) {
    p.erase(p.begin());
    p.pop_back();
  }
  if (p.empty()) {
    steps_ = p;
    return;
  }
  EdgePath best = p, cur = p;
  for (size_t i = 1; i < p.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  steps_ = best;
}

Circuit Circuit::reversed(const MarkedGraph& g) const {
  return Circuit(g, reverse_path(steps_));
}

GraphSelfMap::GraphSelfMap(const MarkedGraph* g, std::vector<int> vertex_map,
                           std::vector<EdgePath> edge_images)
    : graph_(g),
      vertex_map_(std::move(vertex_map)),
      edge_images_(std::move(edge_images)) {
  for (int e = 0; e < graph_->edge_count(); ++e) {
    const EdgePath& im = edge_images_[e];
    if (im.empty())
      throw error(errc::parse_error, "edge image must be non-trivial");
    if (graph_->src_of(im.front()) != vertex_map_[graph_->edge(e).src] ||
        graph_->dst_of(im.back()) != vertex_map_[graph_->edge(e).dst])
      throw error(errc::broken_path,
                  std::string("image of edge '") + graph_->edge(e).name +
                      "' does not respect the vertex map");
  }
}

EdgePath GraphSelfMap::map_path(const EdgePath& p) const {
  EdgePath out;
  for (Step s : p) {
    const EdgePath& im = edge_images_[edge_of_step(s)];
    if (step_forward(s))
      out.insert(out.end(), im.begin(), im.end());
    else {
      EdgePath r = reverse_path(im);
      out.insert(out.end(), r.begin(), r.end());
    }
  }
  return tighten(*graph_, out);
}

Circuit GraphSelfMap::map_circuit(const Circuit& c) const {
  EdgePath raw;
  for (Step s : c.steps()) {
    const EdgePath& im = edge_images_[edge_of_step(s)];
    if (step_forward(s))
      raw.insert(raw.end(), im.begin(), im.end());
    else {
      EdgePath r = reverse_path(im);
      raw.insert(raw.end(), r.begin(), r.end());
    }
  }
  return Circuit(*graph_, raw);
}

Word GraphSelfMap::map_word(const Word& w) const {
  Endo phi = induced_outer();
  return phi.apply(w);
}

long long GraphSelfMap::iterate_length(int edge_index, int k) const {
  if (k < 0) throw error(errc::internal, "iterate_length: k must be >= 0");
  const EdgePath& im = edge_images_[edge_index];
  Step self = step_of_edge(edge_index);
  if (!im.empty() && im.front() == self) {
    // f(E) = E.u: |f^k(E)| = 1 + sum_{j<k} |f^j(u)|
    EdgePath u(im.begin() + 1, im.end());
    long long total = 1;
    for (int j = 0; j < k; ++j) {
      total += (long long)u.size();
      if (j + 1 < k) u = map_path(u);
    }
    return total;
  }
  EdgePath p = {self};
  for (int j = 0; j < k; ++j) p = map_path(p);
  return (long long)p.size();
}

Endo GraphSelfMap::induced_outer() const {
  const MarkedGraph& g = *graph_;
  int n = g.rank();
  std::vector<int> nt = g.nontree_edges();
  // images of the marking basis under f
  std::vector<Word> m_images;
  for (int e : nt) {
    EdgePath image_loop = map_path(g.generator_loop(e));
    m_images.push_back(g.word_of_path(image_loop));
  }
  // express each generator x_i in the marking basis, then substitute
  Endo marking_endo{g.marking_basis()};
  Endo inv = invert(marking_endo);
  Endo result;
  result.images.resize(n, Word::identity(n));
  for (int i = 1; i <= n; ++i) {
    Word y_expr = inv.images[i - 1];  // x_i in the y-alphabet
    Word img = Word::identity(n);
    for (Letter l : y_expr.letters()) {
      const Word& m = m_images[std::abs(l) - 1];
      img = img * (l > 0 ? m : m.inverse());
    }
    result.images[i - 1] = img;
  }
  return result;
}

Circuit circuit_of(const CyclicWord& cls, const MarkedGraph& g) {
  if (cls.size() == 0)
    throw error(errc::empty_word, "trivial class has no circuit");
  Endo marking_endo{g.marking_basis()};
  Endo inv = invert(marking_endo);
  Word y = inv.apply(cls.word());
  return Circuit(g, g.expand_basis_word(y));
}

long long bcc(const MarkedGraph& g, const std::vector<EdgePath>& images) {
  (void)g;
  long long c = 0;
  for (const EdgePath& p : images) c += (long long)p.size();
  return c;
}

}  // namespace ctinv
