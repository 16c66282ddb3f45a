#include "ctinv/ct.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ctinv/splitting.hpp"
#include "ctinv/stallings.hpp"

namespace ctinv {

const GraphSelfMap& CTData::self_map() const {
  // rebuild after copies: the cached map points at the owning graph
  if (!map_ || &map_->graph() != &graph)
    map_.emplace(&graph, vertex_map, edge_images);
  return *map_;
}

int CTData::filtration_position(int edge) const {
  for (size_t i = 0; i < filtration.size(); ++i)
    if (filtration[i] == edge) return (int)i;
  throw error(errc::internal, "edge missing from filtration");
}

EdgePath CTData::tail(int edge) const {
  const EdgePath& im = edge_images[edge];
  if (im.empty() || im.front() != step_of_edge(edge))
    throw error(errc::internal, "edge image does not start with the edge");
  return EdgePath(im.begin() + 1, im.end());
}

std::vector<int> CTData::fixed_edges() const {
  std::vector<int> out;
  for (int e : filtration)
    if (edge_class[e] == EdgeClass::Fixed) out.push_back(e);
  return out;
}
std::vector<int> CTData::linear_edges() const {
  std::vector<int> out;
  for (int e : filtration)
    if (edge_class[e] == EdgeClass::Linear) out.push_back(e);
  return out;
}
std::vector<int> CTData::higher_edges() const {
  std::vector<int> out;
  for (int e : filtration)
    if (edge_class[e] == EdgeClass::Higher) out.push_back(e);
  return out;
}

// ---- parsing --------------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::pair<std::string, std::string> split_kv(const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos) return {tok, ""};
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace

CTData parse_ct(const std::string& text) {
  CTData ct;
  int rank = -1;
  std::vector<std::string> vnames;
  struct RawEdge {
    char name;
    std::string src, dst, cls, image, twist;
    int degree = 0;
    bool has_degree = false;
  };
  std::vector<RawEdge> raw;
  std::vector<char> order_names;
  std::vector<char> tree_names;
  std::map<char, std::string> marking_words;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw error(errc::parse_error,
                  "line " + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "rank") {
      if (toks.size() != 2) fail("expected: rank N");
      rank = std::atoi(toks[1].c_str());
      if (rank < 1 || rank > 26) fail("rank out of range");
    } else if (toks[0] == "vertices") {
      vnames.assign(toks.begin() + 1, toks.end());
    } else if (toks[0] == "edge") {
      if (toks.size() < 5) fail("expected: edge name src dst class=... image=...");
      RawEdge e;
      if (toks[1].size() != 1 || toks[1][0] < 'a' || toks[1][0] > 'z')
        fail("edge name must be a single lowercase letter");
      e.name = toks[1][0];
      e.src = toks[2];
      e.dst = toks[3];
      for (size_t i = 4; i < toks.size(); ++i) {
        auto [k, v] = split_kv(toks[i]);
        if (k == "class")
          e.cls = v;
        else if (k == "image")
          e.image = v;
        else if (k == "twist")
          e.twist = v;
        else if (k == "degree") {
          e.degree = std::atoi(v.c_str());
          e.has_degree = true;
        } else
          fail("unknown attribute: " + k);
      }
      if (e.cls.empty() || e.image.empty()) fail("edge needs class= and image=");
      raw.push_back(e);
    } else if (toks[0] == "order") {
      for (size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].size() != 1) fail("order entries are edge names");
        order_names.push_back(toks[i][0]);
      }
    } else if (toks[0] == "marking") {
      size_t i = 1;
      for (; i < toks.size(); ++i) {
        auto [k, v] = split_kv(toks[i]);
        if (k == "tree") {
          std::string cur;
          for (char ch : v + ",") {
            if (ch == ',') {
              if (cur.size() == 1) tree_names.push_back(cur[0]);
              else if (!cur.empty()) fail("bad tree edge: " + cur);
              cur.clear();
            } else
              cur += ch;
          }
        } else if (k == "words:" || k == "words") {
          // remaining tokens are edge=word
        } else if (!v.empty() && k.size() == 1) {
          marking_words[k[0]] = v;
        } else
          fail("bad marking token: " + toks[i]);
      }
    } else {
      fail("unknown directive: " + toks[0]);
    }
  }
  if (rank < 1) throw error(errc::parse_error, "missing rank");
  if (vnames.empty()) throw error(errc::parse_error, "missing vertices");

  auto vertex_index = [&](const std::string& name) {
    for (size_t i = 0; i < vnames.size(); ++i)
      if (vnames[i] == name) return (int)i;
    throw error(errc::parse_error, "unknown vertex: " + name);
  };

  std::vector<GraphEdge> edges;
  for (const RawEdge& e : raw)
    edges.push_back({e.name, vertex_index(e.src), vertex_index(e.dst)});

  auto edge_index = [&](char name) {
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i].name == name) return (int)i;
    throw error(errc::parse_error, std::string("unknown edge: ") + name);
  };

  std::vector<int> tree;
  for (char c : tree_names) tree.push_back(edge_index(c));

  // marking words in F_rank
  std::map<int, Word> marking;
  for (auto& [name, wtext] : marking_words)
    marking[edge_index(name)] = parse_word(wtext, rank);

  ct.graph = MarkedGraph(rank, vnames, edges, tree, marking);

  // images and classes
  ct.edge_images.resize(edges.size());
  ct.edge_class.resize(edges.size(), EdgeClass::Fixed);
  ct.twist_of.assign(edges.size(), -1);
  ct.degree_of.assign(edges.size(), 0);
  std::vector<EdgePath> declared_twists;
  for (size_t i = 0; i < raw.size(); ++i) {
    const RawEdge& e = raw[i];
    ct.edge_images[i] = ct.graph.parse_path(e.image);
    if (e.cls == "fixed")
      ct.edge_class[i] = EdgeClass::Fixed;
    else if (e.cls == "linear")
      ct.edge_class[i] = EdgeClass::Linear;
    else if (e.cls == "higher")
      ct.edge_class[i] = EdgeClass::Higher;
    else
      throw error(errc::parse_error, "bad class: " + e.cls);
    if (ct.edge_class[i] == EdgeClass::Linear) {
      if (e.twist.empty() || !e.has_degree)
        throw error(errc::parse_error,
                    std::string("linear edge '") + e.name +
                        "' needs twist= and degree=");
      EdgePath tw = ct.graph.parse_path(e.twist);
      int found = -1;
      for (size_t t = 0; t < declared_twists.size(); ++t)
        if (declared_twists[t] == tw) found = (int)t;
      if (found < 0) {
        declared_twists.push_back(tw);
        found = (int)declared_twists.size() - 1;
      }
      ct.twist_of[i] = found;
      ct.degree_of[i] = e.degree;
    }
  }
  ct.twist_paths = declared_twists;

  // filtration
  if (order_names.empty()) throw error(errc::parse_error, "missing order");
  for (char c : order_names) ct.filtration.push_back(edge_index(c));
  if (ct.filtration.size() != edges.size())
    throw error(errc::parse_error, "order must list every edge once");

  // vertex map from edge images
  ct.vertex_map.assign(vnames.size(), -1);
  for (size_t i = 0; i < edges.size(); ++i) {
    const EdgePath& im = ct.edge_images[i];
    if (im.empty()) continue;
    int s = ct.graph.src_of(im.front());
    int d = ct.graph.dst_of(im.back());
    if (ct.vertex_map[edges[i].src] < 0) ct.vertex_map[edges[i].src] = s;
    if (ct.vertex_map[edges[i].dst] < 0) ct.vertex_map[edges[i].dst] = d;
  }
  for (int& v : ct.vertex_map)
    if (v < 0) v = 0;
  return ct;
}

CTData load_ct(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error(errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_ct(buf.str());
}

// ---- validation -----------------------------------------------------------

namespace {

bool path_is_power_of(const MarkedGraph& g, const EdgePath& p,
                      const EdgePath& w, int* power_out) {
  // p == w^d or (w^-1)^d exactly, d >= 1; also accepts d = 0 (empty p).
  if (p.empty()) {
    *power_out = 0;
    return true;
  }
  if (w.empty()) return false;
  auto try_dir = [&](const EdgePath& unit, int sign) {
    if (p.size() % unit.size() != 0) return false;
    size_t copies = p.size() / unit.size();
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] != unit[i % unit.size()]) return false;
    *power_out = sign * (int)copies;
    return true;
  };
  if (try_dir(w, +1)) return true;
  EdgePath wr = reverse_path(w);
  (void)g;
  return try_dir(wr, -1);
}

}  // namespace

std::vector<std::string> validate_ct(const CTData& c) {
  std::vector<std::string> v;
  const MarkedGraph& g = c.graph;
  int n = g.rank();

  // graph shape
  {
    std::vector<int> deg(g.vertex_count(), 0);
    for (const GraphEdge& e : g.edges()) {
      ++deg[e.src];
      ++deg[e.dst];
    }
    for (int i = 0; i < g.vertex_count(); ++i)
      if (deg[i] <= 1)
        v.push_back("vertex " + g.vertex_name(i) + " has valence <= 1");
    if (g.edge_count() - g.vertex_count() + 1 != n)
      v.push_back("rank mismatch: edges - vertices + 1 != rank");
    if ((int)g.tree_edges().size() != g.vertex_count() - 1)
      v.push_back("marking tree is not a spanning tree (wrong size)");
  }

  // marking forms a basis
  {
    std::vector<Word> mb = g.marking_basis();
    if ((int)mb.size() != n) {
      v.push_back("marking must assign a word to every non-tree edge");
    } else {
      SubgroupGraph sg = SubgroupGraph::fold(mb, n);
      if (sg.subgroup_rank() != n)
        v.push_back("marking words do not form a basis of F_n");
    }
  }

  // map structure
  try {
    c.self_map();
  } catch (const error& e) {
    v.push_back(std::string("map: ") + e.what());
    return v;  // nothing below is meaningful
  }

  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgePath& im = c.edge_images[e];
    std::string name = c.edge_name(e);
    EdgePath tight;
    try {
      tight = tighten(g, im);
    } catch (const error& err) {
      v.push_back("image of " + name + " is not a path: " + err.what());
      continue;
    }
    if (tight != im) v.push_back("image of " + name + " is not tight");
    if (im.empty() || im.front() != step_of_edge(e)) {
      v.push_back("image of " + name + " does not start with " + name);
      continue;
    }
    EdgePath u(im.begin() + 1, im.end());
    if (!u.empty() &&
        (g.src_of(u.front()) != g.dst_of(im.front()) ||
         g.dst_of(u.back()) != g.dst_of(im.front())))
      v.push_back("tail of " + name + " is not a closed path at its endpoint");
    // tail lives strictly below the edge
    int pos = c.filtration_position(e);
    for (Step s : u)
      if (c.filtration_position(edge_of_step(s)) >= pos) {
        v.push_back("tail of " + name + " is not contained in G_{i-1}");
        break;
      }
    // classification consistency
    EdgeClass declared = c.edge_class[e];
    if (u.empty() && declared != EdgeClass::Fixed)
      v.push_back(name + " has trivial tail but is not declared fixed");
    if (!u.empty() && declared == EdgeClass::Fixed)
      v.push_back(name + " is declared fixed but has non-trivial image tail");
    if (declared == EdgeClass::Linear) {
      int tw = c.twist_of[e];
      int d = 0;
      if (tw < 0 || !path_is_power_of(g, u, c.twist_paths[tw], &d))
        v.push_back("tail of linear edge " + name +
                    " is not a power of its twist path");
      else if (d != c.degree_of[e])
        v.push_back("declared degree of " + name + " is " +
                    std::to_string(c.degree_of[e]) + " but tail is power " +
                    std::to_string(d));
      if (c.degree_of[e] == 0)
        v.push_back("linear edge " + name + " must have degree != 0");
    }
    if (declared == EdgeClass::Higher && !u.empty()) {
      // a Nielsen tail would make the edge fixed or linear
      EdgePath fu = c.self_map().map_path(u);
      if (fu == u)
        v.push_back("edge " + name +
                    " is declared higher but its tail is a Nielsen path");
    }
  }

  // twist paths
  for (size_t t = 0; t < c.twist_paths.size(); ++t) {
    const EdgePath& w = c.twist_paths[t];
    std::string tn = g.path_str(w);
    if (w.empty() || g.src_of(w.front()) != g.dst_of(w.back())) {
      v.push_back("twist path " + tn + " is not a closed path");
      continue;
    }
    EdgePath fw = c.self_map().map_path(w);
    if (fw != w) v.push_back("twist path " + tn + " is not a Nielsen path");
    // root-free
    for (size_t p = 1; p < w.size(); ++p) {
      if (w.size() % p != 0) continue;
      bool periodic = true;
      for (size_t i = p; i < w.size(); ++i)
        if (w[i] != w[i - p]) periodic = false;
      if (periodic) {
        v.push_back("twist path " + tn + " is a proper power");
        break;
      }
    }
    for (size_t t2 = t + 1; t2 < c.twist_paths.size(); ++t2) {
      Circuit c1(g, w), c2(g, c.twist_paths[t2]);
      if (c1 == c2 || c1 == c2.reversed(g))
        v.push_back("twist paths " + tn + " and " +
                    g.path_str(c.twist_paths[t2]) +
                    " determine the same unoriented circuit");
    }
  }

  // distinct degrees within a linear family
  for (size_t t = 0; t < c.twist_paths.size(); ++t) {
    std::set<int> degs;
    for (int e : c.linear_edges()) {
      if (c.twist_of[e] != (int)t) continue;
      if (!degs.insert(c.degree_of[e]).second)
        v.push_back("two edges in the linear family of " +
                    g.path_str(c.twist_paths[t]) + " share degree " +
                    std::to_string(c.degree_of[e]));
    }
  }

  // polynomial growth sanity
  if (v.empty()) {
    for (int e = 0; e < g.edge_count(); ++e) {
      try {
        growth_polynomial_edge(c, e);
      } catch (const error&) {
        v.push_back("edge " + c.edge_name(e) +
                    " does not exhibit polynomial growth");
      }
    }
  }
  return v;
}

EdgeClassification classify_edges(const CTData& c) {
  auto violations = validate_ct(c);
  if (!violations.empty())
    throw error(errc::classification_error,
                "invalid CT: " + violations.front());
  EdgeClassification out;
  for (int e : c.filtration) {
    switch (c.edge_class[e]) {
      case EdgeClass::Fixed: out.fixed.push_back(e); break;
      case EdgeClass::Linear: out.lin.push_back(e); break;
      case EdgeClass::Higher: out.higher.push_back(e); break;
    }
  }
  return out;
}

}  // namespace ctinv
