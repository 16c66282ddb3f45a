#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctinv/endo.hpp"
#include "ctinv/words.hpp"

namespace ctinv {

// Steps of an edge path are signed 1-based edge indices: +(i+1) traverses
// edge i forward, -(i+1) traverses it reversed.
using Step = int;
using EdgePath = std::vector<Step>;

inline Step step_of_edge(int edge_index) { return edge_index + 1; }
inline int edge_of_step(Step s) { return std::abs(s) - 1; }
inline bool step_forward(Step s) { return s > 0; }
inline Step reverse_step(Step s) { return -s; }

EdgePath reverse_path(const EdgePath& p);

struct GraphEdge {
  char name;
  int src, dst;
};

// A finite connected graph with a spanning tree and a marking word (in F_n)
// for each non-tree edge.
class MarkedGraph {
 public:
  MarkedGraph() : rank_(0) {}
  MarkedGraph(int rank, std::vector<std::string> vertex_names,
              std::vector<GraphEdge> edges, std::vector<int> tree_edges,
              std::map<int, Word> marking);

  int rank() const { return rank_; }
  int vertex_count() const { return (int)vertex_names_.size(); }
  int edge_count() const { return (int)edges_.size(); }
  const GraphEdge& edge(int i) const { return edges_[i]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::vector<int>& tree_edges() const { return tree_edges_; }
  const std::map<int, Word>& marking() const { return marking_; }
  bool in_tree(int edge_index) const;

  int src_of(Step s) const;
  int dst_of(Step s) const;

  int edge_by_name(char name) const;  // -1 if absent
  EdgePath parse_path(const std::string& text) const;
  std::string path_str(const EdgePath& p) const;

  // Tight path within the tree from u to v.
  EdgePath tree_path(int u, int v) const;
  // Loop at vertex 0 representing a non-tree edge (tree path, edge, tree
  // path back).
  EdgePath generator_loop(int edge_index) const;

  // Image in F_n of a closed path under the marking (non-tree crossings).
  Word word_of_path(const EdgePath& p) const;

  // Marking words listed in non-tree edge order; a basis of F_n when the
  // marking is valid.
  std::vector<Word> marking_basis() const;
  std::vector<int> nontree_edges() const;

  // Word in the marking basis alphabet -> edge path (loops substituted).
  EdgePath expand_basis_word(const Word& y_word) const;

 private:
  int rank_;
  std::vector<std::string> vertex_names_;
  std::vector<GraphEdge> edges_;
  std::vector<int> tree_edges_;
  std::map<int, Word> marking_;
};

// Free reduction of an edge path rel endpoints. Throws BrokenPath when
// consecutive steps do not compose.
EdgePath tighten(const MarkedGraph& g, const EdgePath& p);

// A cyclically tight closed path stored in a canonical rotation.
class Circuit {
 public:
  Circuit() = default;
  Circuit(const MarkedGraph& g, const EdgePath& closed);

  const EdgePath& steps() const { return steps_; }
  int size() const { return (int)steps_.size(); }
  bool trivial() const { return steps_.empty(); }
  Circuit reversed(const MarkedGraph& g) const;

  bool operator==(const Circuit& o) const { return steps_ == o.steps_; }
  auto operator<=>(const Circuit& o) const = default;

 private:
  EdgePath steps_;
};

class GraphSelfMap {
 public:
  GraphSelfMap() = default;
  GraphSelfMap(const MarkedGraph* g, std::vector<int> vertex_map,
               std::vector<EdgePath> edge_images);

  const MarkedGraph& graph() const { return *graph_; }
  int vertex_image(int v) const { return vertex_map_[v]; }
  const EdgePath& edge_image(int e) const { return edge_images_[e]; }

  EdgePath map_path(const EdgePath& p) const;   // f_#
  Circuit map_circuit(const Circuit& c) const;  // f_# on circuits
  Word map_word(const Word& w) const;           // induced map on F_n

  // |f_#^k(edge)|.
  long long iterate_length(int edge_index, int k) const;

  // Outer automorphism induced on F_n via the marking.
  Endo induced_outer() const;

 private:
  const MarkedGraph* graph_ = nullptr;
  std::vector<int> vertex_map_;
  std::vector<EdgePath> edge_images_;
};

// The unique tight circuit representing a conjugacy class under the marking.
// Throws EmptyWord on the trivial class.
Circuit circuit_of(const CyclicWord& cls, const MarkedGraph& g);

// Certified bounded-cancellation bound for a homotopy equivalence given by
// edge images: the sum of image lengths.
long long bcc(const MarkedGraph& g, const std::vector<EdgePath>& images);

}  // namespace ctinv
