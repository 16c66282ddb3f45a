#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctinv/graphmap.hpp"

namespace ctinv {

enum class EdgeClass { Fixed, Linear, Higher };

inline const char* edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Fixed: return "fixed";
    case EdgeClass::Linear: return "linear";
    case EdgeClass::Higher: return "higher";
  }
  return "?";
}

// A filtered graph self-map with per-edge classification, twist paths and
// linear degrees, as read from a .ct file.
class CTData {
 public:
  MarkedGraph graph;
  std::vector<EdgePath> edge_images;
  std::vector<int> vertex_map;

  std::vector<int> filtration;  // edge indices, lowest first
  std::vector<EdgeClass> edge_class;
  std::vector<EdgePath> twist_paths;  // closed based paths, oriented as input
  std::vector<int> twist_of;          // per edge: twist index or -1
  std::vector<int> degree_of;         // per edge: degree, 0 unless linear

  const GraphSelfMap& self_map() const;

  int filtration_position(int edge) const;
  // u with f(E) = E.u; empty for fixed edges.
  EdgePath tail(int edge) const;

  std::vector<int> fixed_edges() const;
  std::vector<int> linear_edges() const;   // lin(f), filtration order
  std::vector<int> higher_edges() const;   // E_f, filtration order

  std::string edge_name(int e) const { return std::string(1, graph.edge(e).name); }

 private:
  mutable std::optional<GraphSelfMap> map_;
};

CTData parse_ct(const std::string& text);
CTData load_ct(const std::string& path);

// Checkable axioms; returns human-readable violations, empty when valid.
std::vector<std::string> validate_ct(const CTData& c);

struct EdgeClassification {
  std::vector<int> fixed, lin, higher;
};

// Partition derived from the map itself; throws ClassificationError when it
// disagrees with the declared classes.
EdgeClassification classify_edges(const CTData& c);

}  // namespace ctinv
