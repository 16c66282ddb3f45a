#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctinv/ct.hpp"
#include "ctinv/iterset.hpp"
#include "ctinv/splitting.hpp"

namespace ctinv {

// Finitely determined invariant rays: eigenrays R_E, linear tails E w^{+-oo},
// and periodic rays period^oo.
struct RayDescriptor {
  enum class Kind { Eigen, LinearTail, Periodic };
  Kind kind = Kind::Eigen;
  int edge = -1;    // Eigen / LinearTail
  int sign = 0;     // LinearTail: E w^{sign oo}
  EdgePath period;  // Periodic: the repeating closed path, as the ray reads it

  static RayDescriptor eigen(int e) { return {Kind::Eigen, e, 0, {}}; }
  static RayDescriptor linear_tail(int e, int s) {
    return {Kind::LinearTail, e, s, {}};
  }
  static RayDescriptor periodic(EdgePath p) {
    return {Kind::Periodic, -1, 0, std::move(p)};
  }

  bool operator==(const RayDescriptor&) const = default;
  auto operator<=>(const RayDescriptor&) const = default;
};

// end of the ray periodic (linear tails and periodic rays) or an element of
// R(phi) (eigenrays)
bool ray_end_periodic(const RayDescriptor& r);
int ray_start_vertex(const CTData& c, const RayDescriptor& r);
EdgePath ray_prefix(const CTData& c, const RayDescriptor& r, long long depth);
std::string ray_str(const CTData& c, const RayDescriptor& r);

// A line in canonical reduced form: either periodic (a circuit) or
// (R^-)^{-1} rho R^+ with rho a Nielsen path carrying no absorbable period
// copies at periodic junctions.
struct LineDescriptor {
  bool periodic = false;
  Circuit axis;  // periodic case, oriented
  RayDescriptor left, right;
  EdgePath rho;

  bool operator==(const LineDescriptor&) const = default;
  auto operator<=>(const LineDescriptor&) const = default;
};

LineDescriptor make_line(const CTData& c, RayDescriptor left, EdgePath rho,
                         RayDescriptor right);
LineDescriptor make_periodic_line(const CTData& c, const EdgePath& period);
LineDescriptor line_inverse(const CTData& c, const LineDescriptor& l);
std::string line_str(const CTData& c, const LineDescriptor& l);
// central window: depth steps of each ray around rho
EdgePath line_window(const CTData& c, const LineDescriptor& l, long long depth);
// f-invariance witnessed on finite windows
bool line_f_invariant(const CTData& c, const LineDescriptor& l,
                      long long depth);
// immersion-reading check: the middle is a concatenation of fixed edges and
// iNPs, and the two tails are eigenrays, linear tails or twist-periodic rays
bool line_lifts_to_eigengraph(const CTData& c, const LineDescriptor& l);

struct FInfinity {
  EdgePath rho;  // maximal initial Nielsen prefix
  RayDescriptor ray;
};
// Limit ray of a growing completely split path. Throws NotGrowing.
FInfinity f_infinity(const CTData& c, const Splitter& sp, const Terms& sigma);

// Omega(r) for the ray of a higher-order edge.
std::set<LineDescriptor> limit_lines(const CTData& c, int higher_edge);
std::set<LineDescriptor> acc_np(const CTData& c, int higher_edge);
std::set<LineDescriptor> acc_np_all(const CTData& c);

// ---- eigengraph -------------------------------------------------------------

struct EigengraphComponent {
  enum class Flag { Contractible, InfiniteCyclic, Large };
  std::vector<int> vertices;
  std::vector<int> fixed_edges;
  std::vector<int> lollipops;  // linear edges attached here
  std::vector<int> rays;       // higher edges attached here
  int base_vertex = -1;
  int core_rank = 0;
  Flag flag = Flag::Contractible;
  std::vector<Word> fix_generators;  // pi_1 of the core, based at base_vertex
  SubgroupConjClass fix_class;
};

struct Eigengraph {
  std::vector<EigengraphComponent> components;
  std::vector<int> comp_of_vertex;
  const EigengraphComponent& component_of(int vertex) const {
    return components[comp_of_vertex[vertex]];
  }
};

Eigengraph eigengraph(const CTData& c);
// eigengraph of the restriction of f to an invariant subgraph
Eigengraph eigengraph_restricted(const CTData& c,
                                 const std::vector<int>& subgraph_edges);

// ---- axes, strong axes, twist coordinates ------------------------------------

// unoriented axes A(phi), canonical representatives
std::vector<CyclicWord> axes(const CTData& c);
std::vector<CyclicWord> axes_oriented(const CTData& c);
Word twist_word(const CTData& c, int twist_index);

struct StrongAxis {
  CyclicWord axis;    // oriented class
  int twist = -1;     // twist family index
  int orientation = 1;  // +1 iff axis = [w]
  int site_edge = -1;   // -1 for the base site, else the linear edge
  int degree = 0;       // orientation-adjusted degree
};

std::vector<StrongAxis> strong_axes(const CTData& c, const CyclicWord& axis);
int twist_coordinate(const StrongAxis& a, const StrongAxis& b);

// ---- partial order on rays ----------------------------------------------------

struct RayOrder {
  std::vector<int> higher;  // edge ids, filtration order
  std::vector<std::vector<bool>> less;
  bool is_less(int e1, int e2) const;
  bool covers(int e1, int e2) const;  // e1 <_c e2
  std::vector<std::pair<int, int>> relation_pairs() const;
};
RayOrder ray_partial_order(const CTData& c);

// ---- special chains ------------------------------------------------------------

struct FFSComponent {
  std::vector<int> core_edges;
  std::vector<int> vertices;
  int base_vertex = -1;
  int rank = 0;
  std::vector<Word> generators;
  SubgroupConjClass cls;
};

struct FFS {
  std::vector<int> subgraph_edges;
  std::vector<int> core_edges;
  std::vector<FFSComponent> components;
  std::vector<int> rank_profile() const;
  bool same_ffs(const FFS& o) const;  // multiset of component class keys
};

FFS ffs_of_subgraph(const CTData& c, std::vector<int> edges);
FFS linear_ffs(const CTData& c);

struct SpecialChain {
  std::vector<int> order;     // chosen total order on the higher edges
  std::vector<FFS> elements;  // distinct FFSs, first realizes K_0
  struct Step {
    int d_edge = -1;                 // the edge whose addition extended the FFS
    std::vector<int> new_core_edges;
  };
  std::vector<Step> steps;  // elements.size() - 1 of them
};

SpecialChain special_chain(const CTData& c, const std::vector<int>& total_order);
std::vector<int> default_chain_order(const CTData& c);
bool is_special_ffs(const CTData& c, const std::vector<int>& subgraph_edges);

enum class ArcType { H, HH, LH };
enum class ExtFlag { Contractible, InfiniteCyclic, Large };
const char* arc_type_name(ArcType t);
const char* ext_flag_name(ExtFlag f);

struct ExtensionData {
  ArcType arc;
  ExtFlag flag;
  int d_edge;
  int c_edge;  // -1 unless HH / LH
  std::vector<int> new_rays;
};
ExtensionData extension_type(const CTData& c, const SpecialChain& chain,
                             int step);

struct AddedLines {
  bool algebraic_only = false;          // large case
  std::vector<LineDescriptor> lines;    // otherwise
  std::optional<AtomRef> pair;          // large: [Fix(Phi), F_c(r+)]
};
AddedLines added_lines(const CTData& c, const SpecialChain& chain, int step);

// ---- algebraic data -------------------------------------------------------------

enum class LineType { PP, PNP, NPP, NPNP };
const char* line_type_name(LineType t);

struct AlgebraicLine {
  LineType type;
  AtomRef atom;
};
AlgebraicLine algebraic_line(const CTData& c, const LineDescriptor& l,
                             const SpecialChain& chain);

// Fix(phi) as a multiset of subgroup classes (one per eigengraph component).
std::vector<AtomRef> fix_atoms(const CTData& c);
// Algebraic strong axes [Fix(Phi), a] for strong axes with large Fix.
std::vector<AtomRef> large_strong_axis_atoms(const CTData& c);

IteratedSet assemble_Ic(const CTData& c, const SpecialChain& chain);

}  // namespace ctinv
