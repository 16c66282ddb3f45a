#pragma once

#include <set>
#include <vector>

#include "ctinv/invariants.hpp"

namespace ctinv {

// Coarsened complete splitting of an eigenray prefix:
// R_E = E . rho[0] . sigma[0] . rho[1] . sigma[1] ...
// (sigma[k] is the paper's sigma_{k+1}).
struct CoarseRay {
  int edge = -1;
  std::vector<Terms> rho;
  std::vector<SplitTerm> sigma;
};

class RayAnalysis {
 public:
  RayAnalysis(const CTData& c, int higher_edge);

  const CTData& ct() const { return *ct_; }
  const Splitter& splitter() const { return sp_; }
  int edge() const { return edge_; }

  // make sure sigma[0..count-1] and rho[0..count] are materialized
  void ensure(int count);
  int sigma_count() const { return (int)ray_.sigma.size(); }
  const SplitTerm& sigma(int k) { ensure(k + 2); return ray_.sigma[k]; }
  const Terms& rho(int k) { ensure(k + 2); return ray_.rho[k]; }

  // visible line l_k = (f^oo(rev sigma[k-1]))^-1 rho[k] f^oo(sigma[k]), k >= 1
  LineDescriptor visible_line(int k);

  // j with f_#(l~_k) = l~_j (image of rho[k] lands in rho[j])
  int forward_index(int k);

  // index p of the Nielsen block containing the end of E.u
  int window_end();

  bool is_topmost_line(int k);
  int translation_number();

 private:
  const CTData* ct_;
  Splitter sp_;
  int edge_;
  CoarseRay ray_;
  long long expanded_len_ = 0;
  RayOrder order_;
};

struct VisibleLine {
  int index;
  LineDescriptor line;
};
std::vector<VisibleLine> visible_lines(const CTData& c, int higher_edge,
                                       int count);

int translation_number(const CTData& c, int higher_edge);

enum class StapleKind { QuasiExceptional, Exceptional, LinearLeft, LinearRight };
const char* staple_kind_name(StapleKind k);

struct StaplePair {
  LineDescriptor l1, l2;
  StapleKind kind;
  int twist;     // family of the common axis
  int ray_edge;  // ray in which this representative occurs
  int index;     // visible index of the occurrence
};

// Orbit representatives of visible staple pairs occurring in r with index at
// most B(r).
std::vector<StaplePair> staple_pairs(const CTData& c, int higher_edge);

// Staples S(phi): non-periodic limit lines with a periodic end.
std::vector<LineDescriptor> staples_global(const CTData& c);
// S_2(phi) as a set of ordered line pairs (all rays, deduplicated).
std::vector<StaplePair> staple_pairs_global(const CTData& c);

// m_b(phi^power) for a staple pair given by an occurrence.
int m_of_phi(const CTData& c, const StaplePair& b, int power = 1);

// partition of S_2 generated by co-occurrence in a ray
std::vector<std::vector<int>> equivalence_classes(
    const CTData& c, const std::vector<StaplePair>& pairs);

}  // namespace ctinv
