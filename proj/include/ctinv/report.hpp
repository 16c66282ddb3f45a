#pragma once

#include <string>
#include <vector>

#include "ctinv/ct.hpp"
#include "ctinv/invariants.hpp"

namespace ctinv {

struct Report {
  struct Section {
    std::string name;
    std::vector<std::string> lines;
  };
  std::vector<Section> sections;

  std::string text() const;
  std::string json() const;
};

// Full invariant report: classification, growth, eigengraph, axes and twist
// coordinates, partial order, limit lines, chain with extension data and
// added lines, staples with m values, and the I_c digest.
Report invariants_report(const CTData& c, const std::vector<int>& chain_order,
                         long long ray_depth);

struct CompareResult {
  bool indistinguishable;
  std::string verdict;  // first distinguishing component, or "indistinguishable"
  std::vector<std::string> detail;
};
CompareResult compare_cts(const CTData& a, const std::vector<int>& order_a,
                          const CTData& b, const std::vector<int>& order_b);

// parse "c,d,e,q" against a CT's edge names; empty -> default order
std::vector<int> parse_chain_order(const CTData& c, const std::string& text);

}  // namespace ctinv
