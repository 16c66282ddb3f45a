#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctinv/invariants.hpp"
#include "ctinv/outerauto.hpp"

namespace ctinv {

// Outer automorphism induced by a CT via its marking.
OuterAuto ct_outer(const CTData& c);

// Identification key for a strong axis within one CT.
std::string strong_axis_key(const CTData& c, const StrongAxis& s);

// Twist-coordinate comparison under a caller-supplied bijection of strong
// axes (keys of c1-axes to keys of c2-axes). Throws BadCorrespondence when
// the map is not a bijection between the two strong-axis sets.
bool recognition_check(const CTData& c1, const CTData& c2,
                       const std::map<std::string, std::string>& correspondence);

struct XMembership {
  bool chain_preserved = false;        // (1)
  bool factors_fixed = false;          // (2)
  bool fix_classes_fixed = false;      // (3)
  bool added_lines_fixed = false;      // (4)
  bool limit_line_pairs_fixed = false; // (5)
  bool axes_fixed = false;             // (6)
  bool strong_axes_fixed = false;      // (7)
  bool all() const {
    return chain_preserved && factors_fixed && fix_classes_fixed &&
           added_lines_fixed && limit_line_pairs_fixed && axes_fixed &&
           strong_axes_fixed;
  }
};

XMembership x_membership(const CTData& c, const SpecialChain& chain,
                         const OuterAuto& theta);

}  // namespace ctinv
