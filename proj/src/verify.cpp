#include "ctinv/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ctinv {

OuterAuto ct_outer(const CTData& c) {
  return OuterAuto(c.self_map().induced_outer());
}

std::string strong_axis_key(const CTData& c, const StrongAxis& s) {
  std::ostringstream os;
  os << s.axis.str() << "@";
  os << (s.site_edge < 0 ? std::string("base") : c.edge_name(s.site_edge));
  return os.str();
}

bool recognition_check(
    const CTData& c1, const CTData& c2,
    const std::map<std::string, std::string>& correspondence) {
  auto collect = [](const CTData& c) {
    std::vector<StrongAxis> out;
    for (const CyclicWord& ax : axes_oriented(c))
      for (const StrongAxis& s : strong_axes(c, ax)) out.push_back(s);
    return out;
  };
  std::vector<StrongAxis> s1 = collect(c1), s2 = collect(c2);
  std::map<std::string, const StrongAxis*> by1, by2;
  for (const StrongAxis& s : s1) by1[strong_axis_key(c1, s)] = &s;
  for (const StrongAxis& s : s2) by2[strong_axis_key(c2, s)] = &s;
  if (correspondence.size() != by1.size() || by1.size() != by2.size())
    throw error(errc::bad_correspondence,
                "correspondence must be a bijection of the strong-axis sets");
  std::set<std::string> hit;
  for (auto& [k, v] : correspondence) {
    if (!by1.count(k) || !by2.count(v) || !hit.insert(v).second)
      throw error(errc::bad_correspondence,
                  "correspondence must be a bijection of the strong-axis sets");
  }
  // tau is defined within an oriented axis; the correspondence must preserve
  // all defined coordinates
  for (auto& [ka, va] : correspondence)
    for (auto& [kb, vb] : correspondence) {
      const StrongAxis* a1 = by1[ka];
      const StrongAxis* b1 = by1[kb];
      if (a1->twist != b1->twist || a1->orientation != b1->orientation)
        continue;
      const StrongAxis* a2 = by2[va];
      const StrongAxis* b2 = by2[vb];
      if (a2->twist != b2->twist || a2->orientation != b2->orientation)
        return false;
      if (twist_coordinate(*a1, *b1) != twist_coordinate(*a2, *b2))
        return false;
    }
  return true;
}

namespace {

std::vector<Word> apply_all(const OuterAuto& theta,
                            const std::vector<Word>& gens) {
  std::vector<Word> out;
  for (const Word& w : gens) out.push_back(theta.apply(w));
  return out;
}

AtomRef apply_theta(const OuterAuto& theta, const AtomRef& a) {
  return a.mapped([&](const Word& w) { return theta.apply(w); });
}

bool ffs_theta_fixed(const CTData& c, const FFS& f, const OuterAuto& theta) {
  // the FFS as a multiset of subgroup classes must be fixed
  std::vector<std::string> before, after;
  for (const FFSComponent& fc : f.components) {
    before.push_back(fc.cls.key());
    after.push_back(SubgroupConjClass::from_generators(
                        apply_all(theta, fc.generators), c.graph.rank())
                        .key());
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  return before == after;
}

}  // namespace

XMembership x_membership(const CTData& c, const SpecialChain& chain,
                         const OuterAuto& theta) {
  XMembership out;
  int rank = c.graph.rank();

  // (1) each chain element fixed as an FFS
  out.chain_preserved = true;
  for (const FFS& f : chain.elements)
    if (!ffs_theta_fixed(c, f, theta)) out.chain_preserved = false;

  // (2) each factor class fixed individually
  out.factors_fixed = true;
  for (const FFS& f : chain.elements)
    for (const FFSComponent& fc : f.components) {
      SubgroupConjClass before(
          SubgroupConjClass::from_generators(fc.generators, rank));
      SubgroupConjClass after(SubgroupConjClass::from_generators(
          apply_all(theta, fc.generators), rank));
      if (!(before == after)) out.factors_fixed = false;
    }

  // (3) Fix classes fixed
  out.fix_classes_fixed = true;
  {
    Eigengraph eg = eigengraph(c);
    for (const EigengraphComponent& comp : eg.components) {
      SubgroupConjClass before = comp.fix_class;
      SubgroupConjClass after(SubgroupConjClass::from_generators(
          apply_all(theta, comp.fix_generators), rank));
      if (!(before == after)) out.fix_classes_fixed = false;
    }
  }

  // (4) added-line data fixed per extension
  out.added_lines_fixed = true;
  for (size_t s = 0; s < chain.steps.size(); ++s) {
    AddedLines al = added_lines(c, chain, (int)s);
    std::vector<AtomRef> atoms;
    if (al.algebraic_only)
      atoms.push_back(*al.pair);
    else
      for (const LineDescriptor& l : al.lines)
        atoms.push_back(algebraic_line(c, l, chain).atom);
    for (const AtomRef& a : atoms)
      if (!a.equals(apply_theta(theta, a))) out.added_lines_fixed = false;
  }

  // (5) H_c(L) fixed for all non-periodic limit lines; periodic limit lines
  // are the axes, covered by (6)
  out.limit_line_pairs_fixed = true;
  for (const LineDescriptor& l : acc_np_all(c)) {
    AtomRef a = algebraic_line(c, l, chain).atom;
    if (!a.equals(apply_theta(theta, a))) out.limit_line_pairs_fixed = false;
  }

  // (6) oriented axes fixed
  out.axes_fixed = true;
  for (const CyclicWord& ax : axes_oriented(c))
    if (!(theta.apply_class(ax) == ax)) out.axes_fixed = false;

  // (7) large algebraic strong axes fixed
  out.strong_axes_fixed = true;
  for (const AtomRef& a : large_strong_axis_atoms(c))
    if (!a.equals(apply_theta(theta, a))) out.strong_axes_fixed = false;

  return out;
}

}  // namespace ctinv
