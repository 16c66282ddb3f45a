#include "ctinv/report.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "ctinv/staples.hpp"
#include "ctinv/whitehead.hpp"

namespace ctinv {

std::string Report::text() const {
  std::ostringstream os;
  for (const Section& s : sections) {
    os << "[" << s.name << "]\n";
    for (const std::string& l : s.lines) os << l << "\n";
    os << "\n";
  }
  return os.str();
}

std::string Report::json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const Section& s : sections) {
    nlohmann::json sec;
    sec["name"] = s.name;
    sec["lines"] = s.lines;
    j.push_back(sec);
  }
  return j.dump(2) + "\n";
}

std::vector<int> parse_chain_order(const CTData& c, const std::string& text) {
  if (text.empty()) return default_chain_order(c);
  std::vector<int> out;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',' || ch == ' ') {
      if (cur.size() == 1) {
        int e = c.graph.edge_by_name(cur[0]);
        if (e < 0)
          throw error(errc::parse_error, "unknown edge in chain: " + cur);
        out.push_back(e);
      } else if (!cur.empty()) {
        throw error(errc::parse_error, "bad chain entry: " + cur);
      }
      cur.clear();
    } else
      cur += ch;
  }
  return out;
}

namespace {

std::string names_of(const CTData& c, const std::vector<int>& edges) {
  std::string s;
  for (int e : edges) {
    if (!s.empty()) s += " ";
    s += c.edge_name(e);
  }
  return s.empty() ? "-" : s;
}

std::string fnv_digest(const std::string& data) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

Report invariants_report(const CTData& c, const std::vector<int>& chain_order,
                         long long ray_depth) {
  Report r;
  const MarkedGraph& g = c.graph;

  {
    Report::Section s{"classification", {}};
    EdgeClassification cls = classify_edges(c);
    s.lines.push_back("fixed: " + names_of(c, cls.fixed));
    s.lines.push_back("linear: " + names_of(c, cls.lin));
    s.lines.push_back("higher: " + names_of(c, cls.higher));
    for (int e : cls.lin)
      s.lines.push_back("twist(" + c.edge_name(e) + ") = " +
                        g.path_str(c.twist_paths[c.twist_of[e]]) +
                        ", degree " + std::to_string(c.degree_of[e]));
    r.sections.push_back(s);
  }
  {
    Report::Section s{"growth", {}};
    for (int e : c.filtration) {
      GrowthPoly p = growth_polynomial_edge(c, e);
      s.lines.push_back(c.edge_name(e) + ": " + p.str() +
                        "  (from k >= " + std::to_string(p.k0) + ")");
    }
    s.lines.push_back("stabilization constant M = " +
                      std::to_string(stabilization_constant(c)));
    r.sections.push_back(s);
  }
  {
    Report::Section s{"eigengraph", {}};
    Eigengraph eg = eigengraph(c);
    for (size_t i = 0; i < eg.components.size(); ++i) {
      const EigengraphComponent& comp = eg.components[i];
      std::string flag = comp.flag == EigengraphComponent::Flag::Contractible
                             ? "contractible"
                             : comp.flag ==
                                       EigengraphComponent::Flag::InfiniteCyclic
                                   ? "infinite-cyclic"
                                   : "large";
      std::string verts;
      for (int v : comp.vertices) verts += g.vertex_name(v) + " ";
      std::string fix;
      for (const Word& w : comp.fix_generators) fix += w.str() + " ";
      if (fix.empty()) fix = "1 ";
      s.lines.push_back("component " + std::to_string(i) + ": vertices " +
                        verts + "| fixed " + names_of(c, comp.fixed_edges) +
                        " | lollipops " + names_of(c, comp.lollipops) +
                        " | rays " + names_of(c, comp.rays) + " | rank " +
                        std::to_string(comp.core_rank) + " | " + flag +
                        " | Fix = < " + fix + ">");
    }
    r.sections.push_back(s);
  }
  {
    Report::Section s{"axes", {}};
    std::string un;
    for (const CyclicWord& a : axes(c)) un += a.str() + "_u ";
    s.lines.push_back("A(phi): " + (un.empty() ? "-" : un));
    for (const CyclicWord& a : axes_oriented(c)) {
      std::vector<StrongAxis> sa = strong_axes(c, a);
      std::string row = "SA(phi, " + a.str() + "):";
      for (const StrongAxis& x : sa) {
        row += " ";
        row += x.site_edge < 0 ? "base" : c.edge_name(x.site_edge);
        row += "(deg " + std::to_string(x.degree) + ")";
      }
      s.lines.push_back(row);
      for (size_t i = 0; i < sa.size(); ++i)
        for (size_t j = 0; j < sa.size(); ++j) {
          if (i == j) continue;
          std::string ni = sa[i].site_edge < 0 ? "base" : c.edge_name(sa[i].site_edge);
          std::string nj = sa[j].site_edge < 0 ? "base" : c.edge_name(sa[j].site_edge);
          s.lines.push_back("  tau(" + ni + ", " + nj + ") on " + a.str() +
                            " = " + std::to_string(twist_coordinate(sa[i], sa[j])));
        }
    }
    r.sections.push_back(s);
  }
  {
    Report::Section s{"partial-order", {}};
    RayOrder ro = ray_partial_order(c);
    auto pairs = ro.relation_pairs();
    if (pairs.empty()) s.lines.push_back("(empty relation)");
    for (auto [a, b] : pairs)
      s.lines.push_back("r_" + c.edge_name(a) + " < r_" + c.edge_name(b));
    r.sections.push_back(s);
  }
  {
    Report::Section s{"limit-lines", {}};
    for (int e : c.higher_edges()) {
      std::vector<std::string> omega, np;
      for (const LineDescriptor& l : limit_lines(c, e)) {
        omega.push_back(line_str(c, l));
        if (!l.periodic) np.push_back(line_str(c, l));
      }
      std::sort(omega.begin(), omega.end());
      std::sort(np.begin(), np.end());
      std::string o1, o2;
      for (const std::string& x : omega) o1 += x + " ; ";
      for (const std::string& x : np) o2 += x + " ; ";
      s.lines.push_back("Omega(r_" + c.edge_name(e) + "): " + o1);
      s.lines.push_back("acc_NP(r_" + c.edge_name(e) + "): " + o2);
      s.lines.push_back("ray prefix R_" + c.edge_name(e) + "[" +
                        std::to_string(ray_depth) + "] = " +
                        g.path_str(ray_prefix(c, RayDescriptor::eigen(e),
                                              ray_depth)));
    }
    r.sections.push_back(s);
  }
  SpecialChain chain = special_chain(c, chain_order);
  {
    Report::Section s{"chain", {}};
    s.lines.push_back("order: " + names_of(c, chain.order));
    for (size_t i = 0; i < chain.elements.size(); ++i) {
      const FFS& f = chain.elements[i];
      std::string ranks;
      for (int rk : f.rank_profile()) ranks += std::to_string(rk) + " ";
      s.lines.push_back("F" + std::to_string(i) + ": ranks ( " + ranks +
                        ") core { " + names_of(c, f.core_edges) + " }");
    }
    for (size_t st = 0; st < chain.steps.size(); ++st) {
      ExtensionData ext = extension_type(c, chain, (int)st);
      std::string row = "extension " + std::to_string(st + 1) + ": type " +
                        arc_type_name(ext.arc) + ", " +
                        ext_flag_name(ext.flag) + ", D = " +
                        c.edge_name(ext.d_edge);
      if (ext.c_edge >= 0) row += ", C = " + c.edge_name(ext.c_edge);
      s.lines.push_back(row);
      AddedLines al = added_lines(c, chain, (int)st);
      if (al.algebraic_only) {
        s.lines.push_back("  added lines (algebraic): " + al.pair->str());
      } else {
        std::vector<std::string> ls;
        for (const LineDescriptor& l : al.lines) ls.push_back(line_str(c, l));
        std::sort(ls.begin(), ls.end());
        std::string row2 = "  added lines:";
        for (const std::string& x : ls) row2 += " { " + x + " }";
        s.lines.push_back(row2);
      }
    }
    r.sections.push_back(s);
  }
  {
    Report::Section s{"staples", {}};
    std::vector<std::string> sg;
    for (const LineDescriptor& l : staples_global(c)) sg.push_back(line_str(c, l));
    std::sort(sg.begin(), sg.end());
    std::string row = "S(phi):";
    for (const std::string& x : sg) row += " { " + x + " }";
    s.lines.push_back(row);
    std::vector<StaplePair> pairs = staple_pairs_global(c);
    std::sort(pairs.begin(), pairs.end(),
              [&](const StaplePair& a, const StaplePair& b) {
                return line_str(c, a.l1) + "|" + line_str(c, a.l2) <
                       line_str(c, b.l1) + "|" + line_str(c, b.l2);
              });
    for (const StaplePair& p : pairs) {
      s.lines.push_back("S2: ( " + line_str(c, p.l1) + " , " +
                        line_str(c, p.l2) + " ) kind " +
                        staple_kind_name(p.kind) + " via r_" +
                        c.edge_name(p.ray_edge) + " m_b(phi) = " +
                        std::to_string(m_of_phi(c, p)));
    }
    auto classes = equivalence_classes(c, pairs);
    for (size_t i = 0; i < classes.size(); ++i) {
      std::string row2 = "class " + std::to_string(i + 1) + ": ";
      for (int idx : classes[i]) row2 += "#" + std::to_string(idx + 1) + " ";
      s.lines.push_back(row2);
    }
    for (int e : c.higher_edges())
      s.lines.push_back("tau(phi, r_" + c.edge_name(e) + ") = " +
                        std::to_string(translation_number(c, e)));
    r.sections.push_back(s);
  }
  {
    Report::Section s{"invariant", {}};
    IteratedSet ic = assemble_Ic(c, chain);
    s.lines.push_back("I_c leaf count: " + std::to_string(ic.leaf_count()));
    s.lines.push_back("I_c digest: " + fnv_digest(ic.digest()));
    r.sections.push_back(s);
  }
  return r;
}

CompareResult compare_cts(const CTData& a, const std::vector<int>& order_a,
                          const CTData& b, const std::vector<int>& order_b) {
  CompareResult res;
  res.indistinguishable = false;
  if (a.graph.rank() != b.graph.rank()) {
    res.verdict = "rank";
    res.detail.push_back("ambient ranks differ");
    return res;
  }
  SpecialChain ca = special_chain(a, order_a);
  SpecialChain cb = special_chain(b, order_b);
  IteratedSet ia = assemble_Ic(a, ca);
  IteratedSet ib = assemble_Ic(b, cb);
  static const char* component_names[] = {
      "chain",       "fixed-subgroups", "added-lines",
      "limit-lines", "axes",            "strong-axes"};
  for (int comp = 0; comp < 6; ++comp) {
    if (!equivalent(ia.children[comp], ib.children[comp])) {
      res.verdict = component_names[comp];
      res.detail.push_back(std::string("first distinguishing component: ") +
                           component_names[comp]);
      if (comp == 4) {
        // element-level orbit comparison of the axes, for the record
        std::vector<CyclicWord> ta = axes_oriented(a), tb = axes_oriented(b);
        if (ta.size() == tb.size()) {
          WhiteheadResult wr = whitehead_orbit(ta, tb, a.graph.rank());
          res.detail.push_back(
              wr.equivalent
                  ? "axes tuples lie in one Out-orbit (labels differ)"
                  : "axes tuples are not even Out-equivalent");
        }
      }
      return res;
    }
  }
  res.indistinguishable = true;
  res.verdict = "indistinguishable";
  return res;
}

}  // namespace ctinv
