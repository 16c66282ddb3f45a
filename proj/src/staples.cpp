#include "ctinv/staples.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace ctinv {

namespace {

// signed count of whole period copies at the front of p
int signed_prefix_power(const EdgePath& p, const EdgePath& w) {
  auto count = [&](const EdgePath& unit) {
    int n = 0;
    size_t i = 0;
    while (i + unit.size() <= p.size() &&
           std::equal(unit.begin(), unit.end(), p.begin() + i)) {
      ++n;
      i += unit.size();
    }
    return n;
  };
  int fwd = count(w);
  if (fwd > 0) return fwd;
  return -count(reverse_path(w));
}

int signed_suffix_power(const EdgePath& p, const EdgePath& w) {
  EdgePath pr = reverse_path(p);
  // a suffix of p reading w-copies is a prefix of p^-1 reading w^-1-copies
  return -signed_prefix_power(pr, w);
}

}  // namespace

RayAnalysis::RayAnalysis(const CTData& c, int higher_edge)
    : ct_(&c), sp_(c), edge_(higher_edge), order_(ray_partial_order(c)) {
  if (c.edge_class[higher_edge] != EdgeClass::Higher)
    throw error(errc::not_higher_order,
                c.edge_name(higher_edge) + " is not higher order");
  ray_.edge = higher_edge;
  ray_.rho.emplace_back();
  expanded_len_ = 1;
  ensure(4);
}

void RayAnalysis::ensure(int count) {
  while ((int)ray_.sigma.size() < count) {
    long long target = std::max<long long>(expanded_len_ * 2, 64);
    Terms stream = sp_.ray_terms(edge_, target);
    expanded_len_ = 0;
    for (const SplitTerm& t : stream) expanded_len_ += sp_.term_length(t);
    // re-coarsen the stream (skipping the initial edge term)
    CoarseRay re;
    re.edge = edge_;
    re.rho.emplace_back();
    for (size_t i = 1; i < stream.size(); ++i) {
      if (sp_.is_nielsen(stream[i]))
        re.rho.back().push_back(stream[i]);
      else {
        re.sigma.push_back(stream[i]);
        re.rho.emplace_back();
      }
    }
    if ((int)re.sigma.size() <= (int)ray_.sigma.size() &&
        expanded_len_ >= target)
      throw error(errc::internal, "eigenray expansion stalled");
    ray_ = re;
    // drop the trailing (possibly incomplete) Nielsen block from use:
    // callers only read rho[k] for k < sigma_count, which are complete
  }
}

LineDescriptor RayAnalysis::visible_line(int k) {
  if (k < 1) throw error(errc::internal, "visible lines start at index 1");
  ensure(k + 2);
  FInfinity left = f_infinity(*ct_, sp_, {sp_.term_reverse(ray_.sigma[k - 1])});
  FInfinity right = f_infinity(*ct_, sp_, {ray_.sigma[k]});
  EdgePath mid = reverse_path(left.rho);
  EdgePath rk = sp_.terms_path(ray_.rho[k]);
  mid.insert(mid.end(), rk.begin(), rk.end());
  mid.insert(mid.end(), right.rho.begin(), right.rho.end());
  return make_line(*ct_, left.ray, mid, right.ray);
}

int RayAnalysis::forward_index(int k) {
  ensure(k + 2);
  Terms prefix = {SplitTerm{TermKind::Single, step_of_edge(edge_), -1, -1, 0}};
  for (int t = 0; t <= k; ++t) {
    const Terms& r = ray_.rho[t];
    prefix.insert(prefix.end(), r.begin(), r.end());
    if (t < k) prefix.push_back(ray_.sigma[t]);
  }
  Terms image = sp_.image(prefix);
  int growing = 0;
  for (const SplitTerm& t : image)
    if (sp_.is_growing(t)) ++growing;
  // skip the leading edge term E itself
  return growing - 1;
}

int RayAnalysis::window_end() {
  long long target = 1 + (long long)ct_->tail(edge_).size();
  ensure(8);
  long long cum = 1;
  for (int k = 0;; ++k) {
    ensure(k + 2);
    long long rho_len = 0;
    for (const SplitTerm& t : ray_.rho[k]) rho_len += sp_.term_length(t);
    if (target <= cum + rho_len) return k;
    cum += rho_len + sp_.term_length(ray_.sigma[k]);
  }
}

bool RayAnalysis::is_topmost_line(int k) {
  LineDescriptor l = visible_line(k);
  if (l.periodic) return false;
  bool minimal = true;
  for (int other : order_.higher)
    if (other != edge_ && order_.is_less(other, edge_)) minimal = false;
  if (minimal) return true;
  auto end_covers = [&](const RayDescriptor& r) {
    return r.kind == RayDescriptor::Kind::Eigen &&
           order_.covers(r.edge, edge_);
  };
  return end_covers(l.left) || end_covers(l.right);
}

int RayAnalysis::translation_number() {
  int p = window_end();
  int tau = 0;
  for (int k = 1; k <= p; ++k)
    if (is_topmost_line(k)) ++tau;
  return tau;
}

std::vector<VisibleLine> visible_lines(const CTData& c, int higher_edge,
                                       int count) {
  RayAnalysis ra(c, higher_edge);
  std::vector<VisibleLine> out;
  for (int k = 1; k <= count; ++k) out.push_back({k, ra.visible_line(k)});
  return out;
}

int translation_number(const CTData& c, int higher_edge) {
  RayAnalysis ra(c, higher_edge);
  return ra.translation_number();
}

const char* staple_kind_name(StapleKind k) {
  switch (k) {
    case StapleKind::QuasiExceptional: return "quasi-exceptional";
    case StapleKind::Exceptional: return "exceptional";
    case StapleKind::LinearLeft: return "linear-left";
    case StapleKind::LinearRight: return "linear-right";
  }
  return "?";
}

namespace {

struct Occurrence {
  int index;  // visible index i: the pair involves sigma_i (1-based)
  StapleKind kind;
  int twist;
  LineDescriptor l1, l2;
};

// classify the junction at visible index i (paper sigma_i rho_i sigma_{i+1});
// 0-based: sigma[i-1], rho[i], sigma[i]
std::optional<Occurrence> classify_occurrence(const CTData& c,
                                              RayAnalysis& ra, int i) {
  if (i < 2) return std::nullopt;  // the pair needs l_{i-1} with i-1 >= 1
  const Splitter& sp = ra.splitter();
  const SplitTerm s1 = ra.sigma(i - 1);
  const SplitTerm s2 = ra.sigma(i);
  auto lin_of = [&](const SplitTerm& t) -> int {
    if (t.kind != TermKind::Single) return -1;
    int e = edge_of_step(t.step);
    return c.edge_class[e] == EdgeClass::Linear ? e : -1;
  };
  // quasi-exceptional: +E1 w^q -E2, opposite degree signs
  if (s1.kind == TermKind::Single && step_forward(s1.step) &&
      lin_of(s1) >= 0 && s2.kind == TermKind::Single &&
      !step_forward(s2.step) && lin_of(s2) >= 0) {
    int e1 = lin_of(s1), e2 = lin_of(s2);
    if (e1 != e2 && c.twist_of[e1] == c.twist_of[e2] &&
        (c.degree_of[e1] > 0) != (c.degree_of[e2] > 0)) {
      const EdgePath& w = c.twist_paths[c.twist_of[e1]];
      EdgePath rho_path = sp.terms_path(ra.rho(i));
      int q = signed_prefix_power(rho_path, w);
      if ((size_t)std::abs(q) * w.size() == rho_path.size()) {
        Occurrence oc;
        oc.index = i;
        oc.kind = StapleKind::QuasiExceptional;
        oc.twist = c.twist_of[e1];
        oc.l1 = ra.visible_line(i - 1);
        oc.l2 = ra.visible_line(i + 1);
        return oc;
      }
    }
  }
  if (s1.kind == TermKind::Exceptional) {
    Occurrence oc;
    oc.index = i;
    oc.kind = StapleKind::Exceptional;
    oc.twist = c.twist_of[s1.lin1];
    oc.l1 = ra.visible_line(i - 1);
    oc.l2 = ra.visible_line(i);
    return oc;
  }
  if (s1.kind == TermKind::Single && step_forward(s1.step) && lin_of(s1) >= 0) {
    LineDescriptor li = ra.visible_line(i);
    if (!li.periodic) {
      Occurrence oc;
      oc.index = i;
      oc.kind = StapleKind::LinearRight;  // sigma_i in lin(f)
      oc.twist = c.twist_of[lin_of(s1)];
      oc.l1 = ra.visible_line(i - 1);
      oc.l2 = li;
      return oc;
    }
  }
  if (s1.kind == TermKind::Single && !step_forward(s1.step) &&
      lin_of(s1) >= 0) {
    LineDescriptor lm = ra.visible_line(i - 1);
    if (!lm.periodic) {
      Occurrence oc;
      oc.index = i;
      oc.kind = StapleKind::LinearLeft;  // reversed sigma_i in lin(f)
      oc.twist = c.twist_of[lin_of(s1)];
      oc.l1 = lm;
      oc.l2 = ra.visible_line(i);
      return oc;
    }
  }
  return std::nullopt;
}

// anchor separation of the occurrence at index i, in w-periods
int occurrence_delta(const CTData& c, RayAnalysis& ra, const Occurrence& oc) {
  const Splitter& sp = ra.splitter();
  const EdgePath& w = c.twist_paths[oc.twist];
  switch (oc.kind) {
    case StapleKind::QuasiExceptional:
      return signed_prefix_power(sp.terms_path(ra.rho(oc.index)), w);
    case StapleKind::Exceptional:
      return ra.sigma(oc.index - 1).power;
    case StapleKind::LinearRight:
      return signed_prefix_power(sp.terms_path(ra.rho(oc.index)), w);
    case StapleKind::LinearLeft:
      return signed_suffix_power(sp.terms_path(ra.rho(oc.index - 1)), w);
  }
  return 0;
}

}  // namespace

std::vector<StaplePair> staple_pairs(const CTData& c, int higher_edge) {
  RayAnalysis ra(c, higher_edge);
  int p = ra.window_end();
  int m = stabilization_constant(c);
  // B(r): index of Phi^{2M}(l_p)
  int b = std::max(p, 1);
  for (int t = 0; t < 2 * m; ++t) b = ra.forward_index(b);

  std::vector<Occurrence> occs;
  std::vector<int> occ_index;
  for (int i = 2; i <= b; ++i) {
    auto oc = classify_occurrence(c, ra, i);
    if (oc) {
      occs.push_back(*oc);
      occ_index.push_back(i);
    }
  }
  // orbit dedup: drop occurrences reachable from an earlier one by the
  // forward map
  std::vector<bool> dropped(occs.size(), false);
  for (size_t a = 0; a < occs.size(); ++a) {
    if (dropped[a]) continue;
    int idx = occs[a].index;
    for (int guard = 0; guard < 64 && idx <= b; ++guard) {
      idx = ra.forward_index(idx);
      for (size_t o = 0; o < occs.size(); ++o)
        if (!dropped[o] && o != a && occs[o].index == idx) dropped[o] = true;
      if (idx > b) break;
    }
  }
  std::vector<StaplePair> out;
  for (size_t a = 0; a < occs.size(); ++a) {
    if (dropped[a]) continue;
    out.push_back({occs[a].l1, occs[a].l2, occs[a].kind, occs[a].twist,
                   higher_edge, occs[a].index});
  }
  return out;
}

std::vector<LineDescriptor> staples_global(const CTData& c) {
  std::vector<LineDescriptor> out;
  for (const LineDescriptor& l : acc_np_all(c)) {
    if (l.periodic) continue;
    if (ray_end_periodic(l.left) || ray_end_periodic(l.right))
      out.push_back(l);
  }
  return out;
}

std::vector<StaplePair> staple_pairs_global(const CTData& c) {
  std::vector<StaplePair> all;
  for (int e : c.higher_edges())
    for (const StaplePair& sp : staple_pairs(c, e)) all.push_back(sp);
  // dedup by the underlying ordered line pair
  std::vector<StaplePair> out;
  for (const StaplePair& sp : all) {
    bool dup = false;
    for (const StaplePair& o : out)
      if (o.l1 == sp.l1 && o.l2 == sp.l2) dup = true;
    if (!dup) out.push_back(sp);
  }
  return out;
}

int m_of_phi(const CTData& c, const StaplePair& b, int power) {
  RayAnalysis ra(c, b.ray_edge);
  auto oc = classify_occurrence(c, ra, b.index);
  if (!oc) throw error(errc::internal, "staple pair occurrence vanished");
  int d0 = occurrence_delta(c, ra, *oc);
  int idx = b.index;
  for (int t = 0; t < power; ++t) idx = ra.forward_index(idx);
  auto oc2 = classify_occurrence(c, ra, idx);
  if (!oc2 || oc2->kind != oc->kind)
    throw error(errc::internal, "forward image of a staple pair is not a "
                                "staple pair of the same kind");
  int d1 = occurrence_delta(c, ra, *oc2);
  return d1 - d0;
}

std::vector<std::vector<int>> equivalence_classes(
    const CTData& c, const std::vector<StaplePair>& pairs) {
  // b ~ b' when they occur in a common ray; occurrence of a pair in a ray is
  // recomputed from the visible windows
  size_t n = pairs.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::map<int, std::vector<int>> by_ray;
  for (int e : c.higher_edges()) {
    for (const StaplePair& sp : staple_pairs(c, e)) {
      for (size_t i = 0; i < n; ++i)
        if (pairs[i].l1 == sp.l1 && pairs[i].l2 == sp.l2)
          by_ray[e].push_back((int)i);
    }
  }
  for (auto& [ray, members] : by_ray)
    for (size_t i = 1; i < members.size(); ++i)
      parent[find(members[i])] = find(members[0]);
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < n; ++i) groups[find((int)i)].push_back((int)i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  return out;
}

}  // namespace ctinv
