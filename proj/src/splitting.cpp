#include "ctinv/splitting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace ctinv {

Splitter::Splitter(const CTData& c) : ct_(&c) {
  depth_ = 2 * c.graph.edge_count();
  twists_.resize(c.twist_paths.size());
  tails_.resize(c.graph.edge_count());
  // Twist circuits first: their splittings contain only Nielsen terms.
  for (size_t t = 0; t < c.twist_paths.size(); ++t)
    twists_[t] = split_with_fallback(c.twist_paths[t]);
  for (int e : c.filtration) tails_[e] = split_with_fallback(c.tail(e));
}

bool Splitter::is_nielsen(const SplitTerm& t) const {
  switch (t.kind) {
    case TermKind::INP: return true;
    case TermKind::Exceptional: return false;
    case TermKind::Single:
      return ct_->edge_class[edge_of_step(t.step)] == EdgeClass::Fixed;
  }
  return false;
}

long long Splitter::term_length(const SplitTerm& t) const {
  switch (t.kind) {
    case TermKind::Single: return 1;
    case TermKind::INP:
      return 2 + (long long)std::abs(t.power) *
                     (long long)ct_->twist_paths[ct_->twist_of[t.lin1]].size();
    case TermKind::Exceptional:
      return 2 + (long long)std::abs(t.power) *
                     (long long)ct_->twist_paths[ct_->twist_of[t.lin1]].size();
  }
  return 0;
}

EdgePath Splitter::term_path(const SplitTerm& t) const {
  switch (t.kind) {
    case TermKind::Single: return {t.step};
    case TermKind::INP:
    case TermKind::Exceptional: {
      const EdgePath& w = ct_->twist_paths[ct_->twist_of[t.lin1]];
      EdgePath p = {step_of_edge(t.lin1)};
      EdgePath unit = t.power >= 0 ? w : reverse_path(w);
      for (int i = 0; i < std::abs(t.power); ++i)
        p.insert(p.end(), unit.begin(), unit.end());
      int e2 = t.kind == TermKind::INP ? t.lin1 : t.lin2;
      p.push_back(-step_of_edge(e2));
      return p;
    }
  }
  return {};
}

EdgePath Splitter::terms_path(const Terms& ts) const {
  EdgePath p;
  for (const SplitTerm& t : ts) {
    EdgePath tp = term_path(t);
    p.insert(p.end(), tp.begin(), tp.end());
  }
  return p;
}

SplitTerm Splitter::term_reverse(const SplitTerm& t) const {
  switch (t.kind) {
    case TermKind::Single: return {TermKind::Single, -t.step, -1, -1, 0};
    case TermKind::INP: return {TermKind::INP, 0, t.lin1, -1, -t.power};
    case TermKind::Exceptional:
      return {TermKind::Exceptional, 0, t.lin2, t.lin1, -t.power};
  }
  return t;
}

Terms Splitter::reverse(const Terms& ts) const {
  Terms out;
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    out.push_back(term_reverse(*it));
  return out;
}

Terms Splitter::term_image(const SplitTerm& t) const {
  const CTData& c = *ct_;
  switch (t.kind) {
    case TermKind::INP:
      return {t};
    case TermKind::Exceptional: {
      SplitTerm s = t;
      s.power += c.degree_of[t.lin1] - c.degree_of[t.lin2];
      return {s};
    }
    case TermKind::Single: {
      int e = edge_of_step(t.step);
      bool fwd = step_forward(t.step);
      switch (c.edge_class[e]) {
        case EdgeClass::Fixed: return {t};
        case EdgeClass::Linear: {
          const Terms& w = twists_[c.twist_of[e]];
          int d = c.degree_of[e];
          Terms tail;
          Terms unit = d > 0 ? w : reverse(w);
          for (int i = 0; i < std::abs(d); ++i)
            tail.insert(tail.end(), unit.begin(), unit.end());
          Terms out;
          if (fwd) {
            out.push_back(t);
            out.insert(out.end(), tail.begin(), tail.end());
          } else {
            out = reverse(tail);
            out.push_back(t);
          }
          return out;
        }
        case EdgeClass::Higher: {
          Terms out;
          if (fwd) {
            out.push_back(t);
            const Terms& u = tails_[e];
            out.insert(out.end(), u.begin(), u.end());
          } else {
            out = reverse(tails_[e]);
            out.push_back(t);
          }
          return out;
        }
      }
    }
  }
  return {};
}

Terms Splitter::image(const Terms& ts) const {
  Terms out;
  for (const SplitTerm& t : ts) {
    Terms im = term_image(t);
    out.insert(out.end(), im.begin(), im.end());
  }
  return out;
}

std::string Splitter::term_str(const SplitTerm& t) const {
  const CTData& c = *ct_;
  switch (t.kind) {
    case TermKind::Single: {
      char nm = c.graph.edge(edge_of_step(t.step)).name;
      return std::string(1, step_forward(t.step) ? nm : (char)(nm - 'a' + 'A'));
    }
    case TermKind::INP: {
      std::ostringstream os;
      os << c.edge_name(t.lin1) << "w^" << t.power << c.edge_name(t.lin1)
         << "^-1";
      return os.str();
    }
    case TermKind::Exceptional: {
      std::ostringstream os;
      os << c.edge_name(t.lin1) << "w^" << t.power << c.edge_name(t.lin2)
         << "^-1";
      return os.str();
    }
  }
  return "?";
}

// ---- the splitter itself ---------------------------------------------------

namespace {

// number of copies of `unit` (exactly, from the front) in p[from..]
int count_unit(const EdgePath& p, size_t from, const EdgePath& unit) {
  if (unit.empty()) return 0;
  int copies = 0;
  size_t i = from;
  while (i + unit.size() <= p.size()) {
    bool ok = true;
    for (size_t j = 0; j < unit.size(); ++j)
      if (p[i + j] != unit[j]) {
        ok = false;
        break;
      }
    if (!ok) break;
    ++copies;
    i += unit.size();
  }
  return copies;
}

}  // namespace

bool Splitter::junction_ok(const SplitTerm& a, const SplitTerm& b) const {
  // no cancellation between iterated images at the common vertex
  EdgePath pa = term_path(a), pb = term_path(b);
  const GraphSelfMap& f = ct_->self_map();
  for (int k = 0; k <= depth_; ++k) {
    if (!pa.empty() && !pb.empty() && pa.back() == -pb.front()) return false;
    pa = f.map_path(pa);
    pb = f.map_path(pb);
  }
  return true;
}

Terms Splitter::split_with_fallback(const EdgePath& p) const {
  const CTData& c = *ct_;
  // candidate terms starting at each position
  auto candidates_at = [&](size_t i) {
    std::vector<std::pair<SplitTerm, size_t>> out;  // (term, next position)
    Step s = p[i];
    out.push_back({SplitTerm{TermKind::Single, s, -1, -1, 0}, i + 1});
    int e = edge_of_step(s);
    if (step_forward(s) && c.edge_class[e] == EdgeClass::Linear) {
      int t = c.twist_of[e];
      const EdgePath& w = c.twist_paths[t];
      EdgePath wr = reverse_path(w);
      for (int dir : {+1, -1}) {
        const EdgePath& unit = dir > 0 ? w : wr;
        int copies = count_unit(p, i + 1, unit);
        for (int k = copies; k >= 0; --k) {
          size_t j = i + 1 + (size_t)k * unit.size();
          if (j >= p.size()) continue;
          Step nxt = p[j];
          if (step_forward(nxt)) continue;
          int e2 = edge_of_step(nxt);
          if (c.edge_class[e2] != EdgeClass::Linear || c.twist_of[e2] != t)
            continue;
          int power = dir * k;
          if (e2 == e) {
            if (power != 0)
              out.push_back(
                  {SplitTerm{TermKind::INP, 0, e, -1, power}, j + 1});
          } else if ((c.degree_of[e] > 0) == (c.degree_of[e2] > 0)) {
            out.push_back(
                {SplitTerm{TermKind::Exceptional, 0, e, e2, power}, j + 1});
          }
          if (k == 0) break;  // power 0 handled once
        }
      }
    }
    // longest first for the greedy pass
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
  };

  // greedy
  {
    Terms terms;
    size_t i = 0;
    bool ok = true;
    while (i < p.size()) {
      auto cand = candidates_at(i);
      const auto& [t, j] = cand.front();
      if (!terms.empty() && !junction_ok(terms.back(), t)) {
        ok = false;
        break;
      }
      terms.push_back(t);
      i = j;
    }
    if (ok) return terms;
  }

  // exhaustive search with junction checks (bounded length)
  if (p.size() > 32)
    throw error(errc::not_split, "path is not completely split (too long for "
                                 "exhaustive fallback)");
  Terms best;
  std::vector<std::pair<size_t, SplitTerm>> stack;
  std::function<bool(size_t, Terms&)> rec = [&](size_t i, Terms& acc) -> bool {
    if (i == p.size()) return true;
    for (auto& [t, j] : candidates_at(i)) {
      if (!acc.empty() && !junction_ok(acc.back(), t)) continue;
      acc.push_back(t);
      if (rec(j, acc)) return true;
      acc.pop_back();
    }
    return false;
  };
  Terms acc;
  if (rec(0, acc)) return acc;
  throw error(errc::not_split, "path is not completely split");
}

Terms Splitter::split(const EdgePath& p) const {
  EdgePath tp = tighten(ct_->graph, p);
  if (tp != p) throw error(errc::not_split, "path is not tight");
  return split_with_fallback(p);
}

Terms Splitter::ray_terms(int higher_edge, long long min_len) const {
  if (ct_->edge_class[higher_edge] != EdgeClass::Higher)
    throw error(errc::not_higher_order,
                ct_->edge_name(higher_edge) + " is not a higher-order edge");
  Terms stream = {SplitTerm{TermKind::Single, step_of_edge(higher_edge), -1,
                            -1, 0}};
  Terms block = tails_[higher_edge];
  long long len = 1;
  while (len < min_len && !block.empty()) {
    for (const SplitTerm& t : block) {
      stream.push_back(t);
      len += term_length(t);
    }
    block = image(block);
  }
  return stream;
}

// ---- growth polynomials -----------------------------------------------------

Rational GrowthPoly::eval(long long k) const {
  Rational acc(0);
  Rational kp(1);
  for (const Rational& cf : coeffs) {
    acc = acc + cf * kp;
    kp = kp * Rational(k);
  }
  return acc;
}

std::string GrowthPoly::str() const {
  // common denominator rendering, highest degree first
  long long den = 1;
  for (const Rational& c : coeffs) den = std::lcm(den, c.den);
  std::ostringstream os;
  bool first = true;
  for (int i = (int)coeffs.size() - 1; i >= 0; --i) {
    long long num = coeffs[i].num * (den / coeffs[i].den);
    if (num == 0) continue;
    if (!first) os << (num > 0 ? " + " : " - ");
    else if (num < 0) os << "-";
    long long a = std::abs(num);
    if (i == 0)
      os << a;
    else {
      if (a != 1) os << a << "*";
      os << "k";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  std::string body = os.str();
  if (den == 1) return body;
  return "(" + body + ")/" + std::to_string(den);
}

namespace {

GrowthPoly fit_polynomial(const std::vector<long long>& vals, int max_deg,
                          int max_k0) {
  int confirm = 2 * (max_deg + 2);
  for (int k0 = 0; k0 <= max_k0; ++k0) {
    for (int d = 0; d <= max_deg; ++d) {
      if (k0 + d + confirm >= (int)vals.size()) break;
      // Lagrange through points (k0..k0+d)
      std::vector<Rational> coeffs(d + 1, Rational(0));
      for (int i = 0; i <= d; ++i) {
        // basis polynomial through x = k0+i
        std::vector<Rational> basis = {Rational(1)};
        Rational denom(1);
        for (int j = 0; j <= d; ++j) {
          if (j == i) continue;
          // multiply basis by (x - (k0Plusj))
          std::vector<Rational> nb(basis.size() + 1, Rational(0));
          for (size_t t = 0; t < basis.size(); ++t) {
            nb[t + 1] = nb[t + 1] + basis[t];
            nb[t] = nb[t] + basis[t] * Rational(-(k0 + j));
          }
          basis = nb;
          denom = denom * Rational((k0 + i) - (k0 + j));
        }
        Rational scale = Rational(vals[k0 + i]) / denom;
        for (size_t t = 0; t < basis.size(); ++t)
          coeffs[t] = coeffs[t] + basis[t] * scale;
      }
      bool ok = true;
      for (int k = k0; k < (int)vals.size() && ok; ++k) {
        Rational want(vals[k]);
        if (!(GrowthPoly{coeffs, k0}.eval(k) == want)) ok = false;
      }
      if (ok) return GrowthPoly{coeffs, k0};
    }
  }
  throw error(errc::not_polynomial, "no exact polynomial fit");
}

}  // namespace

GrowthPoly growth_polynomial_edge(const CTData& c, int edge) {
  int n = c.graph.rank();
  int max_deg = c.graph.edge_count();
  int max_k0 = 2 * c.graph.edge_count();
  int need = max_k0 + max_deg + 2 * (max_deg + 2) + 1;
  std::vector<long long> vals;
  const GraphSelfMap& f = c.self_map();
  (void)n;
  // incremental lengths via the tail
  EdgePath u = c.tail(edge);
  long long len = 1;
  vals.push_back(len);
  for (int k = 1; k <= need; ++k) {
    len += (long long)u.size();
    vals.push_back(len);
    u = f.map_path(u);
  }
  return fit_polynomial(vals, max_deg, max_k0);
}

GrowthPoly growth_polynomial_class(const CTData& c, const CyclicWord& cls) {
  int max_deg = c.graph.edge_count();
  int max_k0 = 2 * c.graph.edge_count();
  int need = max_k0 + max_deg + 2 * (max_deg + 2) + 1;
  std::vector<long long> vals;
  Circuit circ = circuit_of(cls, c.graph);
  const GraphSelfMap& f = c.self_map();
  for (int k = 0; k <= need; ++k) {
    vals.push_back(circ.size());
    circ = f.map_circuit(circ);
  }
  return fit_polynomial(vals, max_deg, max_k0);
}

int stabilization_constant(const CTData& c) {
  Splitter sp(c);
  std::vector<Terms> states;
  for (int e : c.higher_edges()) {
    states.push_back({SplitTerm{TermKind::Single, step_of_edge(e), -1, -1, 0}});
    states.push_back(
        {SplitTerm{TermKind::Single, -step_of_edge(e), -1, -1, 0}});
  }
  if (states.empty()) return 1;
  auto first_growing = [&](const Terms& ts) -> const SplitTerm* {
    for (const SplitTerm& t : ts)
      if (sp.is_growing(t)) return &t;
    return nullptr;
  };
  auto last_growing = [&](const Terms& ts) -> const SplitTerm* {
    for (auto it = ts.rbegin(); it != ts.rend(); ++it)
      if (sp.is_growing(*it)) return &*it;
    return nullptr;
  };
  auto is_reversed_higher = [&](const SplitTerm& t) {
    return t.kind == TermKind::Single && !step_forward(t.step) &&
           c.edge_class[edge_of_step(t.step)] == EdgeClass::Higher;
  };
  auto is_forward_higher = [&](const SplitTerm& t) {
    return t.kind == TermKind::Single && step_forward(t.step) &&
           c.edge_class[edge_of_step(t.step)] == EdgeClass::Higher;
  };
  for (int m = 1; m <= 100; ++m) {
    bool all_ok = true;
    for (Terms& ts : states) {
      ts = sp.image(ts);
      const SplitTerm* fg = first_growing(ts);
      const SplitTerm* lg = last_growing(ts);
      if (!fg || !lg) continue;
      if (is_reversed_higher(*fg) || is_forward_higher(*lg)) all_ok = false;
    }
    // once the condition holds it persists under further iteration
    if (all_ok) return m;
  }
  throw error(errc::internal, "stabilization constant did not settle");
}

}  // namespace ctinv
