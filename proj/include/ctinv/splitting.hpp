#pragma once

#include <string>
#include <vector>

#include "ctinv/ct.hpp"
#include "ctinv/rational.hpp"

namespace ctinv {

enum class TermKind { Single, INP, Exceptional };

// One term of a complete splitting: a single edge, an indivisible Nielsen
// path E w^p Ebar, or an exceptional path E1 w^p Ebar2.
struct SplitTerm {
  TermKind kind = TermKind::Single;
  Step step = 0;     // Single
  int lin1 = -1;     // INP/Exceptional: first linear edge index
  int lin2 = -1;     // Exceptional: second linear edge index
  int power = 0;     // twist power p

  bool operator==(const SplitTerm& o) const = default;
};

using Terms = std::vector<SplitTerm>;

// Cached per-CT splitting data: tails of edges and twist circuits split once.
class Splitter {
 public:
  explicit Splitter(const CTData& c);

  const CTData& ct() const { return *ct_; }

  // The unique complete splitting of a tight path; throws NotSplit.
  Terms split(const EdgePath& p) const;

  // Term utilities.
  bool is_nielsen(const SplitTerm& t) const;
  bool is_growing(const SplitTerm& t) const { return !is_nielsen(t); }
  long long term_length(const SplitTerm& t) const;
  EdgePath term_path(const SplitTerm& t) const;
  EdgePath terms_path(const Terms& ts) const;
  Terms term_image(const SplitTerm& t) const;  // splitting of f_#(term)
  Terms image(const Terms& ts) const;
  SplitTerm term_reverse(const SplitTerm& t) const;
  Terms reverse(const Terms& ts) const;
  std::string term_str(const SplitTerm& t) const;

  // Splitting of the tail u_E (precomputed).
  const Terms& tail_terms(int edge) const { return tails_[edge]; }
  // Splitting of a twist path (Nielsen terms only).
  const Terms& twist_terms(int t) const { return twists_[t]; }

  // Terms of the eigenray R_E expanded until total edge length >= min_len.
  Terms ray_terms(int higher_edge, long long min_len) const;

  int twist_family_of_linear(int edge) const { return ct_->twist_of[edge]; }

 private:
  Terms split_with_fallback(const EdgePath& p) const;
  bool junction_ok(const SplitTerm& a, const SplitTerm& b) const;

  const CTData* ct_;
  std::vector<Terms> tails_;
  std::vector<Terms> twists_;
  int depth_;
};

// Integer-valued polynomial P with |f_#^k(target)| = P(k) for all k >= k0.
struct GrowthPoly {
  std::vector<Rational> coeffs;  // coeffs[i] * k^i
  int k0 = 0;
  int degree() const { return (int)coeffs.size() - 1; }
  Rational eval(long long k) const;
  std::string str() const;
};

GrowthPoly growth_polynomial_edge(const CTData& c, int edge);
GrowthPoly growth_polynomial_class(const CTData& c, const CyclicWord& cls);

// Least M >= 1 such that for every growing term type, the first growing term
// of f_#^M(term) is not a reversed higher edge and the last is not a higher
// edge.
int stabilization_constant(const CTData& c);

}  // namespace ctinv
