#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctinv/endo.hpp"
#include "ctinv/stallings.hpp"
#include "ctinv/words.hpp"

namespace ctinv {

// Leaf labels for iterated sets. Payloads are held as explicit words /
// generator lists; equality is exact orbit equality under simultaneous
// conjugation, decided per variant. signature() is a conjugacy invariant
// used for sorting and pruning; variants marked complete below use it as
// the full equality test.
class AtomRef {
 public:
  enum class Type {
    SubgroupClass,     // [H]                  (complete signature)
    ElementClass,      // [a] oriented         (complete signature)
    UnorientedClass,   // [a]_u                (complete signature)
    ElementPair,       // [a,b]                (complete signature)
    EltSubgroupPair,   // [a,H], good          (exact test)
    SubgroupEltPair,   // [H,a], good          (exact test)
    GoodPair,          // [H,K], good          (exact test)
    ContainPair,       // [H,K] with H <= K    (exact test)
    ContainSubElt,     // [H,a] with a in H    (exact test)
  };

  static AtomRef subgroup_class(const std::vector<Word>& gens, int rank);
  static AtomRef element_class(const CyclicWord& c);
  static AtomRef unoriented_class(const CyclicWord& c);
  static AtomRef element_pair(const Word& a, const Word& b);
  static AtomRef elt_subgroup(const Word& a, const std::vector<Word>& h,
                              int rank);
  static AtomRef subgroup_elt(const std::vector<Word>& h, const Word& a,
                              int rank);
  static AtomRef good_pair(const std::vector<Word>& h,
                           const std::vector<Word>& k, int rank);
  static AtomRef contain_pair(const std::vector<Word>& h,
                              const std::vector<Word>& k, int rank);
  static AtomRef contain_sub_elt(const std::vector<Word>& h, const Word& a,
                                 int rank);

  Type type() const { return type_; }
  const std::string& signature() const { return signature_; }
  bool same_type(const AtomRef& o) const { return type_ == o.type_; }
  bool equals(const AtomRef& o) const;
  // payload of ElementClass / UnorientedClass atoms
  const CyclicWord& element_value() const { return cls_; }

  // the atom with `f` applied to every payload word (e.g. an automorphism)
  template <typename F>
  AtomRef mapped(F&& f) const {
    AtomRef out = *this;
    out.w1_ = f(w1_);
    out.w2_ = f(w2_);
    if (cls_.size() > 0) {
      CyclicWord image = conjugacy_class(f(cls_.word()));
      out.cls_ = type_ == Type::UnorientedClass ? image.unoriented() : image;
    }
    for (Word& w : out.sub1_) w = f(w);
    for (Word& w : out.sub2_) w = f(w);
    out.finish();
    return out;
  }

  std::string str() const;

 private:
  Type type_;
  int rank_ = 0;
  Word w1_, w2_;
  CyclicWord cls_;
  std::vector<Word> sub1_, sub2_;
  std::string signature_;
  void finish();
};

// Rooted finite tree with ordered/unordered internal vertices and
// atom-labeled leaves.
struct IteratedSet {
  bool ordered = false;                // meaningful for internal nodes
  std::optional<AtomRef> leaf;         // set iff this node is a leaf
  std::vector<IteratedSet> children;

  static IteratedSet atom(AtomRef a) {
    IteratedSet s;
    s.leaf = std::move(a);
    return s;
  }
  static IteratedSet node(bool ordered, std::vector<IteratedSet> ch) {
    IteratedSet s;
    s.ordered = ordered;
    s.children = std::move(ch);
    return s;
  }

  bool is_leaf() const { return leaf.has_value(); }
  int leaf_count() const;
  // structural + signature string; equal trees have equal digests, and the
  // digest is deterministic for identical construction
  std::string digest() const;
};

// A tree isomorphism recorded as, per node of x (preorder index), the
// matched preorder index in y.
using TreeIso = std::vector<int>;

// Label-preserving equivalence (with witness isomorphism).
std::optional<TreeIso> equivalent(const IteratedSet& x, const IteratedSet& y);

struct AutGroup {
  std::vector<TreeIso> elements;       // element 0 is the identity
  std::vector<std::vector<int>> mult;  // composition table
  int order() const { return (int)elements.size(); }
};
AutGroup automorphisms(const IteratedSet& x);

// All tree isomorphisms x -> y that are morphisms: type-preserving on
// leaves, consistent on labels, order-preserving.
std::vector<TreeIso> label_twist_candidates(const IteratedSet& x,
                                            const IteratedSet& y);

// Pluggable W-step: given the aligned leaf labels of a candidate
// isomorphism, decide whether a single outer automorphism maps the first
// tuple to the second, returning a witness.
using AtomTupleOracle = std::function<std::optional<Endo>(
    const std::vector<AtomRef>&, const std::vector<AtomRef>&)>;

// Search over label_twist_candidates, asking the oracle per candidate.
std::optional<Endo> orbit_search(const IteratedSet& x, const IteratedSet& y,
                                 const AtomTupleOracle& oracle);

// The shipped oracle: handles tuples whose atoms are all element classes,
// by the classical Whitehead procedure.
AtomTupleOracle element_whitehead_oracle(int rank);

}  // namespace ctinv
