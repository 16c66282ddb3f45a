#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctinv/words.hpp"

namespace ctinv {

// A folded, based, labeled graph representing a finitely generated subgroup
// of F_n. Labels run 1..rank; at most one edge with a given label leaves
// (resp. enters) each vertex.
class SubgroupGraph {
 public:
  SubgroupGraph() : rank_(0), base_(0) {}

  static SubgroupGraph fold(const std::vector<Word>& generators, int rank);

  int rank_ambient() const { return rank_; }
  int base() const { return base_; }
  int vertex_count() const { return (int)out_.size(); }
  int edge_count() const;

  // -1 when absent.
  int out(int v, int label) const { return out_[v][label - 1]; }
  int in(int v, int label) const { return in_[v][label - 1]; }

  bool contains(const Word& w) const;

  // Subgraph spanned by vertices that survive iterated valence-1 pruning.
  // keep_base keeps the base vertex alive regardless of valence.
  SubgroupGraph pruned(bool keep_base) const;

  // Rank of the subgroup: edges - vertices + 1 of the core (0 if trivial).
  int subgroup_rank() const;
  bool trivial() const { return subgroup_rank() == 0 && is_tree(); }

  // Free basis read off a spanning tree of the based graph.
  std::vector<Word> basis() const;

  // Expression of a member word in the basis() ordering; throws if w is not
  // a member.
  Word express_in_basis(const Word& w) const;

  // Word labeling some path between two vertices (BFS).
  Word path_word(int from, int to) const;

  std::vector<int> core_vertices() const;

  std::string debug_str() const;

 private:
  friend class CoreSignature;
  friend struct FoldBuilder;
  bool is_tree() const;

  int rank_;
  int base_;
  std::vector<std::vector<int>> out_;  // [vertex][label-1] -> vertex or -1
  std::vector<std::vector<int>> in_;
};

// Conjugacy class of a finitely generated subgroup, keyed by the canonical
// form of its core graph. Equal keys <=> conjugate subgroups.
class SubgroupConjClass {
 public:
  SubgroupConjClass() : rank_(0), subgroup_rank_(0) {}
  explicit SubgroupConjClass(const SubgroupGraph& g);
  static SubgroupConjClass from_generators(const std::vector<Word>& gens,
                                           int rank);

  const std::string& key() const { return key_; }
  int subgroup_rank() const { return subgroup_rank_; }
  int rank_ambient() const { return rank_; }
  bool trivial() const { return subgroup_rank_ == 0; }

  bool operator==(const SubgroupConjClass& o) const { return key_ == o.key_; }
  auto operator<=>(const SubgroupConjClass& o) const { return key_ <=> o.key_; }

 private:
  std::string key_;
  int rank_;
  int subgroup_rank_;
};

// If the subgroups are conjugate, returns g with B = g A g^-1 (as subgroups
// of F_n); otherwise nullopt.
std::optional<Word> conjugacy_witness(const SubgroupGraph& a,
                                      const SubgroupGraph& b);
bool conj_class_equal(const SubgroupConjClass& a, const SubgroupConjClass& b);

struct FiniteGroupTable {
  std::vector<Word> reps;              // reps[0] is the identity coset
  std::vector<std::vector<int>> mult;  // mult[i][j] = index of reps[i]*reps[j]
  int order() const { return (int)reps.size(); }
};

// Multiplication table and coset representatives for N(H)/H. Throws
// TrivialSubgroup for the trivial subgroup.
FiniteGroupTable normalizer_quotient(const SubgroupGraph& h);

struct SubgroupInH {
  std::string key_in_h;          // canonical form relative to H's core
  std::vector<Word> generators;  // a representative L <= H, as words in F_n
};

// All H-conjugacy classes [L]_H with [L]_{F_n} = [K]_{F_n}.
std::vector<SubgroupInH> split_conj_class(const SubgroupGraph& k,
                                          const SubgroupGraph& h);

// True iff <H1,H2> = H1 * H2, decided by rank additivity.
bool is_good_pair(const SubgroupGraph& h1, const SubgroupGraph& h2);

// Equality of ordered conjugacy pairs of subgroups, both pairs good.
bool pairs_equal(const SubgroupGraph& k1, const SubgroupGraph& k2,
                 const SubgroupGraph& l1, const SubgroupGraph& l2);

// Canonical key of [A]_H for A <= H (tracing A through H's based graph).
std::string class_key_in(const SubgroupGraph& h, const std::vector<Word>& a_gens);

// Conjugacy of two elements of H as elements of the free group H.
bool conjugate_in_subgroup(const SubgroupGraph& h, const Word& u, const Word& v);

}  // namespace ctinv
