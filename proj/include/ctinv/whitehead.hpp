#pragma once

#include <optional>
#include <vector>

#include "ctinv/endo.hpp"

namespace ctinv {

// All Whitehead automorphisms of F_rank: type I (signed permutations of the
// basis) and type II (partial conjugations (A, a)).
std::vector<Endo> whitehead_automorphisms(int rank);
std::vector<Endo> whitehead_type_two(int rank);

long long tuple_cyclic_length(const std::vector<CyclicWord>& tuple);

struct WhiteheadResult {
  bool equivalent = false;
  std::optional<Endo> witness;  // maps tuple1 to tuple2 coordinate-wise
};

// Coordinate-wise orbit problem for tuples of conjugacy classes under
// Out(F_n), by peak reduction to the minimal level and a search of the
// minimal-level component.
WhiteheadResult whitehead_orbit(const std::vector<CyclicWord>& t1,
                                const std::vector<CyclicWord>& t2, int rank);

}  // namespace ctinv
