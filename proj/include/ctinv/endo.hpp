#pragma once

#include <vector>

#include "ctinv/words.hpp"

namespace ctinv {

// Endomorphism of F_n given by generator images.
struct Endo {
  std::vector<Word> images;  // images[i] = image of generator i+1
  int rank() const { return (int)images.size(); }

  static Endo identity(int n);

  Word apply(const Word& w) const;
  Endo compose(const Endo& inner) const;  // this after inner

  bool operator==(const Endo& o) const { return images == o.images; }
};

// True iff the images form a basis of F_n (rank of the folded join is n).
bool is_automorphism(const Endo& e);

// Inverse of an automorphism. Throws NotAutomorphism when the images do not
// form a basis or the Nielsen search fails; the result is verified before
// returning.
Endo invert(const Endo& e);

}  // namespace ctinv
