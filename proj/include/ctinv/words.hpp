#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ctinv/errors.hpp"

namespace ctinv {

// Letters are signed generator indices: +i is the i-th generator, -i its
// inverse. Index 0 is never a letter.
using Letter = int;
using Letters = std::vector<Letter>;

// A freely reduced word in a free group of fixed rank.
class Word {
 public:
  Word() : rank_(0) {}
  Word(Letters raw, int rank);  // reduces

  static Word identity(int rank) { return Word({}, rank); }
  static Word generator(int i, int rank);

  const Letters& letters() const { return letters_; }
  int rank() const { return rank_; }
  int size() const { return (int)letters_.size(); }
  bool trivial() const { return letters_.empty(); }

  Word inverse() const;
  Word operator*(const Word& other) const;  // concatenate + reduce
  Word conjugate(const Word& g) const;      // g * w * g^-1
  Word power(int k) const;

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  auto operator<=>(const Word& o) const = default;

  std::string str() const;

 private:
  Letters letters_;
  int rank_;
};

// A cyclically reduced word stored in its lexicographically least rotation.
// Two Words have equal conjugacy_class() iff they are conjugate.
class CyclicWord {
 public:
  CyclicWord() : rank_(0) {}

  const Letters& letters() const { return letters_; }
  int rank() const { return rank_; }
  int size() const { return (int)letters_.size(); }

  CyclicWord inverse() const;
  // Canonical representative of the unoriented class {w, w^-1}.
  CyclicWord unoriented() const;

  // A word spelling the canonical rotation.
  Word word() const { return Word(letters_, rank_); }

  bool operator==(const CyclicWord& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  auto operator<=>(const CyclicWord& o) const = default;

  std::string str() const;

  friend CyclicWord conjugacy_class(const Word& w);

 private:
  Letters letters_;
  int rank_;
};

Word reduce(const Letters& raw, int rank);
CyclicWord conjugacy_class(const Word& w);

struct RootPower {
  Word root;
  int exponent;
};
// w = root^exponent with exponent maximal. Throws EmptyWord on the trivial
// word.
RootPower root_decomposition(const Word& w);

// Textual syntax: 'a'..'z' are generators 1..26, 'A'..'Z' their inverses.
Word parse_word(const std::string& text, int rank);
std::string letters_to_string(const Letters& ls);

}  // namespace ctinv
