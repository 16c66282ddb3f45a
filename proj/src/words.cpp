#include "ctinv/words.hpp"

#include <algorithm>
#include <cstdlib>

namespace ctinv {

static void check_letters(const Letters& raw, int rank) {
  for (Letter l : raw) {
    if (l == 0 || std::abs(l) > rank)
      throw error(errc::invalid_generator,
                  "letter " + std::to_string(l) + " out of range for rank " +
                      std::to_string(rank));
  }
}

static Letters reduce_letters(const Letters& raw) {
  Letters out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word::Word(Letters raw, int rank) : rank_(rank) {
  check_letters(raw, rank);
  letters_ = reduce_letters(raw);
}

Word Word::generator(int i, int rank) { return Word({i}, rank); }

Word Word::inverse() const {
  Letters inv(letters_.rbegin(), letters_.rend());
  for (Letter& l : inv) l = -l;
  Word w;
  w.letters_ = std::move(inv);
  w.rank_ = rank_;
  return w;
}

Word Word::operator*(const Word& other) const {
  Letters cat = letters_;
  cat.insert(cat.end(), other.letters_.begin(), other.letters_.end());
  Word w;
  w.rank_ = std::max(rank_, other.rank_);
  w.letters_ = reduce_letters(cat);
  return w;
}

Word Word::conjugate(const Word& g) const { return g * (*this) * g.inverse(); }

Word Word::power(int k) const {
  Word base = k >= 0 ? *this : inverse();
  Word acc = Word::identity(rank_);
  for (int i = 0; i < std::abs(k); ++i) acc = acc * base;
  return acc;
}

std::string Word::str() const { return letters_to_string(letters_); }

Word reduce(const Letters& raw, int rank) { return Word(raw, rank); }

static Letters least_rotation(const Letters& v) {
  if (v.empty()) return v;
  Letters best = v;
  Letters cur = v;
  for (size_t i = 1; i < v.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

CyclicWord conjugacy_class(const Word& w) {
  Letters ls = w.letters();
  // cyclic reduction
  size_t b = 0, e = ls.size();
  while (e - b >= 2 && ls[b] == -ls[e - 1]) {
    ++b;
    --e;
  }
  Letters core(ls.begin() + b, ls.begin() + e);
  CyclicWord c;
  c.rank_ = w.rank();
  c.letters_ = least_rotation(core);
  return c;
}

CyclicWord CyclicWord::inverse() const {
  return conjugacy_class(word().inverse());
}

CyclicWord CyclicWord::unoriented() const {
  CyclicWord inv = inverse();
  return letters_ <= inv.letters_ ? *this : inv;
}

std::string CyclicWord::str() const {
  return "[" + letters_to_string(letters_) + "]";
}

RootPower root_decomposition(const Word& w) {
  if (w.trivial()) throw error(errc::empty_word, "trivial word has no root");
  const Letters& ls = w.letters();
  // Strip the maximal conjugating prefix: w = c v c^-1 with v cyclically
  // reduced.
  size_t b = 0, e = ls.size();
  while (e - b >= 2 && ls[b] == -ls[e - 1]) {
    ++b;
    --e;
  }
  Letters c(ls.begin(), ls.begin() + b);
  Letters v(ls.begin() + b, ls.begin() + e);
  size_t m = v.size();
  for (size_t p = 1; p <= m; ++p) {
    if (m % p != 0) continue;
    bool periodic = true;
    for (size_t i = p; i < m && periodic; ++i)
      if (v[i] != v[i - p]) periodic = false;
    if (periodic) {
      Letters root = c;
      root.insert(root.end(), v.begin(), v.begin() + p);
      for (auto it = c.rbegin(); it != c.rend(); ++it) root.push_back(-*it);
      return RootPower{Word(root, w.rank()), (int)(m / p)};
    }
  }
  return RootPower{w, 1};
}

Word parse_word(const std::string& text, int rank) {
  Letters ls;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t') continue;
    if (ch == '1' && text.size() == 1) break;  // "1" denotes the identity
    if (ch >= 'a' && ch <= 'z')
      ls.push_back(ch - 'a' + 1);
    else if (ch >= 'A' && ch <= 'Z')
      ls.push_back(-(ch - 'A' + 1));
    else
      throw error(errc::parse_error,
                  std::string("bad character '") + ch + "' in word");
  }
  return Word(ls, rank);
}

std::string letters_to_string(const Letters& ls) {
  std::string s;
  for (Letter l : ls) {
    int i = std::abs(l) - 1;
    s += (char)(l > 0 ? 'a' + i : 'A' + i);
  }
  if (s.empty()) s = "1";
  return s;
}

}  // namespace ctinv
