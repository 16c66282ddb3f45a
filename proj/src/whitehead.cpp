#include "ctinv/whitehead.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace ctinv {

namespace {

std::vector<Endo> signed_permutations(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<Endo> out;
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Endo e;
      for (int i = 0; i < n; ++i) {
        Word g = Word::generator(perm[i], n);
        e.images.push_back((mask >> i) & 1 ? g.inverse() : g);
      }
      out.push_back(e);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

std::vector<Endo> whitehead_type_two(int n) {
  // letters: +-1..+-n; (A, a) with a in A, a^-1 not in A; x not in {a,a^-1}:
  //   x,x^-1 notin A   -> x
  //   x in A only      -> x a
  //   x^-1 in A only   -> a^-1 x
  //   both in A        -> a^-1 x a
  std::vector<Endo> out;
  std::vector<int> letters;
  for (int i = 1; i <= n; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  for (int a : letters) {
    std::vector<int> rest;
    for (int l : letters)
      if (l != a && l != -a) rest.push_back(l);
    int m = (int)rest.size();
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::set<int> A = {a};
      for (int i = 0; i < m; ++i)
        if ((mask >> i) & 1) A.insert(rest[i]);
      Endo e;
      bool trivial = true;
      Word wa({a}, n);
      for (int g = 1; g <= n; ++g) {
        if (g == std::abs(a)) {
          e.images.push_back(Word::generator(g, n));
          continue;
        }
        bool pos = A.count(g), neg = A.count(-g);
        Word x = Word::generator(g, n);
        Word img = x;
        if (pos && !neg)
          img = x * wa;
        else if (!pos && neg)
          img = wa.inverse() * x;
        else if (pos && neg)
          img = wa.inverse() * x * wa;
        if (!(img == x)) trivial = false;
        e.images.push_back(img);
      }
      if (!trivial) out.push_back(e);
    }
  }
  return out;
}

std::vector<Endo> whitehead_automorphisms(int n) {
  std::vector<Endo> out = signed_permutations(n);
  std::vector<Endo> t2 = whitehead_type_two(n);
  out.insert(out.end(), t2.begin(), t2.end());
  return out;
}

long long tuple_cyclic_length(const std::vector<CyclicWord>& tuple) {
  long long s = 0;
  for (const CyclicWord& c : tuple) s += c.size();
  return s;
}

namespace {

using Tuple = std::vector<CyclicWord>;

Tuple apply_tuple(const Endo& e, const Tuple& t) {
  Tuple out;
  for (const CyclicWord& c : t) out.push_back(conjugacy_class(e.apply(c.word())));
  return out;
}

std::string tuple_key(const Tuple& t) {
  std::string s;
  for (const CyclicWord& c : t) {
    s += c.str();
    s += ';';
  }
  return s;
}

// reduce to minimal total cyclic length, recording the composition
std::pair<Tuple, Endo> reduce_tuple(const Tuple& t, int rank,
                                    const std::vector<Endo>& t2) {
  Tuple cur = t;
  Endo acc = Endo::identity(rank);
  bool progress = true;
  while (progress) {
    progress = false;
    long long len = tuple_cyclic_length(cur);
    for (const Endo& e : t2) {
      Tuple next = apply_tuple(e, cur);
      if (tuple_cyclic_length(next) < len) {
        cur = std::move(next);
        acc = e.compose(acc);
        progress = true;
        break;
      }
    }
  }
  return {cur, acc};
}

}  // namespace

WhiteheadResult whitehead_orbit(const Tuple& t1, const Tuple& t2, int rank) {
  if (t1.size() != t2.size())
    throw error(errc::internal, "whitehead_orbit: tuple lengths differ");
  std::vector<Endo> gens = whitehead_automorphisms(rank);
  std::vector<Endo> type2 = whitehead_type_two(rank);

  auto [r1, e1] = reduce_tuple(t1, rank, type2);
  auto [r2, e2] = reduce_tuple(t2, rank, type2);
  if (tuple_cyclic_length(r1) != tuple_cyclic_length(r2)) return {false, {}};
  long long min_len = tuple_cyclic_length(r1);

  // breadth-first through the minimal level from r1
  std::map<std::string, Endo> visited;
  std::queue<Tuple> q;
  visited.emplace(tuple_key(r1), Endo::identity(rank));
  q.push(r1);
  std::string goal = tuple_key(r2);
  int budget = 200000;
  while (!q.empty() && budget-- > 0) {
    Tuple cur = q.front();
    q.pop();
    Endo path = visited.at(tuple_key(cur));
    if (tuple_key(cur) == goal) {
      // witness: e2^-1 . path . e1
      Endo w = invert(e2).compose(path.compose(e1));
      return {true, w};
    }
    for (const Endo& g : gens) {
      Tuple next = apply_tuple(g, cur);
      if (tuple_cyclic_length(next) != min_len) continue;
      std::string key = tuple_key(next);
      if (!visited.count(key)) {
        visited.emplace(key, g.compose(path));
        q.push(next);
      }
    }
  }
  if (budget <= 0)
    throw error(errc::internal, "whitehead_orbit: search budget exhausted");
  return {false, {}};
}

}  // namespace ctinv
