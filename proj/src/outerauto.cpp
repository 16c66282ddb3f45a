#include "ctinv/outerauto.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "ctinv/stallings.hpp"

namespace ctinv {

Endo Endo::identity(int n) {
  Endo e;
  for (int i = 1; i <= n; ++i) e.images.push_back(Word::generator(i, n));
  return e;
}

Word Endo::apply(const Word& w) const {
  Word out = Word::identity(rank());
  for (Letter l : w.letters()) {
    const Word& im = images[std::abs(l) - 1];
    out = out * (l > 0 ? im : im.inverse());
  }
  return out;
}

Endo Endo::compose(const Endo& inner) const {
  Endo out;
  for (const Word& w : inner.images) out.images.push_back(apply(w));
  return out;
}

bool is_automorphism(const Endo& e) {
  int n = e.rank();
  if (n == 0) return false;
  SubgroupGraph g = SubgroupGraph::fold(e.images, n);
  return g.subgroup_rank() == n;
}

namespace {

struct NielsenOp {
  int i, j;   // m_i <- m_i * m_j^delta (right) or m_j^delta * m_i (left)
  int delta;  // +-1
  bool right;
};

// Elementary automorphism on the y-alphabet corresponding to an op.
Endo op_endo(const NielsenOp& op, int n) {
  Endo e = Endo::identity(n);
  Word yj = Word::generator(op.j + 1, n);
  if (op.delta < 0) yj = yj.inverse();
  Word yi = Word::generator(op.i + 1, n);
  e.images[op.i] = op.right ? yi * yj : yj * yi;
  return e;
}

std::string tuple_key(const std::vector<Word>& t) {
  std::string s;
  for (const Word& w : t) {
    s += w.str();
    s += '|';
  }
  return s;
}

bool is_letter_basis(const std::vector<Word>& t) {
  std::set<int> seen;
  for (const Word& w : t) {
    if (w.size() != 1) return false;
    seen.insert(std::abs(w.letters()[0]));
  }
  return (int)seen.size() == (int)t.size();
}

long long total_len(const std::vector<Word>& t) {
  long long s = 0;
  for (const Word& w : t) s += w.size();
  return s;
}

}  // namespace

Endo invert(const Endo& e) {
  int n = e.rank();
  if (!is_automorphism(e))
    throw error(errc::not_automorphism, "images do not form a basis");

  // Nielsen-reduce the image tuple, recording the elementary moves. Greedy
  // strict reduction first; equal-length detours searched when stuck.
  using State = std::vector<Word>;
  State start = e.images;
  std::vector<NielsenOp> ops;

  auto moves_of = [&](const State& t) {
    std::vector<std::pair<NielsenOp, Word>> out;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int delta : {1, -1})
          for (bool right : {true, false}) {
            Word mj = delta > 0 ? t[j] : t[j].inverse();
            Word w = right ? t[i] * mj : mj * t[i];
            out.push_back({NielsenOp{i, j, delta, right}, w});
          }
      }
    return out;
  };

  State cur = start;
  bool progress = true;
  while (progress && !is_letter_basis(cur)) {
    progress = false;
    for (auto& [op, w] : moves_of(cur)) {
      if (w.size() < cur[op.i].size() && !w.trivial()) {
        cur[op.i] = w;
        ops.push_back(op);
        progress = true;
        break;
      }
    }
  }

  if (!is_letter_basis(cur)) {
    // breadth-first through non-increasing moves
    struct Node {
      State t;
      std::vector<NielsenOp> path;
    };
    std::set<std::string> visited;
    std::deque<Node> q;
    q.push_back({cur, {}});
    visited.insert(tuple_key(cur));
    bool found = false;
    int budget = 20000;
    while (!q.empty() && budget-- > 0) {
      Node nd = q.front();
      q.pop_front();
      if (is_letter_basis(nd.t)) {
        for (const NielsenOp& op : nd.path) ops.push_back(op);
        cur = nd.t;
        found = true;
        break;
      }
      for (auto& [op, w] : moves_of(nd.t)) {
        if (w.trivial() || w.size() > nd.t[op.i].size()) continue;
        Node next = nd;
        next.t[op.i] = w;
        std::string key = tuple_key(next.t);
        if (visited.insert(key).second) {
          next.path.push_back(op);
          if (w.size() < nd.t[op.i].size())
            q.push_front(std::move(next));
          else
            q.push_back(std::move(next));
        }
      }
    }
    if (!found)
      throw error(errc::not_automorphism, "basis inversion search exhausted");
  }

  // cur[i] = x_{pi(i)}^{eps_i}; sigma(y_i) = x_{pi(i)}^{eps_i}
  Endo sigma_inv;
  sigma_inv.images.assign(n, Word());
  for (int i = 0; i < n; ++i) {
    Letter l = cur[i].letters()[0];
    int target = std::abs(l) - 1;
    Word yi = Word::generator(i + 1, n);
    sigma_inv.images[target] = l > 0 ? yi : yi.inverse();
  }

  Endo inv = sigma_inv;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    inv = op_endo(*it, n).compose(inv);

  // verify before returning
  for (int i = 1; i <= n; ++i) {
    if (e.apply(inv.images[i - 1]) != Word::generator(i, n))
      throw error(errc::internal, "basis inversion verification failed");
  }
  return inv;
}

// ---- OuterAuto ------------------------------------------------------------

OuterAuto::OuterAuto(Endo e) : endo_(std::move(e)) {
  if (!is_automorphism(endo_))
    throw error(errc::not_automorphism, "generator images do not form a basis");
}

OuterAuto OuterAuto::identity(int rank) {
  return OuterAuto(Endo::identity(rank));
}

OuterAuto OuterAuto::parse(const std::string& text, int rank) {
  Endo e;
  e.images.assign(rank, Word());
  std::vector<bool> seen(rank, false);
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.find_first_not_of(" \t\n") == std::string::npos) continue;
    auto arrow = part.find("->");
    if (arrow == std::string::npos)
      throw error(errc::parse_error, "expected 'xK -> word' in: " + part);
    std::string lhs = part.substr(0, arrow);
    std::string rhs = part.substr(arrow + 2);
    auto strip = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\n");
      size_t e2 = s.find_last_not_of(" \t\n");
      return b == std::string::npos ? std::string() : s.substr(b, e2 - b + 1);
    };
    lhs = strip(lhs);
    rhs = strip(rhs);
    if (lhs.size() < 2 || lhs[0] != 'x')
      throw error(errc::parse_error, "bad generator name: " + lhs);
    int k = std::atoi(lhs.c_str() + 1);
    if (k < 1 || k > rank)
      throw error(errc::parse_error, "generator index out of range: " + lhs);
    e.images[k - 1] = parse_word(rhs, rank);
    seen[k - 1] = true;
  }
  for (int i = 0; i < rank; ++i)
    if (!seen[i])
      throw error(errc::parse_error,
                  "missing image for x" + std::to_string(i + 1));
  return OuterAuto(std::move(e));
}

OuterAuto OuterAuto::compose(const OuterAuto& inner) const {
  return OuterAuto(endo_.compose(inner.endo_));
}

OuterAuto OuterAuto::inverse() const { return OuterAuto(invert(endo_)); }

CyclicWord OuterAuto::apply_class(const CyclicWord& c) const {
  return conjugacy_class(endo_.apply(c.word()));
}

std::string OuterAuto::str() const {
  std::string s;
  for (int i = 0; i < rank(); ++i) {
    if (i) s += "; ";
    s += "x" + std::to_string(i + 1) + " -> " + endo_.images[i].str();
  }
  return s;
}

bool outer_equal(const OuterAuto& u, const OuterAuto& v) {
  if (u.rank() != v.rank())
    throw error(errc::not_automorphism, "rank mismatch");
  int n = u.rank();
  Endo h = u.endo().compose(invert(v.endo()));
  if (n == 1) return h.images[0] == Word::generator(1, 1);

  // h is inner iff some g conjugates every generator image back.
  Word hx1 = h.images[0];
  // hx1 must be c x1 c^-1 exactly
  const Letters& ls = hx1.letters();
  if (ls.size() % 2 != 1) return false;
  size_t mid = ls.size() / 2;
  if (ls[mid] != 1) return false;
  Letters c(ls.begin(), ls.begin() + mid);
  for (size_t i = 0; i < mid; ++i)
    if (ls[ls.size() - 1 - i] != -c[i]) return false;
  Word g1(c, n);

  // g = g1 * x1^t for some t; determine t from x2 and check the rest
  Word x1 = Word::generator(1, n);
  long long bound = 2;
  for (const Word& im : h.images) bound += im.size();
  for (long long t = -bound; t <= bound; ++t) {
    Word g = g1 * x1.power((int)t);
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      if (h.images[i - 1] != Word::generator(i, n).conjugate(g)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

bool verify_conjugator(const OuterAuto& phi, const OuterAuto& psi,
                       const OuterAuto& theta) {
  OuterAuto conj = theta.compose(phi).compose(theta.inverse());
  return outer_equal(conj, psi);
}

}  // namespace ctinv
