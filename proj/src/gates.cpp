#include "rca/gates.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace rca {

namespace {

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

void GateWord::push(int pos, const Permutation& g) {
  if (pos < 0 || pos > n - gate_width) throw std::out_of_range("gate position");
  if (static_cast<uint64_t>(g.size()) != ipow(alphabet.size(), gate_width))
    throw std::invalid_argument("gate domain mismatch");
  if (g.sign() != +1) throw GatesNotEven();
  if (g.is_identity()) return;
  gates.push_back({pos, g});
}

GateWord& GateWord::operator+=(const GateWord& o) {
  if (o.n != n || o.gate_width != gate_width) throw std::invalid_argument("gate word mismatch");
  gates.insert(gates.end(), o.gates.begin(), o.gates.end());
  return *this;
}

GateWord GateWord::inverse() const {
  GateWord r(alphabet, n, gate_width);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it)
    r.gates.push_back({it->pos, it->g.inverse()});
  return r;
}

Word GateWord::apply(const Word& w) const {
  if (w.size() != n) throw std::invalid_argument("word length mismatch");
  std::vector<Symbol> s = w.symbols;
  int base = alphabet.size();
  for (const auto& g : gates) {
    int v = 0;
    for (int i = 0; i < gate_width; ++i) v = v * base + s[g.pos + i];
    v = g.g(v);
    for (int i = gate_width - 1; i >= 0; --i) {
      s[g.pos + i] = static_cast<Symbol>(v % base);
      v /= base;
    }
  }
  return Word(alphabet, std::move(s));
}

uint64_t GateWord::apply_rank(uint64_t rank) const {
  return word_rank(apply(word_unrank(alphabet, n, rank)));
}

Permutation GateWord::to_permutation() const {
  uint64_t total = ipow(alphabet.size(), n);
  std::vector<int> img(total);
  for (uint64_t r = 0; r < total; ++r) img[r] = static_cast<int>(apply_rank(r));
  return Permutation(std::move(img));
}

void GateWord::peephole() {
  std::vector<Gate> out;
  for (auto& g : gates) {
    if (!out.empty() && out.back().pos == g.pos && (out.back().g * g.g).is_identity())
      out.pop_back();
    else
      out.push_back(g);
  }
  gates = std::move(out);
}

Word gate_word_apply(const GateWord& gw, const Word& w) { return gw.apply(w); }

Permutation hyperedge_cycle(int N, const Hyperedge3& e) {
  return Permutation::from_cycles(N, {{e.a, e.b, e.c}});
}

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void merge(int a, int b) { up[find(a)] = find(b); }
};

// Writes target over generator tokens by BFS in the group itself (small N).
std::vector<int> group_bfs_word(const std::vector<Permutation>& gens, const Permutation& target) {
  int n = target.size();
  Permutation id = Permutation::identity(n);
  if (target == id) return {};
  std::map<Permutation, std::pair<Permutation, int>> parent;  // state -> (prev, token)
  std::queue<Permutation> q;
  parent.emplace(id, std::make_pair(id, 0));
  q.push(id);
  while (!q.empty()) {
    Permutation cur = q.front();
    q.pop();
    for (size_t i = 0; i < gens.size(); ++i)
      for (int sgn : {+1, -1}) {
        Permutation next = (sgn > 0 ? gens[i] : gens[i].inverse()) * cur;
        if (parent.count(next)) continue;
        parent.emplace(next, std::make_pair(cur, sgn * static_cast<int>(i + 1)));
        if (next == target) {
          std::vector<int> toks;
          Permutation at = target;
          while (!(at == id)) {
            auto& pr = parent.at(at);
            toks.push_back(pr.second);
            at = pr.first;
          }
          return toks;  // already in composition order (last applied first at back)
        }
        q.push(next);
      }
  }
  throw NotWeaklyConnected();  // generators do not reach the target
}

std::vector<int> inverse_tokens(const std::vector<int>& t) {
  std::vector<int> r(t.rbegin(), t.rend());
  for (int& x : r) x = -x;
  return r;
}

Permutation tokens_to_perm(const std::vector<Permutation>& gens, const std::vector<int>& toks) {
  int n = gens[0].size();
  Permutation acc = Permutation::identity(n);
  // composition order: last token acts first
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    const Permutation& g = gens[std::abs(*it) - 1];
    acc = (*it > 0 ? g : g.inverse()) * acc;
  }
  return acc;
}

// Base-cycle library for large N: words for t_w = (a0 b0 w), via a single
// reverse BFS in the triple graph (Alt(N) is 3-transitive for N >= 5).
struct TripleLibrary {
  int N, a0, b0, c0;
  std::vector<Permutation> gens;
  std::vector<int> parentTok;    // 0 = unset; else signed token whose cycle moves us closer
  std::vector<int> parentNext;   // next state index
  std::map<int, std::vector<int>> cache;  // w -> tokens for t_w

  int sid(int x, int y, int z) const { return (x * N + y) * N + z; }

  TripleLibrary(int n, const std::vector<Permutation>& g, int a, int b, int c)
      : N(n), a0(a), b0(b), c0(c), gens(g) {
    parentTok.assign(static_cast<size_t>(N) * N * N, 0);
    parentNext.assign(parentTok.size(), -1);
    std::queue<int> q;
    int goal = sid(a0, b0, c0);
    parentTok[goal] = INT_MIN;  // mark visited
    q.push(goal);
    while (!q.empty()) {
      int s = q.front();
      q.pop();
      int z = s % N, y = (s / N) % N, x = s / (N * N);
      // reverse edge: u --gamma--> s means u = gamma^{-1}(s)
      for (size_t i = 0; i < gens.size(); ++i)
        for (int sgn : {+1, -1}) {
          const Permutation g = sgn > 0 ? gens[i].inverse() : gens[i];
          int u = sid(g(x), g(y), g(z));
          if (parentTok[u] != 0) continue;
          parentTok[u] = sgn * static_cast<int>(i + 1);
          parentNext[u] = s;
          q.push(u);
        }
    }
  }

  // word h with h(a0)=a0, h(b0)=b0, h(w)=c0, as signed tokens in
  // composition order
  std::vector<int> word_fixing_pair(int w) const {
    std::vector<int> toks;
    int s = sid(a0, b0, w);
    if (parentTok[s] == 0) throw NotWeaklyConnected();
    while (s != sid(a0, b0, c0)) {
      toks.push_back(parentTok[s]);
      s = parentNext[s];
    }
    // walking applied gamma_1 first; composition order lists the last first
    std::reverse(toks.begin(), toks.end());
    return toks;
  }

  // tokens for the base cycle t_w = (a0 b0 w)
  const std::vector<int>& base_cycle(int w) {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    std::vector<int> toks;
    if (w == c0) {
      toks = {+1};
    } else {
      std::vector<int> h = word_fixing_pair(w);
      toks = inverse_tokens(h);
      toks.push_back(+1);
      toks.insert(toks.end(), h.begin(), h.end());
    }
    return cache.emplace(w, std::move(toks)).first->second;
  }

  // tokens for an arbitrary 3-cycle (p q r)
  std::vector<int> cycle_tokens(int p, int q, int r) {
    // rotate so a0 or b0 leads when present
    auto rotate_to = [&](int v) {
      while (p != v) {
        int t = p;
        p = q;
        q = r;
        r = t;
      }
    };
    std::vector<int> out;
    auto cat = [&](const std::vector<int>& t) { out.insert(out.end(), t.begin(), t.end()); };
    if (p == a0 || q == a0 || r == a0) {
      rotate_to(a0);
      if (q == b0) return base_cycle(r);                       // (a0 b0 r)
      if (r == b0) return inverse_tokens(base_cycle(q));       // (a0 q b0)
      cat(base_cycle(r));                                      // (a0 q r) = t_r o t_q^-1
      cat(inverse_tokens(base_cycle(q)));
      return out;
    }
    if (p == b0 || q == b0 || r == b0) {
      rotate_to(b0);
      cat(inverse_tokens(base_cycle(r)));                      // (b0 q r) = t_r^-1 o t_q
      cat(base_cycle(q));
      return out;
    }
    cat(cycle_tokens(a0, p, q));                               // (p q r) = (a0 p q)(a0 q r)
    cat(cycle_tokens(a0, q, r));
    return out;
  }
};

// Greedy factorization of an even permutation into 3-cycles (p, q, r).
std::vector<std::array<int, 3>> three_cycle_factorization(const Permutation& target) {
  int N = target.size();
  std::vector<int> rho = target.images();
  std::vector<std::array<int, 3>> fixers;  // applied left-multiplicatively
  for (int v = 0; v + 2 < N; ++v) {
    while (rho[v] != v) {
      int pv = rho[v];
      int x = -1;
      for (int c = v + 1; c < N; ++c)
        if (c != pv && c != v) {
          x = c;
          break;
        }
      // gamma = (pv v x), applied after rho fixes v
      std::array<int, 3> gamma = {pv, v, x};
      fixers.push_back(gamma);
      Permutation g = Permutation::from_cycles(N, {{gamma[0], gamma[1], gamma[2]}});
      for (int i = 0; i < N; ++i) rho[i] = g(rho[i]);
    }
  }
  if (!Permutation(rho).is_identity())
    throw std::logic_error("even permutation did not reduce to the identity");
  // target = fix_1^-1 o fix_2^-1 o ...; inverse of (a b c) is (a c b)
  std::vector<std::array<int, 3>> cycles;
  for (auto& f : fixers) cycles.push_back({f[0], f[2], f[1]});
  return cycles;
}

}  // namespace

std::vector<int> alt_word_from_3cycles(int N, const std::vector<Hyperedge3>& H,
                                       const Permutation& target) {
  if (target.size() != N) throw std::invalid_argument("target domain mismatch");
  UnionFind uf(N);
  for (const auto& e : H) {
    uf.merge(e.a, e.b);
    uf.merge(e.b, e.c);
  }
  for (int v = 1; v < N; ++v)
    if (uf.find(v) != uf.find(0)) throw NotWeaklyConnected();
  if (H.empty()) throw NotWeaklyConnected();
  if (target.sign() != +1) throw GatesNotEven();

  std::vector<Permutation> gens;
  gens.reserve(H.size());
  for (const auto& e : H) gens.push_back(hyperedge_cycle(N, e));

  std::vector<int> toks;
  if (N <= 7) {
    toks = group_bfs_word(gens, target);
  } else {
    TripleLibrary lib(N, gens, H[0].a, H[0].b, H[0].c);
    for (const auto& c : three_cycle_factorization(target)) {
      auto t = lib.cycle_tokens(c[0], c[1], c[2]);
      toks.insert(toks.end(), t.begin(), t.end());
    }
  }
  if (!(tokens_to_perm(gens, toks) == target))
    throw std::logic_error("three-cycle word verification failed");
  return toks;
}

// ---------------------------------------------------------------------------
// Width-2 synthesis for |A| >= 3
// ---------------------------------------------------------------------------

namespace {

// permutation of A^2 from a map on pairs
Permutation pair_perm(int A, const std::function<std::pair<int, int>(int, int)>& f) {
  std::vector<int> img(A * A);
  for (int a = 0; a < A; ++a)
    for (int b = 0; b < A; ++b) {
      auto [x, y] = f(a, b);
      img[a * A + b] = x * A + y;
    }
  return Permutation(std::move(img));
}

int flip01(int v) { return v == 0 ? 1 : v == 1 ? 0 : v; }

// the sweep pair map: if a = 0 it becomes 1 exactly when b != 0
Permutation sweep_perm(int A) {
  return pair_perm(A, [A](int a, int b) -> std::pair<int, int> {
    if (b != 0 && (a == 0 || a == 1)) return {flip01(a), b};
    if (A % 2 == 0 && a == 2 && (b == 0 || b == 1)) return {a, flip01(b)};
    return {a, b};
  });
}

// flip 0<->1 in the left slot when the right slot lies in S
Permutation beta_right(int A, const std::vector<int>& S) {
  return pair_perm(A, [&S](int a, int b) -> std::pair<int, int> {
    if (std::find(S.begin(), S.end(), b) != S.end()) return {flip01(a), b};
    return {a, b};
  });
}

// flip 0<->1 in the right slot when the left slot lies in S
Permutation beta_left(int A, const std::vector<int>& S) {
  return pair_perm(A, [&S](int a, int b) -> std::pair<int, int> {
    if (std::find(S.begin(), S.end(), a) != S.end()) return {a, flip01(b)};
    return {a, b};
  });
}

GateWord commutator_program(const GateWord& g, const GateWord& h) {
  // [g, h] = g^-1 h^-1 g h; as a program h runs first
  GateWord r = h;
  r += g;
  r += h.inverse();
  r += g.inverse();
  return r;
}

// C_new = C o [C, h]^-1 = C h^-1 C^-1 h C as a program (C runs first)
GateWord absorb(const GateWord& C, const GateWord& h) {
  GateWord r = C;
  r += h;
  r += C.inverse();
  r += h.inverse();
  r += C;
  return r;
}

// Adds to C (= rotation at j controlled by zeros elsewhere so far) the
// condition "cell t = 0" for an adjacent cell t = j-1, via the Z3 exponent
// bookkeeping over pair flips.
GateWord extend_adjacent_left(const GateWord& C, int j, int A) {
  GateWord cur = C;
  if (A % 2 == 1) {
    std::vector<int> all;
    for (int v = 1; v < A; ++v) all.push_back(v);
    GateWord h(C.alphabet, C.n, 2);
    h.push(j - 1, beta_left(A, all));
    return absorb(cur, h);
  }
  // even |A|: cycle pairs {v, v+1}, each absorbed twice
  for (int rep = 0; rep < 2; ++rep)
    for (int v = 1; v < A; ++v) {
      int w = v == A - 1 ? 1 : v + 1;
      if (A == 2) throw AlphabetTooSmall();
      GateWord h(C.alphabet, C.n, 2);
      h.push(j - 1, beta_left(A, {v, w}));
      cur = absorb(cur, h);
    }
  return cur;
}

GateWord extend_adjacent_right(const GateWord& C, int j, int A) {
  GateWord cur = C;
  if (A % 2 == 1) {
    std::vector<int> all;
    for (int v = 1; v < A; ++v) all.push_back(v);
    GateWord h(C.alphabet, C.n, 2);
    h.push(j, beta_right(A, all));
    return absorb(cur, h);
  }
  for (int rep = 0; rep < 2; ++rep)
    for (int v = 1; v < A; ++v) {
      int w = v == A - 1 ? 1 : v + 1;
      GateWord h(C.alphabet, C.n, 2);
      h.push(j, beta_right(A, {v, w}));
      cur = absorb(cur, h);
    }
  return cur;
}

}  // namespace

Permutation controlled_rotation_perm(const Alphabet& a, int n, int j, int dir) {
  uint64_t total = ipow(a.size(), n);
  std::vector<int> img(total);
  std::vector<int> rot(a.size());
  for (int v = 0; v < a.size(); ++v) rot[v] = v;
  if (dir > 0) {
    rot[0] = 1;
    rot[1] = 2;
    rot[2] = 0;
  } else {
    rot[0] = 2;
    rot[2] = 1;
    rot[1] = 0;
  }
  for (uint64_t r = 0; r < total; ++r) {
    Word w = word_unrank(a, n, r);
    bool zeros = true;
    for (int i = 0; i < n && zeros; ++i)
      if (i != j && w[i] != 0) zeros = false;
    if (zeros) {
      auto s = w.symbols;
      s[j] = static_cast<Symbol>(rot[s[j]]);
      img[r] = static_cast<int>(word_rank(Word(a, s)));
    } else {
      img[r] = static_cast<int>(r);
    }
  }
  return Permutation(std::move(img));
}

GateWord controlled_rotation_gadget(const Alphabet& a, int n, int j, int dir) {
  int A = a.size();
  if (A < 3) throw AlphabetTooSmall();
  if (n < 2 || j < 0 || j >= n) throw std::invalid_argument("bad coordinate");
  Permutation rot = Permutation::from_cycles(A, {{0, 1, 2}});
  GateWord C(a, n, 2);
  if (j < n - 1) {
    // rotation at j controlled by "cell j+1 = 0" is itself one even gate
    C.push(j, pair_perm(A, [&](int x, int y) -> std::pair<int, int> {
             return y == 0 ? std::make_pair(rot(x), y) : std::make_pair(x, y);
           }));
    for (int t = j + 2; t <= n - 1; ++t) {
      // sweep the flag of cell t into cell j+1
      GateWord psi(a, n, 2);
      for (int p = t - 1; p >= j + 1; --p) psi.push(p, sweep_perm(A));
      GateWord h = psi;  // h = psi^-1 beta psi as a program: psi, beta, psi^-1
      GateWord b(a, n, 2);
      b.push(j, beta_right(A, {1, 2}));
      h += b;
      h += psi.inverse();
      C = absorb(C, h);
    }
    if (j > 0) C = extend_adjacent_left(C, j, A);
    for (int t = j - 2; t >= 0; --t) {
      GateWord psi(a, n, 2);
      for (int p = t; p <= j - 2; ++p) psi.push(p, sweep_perm(A).conjugated_by(
                                                       pair_perm(A, [](int x, int y) {
                                                         return std::make_pair(y, x);
                                                       })));
      GateWord h = psi;
      GateWord b(a, n, 2);
      b.push(j - 1, beta_left(A, {1, 2}));
      h += b;
      h += psi.inverse();
      C = absorb(C, h);
    }
  } else {
    // rightmost coordinate: anchor on the left neighbor
    C.push(j - 1, pair_perm(A, [&](int x, int y) -> std::pair<int, int> {
             return x == 0 ? std::make_pair(x, rot(y)) : std::make_pair(x, y);
           }));
    for (int t = j - 2; t >= 0; --t) {
      GateWord psi(a, n, 2);
      for (int p = t; p <= j - 2; ++p) psi.push(p, sweep_perm(A).conjugated_by(
                                                       pair_perm(A, [](int x, int y) {
                                                         return std::make_pair(y, x);
                                                       })));
      GateWord h = psi;
      GateWord b(a, n, 2);
      b.push(j - 1, beta_left(A, {1, 2}));
      h += b;
      h += psi.inverse();
      C = absorb(C, h);
    }
  }
  if (dir < 0) C = C.inverse();
  return C;
}

namespace {

// even extension of the partial map s_i -> targets[i] on {0..A-1}
Permutation even_extension(int A, const std::vector<int>& sources,
                           const std::vector<int>& targets) {
  std::vector<int> img(A, -1);
  std::vector<bool> used(A, false);
  for (size_t i = 0; i < sources.size(); ++i) {
    img[sources[i]] = targets[i];
    used[targets[i]] = true;
  }
  std::vector<int> freeT;
  for (int v = 0; v < A; ++v)
    if (!used[v]) freeT.push_back(v);
  size_t k = 0;
  std::vector<int> freeS;
  for (int v = 0; v < A; ++v)
    if (img[v] < 0) freeS.push_back(v);
  for (int v : freeS) img[v] = freeT[k++];
  Permutation p(img);
  if (p.sign() == +1) return p;
  if (freeT.size() >= 2) {
    std::swap(img[freeS[0]], img[freeS[1]]);
    return Permutation(img);
  }
  return p;  // odd; caller tries the other orientation
}

}  // namespace

GateWord decompose_even(const Alphabet& a, int n, const Permutation& pi) {
  int A = a.size();
  if (A < 3) throw AlphabetTooSmall();
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  uint64_t total = ipow(A, n);
  if (static_cast<uint64_t>(pi.size()) != total) throw std::invalid_argument("domain mismatch");
  if (pi.sign() != +1) throw GatesNotEven();
  GateWord out(a, n, 2);
  if (pi.is_identity()) return out;
  if (n == 2) {
    out.push(0, pi);
    return out;
  }

  // hypergraph of single-coordinate triples
  std::vector<Hyperedge3> H;
  struct EdgeInfo {
    int j;
    std::vector<Symbol> ctx;  // length n-1
    int s0, s1, s2;
  };
  std::vector<EdgeInfo> infos;
  uint64_t ctxTotal = ipow(A, n - 1);
  for (int j = 0; j < n; ++j)
    for (uint64_t cz = 0; cz < ctxTotal; ++cz) {
      Word ctx = word_unrank(Alphabet(A), n - 1, cz);
      for (int s0 = 0; s0 < A; ++s0)
        for (int s1 = s0 + 1; s1 < A; ++s1)
          for (int s2 = s1 + 1; s2 < A; ++s2) {
            auto vertex = [&](int s) {
              std::vector<Symbol> w(ctx.symbols.begin(), ctx.symbols.end());
              w.insert(w.begin() + j, static_cast<Symbol>(s));
              return static_cast<int>(word_rank(Word(a, w)));
            };
            H.push_back({vertex(s0), vertex(s1), vertex(s2)});
            infos.push_back({j, ctx.symbols, s0, s1, s2});
          }
    }

  std::vector<int> toks = alt_word_from_3cycles(static_cast<int>(total), H, pi);

  // cache the anchored rotation gadgets per coordinate
  std::vector<GateWord> gadget(n);
  std::vector<bool> have(n, false);
  auto anchored = [&](int j) -> const GateWord& {
    if (!have[j]) {
      gadget[j] = controlled_rotation_gadget(a, n, j, +1);
      have[j] = true;
    }
    return gadget[j];
  };

  // composition order: the last token acts first
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    const EdgeInfo& e = infos[std::abs(*it) - 1];
    int sgn = *it > 0 ? +1 : -1;
    // cleanup: context to zero, the triple to (0,1,2) or (0,2,1)
    GateWord X(a, n, 2);
    for (int k = 0; k < n - 1; ++k) {
      int coord = k < e.j ? k : k + 1;
      int v = e.ctx[k];
      if (v == 0) continue;
      int third = 0;
      while (third == v || third == 0) ++third;
      Permutation tau = Permutation::from_cycles(A, {{v, 0, third}});
      if (coord <= n - 2)
        X.push(coord, pair_perm(A, [&](int x, int y) { return std::make_pair(tau(x), y); }));
      else
        X.push(n - 2, pair_perm(A, [&](int x, int y) { return std::make_pair(x, tau(y)); }));
    }
    int orient = 0;
    Permutation mu = even_extension(A, {e.s0, e.s1, e.s2}, {0, 1, 2});
    if (mu.sign() == +1) {
      orient = +1;
    } else {
      mu = even_extension(A, {e.s0, e.s1, e.s2}, {0, 2, 1});
      if (mu.sign() != +1) throw std::logic_error("no even relabeling found");
      orient = -1;
    }
    if (e.j <= n - 2)
      X.push(e.j, pair_perm(A, [&](int x, int y) { return std::make_pair(mu(x), y); }));
    else
      X.push(n - 2, pair_perm(A, [&](int x, int y) { return std::make_pair(x, mu(y)); }));

    GateWord frag = X;
    const GateWord& K = anchored(e.j);
    if (orient * sgn > 0)
      frag += K;
    else
      frag += K.inverse();
    frag += X.inverse();
    out += frag;
  }
  out.peephole();
  return out;
}

// ---------------------------------------------------------------------------
// Binary width-3 synthesis
// ---------------------------------------------------------------------------

namespace {

// ranks of permutations of 8 points (8! = 40320) for the letter BFS
int rank8(const Permutation& p) {
  int lehmer = 0;
  std::array<int, 8> img;
  for (int i = 0; i < 8; ++i) img[i] = p(i);
  for (int i = 0; i < 8; ++i) {
    int smaller = 0;
    for (int k = i + 1; k < 8; ++k)
      if (img[k] < img[i]) ++smaller;
    lehmer = lehmer * (8 - i) + smaller;
  }
  return lehmer;
}

Permutation bit_perm3(const std::function<int(int)>& f) {
  std::vector<int> img(8);
  for (int v = 0; v < 8; ++v) img[v] = f(v);
  return Permutation(std::move(img));
}

// window value helpers: v = 4*b0 + 2*b1 + b2 (leftmost bit most significant)
int getbit(int v, int i) { return (v >> (2 - i)) & 1; }

// Letters: (3,3)-type elements of Alt(8) realizable as a conjugated
// controlled pair-rotation. Each stores its base family and conjugator.
struct BinaryLetter {
  Permutation perm;     // element of Alt(8) on window values
  int family;           // 0: alpha on (b1,b2) free b0; 1: alpha on (b0,b1) free b2
  Permutation alpha;    // 3-cycle on 4 pair values
  Permutation conj;     // even window permutation g with perm = g^-1 base g
};

struct BinaryBase {
  std::vector<BinaryLetter> letters;
  std::vector<int> parentLetter;  // per rank8; -1 unset, -2 identity
  std::vector<int> parentState;

  BinaryBase() {
    // base perms: family 0: id_{b0} x alpha ; family 1: alpha x id_{b2}
    std::vector<Permutation> alphas;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z) {
          if (x == y || y == z || x == z) continue;
          alphas.push_back(Permutation::from_cycles(4, {{x, y, z}}));
        }
    std::vector<std::pair<int, Permutation>> bases;
    for (const auto& al : alphas) {
      bases.emplace_back(0, bit_perm3([&](int v) {
                           int pair = ((v >> 1) & 1) * 2 + (v & 1);
                           int np = al(pair);
                           return (v & 4) | ((np >> 1) << 1) | (np & 1);
                         }));
      bases.emplace_back(1, bit_perm3([&](int v) {
                           int pair = (v >> 1) & 3;
                           int np = al(pair);
                           return (np << 1) | (v & 1);
                         }));
    }
    // all (3,3)-type elements of Alt(8), with an even conjugator onto a base
    std::map<int, bool> seen;
    std::vector<Permutation> all33;
    {
      // enumerate by BFS over Alt(8)? cheaper: direct enumeration of two
      // disjoint oriented 3-cycles
      for (int m1 = 0; m1 < 8; ++m1)
        for (int m2 = m1 + 1; m2 < 8; ++m2)
          for (int m3 = m1 + 1; m3 < 8; ++m3) {
            if (m3 == m2) continue;
            for (int k1 = 0; k1 < 8; ++k1) {
              if (k1 == m1 || k1 == m2 || k1 == m3) continue;
              if (k1 < m1) continue;  // canonical: first cycle holds the overall min
              for (int k2 = k1 + 1; k2 < 8; ++k2) {
                if (k2 == m1 || k2 == m2 || k2 == m3) continue;
                for (int k3 = k1 + 1; k3 < 8; ++k3) {
                  if (k3 == k2 || k3 == m1 || k3 == m2 || k3 == m3) continue;
                  Permutation p = Permutation::from_cycles(8, {{m1, m2, m3}, {k1, k2, k3}});
                  int r = rank8(p);
                  if (seen.emplace(r, true).second) all33.push_back(p);
                }
              }
            }
          }
    }
    auto find_conjugator = [&](const Permutation& base,
                               const Permutation& x) -> std::optional<Permutation> {
      auto bc = base.cycles(), xc = x.cycles();
      // align cycles of x onto cycles of base: g(x-point) = base-point
      std::vector<int> bfix, xfix;
      for (int v = 0; v < 8; ++v) {
        if (base(v) == v) bfix.push_back(v);
        if (x(v) == v) xfix.push_back(v);
      }
      for (int swapCyc = 0; swapCyc < 2; ++swapCyc)
        for (int r1 = 0; r1 < 3; ++r1)
          for (int r2 = 0; r2 < 3; ++r2)
            for (int ff = 0; ff < 2; ++ff) {
              std::vector<int> g(8, -1);
              auto& c1 = xc[0];
              auto& c2 = xc[1];
              auto& b1 = bc[swapCyc ? 1 : 0];
              auto& b2 = bc[swapCyc ? 0 : 1];
              for (int i = 0; i < 3; ++i) {
                g[c1[i]] = b1[(i + r1) % 3];
                g[c2[i]] = b2[(i + r2) % 3];
              }
              g[xfix[0]] = bfix[ff];
              g[xfix[1]] = bfix[1 - ff];
              Permutation gp(g);
              if (gp.sign() != +1) continue;
              if (x.conjugated_by(gp) == x && false) continue;
              if (base.conjugated_by(gp) == x) return gp;
            }
      return std::nullopt;
    };
    for (const auto& x : all33) {
      for (const auto& [fam, base] : bases) {
        if (auto g = find_conjugator(base, x)) {
          BinaryLetter L;
          L.perm = x;
          L.family = fam;
          // recover alpha from the base
          // base was built from alpha directly; store by matching
          L.conj = *g;
          letters.push_back(std::move(L));
          break;
        }
      }
    }
    // fill alpha per letter by re-deriving from family and base form
    // (recompute: base = conj o perm o conj^-1 ... we stored base implicitly)
    for (auto& L : letters) {
      Permutation base = L.conj * L.perm * L.conj.inverse();  // g x g^-1 = base
      std::vector<int> al(4, -1);
      bool ok = true;
      for (int v = 0; v < 8 && ok; ++v) {
        int w = base(v);
        int pv, pw;
        if (L.family == 0) {
          if ((v & 4) != (w & 4)) ok = false;
          pv = v & 3;
          pw = w & 3;
        } else {
          if ((v & 1) != (w & 1)) ok = false;
          pv = v >> 1;
          pw = w >> 1;
        }
        if (!ok) break;
        if (al[pv] == -1)
          al[pv] = pw;
        else if (al[pv] != pw)
          ok = false;
      }
      if (!ok) throw std::logic_error("letter base reconstruction failed");
      L.alpha = Permutation(al);
    }
    // BFS over Alt(8) with the letters
    parentLetter.assign(40320, -1);
    parentState.assign(40320, -1);
    Permutation id = Permutation::identity(8);
    std::queue<Permutation> q;
    parentLetter[rank8(id)] = -2;
    q.push(id);
    std::vector<Permutation> byRank(40320, Permutation());
    byRank[rank8(id)] = id;
    while (!q.empty()) {
      Permutation cur = q.front();
      q.pop();
      int rc = rank8(cur);
      for (size_t i = 0; i < letters.size(); ++i) {
        Permutation next = cur * letters[i].perm;
        int rn = rank8(next);
        if (parentLetter[rn] != -1) continue;
        parentLetter[rn] = static_cast<int>(i);
        parentState[rn] = rc;
        byRank[rn] = next;
        q.push(next);
      }
    }
    states = std::move(byRank);
  }

  std::vector<Permutation> states;

  // beta as product of letters, composition order (last acts first)
  std::vector<int> factor(const Permutation& beta) const {
    std::vector<int> out;
    int r = rank8(beta);
    if (parentLetter[r] == -1) throw std::logic_error("letter BFS did not reach the target");
    while (parentLetter[r] != -2) {
      out.push_back(parentLetter[r]);
      r = parentState[r];
    }
    // walk gave letters from last to first in the product cur * L1 * L2 ...
    // product = L_k ... applied? cur extended on the right: beta = Lk o ... o L1
    // reconstruct: parent chain pops the outermost-left letter; order matters
    return out;
  }

  static BinaryBase& instance() {
    static BinaryBase b;
    return b;
  }
};

}  // namespace

std::vector<Permutation> binary_width2_closure() {
  std::vector<Permutation> gens;
  for (int r = 0; r < 24; ++r) {
    // even permutations of {0,1}^2: A4 on 4 points
    // enumerate all of S4, keep even
    static std::vector<Permutation> a4;
    if (a4.empty()) {
      std::vector<int> base = {0, 1, 2, 3};
      std::vector<int> idx(4);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end());
      std::vector<int> v = {0, 1, 2, 3};
      do {
        Permutation p(v);
        if (p.sign() == +1) a4.push_back(p);
      } while (std::next_permutation(v.begin(), v.end()));
    }
    if (r >= static_cast<int>(a4.size())) break;
    const Permutation& al = a4[r];
    gens.push_back(bit_perm3([&](int w) {
      int pair = w >> 1;
      int np = al(pair);
      return (np << 1) | (w & 1);
    }));
    gens.push_back(bit_perm3([&](int w) {
      int pair = w & 3;
      int np = al(pair);
      return (w & 4) | np;
    }));
  }
  return group_closure(gens);
}

GateWord decompose_even_binary(int n, const Permutation& pi) {
  Alphabet a(2);
  if (n < 3) throw std::invalid_argument("binary mode needs n >= 3");
  uint64_t total = ipow(2, n);
  if (static_cast<uint64_t>(pi.size()) != total) throw std::invalid_argument("domain mismatch");
  if (pi.sign() != +1) throw GatesNotEven();
  GateWord out(a, n, 3);
  if (pi.is_identity()) return out;
  if (n == 3) {
    out.push(0, pi);
    return out;
  }

  BinaryBase& base = BinaryBase::instance();

  // hypergraph: triples equal outside one width-3 window
  std::vector<Hyperedge3> H;
  struct EdgeInfo {
    int p;
    uint32_t ctx;  // bits outside the window, low bit = leftmost context cell
    int w0, w1, w2;
  };
  std::vector<EdgeInfo> infos;
  for (int p = 0; p + 2 < n; ++p) {
    uint32_t ctxCount = 1u << (n - 3);
    for (uint32_t cz = 0; cz < ctxCount; ++cz)
      for (int w0 = 0; w0 < 8; ++w0)
        for (int w1 = w0 + 1; w1 < 8; ++w1)
          for (int w2 = w1 + 1; w2 < 8; ++w2) {
            auto vertex = [&](int wv) {
              std::vector<Symbol> bits(n);
              int ci = 0;
              for (int i = 0; i < n; ++i) {
                if (i >= p && i <= p + 2)
                  bits[i] = static_cast<Symbol>(getbit(wv, i - p));
                else
                  bits[i] = static_cast<Symbol>((cz >> ci++) & 1);
              }
              return static_cast<int>(word_rank(Word(a, bits)));
            };
            H.push_back({vertex(w0), vertex(w1), vertex(w2)});
            infos.push_back({p, cz, w0, w1, w2});
          }
  }

  std::vector<int> toks = alt_word_from_3cycles(static_cast<int>(total), H, pi);

  // gate helpers -----------------------------------------------------------
  auto flip_bit_gate = [&](GateWord& gw, int bit) {
    int q = std::clamp(bit - 1, 0, n - 3);
    int inpos = bit - q;
    gw.push(q, bit_perm3([&](int v) { return v ^ (1 << (2 - inpos)); }));
  };
  auto swap_bits_gate = [&](GateWord& gw, int i) {
    // swap cells i and i+1
    int q = std::clamp(i - 1, 0, n - 3);
    int x = i - q, y = i + 1 - q;
    gw.push(q, bit_perm3([&](int v) {
              int bi = getbit(v, x), bj = getbit(v, y);
              int r = v & ~((1 << (2 - x)) | (1 << (2 - y)));
              r |= bi << (2 - y);
              r |= bj << (2 - x);
              return r;
            }));
  };

  // ctrl{beta at window p}{bit p+3 = 1}, beta in Alt(2^3)
  std::function<GateWord(const Permutation&, int)> ctrl_right1 = [&](const Permutation& beta,
                                                                     int p) {
    GateWord w(a, n, 3);
    for (int li : base.factor(beta)) {
      const BinaryLetter& L = base.letters[li];
      GateWord piece(a, n, 3);
      piece.push(p, L.conj);  // g first
      if (L.family == 0) {
        // alpha on (b1,b2) iff bit p+3 = 1: direct gate at p+1
        piece.push(p + 1, bit_perm3([&](int v) {
                     if ((v & 1) == 0) return v;
                     int pair = v >> 1;
                     return (L.alpha(pair) << 1) | 1;
                   }));
      } else {
        // alpha on (b0,b1) iff bit p+3 = 1: swap (p+2, p+3), gate at p, undo
        swap_bits_gate(piece, p + 2);
        piece.push(p, bit_perm3([&](int v) {
                     if ((v & 1) == 0) return v;
                     int pair = v >> 1;
                     return (L.alpha(pair) << 1) | 1;
                   }));
        swap_bits_gate(piece, p + 2);
      }
      piece.push(p, L.conj.inverse());
      w += piece;
    }
    return w;
  };
  auto ctrl_left1 = [&](const Permutation& beta, int p) {
    // ctrl{beta at window p}{bit p-1 = 1}: mirror of ctrl_right1
    GateWord w(a, n, 3);
    for (int li : base.factor(beta)) {
      const BinaryLetter& L = base.letters[li];
      GateWord piece(a, n, 3);
      piece.push(p, L.conj);
      if (L.family == 1) {
        // alpha on (b0,b1) iff bit p-1 = 1: direct gate at p-1
        piece.push(p - 1, bit_perm3([&](int v) {
                     if ((v & 4) == 0) return v;
                     int pair = v & 3;
                     return 4 | L.alpha(pair);
                   }));
      } else {
        // alpha on (b1,b2) iff bit p-1 = 1: swap (p-1, p), gate at p, undo
        swap_bits_gate(piece, p - 1);
        piece.push(p, bit_perm3([&](int v) {
                     if ((v & 4) == 0) return v;
                     int pair = v & 3;
                     return 4 | L.alpha(pair);
                   }));
        swap_bits_gate(piece, p - 1);
      }
      piece.push(p, L.conj.inverse());
      w += piece;
    }
    return w;
  };

  // ctrl{gamma at window p}{bit t = 0}, t adjacent after a swap chain
  auto one_bit_ctrl0 = [&](const Permutation& beta, int p, int t) {
    GateWord chain(a, n, 3);
    int anchor;
    if (t > p + 2) {
      for (int i = t - 1; i >= p + 3; --i) swap_bits_gate(chain, i);
      anchor = +1;
    } else {
      for (int i = t; i <= p - 2; ++i) swap_bits_gate(chain, i);
      anchor = -1;
    }
    GateWord ctrl1 = anchor > 0 ? ctrl_right1(beta, p) : ctrl_left1(beta, p);
    // beta always, then undo the bit=1 branch
    GateWord core(a, n, 3);
    core += ctrl1.inverse();
    core.push(p, beta);
    GateWord w = chain;
    w += core;
    w += chain.inverse();
    return w;
  };

  // commutator pair [alpha, beta] = gamma inside Alt(2^3), cached
  static std::map<int, std::pair<Permutation, Permutation>> pairCache;
  auto gamma_pair = [&](const Permutation& gamma) {
    int key = rank8(gamma);
    auto it = pairCache.find(key);
    if (it != pairCache.end()) return it->second;
    for (const auto& s1 : base.states)
      if (s1.size() == 8) break;
    // search alpha over 3-cycles, beta over all letters' perms and 3-cycles
    std::vector<Permutation> cand;
    for (int x = 0; x < 8; ++x)
      for (int y = 0; y < 8; ++y)
        for (int z = 0; z < 8; ++z) {
          if (x == y || y == z || x == z || y < x || z < x) continue;
          cand.push_back(Permutation::from_cycles(8, {{x, y, z}}));
          cand.push_back(Permutation::from_cycles(8, {{x, z, y}}));
        }
    for (const auto& al : cand)
      for (const auto& be : cand) {
        if (Permutation::commutator(al, be) == gamma) {
          auto pr = std::make_pair(al, be);
          pairCache.emplace(key, pr);
          return pr;
        }
      }
    throw std::logic_error("no commutator pair found");
  };

  // K(gamma, window p, controls = all bits outside the window, all zero)
  std::function<GateWord(const Permutation&, int, std::vector<int>)> K =
      [&](const Permutation& gamma, int p, std::vector<int> controls) -> GateWord {
    if (controls.empty()) {
      GateWord w(a, n, 3);
      w.push(p, gamma);
      return w;
    }
    // take the control nearest to the window last
    std::sort(controls.begin(), controls.end(), [&](int x, int y) {
      int dx = x < p ? p - x : x - (p + 2);
      int dy = y < p ? p - y : y - (p + 2);
      return dx < dy;
    });
    int t = controls.front();
    std::vector<int> rest(controls.begin() + 1, controls.end());
    auto [al, be] = gamma_pair(gamma);
    GateWord A = K(al, p, rest);
    GateWord B = one_bit_ctrl0(be, p, t);
    return commutator_program(A, B);
  };

  // assemble ---------------------------------------------------------------
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    const EdgeInfo& e = infos[std::abs(*it) - 1];
    int sgn = *it > 0 ? +1 : -1;
    GateWord X(a, n, 3);
    std::vector<int> controls;
    int ci = 0;
    for (int i = 0; i < n; ++i) {
      if (i >= e.p && i <= e.p + 2) continue;
      if ((e.ctx >> ci++) & 1) flip_bit_gate(X, i);
      controls.push_back(i);
    }
    Permutation gamma = sgn > 0 ? Permutation::from_cycles(8, {{e.w0, e.w1, e.w2}})
                                : Permutation::from_cycles(8, {{e.w0, e.w2, e.w1}});
    GateWord frag = X;
    frag += K(gamma, e.p, controls);
    frag += X.inverse();
    out += frag;
  }
  out.peephole();
  return out;
}

}  // namespace rca
