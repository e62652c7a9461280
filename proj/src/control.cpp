#include "rca/control.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace rca {

namespace {

// Window layout shared by the ctrl builders: for output cell j the rule sees
// cells [j+lo, j+hi]; occurrences are found on the first track, blocks
// rewritten on the second.
struct CtrlLayout {
  int lo, hi;
  long long f_offset;
  int f_width;
  long long block_offset;
  int n;  // block width
};

CtrlLayout ctrl_layout(const ClopenSet& F, int block_width, long long block_offset) {
  CtrlLayout L;
  L.f_offset = F.offset;
  L.f_width = F.width;
  L.block_offset = block_offset;
  L.n = block_width;
  // occurrences k with cell 0 in the block satisfy k+block_offset in [-n+1, 0];
  // the rule reads control cells [k+offset, k+offset+width) and data cells
  // [k+block_offset, k+block_offset+n)
  long long lo = std::min<long long>(
      {0, F.offset - block_offset - block_width + 1, -(long long)block_width + 1});
  long long hi =
      std::max<long long>({0, F.offset - block_offset + F.width - 1, (long long)block_width - 1});
  L.lo = static_cast<int>(lo);
  L.hi = static_cast<int>(hi);
  return L;
}

}  // namespace

CellularAutomaton build_ctrl_big(const Alphabet& product, const BigPerm& pi, int block_width,
                                 const ClopenSet& F, long long block_offset) {
  TwoTrack tt = TwoTrack::of(product);
  if (!F.alphabet.same_symbols(tt.B)) throw std::invalid_argument("control set alphabet mismatch");
  uint64_t blocks = checked_pow(tt.C.size(), block_width, UINT64_MAX);
  if (pi.size() != blocks) throw std::invalid_argument("block permutation domain mismatch");
  if (!clopen_is_unbordered(F, block_width)) throw NotUnbordered();

  CtrlLayout lay = ctrl_layout(F, block_width, block_offset);
  int nC = tt.C.size();
  auto fwords = std::make_shared<std::set<Word>>(F.words);
  auto perm = std::make_shared<BigPerm>(pi);
  Alphabet B = tt.B;

  auto fn = [fwords, perm, lay, nC, B](std::span<const Symbol> win) -> Symbol {
    // cell 0 sits at index -lay.lo
    auto xat = [&](long long rel) { return static_cast<Symbol>(win[rel - lay.lo] / nC); };
    auto yat = [&](long long rel) { return static_cast<Symbol>(win[rel - lay.lo] % nC); };
    // candidate occurrences k whose block [k+d, k+d+n) holds cell 0
    for (long long k = -lay.block_offset - lay.n + 1; k <= -lay.block_offset; ++k) {
      std::vector<Symbol> ctrl(lay.f_width);
      for (int t = 0; t < lay.f_width; ++t) ctrl[t] = xat(k + lay.f_offset + t);
      if (fwords->count(Word(B, ctrl))) {
        uint64_t blockRank = 0;
        for (int t = 0; t < lay.n; ++t)
          blockRank = blockRank * nC + yat(k + lay.block_offset + t);
        uint64_t img = (*perm)(blockRank);
        int pos = static_cast<int>(-(k + lay.block_offset));  // index of cell 0 in block
        uint64_t div = 1;
        for (int t = lay.n - 1 - pos; t > 0; --t) div *= nC;
        Symbol newY = static_cast<Symbol>((img / div) % nC);
        return static_cast<Symbol>(xat(0) * nC + newY);
      }
    }
    return win[-lay.lo];
  };

  uint64_t entries = checked_pow(product.size(), lay.hi - lay.lo + 1, kAutoTabulate + 1);
  if (entries <= kAutoTabulate)
    return CellularAutomaton::tabulate_fn(product, lay.lo, lay.hi, fn);
  return CellularAutomaton::from_fn(product, lay.lo, lay.hi, fn, {}, "ctrl");
}

CellularAutomaton build_ctrl(const Alphabet& product, const Permutation& pi, const ClopenSet& F,
                             long long block_offset) {
  TwoTrack tt = TwoTrack::of(product);
  int n = 0;
  uint64_t m = pi.size();
  if (tt.C.size() < 2) throw std::invalid_argument("data track must have >= 2 symbols");
  while (m > 1) {
    if (m % tt.C.size()) throw std::invalid_argument("pi domain is not a power of |C|");
    m /= tt.C.size();
    ++n;
  }
  if (n == 0) throw std::invalid_argument("pi domain too small");
  BigPerm bp(pi.size(), [pi](uint64_t x) { return static_cast<uint64_t>(pi(static_cast<int>(x))); });
  return build_ctrl_big(product, bp, n, F, block_offset);
}

CellularAutomaton build_ctrl_cellwise(const Alphabet& product, const Permutation& pi,
                                      const ClopenSet& F) {
  TwoTrack tt = TwoTrack::of(product);
  if (pi.size() != tt.C.size()) throw std::invalid_argument("pi must act on the data alphabet");
  if (!F.alphabet.same_symbols(tt.B)) throw std::invalid_argument("control set alphabet mismatch");
  int lo = static_cast<int>(std::min<long long>(0, F.offset));
  int hi = static_cast<int>(std::max<long long>(0, F.offset + F.width - 1));
  int nC = tt.C.size();
  auto fwords = std::make_shared<std::set<Word>>(F.words);
  long long off = F.offset;
  int width = F.width;
  Alphabet B = tt.B;
  auto fn = [fwords, off, width, lo, nC, pi, B](std::span<const Symbol> win) -> Symbol {
    std::vector<Symbol> ctrl(width);
    for (int t = 0; t < width; ++t) ctrl[t] = static_cast<Symbol>(win[off + t - lo] / nC);
    Symbol self = win[-lo];
    if (fwords->count(Word(B, ctrl)))
      return static_cast<Symbol>((self / nC) * nC + pi(self % nC));
    return self;
  };
  uint64_t entries = checked_pow(product.size(), hi - lo + 1, kAutoTabulate + 1);
  if (entries <= kAutoTabulate) return CellularAutomaton::tabulate_fn(product, lo, hi, fn);
  return CellularAutomaton::from_fn(product, lo, hi, fn, {}, "ctrl-cellwise");
}

ControlledPerm::ControlledPerm(TwoTrack t, ClopenSet f, Permutation p)
    : tracks(std::move(t)), F(std::move(f)), pi(std::move(p)) {
  if (!clopen_is_unbordered(F, F.width)) throw NotUnbordered();
  uint64_t want = checked_pow(tracks.C.size(), F.width, UINT64_MAX);
  if (static_cast<uint64_t>(pi.size()) != want)
    throw std::invalid_argument("pi must permute C^width");
}

ControlledGroupElement ControlledGroupElement::inverse() const {
  ControlledGroupElement r;
  r.X = X;
  r.acted = acted;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    Token t = *it;
    if (t.is_shift)
      t.shift_exp = -t.shift_exp;
    else
      t.g = t.g.inverse();
    r.tokens.push_back(std::move(t));
  }
  return r;
}

ControlledGroupElement ControlledGroupElement::operator*(const ControlledGroupElement& o) const {
  ControlledGroupElement r = *this;
  r.tokens.insert(r.tokens.end(), o.tokens.begin(), o.tokens.end());
  return r;
}

std::pair<SupportedConfig, int> ControlledGroupElement::act(const SupportedConfig& x0,
                                                            int a) const {
  SupportedConfig x = x0;
  // tokens are in composition order; rightmost acts first
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const Token& t = *it;
    if (t.is_shift) {
      // sigma^e shifts content left by e: re-anchor the center
      x = SupportedConfig(x.left, x.center, x.right, x.center_start - t.shift_exp);
    } else {
      if (x.cell(t.offset) == t.sym) a = t.g(a);
    }
  }
  return {x, a};
}

GroupWord ControlledGroupElement::to_paut_word(const Alphabet& product) const {
  TwoTrack tt = TwoTrack::of(product);
  if (tt.B.size() != X.size() || tt.C.size() != acted)
    throw std::invalid_argument("product alphabet does not match the controlled element");
  GroupWord w(product);
  int nC = tt.C.size();
  for (const auto& t : tokens) {
    if (t.is_shift) {
      w.tokens.push_back(GeneratorToken::partial_shift(1, t.shift_exp));
      continue;
    }
    // ctrl{g}{[b]_i}: apply g on the data track where the control track holds
    // b at relative offset i; conjugate the offset away with sigma_1.
    std::vector<int> img(product.size());
    for (int s = 0; s < product.size(); ++s) {
      int b = s / nC, c = s % nC;
      img[s] = b == t.sym ? b * nC + t.g(c) : s;
    }
    GeneratorToken perm = GeneratorToken::symbol_perm(Permutation(std::move(img)));
    if (t.offset == 0) {
      w.tokens.push_back(perm);
    } else {
      w.tokens.push_back(GeneratorToken::partial_shift(1, -t.offset));
      w.tokens.push_back(perm);
      w.tokens.push_back(GeneratorToken::partial_shift(1, t.offset));
    }
  }
  return w;
}

CellularAutomaton ControlledGroupElement::to_ca(const Alphabet& product) const {
  return eval_word(to_paut_word(product));
}

std::vector<Permutation> group_closure(const std::vector<Permutation>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  int n = gens[0].size();
  std::set<Permutation> seen;
  std::queue<Permutation> frontier;
  Permutation id = Permutation::identity(n);
  seen.insert(id);
  frontier.push(id);
  while (!frontier.empty()) {
    Permutation cur = frontier.front();
    frontier.pop();
    for (const auto& g : gens) {
      Permutation next = g * cur;
      if (seen.insert(next).second) frontier.push(next);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Permutation> hypocenter(const std::vector<Permutation>& gens) {
  auto G = group_closure(gens);
  std::vector<Permutation> cur = G;
  for (;;) {
    std::set<Permutation> comms;
    for (const auto& g : G)
      for (const auto& h : cur) comms.insert(Permutation::commutator(g, h));
    std::vector<Permutation> commGens(comms.begin(), comms.end());
    auto next = group_closure(commGens);
    if (next.size() == cur.size()) return next;
    cur = std::move(next);
  }
}

CommutatorExpr commutator_expression(const std::vector<Permutation>& group_elems,
                                     const std::vector<Permutation>& hypo_elems,
                                     const Permutation& h) {
  int n = h.size();
  if (h.is_identity()) return {};
  // distinct single commutators, each with one witness pair
  std::map<Permutation, std::pair<Permutation, Permutation>> letters;
  for (const auto& hi : hypo_elems)
    for (const auto& gi : group_elems) {
      Permutation c = Permutation::commutator(hi, gi);
      if (!c.is_identity()) letters.emplace(c, std::make_pair(hi, gi));
    }
  // BFS over right multiplication: h = letter_1 o letter_2 o ...
  Permutation id = Permutation::identity(n);
  std::map<Permutation, std::pair<Permutation, const Permutation*>> parent;
  std::queue<Permutation> frontier;
  parent.emplace(id, std::make_pair(id, nullptr));
  frontier.push(id);
  while (!frontier.empty()) {
    Permutation cur = frontier.front();
    frontier.pop();
    for (const auto& [letter, witness] : letters) {
      (void)witness;
      Permutation next = cur * letter;
      if (parent.count(next)) continue;
      parent.emplace(next, std::make_pair(cur, &letters.find(letter)->first));
      if (next == h) {
        std::vector<const Permutation*> path;
        Permutation at = h;
        while (!(at == id)) {
          auto& pr = parent.at(at);
          path.push_back(pr.second);
          at = pr.first;
        }
        std::reverse(path.begin(), path.end());
        CommutatorExpr expr;
        Permutation check = Permutation::identity(n);
        for (auto* lp : path) {
          expr.factors.push_back(letters.at(*lp));
          check = check * *lp;
        }
        if (!(check == h)) throw std::logic_error("commutator expression reconstruction failed");
        return expr;
      }
      frontier.push(next);
    }
  }
  throw NotInHypocenter();
}

namespace {

struct HypoContext {
  std::vector<Permutation> group;
  std::vector<Permutation> hypo;
  std::map<Permutation, CommutatorExpr> cache;

  const CommutatorExpr& expr(const Permutation& h) {
    auto it = cache.find(h);
    if (it != cache.end()) return it->second;
    return cache.emplace(h, commutator_expression(group, hypo, h)).first->second;
  }
};

ControlledGroupElement hypo_ctrl_rec(HypoContext& ctx, const Alphabet& X, int acted,
                                     const Permutation& g, const Word& w, long long m) {
  ControlledGroupElement out;
  out.X = X;
  out.acted = acted;
  if (g.is_identity()) return out;
  if (w.size() == 1) {
    out.tokens.push_back(ControlledGroupElement::ctrl_tok(g, w[0], m));
    return out;
  }
  Word prefix(w.alphabet, std::vector<Symbol>(w.symbols.begin(), w.symbols.end() - 1));
  Symbol last = w.symbols.back();
  const CommutatorExpr& e = ctx.expr(g);
  for (const auto& [hi, gi] : e.factors) {
    ControlledGroupElement A = hypo_ctrl_rec(ctx, X, acted, hi, prefix, m);
    ControlledGroupElement B;
    B.X = X;
    B.acted = acted;
    B.tokens.push_back(ControlledGroupElement::ctrl_tok(gi, last, m + prefix.size()));
    out = out * (A.inverse() * B.inverse() * A * B);
  }
  return out;
}

}  // namespace

ControlledGroupElement hypocenter_ctrl(const std::vector<Permutation>& group_gens,
                                       const Permutation& g, const Word& w, long long m) {
  if (w.empty()) throw std::invalid_argument("empty control word");
  HypoContext ctx;
  ctx.group = group_closure(group_gens);
  ctx.hypo = hypocenter(group_gens);
  if (std::find(ctx.hypo.begin(), ctx.hypo.end(), g) == ctx.hypo.end()) throw NotInHypocenter();
  return hypo_ctrl_rec(ctx, w.alphabet, group_gens[0].size(), g, w, m);
}

GroupWord even_ctrl(const Alphabet& product, const Permutation& phi, const ClopenSet& F) {
  TwoTrack tt = TwoTrack::of(product);
  if (phi.size() != tt.C.size()) throw std::invalid_argument("phi must act on the data alphabet");
  if (phi.sign() != +1) throw NotEven();
  GroupWord out(product);
  if (phi.is_identity()) return out;
  // Sym(C); its hypocenter is Alt(C)
  std::vector<Permutation> gens;
  int nC = tt.C.size();
  gens.push_back(Permutation::transposition(nC, 0, 1));
  if (nC >= 3) {
    std::vector<int> cyc(nC);
    for (int i = 0; i < nC; ++i) cyc[i] = (i + 1) % nC;
    gens.push_back(Permutation(std::move(cyc)));
  }
  // cylinders of F share one window, so they are pairwise disjoint
  for (const auto& u : F.words) {
    ControlledGroupElement e = hypocenter_ctrl(gens, phi, u, F.offset);
    out = out * e.to_paut_word(product);
  }
  return out;
}

EqualityVerdict ctrl_commutator_law_check(const Alphabet& product, const Permutation& h,
                                          const Permutation& g, const Word& w, Symbol a,
                                          long long m) {
  TwoTrack tt = TwoTrack::of(product);
  Word wa(w.alphabet, w.symbols);
  wa.symbols.push_back(a);
  CellularAutomaton rhs =
      build_ctrl_cellwise(product, Permutation::commutator(h, g), ClopenSet::cylinder(wa, m));
  CellularAutomaton A;
  if (w.empty()) {
    // control over the whole space: the plain data-track symbol permutation
    std::vector<int> img(product.size());
    for (int s = 0; s < product.size(); ++s)
      img[s] = (s / tt.C.size()) * tt.C.size() + h(s % tt.C.size());
    A = make_symbol_perm(product, Permutation(std::move(img)));
  } else {
    A = build_ctrl_cellwise(product, h, ClopenSet::cylinder(w, m));
  }
  CellularAutomaton B = build_ctrl_cellwise(
      product, g, ClopenSet::cylinder(Word(w.alphabet, {a}), m + w.size()));
  CellularAutomaton lhs = A.inverted().compose(B.inverted()).compose(A).compose(B);
  return equal(lhs, rhs);
}

}  // namespace rca
