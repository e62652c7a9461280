#include "rca/ca.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>

namespace rca {

namespace {

uint64_t rank_of(std::span<const Symbol> w, int n) {
  uint64_t r = 0;
  for (Symbol s : w) r = r * n + s;
  return r;
}

void unrank_into(uint64_t r, int n, std::span<Symbol> out) {
  for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
    out[i] = static_cast<Symbol>(r % n);
    r /= n;
  }
}

Symbol eval_primitive(const RulePrimitive& p, std::span<const Symbol> window) {
  if (!p.table.empty()) return p.table[rank_of(window, p.alphabet.size())];
  return p.fn(window);
}

// Sliding image of a word under one primitive; output length shrinks.
std::vector<Symbol> slide_primitive(const RulePrimitive& p, std::span<const Symbol> w) {
  int W = p.width();
  if (static_cast<int>(w.size()) < W) throw std::invalid_argument("word shorter than window");
  int outLen = static_cast<int>(w.size()) - W + 1;
  std::vector<Symbol> out(outLen);
  int n = p.alphabet.size();
  if (!p.table.empty()) {
    uint64_t mod = 1;
    for (int i = 0; i < W - 1; ++i) mod *= n;
    uint64_t r = rank_of(w.subspan(0, W - 1), n);
    for (int j = 0; j < outLen; ++j) {
      r = (r % mod) * n + w[j + W - 1];
      out[j] = p.table[r];
    }
  } else {
    for (int j = 0; j < outLen; ++j) out[j] = p.fn(w.subspan(j, W));
  }
  return out;
}

SupportedConfig apply_primitive(const RulePrimitive& p, const SupportedConfig& x) {
  if (p.global) return p.global(x);
  long long cs = x.center_start, ce = x.center_end();
  int pl = x.left.size(), pr = x.right.size();
  long long cs2 = cs - std::max(p.hi, 0);
  long long ce2 = ce + std::max(-p.lo, 0);
  // image cells [cs2 - pl, ce2 + pr) from input cells [cs2-pl+lo, ce2+pr-1+hi]
  Word in = x.window(cs2 - pl + p.lo, ce2 + pr + p.hi);
  std::vector<Symbol> img = slide_primitive(p, in.symbols);
  auto beg = img.begin();
  Word newLeft(x.alphabet, std::vector<Symbol>(beg, beg + pl));
  Word newCenter(x.alphabet, std::vector<Symbol>(beg + pl, img.end() - pr));
  Word newRight(x.alphabet, std::vector<Symbol>(img.end() - pr, img.end()));
  return SupportedConfig(std::move(newLeft), std::move(newCenter), std::move(newRight), cs2);
}

// Drops window cells the table provably ignores.
void tighten_table(std::vector<Symbol>& t, int n, int& lo, int& hi) {
  while (hi > lo) {
    uint64_t stride = t.size() / n;
    bool leftFree = true;
    for (uint64_t k = 1; k < static_cast<uint64_t>(n) && leftFree; ++k)
      for (uint64_t r = 0; r < stride; ++r)
        if (t[k * stride + r] != t[r]) {
          leftFree = false;
          break;
        }
    if (leftFree) {
      t.resize(stride);
      ++lo;
      continue;
    }
    bool rightFree = true;
    for (uint64_t q = 0; q < stride && rightFree; ++q)
      for (int c = 1; c < n; ++c)
        if (t[q * n + c] != t[q * n]) {
          rightFree = false;
          break;
        }
    if (rightFree) {
      std::vector<Symbol> t2(stride);
      for (uint64_t q = 0; q < stride; ++q) t2[q] = t[q * n];
      t = std::move(t2);
      --hi;
      continue;
    }
    break;
  }
}

}  // namespace

std::string EqualityVerdict::str() const {
  switch (kind) {
    case Kind::ExactEqual: return "ExactEqual";
    case Kind::ExactUnequal:
      return "ExactUnequal(witness=" + (witness_word ? witness_word->str() : "?") + ")";
    case Kind::SampledEqual:
      return "SampledEqual(samples=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
    case Kind::SampledUnequal: return "SampledUnequal";
  }
  return "?";
}

CellularAutomaton CellularAutomaton::identity(const Alphabet& a) {
  std::vector<Symbol> t(a.size());
  for (int i = 0; i < a.size(); ++i) t[i] = static_cast<Symbol>(i);
  return from_table(a, 0, 0, std::move(t));
}

CellularAutomaton CellularAutomaton::from_table(const Alphabet& a, int lo, int hi,
                                                std::vector<Symbol> table) {
  if (lo > hi) throw std::invalid_argument("bad interval");
  uint64_t want = checked_pow(a.size(), hi - lo + 1, UINT64_MAX);
  if (table.size() != want) throw std::invalid_argument("table size mismatch");
  for (Symbol s : table)
    if (s >= a.size()) throw std::invalid_argument("table symbol out of range");
  tighten_table(table, a.size(), lo, hi);
  auto p = std::make_shared<RulePrimitive>();
  p->alphabet = a;
  p->lo = lo;
  p->hi = hi;
  p->table = std::move(table);
  CellularAutomaton f;
  f.alpha_ = a;
  f.lo_ = lo;
  f.hi_ = hi;
  f.factors_ = {std::move(p)};
  return f;
}

CellularAutomaton CellularAutomaton::from_fn(
    const Alphabet& a, int lo, int hi, std::function<Symbol(std::span<const Symbol>)> fn,
    std::function<SupportedConfig(const SupportedConfig&)> global, std::string describe) {
  if (lo > hi) throw std::invalid_argument("bad interval");
  auto p = std::make_shared<RulePrimitive>();
  p->alphabet = a;
  p->lo = lo;
  p->hi = hi;
  p->fn = std::move(fn);
  p->global = std::move(global);
  p->describe = std::move(describe);
  CellularAutomaton f;
  f.alpha_ = a;
  f.lo_ = lo;
  f.hi_ = hi;
  f.factors_ = {std::move(p)};
  return f;
}

CellularAutomaton CellularAutomaton::tabulate_fn(
    const Alphabet& a, int lo, int hi, const std::function<Symbol(std::span<const Symbol>)>& fn) {
  int W = hi - lo + 1;
  uint64_t entries = checked_pow(a.size(), W, kTableBudget + 1);
  if (entries > kTableBudget) throw std::invalid_argument("rule too wide to tabulate");
  std::vector<Symbol> t(entries);
  std::vector<Symbol> buf(W, 0);
  for (uint64_t r = 0; r < entries; ++r) {
    unrank_into(r, a.size(), buf);
    t[r] = fn(buf);
  }
  return from_table(a, lo, hi, std::move(t));
}

SupportedConfig CellularAutomaton::apply(const SupportedConfig& x) const {
  if (!x.alphabet.same_symbols(alpha_)) throw std::invalid_argument("alphabet mismatch");
  SupportedConfig y = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) y = apply_primitive(**it, y);
  return y;
}

std::vector<Symbol> CellularAutomaton::slide(std::span<const Symbol> w) const {
  std::vector<Symbol> cur(w.begin(), w.end());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
    cur = slide_primitive(**it, cur);
  return cur;
}

Symbol CellularAutomaton::rule_on_window(std::span<const Symbol> window) const {
  if (static_cast<int>(window.size()) != width()) throw std::invalid_argument("window width");
  if (is_tabulated()) return factors_[0]->table[rank_of(window, alpha_.size())];
  auto out = slide(window);
  assert(out.size() == 1);
  return out[0];
}

CellularAutomaton CellularAutomaton::compose(const CellularAutomaton& g) const {
  if (!alpha_.same_symbols(g.alpha_)) throw std::invalid_argument("alphabet mismatch");
  CellularAutomaton h;
  h.alpha_ = alpha_;
  h.lo_ = lo_ + g.lo_;
  h.hi_ = hi_ + g.hi_;
  h.factors_ = factors_;
  h.factors_.insert(h.factors_.end(), g.factors_.begin(), g.factors_.end());
  if (auto t = h.tabulated(kAutoTabulate)) return *t;
  return h;
}

CellularAutomaton CellularAutomaton::power(long long e) const {
  if (e < 0) return inverted().power(-e);
  CellularAutomaton r = identity(alpha_);
  for (long long i = 0; i < e; ++i) r = r.compose(*this);
  return r;
}

std::optional<CellularAutomaton> CellularAutomaton::tabulated(uint64_t budget) const {
  int W = width();
  uint64_t entries = checked_pow(alpha_.size(), W, budget + 1);
  if (entries > budget) return std::nullopt;
  if (is_tabulated()) {
    auto& p = *factors_[0];
    return from_table(alpha_, p.lo, p.hi, p.table);
  }
  std::vector<Symbol> t(entries);
  std::vector<Symbol> buf(W, 0);
  int n = alpha_.size();
  for (uint64_t r = 0; r < entries; ++r) {
    unrank_into(r, n, buf);
    auto out = slide(buf);
    t[r] = out[0];
  }
  return from_table(alpha_, lo_, hi_, std::move(t));
}

CellularAutomaton CellularAutomaton::optimized(uint64_t budget) const {
  if (factors_.size() <= 1) return *this;
  // Fold factors right to left, merging while the merged table stays small.
  std::vector<CellularAutomaton> merged;
  auto as_ca = [&](const std::shared_ptr<const RulePrimitive>& p) {
    CellularAutomaton c;
    c.alpha_ = alpha_;
    c.lo_ = p->lo;
    c.hi_ = p->hi;
    c.factors_ = {p};
    return c;
  };
  CellularAutomaton acc = as_ca(factors_.back());
  for (int i = static_cast<int>(factors_.size()) - 2; i >= 0; --i) {
    CellularAutomaton next = as_ca(factors_[i]);
    CellularAutomaton cand;
    cand.alpha_ = alpha_;
    cand.lo_ = next.lo_ + acc.lo_;
    cand.hi_ = next.hi_ + acc.hi_;
    cand.factors_ = next.factors_;
    cand.factors_.insert(cand.factors_.end(), acc.factors_.begin(), acc.factors_.end());
    if (auto t = cand.tabulated(budget)) {
      acc = *t;
    } else {
      merged.push_back(acc);
      acc = next;
    }
  }
  merged.push_back(acc);
  CellularAutomaton h;
  h.alpha_ = alpha_;
  h.lo_ = 0;
  h.hi_ = 0;
  int lo = 0, hi = 0;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    for (auto& p : it->factors_) h.factors_.push_back(p);
    lo += it->lo_;
    hi += it->hi_;
  }
  h.lo_ = lo;
  h.hi_ = hi;
  return h;
}

bool CellularAutomaton::is_reversible() const {
  auto tab = optimized().tabulated(kTableBudget);
  if (!tab) throw std::runtime_error("reversibility test: rule too wide to tabulate");
  int n = alpha_.size();
  int W = tab->width();
  const auto& T = tab->table();
  if (W == 1) {
    std::vector<bool> hit(n, false);
    for (Symbol s : T) {
      if (hit[s]) return false;
      hit[s] = true;
    }
    return true;
  }
  uint64_t M = T.size() / n;  // n^(W-1) overlap states
  if (M > (1ull << 14)) throw std::runtime_error("reversibility test: pair graph too large");
  uint64_t S = M * M;
  std::vector<uint32_t> outdeg(S, 0), indeg(S, 0);
  auto succs = [&](uint64_t u, uint64_t v, auto&& visit) {
    for (int a = 0; a < n; ++a) {
      Symbol oa = T[u * n + a];
      for (int b = 0; b < n; ++b)
        if (T[v * n + b] == oa) visit((u * n + a) % M, (v * n + b) % M);
    }
  };
  auto preds = [&](uint64_t u, uint64_t v, auto&& visit) {
    for (int c = 0; c < n; ++c) {
      uint64_t yu = c * M + u;
      Symbol ou = T[yu];
      for (int d = 0; d < n; ++d) {
        uint64_t yv = d * M + v;
        if (T[yv] == ou) visit(yu / n, yv / n);
      }
    }
  };
  for (uint64_t u = 0; u < M; ++u)
    for (uint64_t v = 0; v < M; ++v) {
      uint32_t cnt = 0;
      succs(u, v, [&](uint64_t su, uint64_t sv) {
        ++cnt;
        ++indeg[su * M + sv];
      });
      outdeg[u * M + v] = cnt;
    }
  std::vector<bool> dead(S, false);
  std::deque<uint64_t> queue;
  for (uint64_t s = 0; s < S; ++s)
    if (outdeg[s] == 0 || indeg[s] == 0) {
      dead[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    uint64_t s = queue.front();
    queue.pop_front();
    uint64_t u = s / M, v = s % M;
    succs(u, v, [&](uint64_t su, uint64_t sv) {
      uint64_t t = su * M + sv;
      if (!dead[t] && --indeg[t] == 0) {
        dead[t] = true;
        queue.push_back(t);
      }
    });
    preds(u, v, [&](uint64_t pu, uint64_t pv) {
      uint64_t t = pu * M + pv;
      if (!dead[t] && --outdeg[t] == 0) {
        dead[t] = true;
        queue.push_back(t);
      }
    });
  }
  for (uint64_t u = 0; u < M; ++u)
    for (uint64_t v = 0; v < M; ++v)
      if (u != v && !dead[u * M + v]) return false;
  return true;
}

CellularAutomaton CellularAutomaton::inverted(int max_inverse_radius) const {
  if (factors_.size() > 1) {
    // Invert factorwise when possible; composition order reverses.
    try {
      std::vector<CellularAutomaton> inv;
      for (auto& p : factors_) {
        CellularAutomaton c;
        c.alpha_ = alpha_;
        c.lo_ = p->lo;
        c.hi_ = p->hi;
        c.factors_ = {p};
        inv.push_back(c.inverted(max_inverse_radius));
      }
      CellularAutomaton r = identity(alpha_);
      for (auto& c : inv) r = c.compose(r);  // reversed order via left-folding below
      // rebuild in reversed order explicitly
      r = identity(alpha_);
      for (auto it = inv.rbegin(); it != inv.rend(); ++it) r = r.compose(*it);
      return r;
    } catch (const ReversibilityError&) {
      throw;
    } catch (const std::exception&) {
      // fall through to whole-rule search
    }
  }
  auto tab = optimized().tabulated(kTableBudget);
  if (!tab) throw RadiusBoundExceeded("inverse search: rule too wide to tabulate");
  if (!tab->is_reversible()) throw ReversibilityError();
  int n = alpha_.size();
  if (n > 64) throw RadiusBoundExceeded("inverse search limited to alphabets of size <= 64");
  int W = tab->width(), lo = tab->lo(), hi = tab->hi();
  for (int s = 0; s <= max_inverse_radius; ++s) {
    if (lo > s || hi < -s) continue;  // preimage cell 0 outside the probe word
    int lenY = 2 * s + W;
    uint64_t total = checked_pow(n, lenY, 1ull << 26);
    uint64_t outs = checked_pow(n, 2 * s + 1, 1ull << 24);
    if (total >= (1ull << 26) || outs >= (1ull << 24))
      throw RadiusBoundExceeded("inverse search too large");
    std::vector<uint64_t> mask(outs, 0);
    std::vector<Symbol> buf(lenY);
    int centerIdx = s - lo;
    for (uint64_t y = 0; y < total; ++y) {
      unrank_into(y, n, buf);
      auto out = tab->slide(buf);
      mask[rank_of(out, n)] |= 1ull << buf[centerIdx];
    }
    bool ok = true;
    std::vector<Symbol> invTab(outs);
    for (uint64_t w = 0; w < outs; ++w) {
      if (std::popcount(mask[w]) != 1) {
        ok = false;
        break;
      }
      invTab[w] = static_cast<Symbol>(std::countr_zero(mask[w]));
    }
    if (!ok) continue;
    CellularAutomaton inv = from_table(alpha_, -s, s, std::move(invTab));
    EqualityVerdict v = equal(inv.compose(*this), identity(alpha_), 1ull << 26);
    if (!v.exact() || !v.equal())
      throw std::runtime_error("inverse verification failed");
    return inv;
  }
  throw RadiusBoundExceeded("no inverse within radius bound");
}

SupportedConfig reverse_config(const SupportedConfig& x) {
  return SupportedConfig(x.right.reversed(), x.center.reversed(), x.left.reversed(),
                         -x.center_end() + 1);
}

CellularAutomaton CellularAutomaton::reverse_conjugate() const {
  CellularAutomaton h;
  h.alpha_ = alpha_;
  h.lo_ = -hi_;
  h.hi_ = -lo_;
  for (auto& p : factors_) {
    auto q = std::make_shared<RulePrimitive>();
    q->alphabet = p->alphabet;
    q->lo = -p->hi;
    q->hi = -p->lo;
    if (!p->table.empty()) {
      int n = p->alphabet.size();
      int W = p->width();
      q->table.resize(p->table.size());
      std::vector<Symbol> buf(W);
      for (uint64_t r = 0; r < q->table.size(); ++r) {
        unrank_into(r, n, buf);
        std::reverse(buf.begin(), buf.end());
        q->table[r] = p->table[rank_of(buf, n)];
      }
    } else {
      auto base = p;
      q->fn = [base](std::span<const Symbol> w) {
        std::vector<Symbol> rev(w.rbegin(), w.rend());
        return base->fn(rev);
      };
      if (p->global) {
        auto g = p->global;
        q->global = [g](const SupportedConfig& x) { return reverse_config(g(reverse_config(x))); };
      }
      q->describe = p->describe.empty() ? "" : ("reverse(" + p->describe + ")");
    }
    h.factors_.push_back(std::move(q));
  }
  return h;
}

namespace {

// Affine structure over bitwise xor of symbol codes (alphabet size 2^k).
struct AffineData {
  int lo, hi;
  Symbol base;
  std::vector<Symbol> coeff;  // per (cell, bit): image of unit window
};

int symbol_bits(int n) {
  if (n < 2 || (n & (n - 1)) != 0) return -1;
  return std::countr_zero(static_cast<unsigned>(n));
}

bool primitive_is_affine(const RulePrimitive& p) {
  if (p.table.empty()) return false;
  int n = p.alphabet.size();
  int bits = symbol_bits(n);
  if (bits < 0) return false;
  int W = p.width();
  Symbol base = p.table[0];
  std::vector<Symbol> coeff(W * bits);
  std::vector<Symbol> buf(W, 0);
  for (int j = 0; j < W; ++j)
    for (int b = 0; b < bits; ++b) {
      std::fill(buf.begin(), buf.end(), 0);
      buf[j] = static_cast<Symbol>(1u << b);
      coeff[j * bits + b] = p.table[rank_of(buf, n)] ^ base;
    }
  uint64_t total = p.table.size();
  for (uint64_t r = 0; r < total; ++r) {
    unrank_into(r, n, buf);
    Symbol v = base;
    for (int j = 0; j < W; ++j) {
      unsigned s = buf[j];
      while (s) {
        int b = std::countr_zero(s);
        v ^= coeff[j * bits + b];
        s &= s - 1;
      }
    }
    if (v != p.table[r]) return false;
  }
  return true;
}

std::optional<AffineData> affine_data(const CellularAutomaton& f) {
  int bits = symbol_bits(f.alphabet().size());
  if (bits < 0) return std::nullopt;
  for (auto& p : f.factors())
    if (!primitive_is_affine(*p)) return std::nullopt;
  int W = f.width();
  AffineData d;
  d.lo = f.lo();
  d.hi = f.hi();
  std::vector<Symbol> buf(W, 0);
  d.base = f.rule_on_window(buf);
  d.coeff.resize(W * bits);
  for (int j = 0; j < W; ++j)
    for (int b = 0; b < bits; ++b) {
      std::fill(buf.begin(), buf.end(), 0);
      buf[j] = static_cast<Symbol>(1u << b);
      d.coeff[j * bits + b] = f.rule_on_window(buf) ^ d.base;
    }
  return d;
}

}  // namespace

bool exactly_equal(const CellularAutomaton& f, const CellularAutomaton& g, uint64_t budget) {
  EqualityVerdict v = equal(f, g, budget);
  if (!v.exact()) throw std::runtime_error("exact equality infeasible within budget");
  return v.equal();
}

EqualityVerdict equal(const CellularAutomaton& f, const CellularAutomaton& g, uint64_t budget,
                      uint64_t seed, uint64_t min_samples) {
  if (!f.alphabet().same_symbols(g.alphabet())) throw std::invalid_argument("alphabet mismatch");
  int n = f.alphabet().size();
  int R = std::max({std::abs(f.lo()), std::abs(f.hi()), std::abs(g.lo()), std::abs(g.hi())});
  int W = 2 * R + 1;
  uint64_t entries = checked_pow(n, W, budget == UINT64_MAX ? budget : budget + 1);
  if (entries <= budget) {
    CellularAutomaton fo = f.optimized(std::min<uint64_t>(budget, kAutoTabulate));
    CellularAutomaton go = g.optimized(std::min<uint64_t>(budget, kAutoTabulate));
    std::vector<Symbol> buf(W, 0);
    // Precomputed division/mod pairs when a side is one table.
    auto subrank_params = [&](const CellularAutomaton& c) -> std::optional<std::pair<uint64_t, uint64_t>> {
      if (!c.is_tabulated()) return std::nullopt;
      uint64_t div = checked_pow(n, R - c.hi(), UINT64_MAX);
      uint64_t mod = checked_pow(n, c.width(), UINT64_MAX);
      return std::make_pair(div, mod);
    };
    auto pf = subrank_params(fo), pg = subrank_params(go);
    for (uint64_t r = 0; r < entries; ++r) {
      Symbol a, b;
      if (pf)
        a = fo.table()[(r / pf->first) % pf->second];
      else
        a = fo.rule_on_window(std::span<const Symbol>(buf).subspan(fo.lo() + R, fo.width()));
      if (pg)
        b = go.table()[(r / pg->first) % pg->second];
      else
        b = go.rule_on_window(std::span<const Symbol>(buf).subspan(go.lo() + R, go.width()));
      if (a != b) {
        unrank_into(r, n, buf);
        return {EqualityVerdict::Kind::ExactUnequal, Word(f.alphabet(), buf), std::nullopt, 0, seed};
      }
      // odometer increment (kept in sync with r+1)
      if (!pf || !pg) {
        for (int i = W - 1; i >= 0; --i) {
          if (++buf[i] < n) break;
          buf[i] = 0;
        }
      }
    }
    return {EqualityVerdict::Kind::ExactEqual, std::nullopt, std::nullopt, 0, seed};
  }

  // Affine fast path: exact equality of affine CA reduces to finite data.
  if (auto df = affine_data(f)) {
    if (auto dg = affine_data(g)) {
      int bits = symbol_bits(n);
      bool same = df->base == dg->base;
      int lo = std::min(df->lo, dg->lo), hi = std::max(df->hi, dg->hi);
      for (int j = lo; j <= hi && same; ++j)
        for (int b = 0; b < bits && same; ++b) {
          Symbol cf = (j >= df->lo && j <= df->hi) ? df->coeff[(j - df->lo) * bits + b] : 0;
          Symbol cg = (j >= dg->lo && j <= dg->hi) ? dg->coeff[(j - dg->lo) * bits + b] : 0;
          same = cf == cg;
        }
      if (same) return {EqualityVerdict::Kind::ExactEqual, std::nullopt, std::nullopt, 0, seed};
      return {EqualityVerdict::Kind::ExactUnequal, std::nullopt, std::nullopt, 0, seed};
    }
  }

  // Sampled comparison on seeded supported configurations.
  uint64_t m = std::max<uint64_t>(min_samples, 1);
  Rng base(seed);
  for (uint64_t i = 0; i < m; ++i) {
    Rng rng = base.split(i);
    SupportedConfig x = random_config(rng, f.alphabet(), W, W + 16, 4 * R + 3);
    SupportedConfig fx = f.apply(x), gx = g.apply(x);
    if (!(fx.window(-2 * R, 2 * R + 1) == gx.window(-2 * R, 2 * R + 1)))
      return {EqualityVerdict::Kind::SampledUnequal, std::nullopt, x, i + 1, seed};
  }
  return {EqualityVerdict::Kind::SampledEqual, std::nullopt, std::nullopt, m, seed};
}

}  // namespace rca
