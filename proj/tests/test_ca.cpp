#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rca/paut.hpp"

using namespace rca;

namespace {

CellularAutomaton full_shift(const Alphabet& a) {
  std::vector<Symbol> t(static_cast<size_t>(a.size()) * a.size());
  for (int s0 = 0; s0 < a.size(); ++s0)
    for (int s1 = 0; s1 < a.size(); ++s1) t[static_cast<size_t>(s0) * a.size() + s1] = s1;
  return CellularAutomaton::from_table(a, 0, 1, std::move(t));
}

// Injectivity on spatially periodic configurations of period <= maxp,
// decided by brute force on circular words.
bool periodic_injectivity_oracle(const CellularAutomaton& f, int maxp) {
  int n = f.alphabet().size();
  for (int p = 1; p <= maxp; ++p) {
    uint64_t total = checked_pow(n, p, UINT64_MAX);
    std::map<std::vector<Symbol>, uint64_t> seen;
    for (uint64_t r = 0; r < total; ++r) {
      Word w = word_unrank(f.alphabet(), p, r);
      // circular application
      std::vector<Symbol> ext;
      for (int i = -f.radius(); i < p + f.radius(); ++i)
        ext.push_back(w[((i % p) + p) % p]);
      std::vector<Symbol> img(p);
      for (int j = 0; j < p; ++j) {
        // window for cell j: ext indices j + radius + lo .. j + radius + hi
        std::vector<Symbol> buf(ext.begin() + j + f.radius() + f.lo(),
                                ext.begin() + j + f.radius() + f.hi() + 1);
        img[j] = f.rule_on_window(buf);
      }
      auto [it, fresh] = seen.emplace(img, r);
      if (!fresh && it->second != r) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("identity apply and shift example") {
  Alphabet a(2);
  CellularAutomaton id = CellularAutomaton::identity(a);
  SupportedConfig x = SupportedConfig::parse(a, "0|1|0");
  CHECK(id.apply(x).equals(x));

  CellularAutomaton sigma = full_shift(a);
  CHECK(sigma.lo() == 1);
  CHECK(sigma.hi() == 1);
  SupportedConfig y = sigma.apply(x);
  CHECK(y.cell(-1) == 1);
  CHECK(y.cell(0) == 0);
  CHECK(y.equals(SupportedConfig::parse(a, "0|1|0@-1")));
}

TEST_CASE("compose shift with inverse is identity") {
  Alphabet a(3);
  CellularAutomaton sigma = full_shift(a);
  CellularAutomaton inv = sigma.inverted();
  CHECK(inv.lo() == -1);
  CHECK(inv.hi() == -1);
  CHECK(exactly_equal(sigma.compose(inv), CellularAutomaton::identity(a)));
}

TEST_CASE("partial shifts compose to the full shift") {
  Alphabet a = Alphabet::product({2, 2});
  CellularAutomaton s1 = make_partial_shift(a, 1), s2 = make_partial_shift(a, 2);
  CHECK(exactly_equal(s1.compose(s2), full_shift(a)));
  CHECK(exactly_equal(s1.compose(s2), s2.compose(s1)));
}

TEST_CASE("partial shift moves only its track") {
  Alphabet a = Alphabet::product({2, 2});
  // track 1 carries ...10|eps|00..., track 2 constant 0
  auto enc = [&](int b, int c) { return Word(a, {a.encode(std::vector<int>{b, c})}); };
  SupportedConfig x(Word(a, {a.encode(std::vector<int>{1, 0}), a.encode(std::vector<int>{0, 0})}),
                    Word(a, {}), Word(a, {a.encode(std::vector<int>{0, 0})}));
  CellularAutomaton s1 = make_partial_shift(a, 1);
  SupportedConfig y = s1.apply(x);
  for (int i = -6; i <= 6; ++i) {
    CHECK(a.track_of(y.cell(i), 0) == a.track_of(x.cell(i + 1), 0));
    CHECK(a.track_of(y.cell(i), 1) == a.track_of(x.cell(i), 1));
  }
  (void)enc;
}

TEST_CASE("equality verdicts") {
  Alphabet a(2);
  CellularAutomaton id = CellularAutomaton::identity(a);
  CHECK(equal(id, id).kind == EqualityVerdict::Kind::ExactEqual);
  CellularAutomaton sigma = full_shift(a);
  CellularAutomaton sigma2 = sigma.compose(sigma);
  EqualityVerdict v = equal(sigma, sigma2);
  CHECK(v.kind == EqualityVerdict::Kind::ExactUnequal);
  REQUIRE(v.witness_word.has_value());
  int R = std::max({std::abs(sigma.lo()), sigma.hi(), std::abs(sigma2.lo()), sigma2.hi()});
  Word w = *v.witness_word;
  CHECK(w.size() == 2 * R + 1);
  // witness really distinguishes the two rules
  std::span<const Symbol> win(w.symbols);
  CHECK(sigma.rule_on_window(win.subspan(sigma.lo() + R, sigma.width())) !=
        sigma2.rule_on_window(win.subspan(sigma2.lo() + R, sigma2.width())));
}

TEST_CASE("interval additivity under composition") {
  Rng rng(11);
  Alphabet a(2);
  for (int it = 0; it < 30; ++it) {
    int lof = rng.range(-2, 0), hif = rng.range(0, 2);
    int log = rng.range(-2, 0), hig = rng.range(0, 2);
    auto randca = [&](int lo, int hi) {
      uint64_t e = checked_pow(2, hi - lo + 1, UINT64_MAX);
      std::vector<Symbol> t(e);
      for (auto& s : t) s = static_cast<Symbol>(rng.below(2));
      return CellularAutomaton::from_table(a, lo, hi, std::move(t));
    };
    CellularAutomaton f = randca(lof, hif), g = randca(log, hig);
    CellularAutomaton h = f.compose(g);
    CHECK(h.lo() >= lof + log);
    CHECK(h.hi() <= hif + hig);
  }
}

TEST_CASE("apply commutes with the shift") {
  Rng rng(5);
  Alphabet a(3);
  CellularAutomaton sigma = full_shift(a);
  for (int it = 0; it < 20; ++it) {
    std::vector<Symbol> t(27);
    for (auto& s : t) s = static_cast<Symbol>(rng.below(3));
    CellularAutomaton f = CellularAutomaton::from_table(a, -1, 1, std::move(t));
    SupportedConfig x = random_config(rng, a, 2, 5, 7);
    CHECK(f.apply(sigma.apply(x)).equals(sigma.apply(f.apply(x))));
  }
}

TEST_CASE("XOR rule is not reversible, symbol permutations are") {
  Alphabet a(2);
  std::vector<Symbol> x(4);
  for (int w = 0; w < 4; ++w) x[w] = static_cast<Symbol>((w >> 1) ^ (w & 1));
  CellularAutomaton xr = CellularAutomaton::from_table(a, 0, 1, std::move(x));
  CHECK(!xr.is_reversible());
  CHECK_THROWS_AS(xr.inverted(), ReversibilityError);

  Alphabet b(5);
  CellularAutomaton p = make_symbol_perm(b, Permutation::from_cycles(5, {{0, 3, 1}}));
  CHECK(p.is_reversible());
  CHECK(exactly_equal(p.inverted().compose(p), CellularAutomaton::identity(b)));
}

TEST_CASE("inverse of symbol permutation is the inverse permutation") {
  Alphabet a(4);
  Permutation p = Permutation::from_cycles(4, {{0, 1, 2, 3}});
  CellularAutomaton pc = make_symbol_perm(a, p);
  CHECK(exactly_equal(pc.inverted(), make_symbol_perm(a, p.inverse())));
}

TEST_CASE("reversibility agrees with periodic-configuration injectivity") {
  // seeded sample of the radius-<=1 rule space on alphabets 2 and 3
  Rng rng(0);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    int n = 2 + static_cast<int>(rng.below(2));
    Alphabet a(n);
    uint64_t entries = checked_pow(n, 3, UINT64_MAX);
    std::vector<Symbol> t(entries);
    for (auto& s : t) s = static_cast<Symbol>(rng.below(n));
    CellularAutomaton f = CellularAutomaton::from_table(a, -1, 1, std::move(t));
    CHECK(f.is_reversible() == periodic_injectivity_oracle(f, 6));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("reverse conjugate basics") {
  Alphabet a(2);
  CellularAutomaton sigma = full_shift(a);
  CHECK(exactly_equal(sigma.reverse_conjugate(), sigma.inverted()));
  Rng rng(9);
  std::vector<Symbol> t(8);
  for (auto& s : t) s = static_cast<Symbol>(rng.below(2));
  CellularAutomaton f = CellularAutomaton::from_table(a, -1, 1, std::move(t));
  CHECK(exactly_equal(f.reverse_conjugate().reverse_conjugate(), f));
}

TEST_CASE("invert then compose is the identity when invert succeeds") {
  Rng rng(13);
  Alphabet a(2);
  CellularAutomaton sigma = full_shift(a);
  CellularAutomaton neg = make_symbol_perm(a, Permutation::transposition(2, 0, 1));
  std::vector<CellularAutomaton> pool = {sigma, neg, sigma.inverted(), neg.compose(sigma)};
  for (int it = 0; it < 10; ++it) {
    CellularAutomaton f = pool[rng.below(pool.size())].compose(pool[rng.below(pool.size())]);
    CellularAutomaton g = f.inverted();
    CHECK(exactly_equal(g.compose(f), CellularAutomaton::identity(a)));
  }
}

TEST_CASE("sampled equality on wide rules") {
  // force the sampled path with a wide fn-backed identity
  Alphabet a(3);
  auto fn = [](std::span<const Symbol> w) { return w[w.size() / 2]; };
  CellularAutomaton wideId = CellularAutomaton::from_fn(a, -9, 9, fn);
  EqualityVerdict v = equal(wideId, CellularAutomaton::identity(a), /*budget=*/1000, /*seed=*/1,
                            /*min_samples=*/500);
  CHECK(v.kind == EqualityVerdict::Kind::SampledEqual);
  CHECK(v.samples == 500);

  CellularAutomaton wideShift =
      CellularAutomaton::from_fn(a, -9, 9, [](std::span<const Symbol> w) { return w[10]; });
  EqualityVerdict u = equal(wideShift, CellularAutomaton::identity(a), 1000, 1, 500);
  CHECK(u.kind == EqualityVerdict::Kind::SampledUnequal);
  CHECK(u.witness_config.has_value());
}
