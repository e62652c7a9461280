#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rca/control.hpp"

using namespace rca;

namespace {

// block cycle 00 -> 10 -> 01 -> 00 on C = {0,1}
Permutation example_cycle() { return Permutation::from_cycles(4, {{0, 2, 1}}); }

SupportedConfig two_track_config(const Alphabet& product, const std::string& xs,
                                 const std::string& ys, long long start) {
  int nC = product.track_size(1);
  std::vector<Symbol> cells;
  for (size_t i = 0; i < xs.size(); ++i)
    cells.push_back(static_cast<Symbol>((xs[i] - '0') * nC + (ys[i] - '0')));
  Word zero(product, {0});
  return SupportedConfig(zero, Word(product, cells), zero, start);
}

Permutation random_second_track_perm(Rng& rng, const TwoTrack& tt) {
  std::vector<int> img(tt.product.size());
  for (int b = 0; b < tt.B.size(); ++b) {
    Permutation rho = random_permutation(rng, tt.C.size());
    for (int c = 0; c < tt.C.size(); ++c) img[b * tt.C.size() + c] = b * tt.C.size() + rho(c);
  }
  return Permutation(img);
}

}  // namespace

TEST_CASE("identity block permutation builds the identity") {
  TwoTrack tt = TwoTrack::make(2, 2);
  Alphabet b2(2);
  CellularAutomaton f =
      build_ctrl(tt.product, Permutation::identity(4), ClopenSet::cylinder(Word::parse(b2, "10")));
  CHECK(exactly_equal(f, CellularAutomaton::identity(tt.product)));
}

TEST_CASE("bordered control sets are rejected") {
  TwoTrack tt = TwoTrack::make(2, 2);
  Alphabet b2(2);
  CHECK_THROWS_AS(
      build_ctrl(tt.product, example_cycle(), ClopenSet::cylinder(Word::parse(b2, "11"))),
      NotUnbordered);
  CHECK_THROWS_AS(ControlledPerm(tt, ClopenSet::cylinder(Word::parse(b2, "11")), example_cycle()),
                  NotUnbordered);
}

TEST_CASE("paper worked example: configuration pair and local-rule cases") {
  TwoTrack tt = TwoTrack::make(2, 2);
  Alphabet b2(2);
  CellularAutomaton f =
      build_ctrl(tt.product, example_cycle(), ClopenSet::cylinder(Word::parse(b2, "01")));

  std::string xs = "0100111001001001001000110010010";
  std::string ys = "0101110011010011010101001001010";
  std::string out = "0001110011001011001100101101000";
  REQUIRE(xs.size() == ys.size());
  REQUIRE(xs.size() == out.size());
  SupportedConfig in = two_track_config(tt.product, xs, ys, 0);
  SupportedConfig img = f.apply(in);
  for (size_t i = 0; i < xs.size(); ++i) {
    CAPTURE(i);
    CHECK(tt.product.track_of(img.cell(i), 0) == xs[i] - '0');
    CHECK(tt.product.track_of(img.cell(i), 1) == out[i] - '0');
  }

  // the six listed local-rule cases, wildcard cell exhausted
  struct Case {
    int wild;  // -1: left cell free, +1: right cell free
    int x0, y0, x1, y1;
    int ox, oy;
  };
  // wild=-1 cases give (center,right)=(cells j, j+1); wild=+1 give (left,center)
  std::vector<Case> cases = {
      {-1, 0, 0, 1, 0, 0, 1}, {-1, 0, 0, 1, 1, 0, 0}, {-1, 0, 1, 1, 0, 0, 0},
      {+1, 0, 0, 1, 0, 1, 0}, {+1, 0, 0, 1, 1, 1, 0}, {+1, 0, 1, 1, 0, 1, 1},
  };
  REQUIRE(f.lo() == -1);
  REQUIRE(f.hi() == 1);
  auto code = [&](int x, int y) { return static_cast<Symbol>(x * 2 + y); };
  for (const auto& c : cases) {
    for (int w = 0; w < 4; ++w) {
      std::vector<Symbol> win(3);
      if (c.wild < 0) {
        win = {static_cast<Symbol>(w), code(c.x0, c.y0), code(c.x1, c.y1)};
      } else {
        win = {code(c.x0, c.y0), code(c.x1, c.y1), static_cast<Symbol>(w)};
      }
      CHECK(f.rule_on_window(win) == code(c.ox, c.oy));
    }
  }
}

TEST_CASE("ctrl never modifies the control track") {
  Rng rng(21);
  TwoTrack tt = TwoTrack::make(2, 3);
  Alphabet b2(2);
  CellularAutomaton f = build_ctrl(tt.product, random_even_permutation(rng, 9),
                                   ClopenSet::cylinder(Word::parse(b2, "10")));
  for (int it = 0; it < 50; ++it) {
    SupportedConfig x = random_config(rng, tt.product, 3, 7, 9);
    SupportedConfig y = f.apply(x);
    for (long long i = -12; i <= 12; ++i)
      CHECK(tt.product.track_of(y.cell(i), 0) == tt.product.track_of(x.cell(i), 0));
  }
}

TEST_CASE("disjoint cylinder unions compose cylinder-wise") {
  Rng rng(22);
  TwoTrack tt = TwoTrack::make(3, 2);
  Alphabet b3(3);
  Word w1 = Word::parse(b3, "100"), w2 = Word::parse(b3, "200");
  ClopenSet both(b3, 0, {w1, w2});
  REQUIRE(clopen_is_unbordered(both, 3));
  Permutation pi = random_even_permutation(rng, 8);
  CellularAutomaton whole = build_ctrl(tt.product, pi, both);
  CellularAutomaton parts = build_ctrl(tt.product, pi, ClopenSet::cylinder(w1))
                                .compose(build_ctrl(tt.product, pi, ClopenSet::cylinder(w2)));
  CHECK(exactly_equal(whole, parts));
}

TEST_CASE("commutator control law") {
  Alphabet c3(3);
  TwoTrack tt = TwoTrack::make(3, 3);

  SUBCASE("h = g gives the identity on both sides") {
    Permutation h = Permutation::from_cycles(3, {{0, 1, 2}});
    auto v = ctrl_commutator_law_check(tt.product, h, h, Word::parse(c3, "1"), 2, 0);
    CHECK(v.kind == EqualityVerdict::Kind::ExactEqual);
  }
  SUBCASE("paper instance in S3") {
    Permutation h = Permutation::from_cycles(3, {{0, 1, 2}});
    Permutation g = Permutation::transposition(3, 0, 1);
    auto v = ctrl_commutator_law_check(tt.product, h, g, Word::parse(c3, "1"), 2, 0);
    CHECK(v.kind == EqualityVerdict::Kind::ExactEqual);
  }
  SUBCASE("random data alphabet of size 4, w = 10") {
    Rng rng(23);
    TwoTrack t4 = TwoTrack::make(2, 4);
    Alphabet b2(2);
    for (int it = 0; it < 5; ++it) {
      Permutation h = random_permutation(rng, 4), g = random_permutation(rng, 4);
      auto v = ctrl_commutator_law_check(t4.product, h, g, Word::parse(b2, "10"), 1, 0);
      CHECK(v.kind == EqualityVerdict::Kind::ExactEqual);
    }
  }
}

TEST_CASE("event calculus on intersections of disjoint-window events") {
  Rng rng(29);
  TwoTrack tt = TwoTrack::make(2, 3);
  Alphabet b2(2);
  ClopenSet E = ClopenSet::cylinder(Word::parse(b2, "1"), 0);
  ClopenSet F = ClopenSet::cylinder(Word::parse(b2, "0"), 1);
  for (int it = 0; it < 4; ++it) {
    Permutation g = random_permutation(rng, 3), h = random_permutation(rng, 3);
    CellularAutomaton A = build_ctrl_cellwise(tt.product, g, E);
    CellularAutomaton B = build_ctrl_cellwise(tt.product, h, F);
    CellularAutomaton lhs = A.inverted().compose(B.inverted()).compose(A).compose(B);
    CellularAutomaton rhs = build_ctrl_cellwise(tt.product, Permutation::commutator(g, h),
                                                ClopenSet::intersect(E, F));
    CHECK(exactly_equal(lhs, rhs));
  }
}

TEST_CASE("hypocenter computation") {
  // S3: hypocenter is A3
  std::vector<Permutation> s3 = {Permutation::transposition(3, 0, 1),
                                 Permutation::from_cycles(3, {{0, 1, 2}})};
  auto hyp = hypocenter(s3);
  CHECK(hyp.size() == 3);
  for (const auto& p : hyp) CHECK(p.sign() == +1);
  // S4 -> A4
  std::vector<Permutation> s4 = {Permutation::transposition(4, 0, 1),
                                 Permutation::from_cycles(4, {{0, 1, 2, 3}})};
  CHECK(hypocenter(s4).size() == 12);
  // A5 is perfect: hypocenter is all of it
  std::vector<Permutation> a5 = {Permutation::from_cycles(5, {{0, 1, 2}}),
                                 Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})};
  CHECK(hypocenter(a5).size() == 60);
}

TEST_CASE("hypocenter_ctrl words evaluate to the direct controlled map") {
  std::vector<Permutation> s3 = {Permutation::transposition(3, 0, 1),
                                 Permutation::from_cycles(3, {{0, 1, 2}})};
  TwoTrack tt = TwoTrack::make(3, 3);
  Alphabet b3(3);
  Permutation g = Permutation::from_cycles(3, {{0, 1, 2}});

  SUBCASE("single-letter control is a single token") {
    auto e = hypocenter_ctrl(s3, g, Word::parse(b3, "1"), 0);
    CHECK(e.tokens.size() == 1);
    CHECK(exactly_equal(e.to_ca(tt.product),
                        build_ctrl_cellwise(tt.product, g, ClopenSet::cylinder(Word::parse(b3, "1")))));
  }
  SUBCASE("two-letter control word") {
    auto e = hypocenter_ctrl(s3, g, Word::parse(b3, "10"), 0);
    CHECK(exactly_equal(
        e.to_ca(tt.product),
        build_ctrl_cellwise(tt.product, g, ClopenSet::cylinder(Word::parse(b3, "10")))));
  }
  SUBCASE("odd permutations are rejected for length >= 2") {
    CHECK_THROWS_AS(hypocenter_ctrl(s3, Permutation::transposition(3, 0, 1),
                                    Word::parse(b3, "10"), 0),
                    NotInHypocenter);
  }
}

TEST_CASE("even_ctrl words evaluate to the cellwise controlled map") {
  TwoTrack tt = TwoTrack::make(2, 3);
  Alphabet b2(2);
  Permutation phi = Permutation::from_cycles(3, {{0, 1, 2}});

  SUBCASE("identity phi gives the empty word") {
    GroupWord w = even_ctrl(tt.product, Permutation::identity(3),
                            ClopenSet::cylinder(Word::parse(b2, "1")));
    CHECK(w.size() == 0);
  }
  SUBCASE("basic cylinder") {
    GroupWord w = even_ctrl(tt.product, phi, ClopenSet::cylinder(Word::parse(b2, "1")));
    CHECK(exactly_equal(eval_word(w), build_ctrl_cellwise(tt.product, phi,
                                                          ClopenSet::cylinder(Word::parse(b2, "1")))));
  }
  SUBCASE("width-2 cylinder at an offset") {
    GroupWord w = even_ctrl(tt.product, phi, ClopenSet::cylinder(Word::parse(b2, "10"), -1));
    CHECK(exactly_equal(
        eval_word(w),
        build_ctrl_cellwise(tt.product, phi, ClopenSet::cylinder(Word::parse(b2, "10"), -1))));
  }
  SUBCASE("union of cylinders") {
    ClopenSet F(b2, 0, {Word::parse(b2, "10"), Word::parse(b2, "01")});
    GroupWord w = even_ctrl(tt.product, phi, F);
    CHECK(exactly_equal(eval_word(w), build_ctrl_cellwise(tt.product, phi, F)));
  }
  SUBCASE("odd permutations are rejected") {
    CHECK_THROWS_AS(even_ctrl(tt.product, Permutation::transposition(3, 0, 1),
                              ClopenSet::cylinder(Word::parse(b2, "1"))),
                    NotEven);
  }
}

TEST_CASE("controlled-element action simulates the origin cell") {
  // words over the second-track partial shift and second-track-only symbol
  // permutations, against the P(B^Z, Sym(C)) action that tracks the cell
  // landing at the origin
  Rng rng(31);
  TwoTrack tt = TwoTrack::make(2, 3);
  for (int wordIt = 0; wordIt < 20; ++wordIt) {
    int len = rng.range(1, 6);
    GroupWord w(tt.product);
    ControlledGroupElement pe;
    pe.X = tt.B;
    pe.acted = tt.C.size();
    long long d = 0;
    for (int i = 0; i < len; ++i) {
      if (rng.below(2)) {
        long long e = rng.below(2) ? 1 : -1;
        w.tokens.push_back(GeneratorToken::partial_shift(2, e));
        pe.tokens.push_back(ControlledGroupElement::shift_tok(-e));
        d += e;
      } else {
        Permutation pp = random_second_track_perm(rng, tt);
        w.tokens.push_back(GeneratorToken::symbol_perm(pp));
        for (int b = 0; b < tt.B.size(); ++b) {
          std::vector<int> rho(tt.C.size());
          for (int c = 0; c < tt.C.size(); ++c) rho[c] = pp(b * tt.C.size() + c) % tt.C.size();
          pe.tokens.push_back(
              ControlledGroupElement::ctrl_tok(Permutation(rho), static_cast<Symbol>(b), 0));
        }
      }
    }
    CellularAutomaton f = eval_word(w);
    for (int s = 0; s < 500; ++s) {
      Rng r2 = rng.split(s);
      SupportedConfig xy = random_config(r2, tt.product, 2, 6, 9);
      SupportedConfig img = f.apply(xy);
      // control track as a B-configuration
      auto track0 = [&](const Word& ww) {
        std::vector<Symbol> v;
        for (Symbol s2 : ww.symbols) v.push_back(static_cast<Symbol>(s2 / tt.C.size()));
        return Word(tt.B, v);
      };
      SupportedConfig x(track0(xy.left), track0(xy.center), track0(xy.right), xy.center_start);
      SupportedConfig xShift(x.left, x.center, x.right, x.center_start - d);
      int a = tt.product.track_of(xy.cell(d), 1);
      auto [xr, ar] = pe.act(xShift, a);
      CHECK(tt.product.track_of(img.cell(0), 1) == ar);
    }
  }
}
