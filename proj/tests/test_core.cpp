#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rca/clopen.hpp"
#include "rca/random.hpp"

using namespace rca;

namespace {

// Oracle straight from the definition: w is m-unbordered iff
// vw = wv' forces |v| = 0 or |v| >= m. Checked by enumerating overlap shifts.
bool unbordered_oracle(const Word& w, int m) {
  for (int s = 1; s < m; ++s) {
    if (s >= w.size()) return false;
    bool overlap = true;
    for (int j = 0; j + s < w.size(); ++j)
      if (w[j] != w[j + s]) {
        overlap = false;
        break;
      }
    if (overlap) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("alphabet mixed-radix encode/decode round trip") {
  Alphabet a = Alphabet::product({2, 3, 2});
  CHECK(a.size() == 12);
  for (int s = 0; s < a.size(); ++s) {
    auto t = a.decode(static_cast<Symbol>(s));
    CHECK(a.encode(t) == s);
  }
  // factor 1 most significant
  CHECK(a.decode(11) == std::vector<int>{1, 2, 1});
  CHECK(a.encode(std::vector<int>{1, 0, 0}) == 6);
  CHECK_THROWS(Alphabet(6, {2, 2}));
}

TEST_CASE("word literal syntax") {
  Alphabet b2(2);
  Word w = Word::parse(b2, "10");
  CHECK(w.size() == 2);
  CHECK(w.str() == "10");
  Alphabet big(12);
  Word v = Word::parse(big, "11,0,3");
  CHECK(v.symbols == std::vector<Symbol>{11, 0, 3});
  CHECK(v.str() == "11,0,3");
  CHECK_THROWS(Word(b2, {2}));
}

TEST_CASE("supported config cell lookup agrees with explicit unrolling") {
  Alphabet a(3);
  SupportedConfig x(Word::parse(a, "01"), Word::parse(a, "21"), Word::parse(a, "102"), -1);
  // left tail ...010101 ending at index -2, center "21" at [-1,0], right tail from 1
  CHECK(x.cell(-1) == 2);
  CHECK(x.cell(0) == 1);
  CHECK(x.cell(-2) == 1);
  CHECK(x.cell(-3) == 0);
  CHECK(x.cell(-4) == 1);
  CHECK(x.cell(1) == 1);
  CHECK(x.cell(2) == 0);
  CHECK(x.cell(3) == 2);
  CHECK(x.cell(4) == 1);
  std::string s = x.str();
  SupportedConfig y = SupportedConfig::parse(a, s);
  CHECK(x.equals(y));
  SupportedConfig z = SupportedConfig::parse(a, "01|21|102@-1");
  CHECK(x.equals(z));
}

TEST_CASE("config equality is representation independent") {
  Alphabet a(2);
  SupportedConfig x(Word::parse(a, "0"), Word::parse(a, "1"), Word::parse(a, "0"));
  SupportedConfig y(Word::parse(a, "00"), Word::parse(a, "10"), Word::parse(a, "00"));
  CHECK(x.equals(y));
  SupportedConfig z(Word::parse(a, "0"), Word::parse(a, "1"), Word::parse(a, "10"));
  CHECK(!x.equals(z));
}

TEST_CASE("word unborderedness examples") {
  Alphabet b2(2);
  CHECK(word_is_unbordered(Word::parse(b2, "10"), 2));
  CHECK(!word_is_unbordered(Word::parse(b2, "11"), 2));
  CHECK(word_is_unbordered(Word::parse(b2, "1"), 1));
  CHECK_THROWS(word_is_unbordered(Word(b2, {}), 1));
}

TEST_CASE("clopen unborderedness examples") {
  Alphabet b2(2);
  CHECK(clopen_is_unbordered(ClopenSet::cylinder(Word::parse(b2, "10")), 2));
  CHECK(!clopen_is_unbordered(ClopenSet::cylinder(Word::parse(b2, "11")), 2));
  CHECK(clopen_is_unbordered(ClopenSet::cylinder(Word::parse(b2, "11")), 1));
}

TEST_CASE("word and cylinder unborderedness coincide (exhaustive)") {
  for (int n = 2; n <= 3; ++n) {
    Alphabet a(n);
    for (int len = 1; len <= 6; ++len) {
      uint64_t total = checked_pow(n, len, UINT64_MAX);
      for (uint64_t r = 0; r < total; ++r) {
        Word w = word_unrank(a, len, r);
        for (int m = 1; m <= len + 1; ++m) {
          bool wu = word_is_unbordered(w, m);
          CHECK(wu == clopen_is_unbordered(ClopenSet::cylinder(w), m));
          CHECK(wu == unbordered_oracle(w, m));
        }
      }
    }
  }
}

TEST_CASE("canonical unbordered word") {
  Alphabet b2(2);
  CHECK(canonical_unbordered(2, b2).str() == "10");
  CHECK(canonical_unbordered(5, b2).str() == "10000");
  CHECK(word_is_unbordered(canonical_unbordered(5, b2), 5));
  CHECK_THROWS(canonical_unbordered(1, b2));
}

TEST_CASE("permutation sign basics") {
  CHECK(Permutation::identity(5).sign() == +1);
  CHECK(Permutation::from_cycles(3, {{0, 1, 2}}).sign() == +1);
  CHECK(Permutation::transposition(4, 0, 1).sign() == -1);
}

TEST_CASE("sign is a homomorphism on random permutations") {
  Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    int n = rng.range(2, 9);
    Permutation p = random_permutation(rng, n), q = random_permutation(rng, n);
    CHECK((p * q).sign() == p.sign() * q.sign());
  }
}

TEST_CASE("clopen refinement and intersection") {
  Alphabet b2(2);
  ClopenSet f = ClopenSet::cylinder(Word::parse(b2, "1"), 0);
  ClopenSet g = ClopenSet::cylinder(Word::parse(b2, "0"), 1);
  ClopenSet both = ClopenSet::intersect(f, g);
  CHECK(both.offset == 0);
  CHECK(both.width == 2);
  CHECK(both.words == std::set<Word>{Word::parse(b2, "10")});
  SupportedConfig x(Word::parse(b2, "0"), Word::parse(b2, "10"), Word::parse(b2, "0"));
  CHECK(both.contains(x));
  CHECK(!both.contains(x, 1));
}

TEST_CASE("big perm sign matches table sign") {
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    int n = rng.range(2, 40);
    Permutation p = random_permutation(rng, n);
    BigPerm bp(n, [&](uint64_t x) { return static_cast<uint64_t>(p(static_cast<int>(x))); });
    CHECK(bp.sign() == p.sign());
  }
}
