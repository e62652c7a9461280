#pragma once

#include <set>

#include "rca/config.hpp"

namespace rca {

/// Finite union of same-offset, same-width cylinders over one alphabet:
/// U_j [w_j]_offset.
struct ClopenSet {
  Alphabet alphabet;
  long long offset = 0;
  int width = 0;
  std::set<Word> words;  // all of length width, distinct

  ClopenSet() = default;
  ClopenSet(Alphabet a, long long off, std::set<Word> ws)
      : alphabet(std::move(a)), offset(off), words(std::move(ws)) {
    if (words.empty()) throw std::invalid_argument("empty cylinder union");
    width = words.begin()->size();
    for (const auto& w : words) {
      if (w.size() != width) throw std::invalid_argument("cylinder widths differ");
      if (w.empty()) throw std::invalid_argument("empty cylinder word");
      if (!w.alphabet.same_symbols(alphabet)) throw std::invalid_argument("alphabet mismatch");
    }
  }

  static ClopenSet cylinder(const Word& w, long long offset = 0) {
    return ClopenSet(w.alphabet, offset, {w});
  }

  bool contains(const SupportedConfig& x, long long shift = 0) const {
    // membership of sigma^shift(x), i.e. x has a member word at offset+shift
    Word win = x.window(offset + shift, offset + shift + width);
    return words.count(win) > 0;
  }

  /// Refine to a wider window [new_offset, new_offset+new_width), enumerating
  /// the free cells. Intended for small instances only.
  ClopenSet refined(long long new_offset, int new_width) const;

  /// Intersection as clopen sets (refines both to a common window).
  static ClopenSet intersect(const ClopenSet& a, const ClopenSet& b);

  bool operator==(const ClopenSet& o) const {
    return alphabet.size() == o.alphabet.size() && offset == o.offset && words == o.words;
  }
};

/// True iff w cannot overlap a translate of itself by 1..m-1 cells.
/// ("unbordered" = |w|-unbordered.)
bool word_is_unbordered(const Word& w, int m);

/// F cap sigma^i(F) empty for i in [1, m-1], decided on the cylinder words.
bool clopen_is_unbordered(const ClopenSet& f, int m);

/// The word 1 0^(l-1); requires l >= 2 and alphabet size >= 2.
Word canonical_unbordered(int l, const Alphabet& a);

}  // namespace rca
