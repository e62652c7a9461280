#pragma once

#include <map>

#include "rca/ca.hpp"

namespace rca {

/// One generator in a PAut word: a partial shift, a symbol permutation, or a
/// named reference to a CA defined elsewhere.
struct GeneratorToken {
  enum class Kind { PartialShift, SymbolPerm, Named };
  Kind kind = Kind::PartialShift;
  int track = 1;           // PartialShift, 1-based
  long long exponent = 1;  // PartialShift / Named
  Permutation perm;        // SymbolPerm
  std::string name;        // Named

  static GeneratorToken partial_shift(int track, long long e = 1) {
    GeneratorToken t;
    t.kind = Kind::PartialShift;
    t.track = track;
    t.exponent = e;
    return t;
  }
  static GeneratorToken symbol_perm(Permutation p) {
    GeneratorToken t;
    t.kind = Kind::SymbolPerm;
    t.perm = std::move(p);
    return t;
  }
  static GeneratorToken named(std::string n, long long e = 1) {
    GeneratorToken t;
    t.kind = Kind::Named;
    t.name = std::move(n);
    t.exponent = e;
    return t;
  }

  GeneratorToken inverse() const;
  bool operator==(const GeneratorToken& o) const;
};

/// Formal word over generator tokens. Tokens are listed left-to-right in
/// composition order: [t1, t2, t3] evaluates to t1 o t2 o t3 (t3 applied
/// first).
struct GroupWord {
  Alphabet alphabet;
  std::vector<GeneratorToken> tokens;

  GroupWord() = default;
  explicit GroupWord(Alphabet a, std::vector<GeneratorToken> ts = {})
      : alphabet(std::move(a)), tokens(std::move(ts)) {}

  int size() const { return static_cast<int>(tokens.size()); }

  GroupWord operator*(const GroupWord& o) const;  // this o other
  GroupWord inverse() const;
  GroupWord conjugated_by(const GroupWord& h) const;  // h^-1 * this * h
  static GroupWord commutator(const GroupWord& g, const GroupWord& h);
  GroupWord power(long long e) const;

  /// Free reduction: merges adjacent like tokens and drops identities.
  GroupWord reduced() const;

  std::string str() const;
  static GroupWord parse(const Alphabet& a, const std::string& text,
                         const std::map<std::string, Permutation>& perms = {});
};

using WordEnv = std::map<std::string, CellularAutomaton>;

CellularAutomaton make_partial_shift(const Alphabet& a, int track);
CellularAutomaton make_symbol_perm(const Alphabet& a, const Permutation& p);
CellularAutomaton eval_word(const GroupWord& w, const WordEnv& env = {});

/// Conjugating symbol-permutation pair (pi-bar, pi-bar^-1) between two
/// factorization views of the same symbol set.
std::pair<CellularAutomaton, CellularAutomaton> conjugate_decomposition(const Alphabet& from,
                                                                        const Alphabet& to,
                                                                        const Permutation& pi);

}  // namespace rca
