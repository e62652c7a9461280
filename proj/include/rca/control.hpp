#pragma once

#include "rca/clopen.hpp"
#include "rca/paut.hpp"

namespace rca {

struct NotUnbordered : std::runtime_error {
  NotUnbordered() : std::runtime_error("control set is not unbordered at the block width") {}
};
struct NotInHypocenter : std::runtime_error {
  NotInHypocenter() : std::runtime_error("element is not in the hypocenter") {}
};
struct NotEven : std::runtime_error {
  NotEven() : std::runtime_error("permutation is odd") {}
};

/// Product alphabet helpers for the two-track shifts (B x C).
struct TwoTrack {
  Alphabet product;  // factors {|B|, |C|}
  Alphabet B, C;

  static TwoTrack make(int b, int c) {
    TwoTrack t;
    t.product = Alphabet::product({b, c});
    t.B = Alphabet(b);
    t.C = Alphabet(c);
    return t;
  }
  static TwoTrack of(const Alphabet& product) {
    if (product.track_count() != 2) throw std::invalid_argument("need a two-track alphabet");
    TwoTrack t;
    t.product = product;
    t.B = Alphabet(product.track_size(0));
    t.C = Alphabet(product.track_size(1));
    return t;
  }
};

/// Block-controlled permutation: under every occurrence of F on the control
/// track, permute the aligned width-n block on the data track. The block for
/// an occurrence at k covers data cells [k + block_offset, ... + n). F must be
/// n-unbordered so blocks of distinct occurrences are disjoint.
CellularAutomaton build_ctrl(const Alphabet& product, const Permutation& pi, const ClopenSet& F,
                             long long block_offset = 0);

/// Same with a function-backed block permutation (for wide blocks).
CellularAutomaton build_ctrl_big(const Alphabet& product, const BigPerm& pi, int block_width,
                                 const ClopenSet& F, long long block_offset = 0);

/// Cellwise controlled permutation: apply pi (on C) at data cell j whenever
/// sigma^j(x) lies in F. No unborderedness needed; blocks have width 1.
CellularAutomaton build_ctrl_cellwise(const Alphabet& product, const Permutation& pi,
                                      const ClopenSet& F);

/// ControlledPerm per the spec record: serializable (F, pi) pair.
struct ControlledPerm {
  TwoTrack tracks;
  ClopenSet F;
  Permutation pi;  // on C^width(F)

  ControlledPerm(TwoTrack t, ClopenSet f, Permutation p);
  CellularAutomaton to_ca() const { return build_ctrl(tracks.product, pi, F); }
};

/// Word over the generators of P(X, G): the shift on X and maps ctrl{g}{[b]_i}
/// for basic cylinders. Listed left-to-right in composition order.
struct ControlledGroupElement {
  struct Token {
    bool is_shift = false;
    long long shift_exp = 0;  // shift on X
    Permutation g;            // on the acted set
    Symbol sym = 0;           // basic cylinder symbol
    long long offset = 0;     // basic cylinder position
  };
  Alphabet X;     // control alphabet B
  int acted = 0;  // size of the acted set (our C)
  std::vector<Token> tokens;

  static Token shift_tok(long long e) {
    Token t;
    t.is_shift = true;
    t.shift_exp = e;
    return t;
  }
  static Token ctrl_tok(Permutation g, Symbol b, long long offset) {
    Token t;
    t.g = std::move(g);
    t.sym = b;
    t.offset = offset;
    return t;
  }

  ControlledGroupElement inverse() const;
  ControlledGroupElement operator*(const ControlledGroupElement& o) const;

  /// Action on a pair (x, a).
  std::pair<SupportedConfig, int> act(const SupportedConfig& x, int a) const;

  /// Realization inside PAut[B;C] by second-track-only symbol permutations
  /// and first-track shifts.
  GroupWord to_paut_word(const Alphabet& product) const;
  CellularAutomaton to_ca(const Alphabet& product) const;
};

/// Finite-group utilities on image tables.
std::vector<Permutation> group_closure(const std::vector<Permutation>& gens);
std::vector<Permutation> hypocenter(const std::vector<Permutation>& gens);

/// h as a product of commutators [h_i, g_i] with h_i in the hypocenter and
/// g_i in the group; found by BFS. Product is taken left to right in
/// composition order: h = [h_1,g_1] o [h_2,g_2] o ...
struct CommutatorExpr {
  std::vector<std::pair<Permutation, Permutation>> factors;
  int length() const { return static_cast<int>(factors.size()); }
};
CommutatorExpr commutator_expression(const std::vector<Permutation>& group_elems,
                                     const std::vector<Permutation>& hypo_elems,
                                     const Permutation& h);

/// Word over P(X,G) basic tokens evaluating to ctrl{g}{[w]_m}; g must lie in
/// the hypocenter of G.
ControlledGroupElement hypocenter_ctrl(const std::vector<Permutation>& group_gens,
                                       const Permutation& g, const Word& w, long long m);

/// PAut[B;C] word evaluating to the cellwise ctrl{phi}{F} for even phi.
GroupWord even_ctrl(const Alphabet& product, const Permutation& phi, const ClopenSet& F);

/// Exact check of the commutator control law
/// [ctrl{h}{[w]_m}, ctrl{g}{[a]_{m+|w|}}] = ctrl{[h,g]}{[wa]_m}.
EqualityVerdict ctrl_commutator_law_check(const Alphabet& product, const Permutation& h,
                                          const Permutation& g, const Word& w, Symbol a,
                                          long long m);

}  // namespace rca
