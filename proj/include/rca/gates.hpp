#pragma once

#include "rca/alphabet.hpp"
#include "rca/permutation.hpp"

namespace rca {

struct NotWeaklyConnected : std::runtime_error {
  NotWeaklyConnected() : std::runtime_error("hypergraph is not weakly connected") {}
};
struct AlphabetTooSmall : std::runtime_error {
  AlphabetTooSmall() : std::runtime_error("width-2 gates need an alphabet of size >= 3") {}
};
struct GatesNotEven : std::runtime_error {
  GatesNotEven() : std::runtime_error("permutation is odd") {}
};

/// One reversible gate: an even permutation of A^gate_width applied at an
/// adjacent window starting at `pos`.
struct Gate {
  int pos = 0;
  Permutation g;
};

/// Program of gates over words of length n; gates apply left to right.
struct GateWord {
  Alphabet alphabet;
  int n = 0;
  int gate_width = 2;
  std::vector<Gate> gates;

  GateWord() = default;
  GateWord(Alphabet a, int len, int width = 2)
      : alphabet(std::move(a)), n(len), gate_width(width) {}

  void push(int pos, const Permutation& g);
  GateWord& operator+=(const GateWord& o);
  GateWord inverse() const;

  Word apply(const Word& w) const;
  uint64_t apply_rank(uint64_t rank) const;
  Permutation to_permutation() const;  // on A^n (small n only)

  /// Cancels adjacent mutually inverse gates.
  void peephole();
};

Word gate_word_apply(const GateWord& gw, const Word& w);

/// Oriented 3-hyperedge: the 3-cycle a -> b -> c -> a on the vertex set.
struct Hyperedge3 {
  int a, b, c;
};

Permutation hyperedge_cycle(int N, const Hyperedge3& e);

/// Writes an even target as a word over the hyperedge 3-cycles and their
/// inverses. Tokens are 1-based signed indices into H, listed in composition
/// order (the last token acts first). Requires the hypergraph to be weakly
/// connected on all N vertices.
std::vector<int> alt_word_from_3cycles(int N, const std::vector<Hyperedge3>& H,
                                       const Permutation& target);

/// Decomposition of an even permutation of A^n into adjacent width-2 even
/// gates; |A| >= 3.
GateWord decompose_even(const Alphabet& a, int n, const Permutation& pi);

/// Binary variant: even permutations of {0,1}^n over adjacent width-3 gates,
/// n >= 3.
GateWord decompose_even_binary(int n, const Permutation& pi);

/// The controlled rotation used as the synthesis anchor: applies the 3-cycle
/// (0 1 2)^dir at coordinate j iff all other coordinates are 0. Exposed for
/// the oracle tests.
GateWord controlled_rotation_gadget(const Alphabet& a, int n, int j, int dir);
Permutation controlled_rotation_perm(const Alphabet& a, int n, int j, int dir);

/// Closure of the group generated by the even width-2 gates on {0,1}^3
/// (a proper subgroup of Alt(8)).
std::vector<Permutation> binary_width2_closure();

}  // namespace rca
