#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rca {

using Symbol = uint16_t;

/// Finite symbol set 0..size-1, optionally factored into tracks.
/// Factored symbols encode as mixed-radix tuples, factor 1 most significant.
class Alphabet {
public:
  Alphabet() : size_(1) {}
  explicit Alphabet(int size, std::vector<int> factors = {})
      : size_(size), factors_(std::move(factors)) {
    if (size_ < 1) throw std::invalid_argument("alphabet size must be positive");
    if (!factors_.empty()) {
      long long prod = 1;
      for (int f : factors_) {
        if (f < 1) throw std::invalid_argument("factor must be positive");
        prod *= f;
      }
      if (prod != size_) throw std::invalid_argument("factor product != size");
    }
  }

  static Alphabet product(const std::vector<int>& factors) {
    long long prod = 1;
    for (int f : factors) prod *= f;
    return Alphabet(static_cast<int>(prod), factors);
  }

  int size() const { return size_; }
  const std::vector<int>& factors() const { return factors_; }
  int track_count() const { return factors_.empty() ? 1 : static_cast<int>(factors_.size()); }

  int track_size(int i) const {
    if (factors_.empty()) {
      if (i != 0) throw std::out_of_range("track index");
      return size_;
    }
    return factors_.at(i);
  }

  /// Mixed-radix decode, factor 1 most significant.
  std::vector<int> decode(Symbol s) const {
    std::vector<int> t(track_count());
    int v = s;
    for (int i = track_count() - 1; i >= 0; --i) {
      int n = track_size(i);
      t[i] = v % n;
      v /= n;
    }
    return t;
  }

  Symbol encode(std::span<const int> tracks) const {
    if (static_cast<int>(tracks.size()) != track_count())
      throw std::invalid_argument("track arity mismatch");
    long long v = 0;
    for (int i = 0; i < track_count(); ++i) {
      int n = track_size(i);
      if (tracks[i] < 0 || tracks[i] >= n) throw std::out_of_range("track symbol");
      v = v * n + tracks[i];
    }
    return static_cast<Symbol>(v);
  }

  int track_of(Symbol s, int i) const {
    int v = s;
    for (int j = track_count() - 1; j > i; --j) v /= track_size(j);
    return v % track_size(i);
  }

  /// Replaces track i of symbol s with value t.
  Symbol with_track(Symbol s, int i, int t) const {
    auto d = decode(s);
    d[i] = t;
    return encode(d);
  }

  /// Same symbols, different factor view.
  Alphabet refactored(std::vector<int> factors) const { return Alphabet(size_, std::move(factors)); }

  bool operator==(const Alphabet& o) const { return size_ == o.size_ && factors_ == o.factors_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }
  /// Composition only cares about the symbol set.
  bool same_symbols(const Alphabet& o) const { return size_ == o.size_; }

private:
  int size_;
  std::vector<int> factors_;
};

/// Finite 0-indexed string of symbols over an alphabet.
struct Word {
  Alphabet alphabet;
  std::vector<Symbol> symbols;

  Word() = default;
  Word(Alphabet a, std::vector<Symbol> s) : alphabet(std::move(a)), symbols(std::move(s)) {
    for (Symbol x : symbols)
      if (x >= alphabet.size()) throw std::invalid_argument("symbol out of range");
  }

  int size() const { return static_cast<int>(symbols.size()); }
  bool empty() const { return symbols.empty(); }
  Symbol operator[](int i) const { return symbols[i]; }

  Word reversed() const {
    return Word(alphabet, std::vector<Symbol>(symbols.rbegin(), symbols.rend()));
  }

  bool operator==(const Word& o) const {
    return alphabet.size() == o.alphabet.size() && symbols == o.symbols;
  }
  bool operator<(const Word& o) const { return symbols < o.symbols; }

  /// Digit string for sizes <= 10, comma-separated otherwise.
  std::string str() const;
  static Word parse(const Alphabet& a, const std::string& text);
};

/// Mixed-radix rank of a word, first symbol most significant.
uint64_t word_rank(const Word& w);
Word word_unrank(const Alphabet& a, int len, uint64_t rank);

uint64_t checked_pow(uint64_t base, int exp, uint64_t cap);  // min(base^exp, cap)

}  // namespace rca
