#pragma once

#include "rca/alphabet.hpp"

namespace rca {

/// Two-way infinite configuration with eventually periodic tails:
/// ^w(left) . center (right)^w, center starting at cell `center_start`.
/// The left tail repeats ending at center_start-1; the right tail starts
/// at center_start + |center|.
struct SupportedConfig {
  Alphabet alphabet;
  Word left;    // nonempty
  Word center;  // may be empty
  Word right;   // nonempty
  long long center_start = 0;

  SupportedConfig() = default;
  SupportedConfig(Word l, Word c, Word r, long long start = 0)
      : alphabet(c.alphabet), left(std::move(l)), center(std::move(c)), right(std::move(r)),
        center_start(start) {
    if (left.empty() || right.empty()) throw std::invalid_argument("empty tail period");
    if (!left.alphabet.same_symbols(alphabet) || !right.alphabet.same_symbols(alphabet))
      throw std::invalid_argument("alphabet mismatch");
  }

  static SupportedConfig uniform(const Alphabet& a, Symbol s) {
    Word p(a, {s});
    return SupportedConfig(p, Word(a, {}), p, 0);
  }

  long long center_end() const { return center_start + center.size(); }  // exclusive

  Symbol cell(long long i) const {
    if (i < center_start) {
      long long d = i - center_start;  // negative
      long long m = d % left.size();
      if (m < 0) m += left.size();
      return left[static_cast<int>(m)];
    }
    if (i < center_end()) return center[static_cast<int>(i - center_start)];
    return right[static_cast<int>((i - center_end()) % right.size())];
  }

  Word window(long long a, long long b) const {  // cells [a, b)
    std::vector<Symbol> v;
    v.reserve(static_cast<size_t>(b - a));
    for (long long i = a; i < b; ++i) v.push_back(cell(i));
    return Word(alphabet, std::move(v));
  }

  /// Widen the explicit center to cover [a, b) at least.
  SupportedConfig widened(long long a, long long b) const {
    a = std::min(a, center_start);
    b = std::max(b, center_end());
    return SupportedConfig(left, window(a, b), right, a);
  }

  /// Equality as configurations (not representations).
  bool equals(const SupportedConfig& o) const;

  std::string str() const;  // LEFT|CENTER|RIGHT with optional @start
  static SupportedConfig parse(const Alphabet& a, const std::string& text);
};

}  // namespace rca
