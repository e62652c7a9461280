#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "rca/config.hpp"
#include "rca/permutation.hpp"
#include "rca/random.hpp"

namespace rca {

// Rule-entry budgets. Tables above kTableBudget are never materialized;
// composition auto-tabulates (and tightens) below kAutoTabulate.
inline constexpr uint64_t kTableBudget = 1ull << 24;
inline constexpr uint64_t kAutoTabulate = 1ull << 23;
inline constexpr int kDefaultInverseRadius = 16;

struct ReversibilityError : std::runtime_error {
  ReversibilityError() : std::runtime_error("cellular automaton is not reversible") {}
};
struct RadiusBoundExceeded : std::runtime_error {
  explicit RadiusBoundExceeded(const std::string& m) : std::runtime_error(m) {}
};

/// One composition factor: a local rule on interval [lo, hi], backed by a
/// table, a window function, or both; `global` is an optional whole-config
/// applier used as a fast path (and for maps whose window form is wide).
struct RulePrimitive {
  Alphabet alphabet;
  int lo = 0, hi = 0;
  std::vector<Symbol> table;                                  // size n^width if used
  std::function<Symbol(std::span<const Symbol>)> fn;          // used when table empty
  std::function<SupportedConfig(const SupportedConfig&)> global;
  std::string describe;  // serialization tag for non-table rules

  int width() const { return hi - lo + 1; }
};

struct EqualityVerdict {
  enum class Kind { ExactEqual, ExactUnequal, SampledEqual, SampledUnequal };
  Kind kind;
  std::optional<Word> witness_word;              // ExactUnequal
  std::optional<SupportedConfig> witness_config; // SampledUnequal
  uint64_t samples = 0;
  uint64_t seed = 0;

  bool equal() const { return kind == Kind::ExactEqual || kind == Kind::SampledEqual; }
  bool exact() const { return kind == Kind::ExactEqual || kind == Kind::ExactUnequal; }
  std::string str() const;
};

/// Exact local-rule CA on a full shift. Immutable value; a CA is a formal
/// composition factors[0] o factors[1] o ... o factors[k-1] (last applied
/// first). Single-factor tabulated form is the normal form when it fits.
class CellularAutomaton {
public:
  CellularAutomaton() = default;

  static CellularAutomaton identity(const Alphabet& a);
  static CellularAutomaton from_table(const Alphabet& a, int lo, int hi,
                                      std::vector<Symbol> table);
  static CellularAutomaton from_fn(const Alphabet& a, int lo, int hi,
                                   std::function<Symbol(std::span<const Symbol>)> fn,
                                   std::function<SupportedConfig(const SupportedConfig&)> global = {},
                                   std::string describe = {});
  /// Builds the rule table by evaluating fn on every window (width must fit).
  static CellularAutomaton tabulate_fn(const Alphabet& a, int lo, int hi,
                                       const std::function<Symbol(std::span<const Symbol>)>& fn);

  const Alphabet& alphabet() const { return alpha_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int width() const { return hi_ - lo_ + 1; }
  int radius() const { return std::max(std::abs(lo_), std::abs(hi_)); }
  const std::vector<std::shared_ptr<const RulePrimitive>>& factors() const { return factors_; }
  bool is_tabulated() const { return factors_.size() == 1 && !factors_[0]->table.empty(); }
  const std::vector<Symbol>& table() const { return factors_.at(0)->table; }

  SupportedConfig apply(const SupportedConfig& x) const;

  /// Output symbol at a cell whose window [cell+lo, cell+hi] is `window`.
  Symbol rule_on_window(std::span<const Symbol> window) const;

  /// Image of a finite word under sliding application (length shrinks by
  /// width-1); result cells are [a - lo, a + |w| - 1 - hi] when w covers
  /// [a, a + |w| - 1].
  std::vector<Symbol> slide(std::span<const Symbol> w) const;

  CellularAutomaton compose(const CellularAutomaton& g) const;  // this o g
  CellularAutomaton power(long long e) const;                   // e may be negative

  /// Single tightened table form if within budget, else nullopt.
  std::optional<CellularAutomaton> tabulated(uint64_t budget = kAutoTabulate) const;
  /// Greedily merges factor runs into tables; never changes semantics.
  CellularAutomaton optimized(uint64_t budget = kAutoTabulate) const;

  bool is_reversible() const;
  CellularAutomaton inverted(int max_inverse_radius = kDefaultInverseRadius) const;
  CellularAutomaton reverse_conjugate() const;

  bool operator==(const CellularAutomaton&) const = default;

private:
  Alphabet alpha_;
  int lo_ = 0, hi_ = 0;
  std::vector<std::shared_ptr<const RulePrimitive>> factors_;
};

EqualityVerdict equal(const CellularAutomaton& f, const CellularAutomaton& g,
                      uint64_t budget = kTableBudget, uint64_t seed = 0,
                      uint64_t min_samples = 100000);

/// Exact equality decision or throw if infeasible within budget; convenience
/// for tests that must not fall back to sampling.
bool exactly_equal(const CellularAutomaton& f, const CellularAutomaton& g,
                   uint64_t budget = kTableBudget);

SupportedConfig reverse_config(const SupportedConfig& x);

}  // namespace rca
