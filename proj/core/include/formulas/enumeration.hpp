#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "formulas/formula.hpp"
#include "formulas/trace.hpp"

namespace formulas {

struct CapExceeded : std::runtime_error {
  CapExceeded(std::size_t n, std::size_t cap)
      : std::runtime_error("n=" + std::to_string(n) + " exceeds enumeration cap " +
                           std::to_string(cap)) {}
};

struct EnumerationConfig {
  std::size_t max_n = 12;         // entry-point cap (CapExceeded beyond)
  std::size_t memo_threshold = 9; // sub-formula lists memoized up to this value
};

/// Generates every valid formula for n exactly once, in a fixed order:
/// additive splits by ascending left value, then multiplicative splits by
/// ascending divisor, then power splits by ascending base. Streams through a
/// callback; sub-formula lists for small values are memoized, larger sides
/// are regenerated, so nothing near f(n) is ever materialized at once.
class Enumerator {
 public:
  explicit Enumerator(EnumerationConfig config = {}) : config_(config) {}

  const EnumerationConfig& config() const { return config_; }

  void for_each(std::size_t n, FormulaKindSet kinds,
                const std::function<void(const Formula&)>& fn) const;

  /// Materializes the full list (small n only).
  std::vector<Formula> all(std::size_t n, FormulaKindSet kinds) const;

  mpz_class count(std::size_t n, FormulaKindSet kinds) const;

  /// Arithmetic formulas for n grouped by number of multiplications.
  std::map<std::size_t, mpz_class> count_by_k(std::size_t n) const;

  /// Arithmetic formulas for n grouped by trace.
  std::map<Trace, mpz_class> count_by_trace(std::size_t n) const;

  /// One Polish-notation formula per line.
  void dump(std::size_t n, FormulaKindSet kinds, std::ostream& out) const;

 private:
  const std::vector<Formula>& memo_list(std::size_t n, FormulaKindSet kinds) const;
  void generate(std::size_t n, FormulaKindSet kinds,
                const std::function<void(const Formula&)>& fn) const;
  void split_pairs(std::size_t left_value, std::size_t right_value, NodeKind kind,
                   FormulaKindSet kinds, const std::function<void(const Formula&)>& fn) const;

  EnumerationConfig config_;
  // keyed by (value, allow_pow); lazily filled
  mutable std::map<std::pair<std::size_t, bool>, std::vector<Formula>> memo_;
};

}  // namespace formulas
