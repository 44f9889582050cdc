#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "formulas/trace.hpp"

namespace formulas {

struct IndexOutOfTable : std::out_of_range {
  IndexOutOfTable(const std::string& name, std::size_t n)
      : std::out_of_range("index " + std::to_string(n) + " outside table '" + name + "'") {}
};

/// Exact integer sequence indexed 1..max_n.
class CountTable {
 public:
  CountTable() = default;
  CountTable(std::string name, std::vector<mpz_class> values)
      : name_(std::move(name)), values_(std::move(values)) {}

  const std::string& name() const { return name_; }
  std::size_t max_n() const { return values_.size(); }

  const mpz_class& at(std::size_t n) const {
    if (n < 1 || n > values_.size()) throw IndexOutOfTable(name_, n);
    return values_[n - 1];
  }

  const std::vector<mpz_class>& values() const { return values_; }

 private:
  std::string name_;
  std::vector<mpz_class> values_;
};

/// f(n) = f_plus(n) + f_times(n), split by root node kind.
struct FTables {
  CountTable f;
  CountTable f_plus;
  CountTable f_times;
};

/// fexp(n) = all exponential formulas; fexp_pow(n) = those with a ^ root
/// (zero unless n is a perfect power).
struct FExpTables {
  CountTable fexp;
  CountTable fexp_pow;
};

mpz_class catalan(std::size_t m);

/// Addition-only count f0(n) = catalan(n-1).
mpz_class f0(std::size_t n);
CountTable build_f0_table(std::size_t max_n);

/// (g *' h)(n) over the divisors strictly between 1 and n.
mpz_class proper_convolution(const CountTable& g, const CountTable& h, std::size_t n);

/// Ascending divisors d of n with 1 < d < n.
std::vector<std::size_t> proper_divisors(std::size_t n);

FTables build_f_tables(std::size_t max_n);
FExpTables build_fexp_tables(std::size_t max_n);

/// Checks f = f_plus + f_times, the base values, and f(n) < 8^n on the whole
/// table; throws std::runtime_error naming the first offending index.
void check_f_invariants(const FTables& tables);
void check_fexp_invariants(const FExpTables& exp_tables, const FTables& tables);

/// Lemma-style convolution bound used by the sigma tail: (f0 *' f0)(n) <= 3^n.
/// Verified directly for every n <= max_n; throws on violation.
void check_f0_convolution_bound(const CountTable& f0_table);

struct MethodMismatch : std::runtime_error {
  MethodMismatch(unsigned k, std::size_t n)
      : std::runtime_error("f_" + std::to_string(k) + "(" + std::to_string(n) +
                           "): direct recursion and trace formula disagree"),
        k(k), n(n) {}
  unsigned k;
  std::size_t n;
};

/// Exact count of formulas for n with the given trace, straight from the
/// composition sum; `fk` must hold the tables f_0..f_j for every j appearing
/// in the trace, and f0_table must reach n + p.
mpz_class f_trace(const Trace& trace, std::size_t n, std::span<const CountTable> fk,
                  const CountTable& f0_table);

/// Same counts for a whole table 1..max_n, computed by chained additive
/// convolutions (identical sum, quadratic instead of exponential in p).
CountTable build_trace_table(const Trace& trace, std::size_t max_n,
                             std::span<const CountTable> fk, const CountTable& f0_table);

/// Tables f_0..f_k_max, each built by the direct root recursion and, when
/// `cross_check` is set, recomputed as a sum of trace tables and compared
/// index-by-index (MethodMismatch on any disagreement).
std::vector<CountTable> build_fk_tables(unsigned k_max, std::size_t max_n,
                                        bool cross_check = true);

}  // namespace formulas
