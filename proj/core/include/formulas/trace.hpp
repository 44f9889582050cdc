#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "formulas/formula.hpp"

namespace formulas {

/// The multiplicative signature (p, l, r) of an arithmetic formula: p primitive
/// mul nodes left to right, l[i]/r[i] the mul counts inside their left/right
/// subtrees. The 0-trace (p=0, empty tuples) is the signature of addition-only
/// formulas. weight() is the total number of mul nodes.
struct Trace {
  std::vector<std::uint32_t> l;
  std::vector<std::uint32_t> r;

  std::size_t p() const { return l.size(); }
  std::size_t weight() const;

  auto operator<=>(const Trace&) const = default;

  std::string to_string() const;  // "(p,(l...),(r...))"
};

/// Signature of a valid arithmetic formula (throws PowDisallowed on ^ nodes).
/// Consistency: sum(l)+sum(r)+p == count_mul_nodes(formula).
Trace trace_of(const Formula& formula);

/// All traces of weight k, no duplicates, p ascending then (l,r) lexicographic.
/// Cross-checked against the stars-and-bars count before returning.
std::vector<Trace> enumerate_traces(unsigned k);

/// |T_k| = sum_{p=1..k} binom(k+p-1, 2p-1) for k >= 1, and 1 for k = 0.
mpz_class trace_count(unsigned k);

}  // namespace formulas
