#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "formulas/formula.hpp"

namespace formulas {

enum class Scheme : std::uint8_t { fcf, scf, horner };

const char* scheme_name(Scheme s);

struct EncodingResult {
  Formula formula;
  Scheme scheme;
  std::size_t length = 0;  // == formula.size()
};

/// Binary-expansion encoding: n = sum 2^a_i with a_i strictly decreasing,
/// terms right-associated, exponents >= 2 encoded recursively.
EncodingResult encode_fcf(std::uint64_t n);

/// Prime-factorization encoding: ascending primes, product left-associated,
/// p -> 1+(p-1) and exponents >= 2 encoded recursively.
EncodingResult encode_scf(std::uint64_t n);

/// Recursive factoring of the binary expansion: even n = m * 2^v peels the
/// odd part and the 2-adic valuation, odd n > 1 strips a trailing +1.
EncodingResult encode_horner(std::uint64_t n);

EncodingResult encode(Scheme scheme, std::uint64_t n);

/// Number of ones in the binary expansion.
unsigned s2(std::uint64_t n);

/// The SCF with every (1+1) contracted to the symbol '2', e.g.
/// "(1+2)(1+2^(2^2))" for 51 (multiplication written as juxtaposition).
std::string scf_two_form(std::uint64_t n);

/// Number of (leaf+leaf) additions in the SCF tree == number of 2s in the
/// two-form.
unsigned t_count(std::uint64_t n);

/// S_short(1..limit) by dynamic programming over additive, multiplicative and
/// power splits (1 never an argument of * or ^). Quadratic in limit.
std::vector<std::uint16_t> shortest_sizes(std::size_t limit);

struct BoundViolation : std::runtime_error {
  BoundViolation(const std::string& bound, std::uint64_t witness)
      : std::runtime_error("bound " + bound + " violated at n=" + std::to_string(witness)),
        witness(witness) {}
  std::uint64_t witness;
};

struct CensusRow {
  std::uint32_t n;
  std::uint16_t s2;
  std::uint16_t t;
  std::uint16_t s_fcf;
  std::uint16_t s_scf;
  std::uint16_t s_horner;
  std::uint16_t s_short;  // 0 when n is above the DP limit
};

struct SizeCensus {
  std::size_t limit = 0;
  double epsilon = 0;
  std::vector<CensusRow> rows;  // n = 2..limit

  // per-bound witnesses (empty means the bound held everywhere)
  std::vector<std::uint64_t> scf_6t_violations;      // S_SCF(n) <= 6 t(n) - 1
  std::vector<std::uint64_t> t_log2_violations;      // t(n) <= log2 n
  std::vector<std::uint64_t> fcf_s2_violations;      // S_FCF(n) >= s2(n)
  std::vector<std::uint64_t> short_min_violations;   // S_short <= min(encoders)
  std::vector<std::uint64_t> pow2_t_violations;      // n >= 2^t(n)

  // #{n <= limit : S_short(n) <= (1-epsilon) log_4 n} and its counting bound
  std::uint64_t short_below_threshold = 0;
  double short_threshold_bound = 0;  // 4^{(1-epsilon) log_4 limit + 1}

  // descriptive statistics (reported, never asserted)
  double max_fcf_over_loglog = 0;   // max S_FCF(n)/(log n * log log n), n >= 3
  double mean_fcf_over_loglog = 0;
  double max_horner_over_log = 0;   // max S_Hor(n)/log n
  double mean_scf_len = 0;
  double mean_horner_len = 0;
};

/// Sweeps 2..limit; `threads` > 1 splits the range across workers.
SizeCensus run_census(std::size_t limit, double epsilon, unsigned threads = 1);

/// run_census + hard assertions: throws BoundViolation on the first nonempty
/// violation list.
SizeCensus verify_bounds(std::size_t limit, double epsilon, unsigned threads = 1);

void write_census_csv(const SizeCensus& census, std::ostream& out);

}  // namespace formulas
