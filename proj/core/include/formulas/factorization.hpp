#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace formulas {

struct FactorizationFailure : std::runtime_error {
  explicit FactorizationFailure(std::uint64_t n)
      : std::runtime_error("failed to factor " + std::to_string(n)) {}
};

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

/// Prime factors in ascending order with multiplicity. Trial division below
/// 2^16, Brent's rho (with primality certification of the parts) above.
std::vector<std::uint64_t> factorize_u64(std::uint64_t n);

}  // namespace formulas
