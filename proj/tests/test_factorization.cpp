#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "formulas/factorization.hpp"

using namespace formulas;

TEST_CASE("primality on small and classic tricky inputs") {
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK_FALSE(is_prime_u64(4));
  CHECK(is_prime_u64(65537));
  CHECK_FALSE(is_prime_u64(3215031751ull));      // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime_u64(341550071728321ull)); // spsp to 2..17
  CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime_u64(18446744073709551615ull));
}

TEST_CASE("factorize small numbers") {
  CHECK(factorize_u64(2) == std::vector<std::uint64_t>{2});
  CHECK(factorize_u64(12) == std::vector<std::uint64_t>{2, 2, 3});
  CHECK(factorize_u64(2430) == std::vector<std::uint64_t>{2, 3, 3, 3, 3, 3, 5});
  CHECK(factorize_u64(65536) == std::vector<std::uint64_t>(16, 2));
}

TEST_CASE("factorize large semiprimes via rho") {
  std::uint64_t p = 1000000007ull, q = 998244353ull;
  auto f = factorize_u64(p * q);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == q);
  CHECK(f[1] == p);

  // product reassembles for a spread of awkward inputs
  for (std::uint64_t n : {6221671ull * 2147483647ull, 2147483647ull * 2147483647ull,
                          18446744073709551557ull, 614889782588491410ull}) {
    auto factors = factorize_u64(n);
    unsigned __int128 prod = 1;
    for (std::uint64_t x : factors) {
      CHECK(is_prime_u64(x));
      prod *= x;
    }
    CHECK(prod == n);
  }
}
