#include "formulas/factorization.hpp"

#include <algorithm>
#include <numeric>

namespace formulas {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 out = 1;
  base %= m;
  while (exp) {
    if (exp & 1) out = mulmod(out, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return out;
}

bool miller_rabin(u64 n, u64 a) {
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's cycle variant of Pollard's rho; returns a nontrivial factor of
// composite odd n, or 0 if this c failed.
u64 brent_rho(u64 n, u64 c) {
  u64 y = 2, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
    for (u64 k = 0; k < r && g == 1; k += m) {
      ys = y;
      u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = (mulmod(y, y, n) + c) % n;
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
    r *= 2;
  }
  if (g == n) {
    // backtrack one step at a time
    do {
      ys = (mulmod(ys, ys, n) + c) % n;
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  for (u64 d = 2; d < (1u << 16) && d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      factor_rec(n / d, out);
      return;
    }
  }
  for (u64 c = 1; c < 64; ++c) {
    u64 g = brent_rho(n, c);
    if (g != 0 && g != 1 && g != n) {
      factor_rec(g, out);
      factor_rec(n / g, out);
      return;
    }
  }
  throw FactorizationFailure(n);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic base set for n < 2^64
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (!miller_rabin(n, a)) return false;
  return true;
}

std::vector<u64> factorize_u64(u64 n) {
  if (n < 2) throw std::invalid_argument("factorize_u64 needs n >= 2");
  std::vector<u64> out;
  factor_rec(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace formulas
