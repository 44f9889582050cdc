#include "formulas/encoders.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "formulas/factorization.hpp"

namespace formulas {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::fcf: return "fcf";
    case Scheme::scf: return "scf";
    case Scheme::horner: return "horner";
  }
  return "?";
}

namespace {

Formula two() {
  static const Formula f = Formula::add(Formula::one(), Formula::one());
  return f;
}

Formula fcf_tree(std::uint64_t n, std::map<std::uint64_t, Formula>& memo);

// One binary-expansion term 2^a.
Formula fcf_term(std::uint64_t a, std::map<std::uint64_t, Formula>& memo) {
  if (a == 0) return Formula::one();
  if (a == 1) return two();
  return Formula::pow(two(), fcf_tree(a, memo));
}

Formula fcf_tree(std::uint64_t n, std::map<std::uint64_t, Formula>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<unsigned> exps;  // strictly decreasing
  for (int a = 63; a >= 0; --a)
    if (n & (std::uint64_t(1) << a)) exps.push_back(static_cast<unsigned>(a));
  Formula out = fcf_term(exps.back(), memo);
  for (std::size_t i = exps.size() - 1; i-- > 0;)
    out = Formula::add(fcf_term(exps[i], memo), out);  // right-associated sum
  memo.emplace(n, out);
  return out;
}

Formula scf_tree(std::uint64_t n, std::map<std::uint64_t, Formula>& memo);

Formula scf_prime(std::uint64_t p, std::map<std::uint64_t, Formula>& memo) {
  if (p == 2) return two();
  return Formula::add(Formula::one(), scf_tree(p - 1, memo));
}

Formula scf_tree(std::uint64_t n, std::map<std::uint64_t, Formula>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<std::uint64_t> primes = factorize_u64(n);  // ascending, multiplicity
  Formula out;
  std::size_t i = 0;
  while (i < primes.size()) {
    std::uint64_t p = primes[i];
    std::size_t alpha = 0;
    while (i < primes.size() && primes[i] == p) {
      ++alpha;
      ++i;
    }
    Formula base = scf_prime(p, memo);
    Formula term = (alpha == 1) ? base : Formula::pow(base, scf_tree(alpha, memo));
    out = out.empty() ? term : Formula::mul(out, term);  // left-associated product
  }
  memo.emplace(n, out);
  return out;
}

Formula horner_tree(std::uint64_t n, std::map<std::uint64_t, Formula>& memo) {
  if (n == 1) return Formula::one();
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Formula out;
  if (n % 2 == 1) {
    out = Formula::add(horner_tree(n - 1, memo), Formula::one());
  } else {
    unsigned v = std::countr_zero(n);
    std::uint64_t m = n >> v;
    Formula power = (v == 1) ? two() : Formula::pow(two(), horner_tree(v, memo));
    out = (m == 1) ? power : Formula::mul(horner_tree(m, memo), power);
  }
  memo.emplace(n, out);
  return out;
}

EncodingResult wrap(Formula f, Scheme s) { return EncodingResult{f, s, f.size()}; }

}  // namespace

EncodingResult encode_fcf(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("encode_fcf needs n >= 1");
  std::map<std::uint64_t, Formula> memo;
  return wrap(fcf_tree(n, memo), Scheme::fcf);
}

EncodingResult encode_scf(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("encode_scf needs n >= 2");
  std::map<std::uint64_t, Formula> memo;
  return wrap(scf_tree(n, memo), Scheme::scf);
}

EncodingResult encode_horner(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("encode_horner needs n >= 1");
  std::map<std::uint64_t, Formula> memo;
  return wrap(horner_tree(n, memo), Scheme::horner);
}

EncodingResult encode(Scheme scheme, std::uint64_t n) {
  switch (scheme) {
    case Scheme::fcf: return encode_fcf(n);
    case Scheme::scf: return encode_scf(n);
    case Scheme::horner: return encode_horner(n);
  }
  throw std::invalid_argument("bad scheme");
}

unsigned s2(std::uint64_t n) { return static_cast<unsigned>(std::popcount(n)); }

namespace {

bool is_two_node(const Formula& f) {
  return f.kind() == NodeKind::add && f.left().is_leaf() && f.right().is_leaf();
}

unsigned count_two_nodes(const Formula& f) {
  if (f.is_leaf()) return 0;
  if (is_two_node(f)) return 1;
  return count_two_nodes(f.left()) + count_two_nodes(f.right());
}

// Infix with (1+1) contracted to '2' and '*' written as juxtaposition,
// matching the style "(1+2)(1+2^(2^2))".
void two_form_append(const Formula& f, std::string& out, bool parens) {
  if (f.is_leaf()) {
    out += '1';
    return;
  }
  if (is_two_node(f)) {
    out += '2';
    return;
  }
  if (parens) out += '(';
  switch (f.kind()) {
    case NodeKind::add:
      two_form_append(f.left(), out, true);
      out += '+';
      two_form_append(f.right(), out, true);
      break;
    case NodeKind::mul:
      two_form_append(f.left(), out, true);
      two_form_append(f.right(), out, true);
      break;
    case NodeKind::pow:
      two_form_append(f.left(), out, true);
      out += '^';
      two_form_append(f.right(), out, true);
      break;
    default: break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string scf_two_form(std::uint64_t n) {
  std::string out;
  two_form_append(encode_scf(n).formula, out, false);
  return out;
}

unsigned t_count(std::uint64_t n) { return count_two_nodes(encode_scf(n).formula); }

std::vector<std::uint16_t> shortest_sizes(std::size_t limit) {
  if (limit < 1) throw std::invalid_argument("limit must be >= 1");
  std::vector<std::uint16_t> s(limit + 1, 0);
  s[1] = 1;
  for (std::size_t n = 2; n <= limit; ++n) {
    unsigned best = ~0u;
    for (std::size_t a = 1; 2 * a <= n; ++a) {
      unsigned cand = unsigned(s[a]) + unsigned(s[n - a]);
      if (cand < best) best = cand;
    }
    for (std::size_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        unsigned cand = unsigned(s[d]) + unsigned(s[n / d]);
        if (cand < best) best = cand;
      }
    }
    for (std::size_t a = 2; a * a <= n; ++a) {
      std::size_t p = a * a;
      std::size_t b = 2;
      while (p < n && p <= n / a) {
        p *= a;
        ++b;
      }
      if (p == n) {
        unsigned cand = unsigned(s[a]) + unsigned(s[b]);
        if (cand < best) best = cand;
      }
    }
    s[n] = static_cast<std::uint16_t>(best + 1);
  }
  return s;
}

namespace {

void census_row(std::uint32_t n, const std::vector<std::uint16_t>& shortest, CensusRow& row) {
  EncodingResult scf = encode_scf(n);
  row.n = n;
  row.s2 = static_cast<std::uint16_t>(s2(n));
  row.t = static_cast<std::uint16_t>(count_two_nodes(scf.formula));
  row.s_fcf = static_cast<std::uint16_t>(encode_fcf(n).length);
  row.s_scf = static_cast<std::uint16_t>(scf.length);
  row.s_horner = static_cast<std::uint16_t>(encode_horner(n).length);
  row.s_short = n < shortest.size() ? shortest[n] : 0;
}

}  // namespace

SizeCensus run_census(std::size_t limit, double epsilon, unsigned threads) {
  if (limit < 2) throw std::invalid_argument("census limit must be >= 2");
  SizeCensus census;
  census.limit = limit;
  census.epsilon = epsilon;
  census.rows.resize(limit - 1);

  std::vector<std::uint16_t> shortest = shortest_sizes(limit);

  if (threads <= 1) {
    for (std::size_t n = 2; n <= limit; ++n)
      census_row(static_cast<std::uint32_t>(n), shortest, census.rows[n - 2]);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::size_t chunk = (limit - 1 + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t lo = 2 + t * chunk;
      std::size_t hi = std::min(limit, lo + chunk - 1);
      if (lo > limit) break;
      pool.emplace_back([&, lo, hi] {
        try {
          for (std::size_t n = lo; n <= hi; ++n)
            census_row(static_cast<std::uint32_t>(n), shortest, census.rows[n - 2]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  double sum_fcf_ratio = 0, sum_scf = 0, sum_horner = 0;
  std::size_t ratio_count = 0;
  for (const CensusRow& row : census.rows) {
    std::uint32_t n = row.n;
    if (row.s_scf > 6 * row.t - 1) census.scf_6t_violations.push_back(n);
    if (row.t > std::log2(double(n)) + 1e-9) census.t_log2_violations.push_back(n);
    if (row.s_fcf < row.s2) census.fcf_s2_violations.push_back(n);
    std::uint16_t enc_min = std::min({row.s_fcf, row.s_scf, row.s_horner});
    if (row.s_short != 0 && row.s_short > enc_min) census.short_min_violations.push_back(n);
    if (row.t < 64 && n < (std::uint64_t(1) << row.t)) census.pow2_t_violations.push_back(n);
    if (row.s_short != 0 &&
        double(row.s_short) <= (1.0 - epsilon) * std::log(double(n)) / std::log(4.0))
      ++census.short_below_threshold;

    if (n >= 3) {
      double denom = std::log(double(n)) * std::log(std::log(double(n)));
      if (denom > 0) {
        double ratio = row.s_fcf / denom;
        census.max_fcf_over_loglog = std::max(census.max_fcf_over_loglog, ratio);
        sum_fcf_ratio += ratio;
        ++ratio_count;
      }
    }
    census.max_horner_over_log =
        std::max(census.max_horner_over_log, row.s_horner / std::log(double(n)));
    sum_scf += row.s_scf;
    sum_horner += row.s_horner;
  }
  if (ratio_count) census.mean_fcf_over_loglog = sum_fcf_ratio / double(ratio_count);
  census.mean_scf_len = sum_scf / double(census.rows.size());
  census.mean_horner_len = sum_horner / double(census.rows.size());
  census.short_threshold_bound =
      std::pow(4.0, (1.0 - epsilon) * std::log(double(limit)) / std::log(4.0) + 1.0);
  return census;
}

SizeCensus verify_bounds(std::size_t limit, double epsilon, unsigned threads) {
  SizeCensus census = run_census(limit, epsilon, threads);
  if (!census.scf_6t_violations.empty())
    throw BoundViolation("S_SCF(n) <= 6t(n)-1", census.scf_6t_violations.front());
  if (!census.t_log2_violations.empty())
    throw BoundViolation("t(n) <= log2(n)", census.t_log2_violations.front());
  if (!census.fcf_s2_violations.empty())
    throw BoundViolation("S_FCF(n) >= s2(n)", census.fcf_s2_violations.front());
  if (!census.short_min_violations.empty())
    throw BoundViolation("S_short(n) <= min encoder length", census.short_min_violations.front());
  if (!census.pow2_t_violations.empty())
    throw BoundViolation("n >= 2^t(n)", census.pow2_t_violations.front());
  return census;
}

void write_census_csv(const SizeCensus& census, std::ostream& out) {
  out << "n,s2,t,S_fcf,S_scf,S_hor,S_short\n";
  for (const CensusRow& r : census.rows) {
    out << r.n << ',' << r.s2 << ',' << r.t << ',' << r.s_fcf << ',' << r.s_scf << ','
        << r.s_horner << ',';
    if (r.s_short != 0) out << r.s_short;
    out << "\n";
  }
}

}  // namespace formulas
