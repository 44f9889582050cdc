#include "formulas/counting.hpp"

#include <algorithm>

namespace formulas {

mpz_class catalan(std::size_t m) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), 2 * m, m);
  return b / (m + 1);
}

mpz_class f0(std::size_t n) {
  if (n < 1) throw std::invalid_argument("f0 index must be >= 1");
  return catalan(n - 1);
}

CountTable build_f0_table(std::size_t max_n) {
  std::vector<mpz_class> v(max_n);
  if (max_n >= 1) v[0] = 1;
  // C_m = C_{m-1} * 2(2m-1)/(m+1); the division is exact.
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::size_t m = n - 1;
    v[n - 1] = v[n - 2] * mpz_class(2 * (2 * m - 1)) / mpz_class(m + 1);
  }
  return CountTable("f0", std::move(v));
}

std::vector<std::size_t> proper_divisors(std::size_t n) {
  std::vector<std::size_t> small, large;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

mpz_class proper_convolution(const CountTable& g, const CountTable& h, std::size_t n) {
  mpz_class sum = 0;
  for (std::size_t d : proper_divisors(n)) sum += g.at(d) * h.at(n / d);
  return sum;
}

FTables build_f_tables(std::size_t max_n) {
  std::vector<mpz_class> f(max_n), fp(max_n), fx(max_n);
  if (max_n >= 1) {
    f[0] = 1;
    fp[0] = 1;
    fx[0] = 0;
  }
  for (std::size_t n = 2; n <= max_n; ++n) {
    mpz_class plus = 0;
    for (std::size_t h = 1; h < n; ++h) plus += f[n - h - 1] * f[h - 1];
    mpz_class times = 0;
    for (std::size_t d : proper_divisors(n)) times += f[d - 1] * f[n / d - 1];
    fp[n - 1] = plus;
    fx[n - 1] = times;
    f[n - 1] = plus + times;
  }
  return FTables{CountTable("f", std::move(f)), CountTable("f_plus", std::move(fp)),
                 CountTable("f_times", std::move(fx))};
}

namespace {

// Integer b-th root of n by binary search; returns a with a^b == n, or 0.
std::size_t exact_root(std::size_t n, unsigned b) {
  std::size_t lo = 2, hi = n;
  while (lo <= hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    // mid^b with overflow cutoff
    std::size_t p = 1;
    bool over = false;
    for (unsigned i = 0; i < b; ++i) {
      if (p > n / mid) { over = true; break; }
      p *= mid;
    }
    if (!over && p == n) return mid;
    if (over || p > n) hi = mid - 1;
    else lo = mid + 1;
  }
  return 0;
}

}  // namespace

FExpTables build_fexp_tables(std::size_t max_n) {
  std::vector<mpz_class> fe(max_n), fpow(max_n);
  if (max_n >= 1) {
    fe[0] = 1;
    fpow[0] = 0;
  }
  for (std::size_t n = 2; n <= max_n; ++n) {
    mpz_class plus = 0;
    for (std::size_t h = 1; h < n; ++h) plus += fe[n - h - 1] * fe[h - 1];
    mpz_class times = 0;
    for (std::size_t d : proper_divisors(n)) times += fe[d - 1] * fe[n / d - 1];
    mpz_class pow_sum = 0;
    for (unsigned b = 2; (std::size_t(1) << b) <= n; ++b) {
      std::size_t a = exact_root(n, b);
      if (a >= 2) pow_sum += fe[a - 1] * fe[b - 1];
    }
    fpow[n - 1] = pow_sum;
    fe[n - 1] = plus + times + pow_sum;
  }
  return FExpTables{CountTable("f_exp", std::move(fe)),
                    CountTable("f_exp_pow", std::move(fpow))};
}

void check_f_invariants(const FTables& t) {
  std::size_t n_max = t.f.max_n();
  if (n_max < 1 || t.f.at(1) != 1 || t.f_plus.at(1) != 1 || t.f_times.at(1) != 0)
    throw std::runtime_error("f table base values wrong");
  mpz_class bound = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    bound *= 8;  // 8^n
    if (t.f.at(n) != t.f_plus.at(n) + t.f_times.at(n))
      throw std::runtime_error("f != f_plus + f_times at n=" + std::to_string(n));
    if (t.f.at(n) >= bound)
      throw std::runtime_error("f(n) < 8^n violated at n=" + std::to_string(n));
    if (t.f.at(n) < f0(n))
      throw std::runtime_error("f(n) >= f0(n) violated at n=" + std::to_string(n));
  }
}

void check_fexp_invariants(const FExpTables& e, const FTables& t) {
  std::size_t n_max = std::min(e.fexp.max_n(), t.f.max_n());
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (e.fexp.at(n) < t.f.at(n))
      throw std::runtime_error("f_exp(n) >= f(n) violated at n=" + std::to_string(n));
    if (e.fexp_pow.at(n) != 0) {
      bool is_power = false;
      for (unsigned b = 2; (std::size_t(1) << b) <= n; ++b)
        if (exact_root(n, b) >= 2) { is_power = true; break; }
      if (!is_power)
        throw std::runtime_error("pow-rooted count nonzero at non-power n=" + std::to_string(n));
    }
  }
}

void check_f0_convolution_bound(const CountTable& f0_table) {
  mpz_class bound = 1;
  for (std::size_t n = 1; n <= f0_table.max_n(); ++n) {
    bound *= 3;
    if (proper_convolution(f0_table, f0_table, n) > bound)
      throw std::runtime_error("(f0 *' f0)(n) <= 3^n violated at n=" + std::to_string(n));
  }
}

namespace {

mpz_class binom(std::size_t a, std::size_t b) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), a, b);
  return out;
}

// Recursive sum over compositions n_1 + ... + n_p + m = n + p (all >= 1)
// of binom(m,p) f0(m) prod_i conv_i(n_i).
mpz_class trace_sum(const std::vector<std::vector<mpz_class>>& convs, std::size_t i,
                    std::size_t remaining, std::size_t p, const CountTable& f0_table,
                    const mpz_class& partial) {
  if (i == convs.size()) {
    // remaining is m >= 1
    if (remaining < 1) return 0;
    return partial * binom(remaining, p) * f0_table.at(remaining);
  }
  mpz_class total = 0;
  // leave at least 1 for each later part and for m
  std::size_t tail = convs.size() - i;  // parts still to place after this one, plus m handled at end
  for (std::size_t v = 1; v + tail <= remaining; ++v) {
    if (convs[i][v] == 0) continue;
    total += trace_sum(convs, i + 1, remaining - v, p, f0_table, partial * convs[i][v]);
  }
  return total;
}

// conv[t] = (f_l *' f_r)(t) for t = 0..limit (index 0 unused).
std::vector<mpz_class> conv_values(const CountTable& fl, const CountTable& fr,
                                   std::size_t limit) {
  std::vector<mpz_class> out(limit + 1);
  for (std::size_t t = 1; t <= limit; ++t) {
    mpz_class s = 0;
    for (std::size_t d : proper_divisors(t)) s += fl.at(d) * fr.at(t / d);
    out[t] = s;
  }
  return out;
}

}  // namespace

mpz_class f_trace(const Trace& trace, std::size_t n, std::span<const CountTable> fk,
                  const CountTable& f0_table) {
  std::size_t p = trace.p();
  if (p == 0) return f0_table.at(n);
  if (f0_table.max_n() < n + p)
    throw IndexOutOfTable("f0", n + p);
  std::vector<std::vector<mpz_class>> convs;
  convs.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (trace.l[i] >= fk.size() || trace.r[i] >= fk.size())
      throw std::out_of_range("f_k table missing for trace component");
    convs.push_back(conv_values(fk[trace.l[i]], fk[trace.r[i]], n));
  }
  return trace_sum(convs, 0, n + p, p, f0_table, 1);
}

CountTable build_trace_table(const Trace& trace, std::size_t max_n,
                             std::span<const CountTable> fk, const CountTable& f0_table) {
  std::size_t p = trace.p();
  std::vector<mpz_class> out(max_n);
  if (p == 0) {
    for (std::size_t n = 1; n <= max_n; ++n) out[n - 1] = f0_table.at(n);
    return CountTable("f_trace:" + trace.to_string(), std::move(out));
  }
  std::size_t top = max_n + p;
  if (f0_table.max_n() < top) throw IndexOutOfTable("f0", top);

  // acc[s] = sum over n_1+...+n_i = s of prod conv_j(n_j); fold in one
  // convolution factor at a time, then the binom(m,p) f0(m) weight.
  std::vector<mpz_class> acc = conv_values(fk[trace.l[0]], fk[trace.r[0]], top);
  for (std::size_t i = 1; i < p; ++i) {
    std::vector<mpz_class> conv = conv_values(fk[trace.l[i]], fk[trace.r[i]], top);
    std::vector<mpz_class> next(top + 1);
    for (std::size_t s = 2; s <= top; ++s) {
      mpz_class sum = 0;
      for (std::size_t a = 1; a < s; ++a)
        if (acc[a] != 0 && conv[s - a] != 0) sum += acc[a] * conv[s - a];
      next[s] = sum;
    }
    acc = std::move(next);
  }
  for (std::size_t n = 1; n <= max_n; ++n) {
    mpz_class sum = 0;
    for (std::size_t m = 1; m <= n; ++m) {
      std::size_t s = n + p - m;  // total over the n_i
      if (acc[s] == 0 || m < p) continue;
      sum += acc[s] * binom(m, p) * f0_table.at(m);
    }
    out[n - 1] = sum;
  }
  return CountTable("f_trace:" + trace.to_string(), std::move(out));
}

std::vector<CountTable> build_fk_tables(unsigned k_max, std::size_t max_n, bool cross_check) {
  std::vector<CountTable> tables;
  tables.reserve(k_max + 1);
  for (unsigned k = 0; k <= k_max; ++k) {
    std::vector<mpz_class> v(max_n);
    // f_i(idx) where f_k itself is the table under construction (only ever
    // read at indices < n, which are final).
    auto val = [&](unsigned i, std::size_t idx) -> const mpz_class& {
      return (i == k) ? v[idx - 1] : tables[i].values()[idx - 1];
    };
    if (max_n >= 1) v[0] = (k == 0) ? 1 : 0;
    for (std::size_t n = 2; n <= max_n; ++n) {
      mpz_class plus = 0;
      for (std::size_t h = 1; h < n; ++h)
        for (unsigned i = 0; i <= k; ++i) {
          const mpz_class& lv = val(i, n - h);
          const mpz_class& rv = val(k - i, h);
          if (lv != 0 && rv != 0) plus += lv * rv;
        }
      mpz_class times = 0;
      if (k >= 1)
        for (std::size_t d : proper_divisors(n))
          for (unsigned i = 0; i < k; ++i) {
            const mpz_class& lv = val(i, d);
            const mpz_class& rv = val(k - 1 - i, n / d);
            if (lv != 0 && rv != 0) times += lv * rv;
          }
      v[n - 1] = plus + times;
    }
    tables.emplace_back("f_" + std::to_string(k), std::move(v));
  }

  if (cross_check) {
    CountTable f0_ext = build_f0_table(max_n + k_max);
    for (unsigned k = 0; k <= k_max; ++k) {
      std::vector<mpz_class> by_traces(max_n, 0);
      for (const Trace& t : enumerate_traces(k)) {
        CountTable tt = build_trace_table(t, max_n, std::span(tables.data(), tables.size()),
                                          f0_ext);
        for (std::size_t n = 1; n <= max_n; ++n) by_traces[n - 1] += tt.at(n);
      }
      for (std::size_t n = 1; n <= max_n; ++n)
        if (by_traces[n - 1] != tables[k].at(n)) throw MethodMismatch(k, n);
    }
  }
  return tables;
}

}  // namespace formulas
