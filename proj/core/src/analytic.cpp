#include "formulas/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace formulas {

namespace mp = boost::multiprecision;

Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

void PrecisionContext::activate() const {
  if (working_digits < target_digits + 10)
    throw std::invalid_argument("working precision must exceed target by >= 10 digits");
  Real::default_precision(working_digits);
}

namespace {

Real pi_value() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

// sum_{e > E} e^j q^e  <=  q^{E+1} (E+1)^j / (1 - q e^{j/(E+1)}).
Real poly_geometric_tail(const Real& q, std::size_t E, unsigned j) {
  if (q <= 0) return Real(0);
  Real s = q * exp(Real(j) / Real(E + 1));
  if (s >= 1) throw DomainError("tail bound ratio >= 1");
  return pow(q, static_cast<unsigned long>(E + 1)) * pow(Real(E + 1), j) / (1 - s);
}

// Falling factorial e (e-1) ... (e-i+1) as an exact integer.
mpz_class falling(std::size_t e, unsigned i) {
  mpz_class out = 1;
  for (unsigned t = 0; t < i; ++t) {
    if (e < t) return 0;
    out *= static_cast<unsigned long>(e - t);
  }
  return out;
}

}  // namespace

FormulaSeries::FormulaSeries(const CountTable& counts, SeriesTruncation trunc,
                             unsigned growth_base, const CountTable* pow_counts)
    : counts_(counts), pow_counts_(pow_counts), trunc_(trunc), growth_(growth_base) {
  if (trunc_.n_max_f > counts_.max_n())
    throw InsufficientTable("table '" + counts_.name() + "' shorter than n_max_f");
  if (pow_counts_ && trunc_.n_max_f > pow_counts_->max_n())
    throw InsufficientTable("pow table shorter than n_max_f");
  if (trunc_.d_max < 2 || trunc_.n_max_f < 4)
    throw std::invalid_argument("truncation horizons too small");
}

BoundedValue FormulaSeries::eval_F(const Real& x) const {
  Real gx = growth_ * x;
  if (x <= 0 || gx >= 1) throw DomainError("eval_F needs 0 < growth*x < 1");
  Real value = 0;
  Real xn = 1;
  for (std::size_t n = 1; n <= trunc_.n_max_f; ++n) {
    xn *= x;
    value += to_real(counts_.at(n)) * xn;
  }
  return {value, poly_geometric_tail(gx, trunc_.n_max_f, 0)};
}

BoundedValue FormulaSeries::eval_F_tilde(const Real& x) const {
  if (x == 0) return {Real(0), Real(0)};
  Real gx2 = growth_ * x * x;
  if (x < 0 || gx2 >= 1) throw DomainError("eval_F_tilde needs 0 <= x, growth*x^2 < 1");
  const std::size_t N = trunc_.n_max_f, D = trunc_.d_max;
  // terms below this magnitude go into the tail unexamined
  Real cutoff = pow(Real(10), -static_cast<long>(Real::default_precision() + 15));
  // a term of the outer sum over d is bounded by outer_coef * (gx2)^d
  Real outer_coef = Real(growth_) * growth_ / (1 - gx2);

  Real value = x;
  Real tail = 0;
  Real xd = x;  // x^d
  bool outer_closed = false;
  for (std::size_t d = 2; d <= D && !outer_closed; ++d) {
    xd *= x;
    Real fd = to_real(counts_.at(d));
    Real gy = growth_ * xd;  // decreasing in d, < 1 for d >= 2
    // inner sum_{m=2..N} f(m) (x^d)^m, with early stop once the geometric
    // majorant (growth*x^d)^m is negligible
    Real inner = 0;
    Real ym = xd;  // (x^d)^m
    Real majorant = gy;
    std::size_t m = 2;
    for (; m <= N; ++m) {
      ym *= xd;
      majorant *= gy;
      inner += to_real(counts_.at(m)) * ym;
      if (majorant < cutoff) break;
    }
    value += fd * inner;
    // dropped m > min(m, N): f(d) sum f(m) y^m <= f(d) (gy)^{...}/(1-gy)
    tail += fd * poly_geometric_tail(gy, std::min(m, N), 0);
    // once the remaining outer terms are negligible, close the outer sum
    if (d < D && outer_coef * pow(gx2, static_cast<unsigned long>(d)) < cutoff) {
      tail += outer_coef * poly_geometric_tail(gx2, d, 0);
      outer_closed = true;
    }
  }
  if (!outer_closed)  // ran through d = D
    tail += outer_coef * poly_geometric_tail(gx2, D, 0);

  if (pow_counts_) {
    if (x > Real(0.31)) throw DomainError("pow-series tail certified only for x <= 0.31");
    Real value_pow = 0;
    Real xm = pow(x, 3ul);
    for (std::size_t m = 4; m <= N; ++m) {
      xm *= x;
      if (pow_counts_->at(m) != 0) value_pow += to_real(pow_counts_->at(m)) * xm;
    }
    value += value_pow;
    // f_pow(m) <= log2(m) m^{3.585} 12^{sqrt(m)} =: B(m); require
    // B(N+1) x^{(N+1)/2} <= 1/2, then each dropped term is <= x^{m/2}/2.
    Real m1 = Real(N + 1);
    Real bound = (log(m1) / log(Real(2))) * pow(m1, Real("3.585")) *
                 exp(sqrt(m1) * log(Real(12)));
    Real sqrt_x = sqrt(x);
    if (N < 100 || bound * pow(sqrt_x, static_cast<unsigned long>(N + 1)) > Real(0.5))
      throw InsufficientTable("pow-series table too short for a certified tail");
    tail += poly_geometric_tail(sqrt_x, N, 0) / 2;
  }
  return {value, tail};
}

BoundedValue FormulaSeries::eval_F_tilde_derivative(const Real& x, unsigned order) const {
  if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
  Real gx2 = growth_ * x * x;
  if (x <= 0 || gx2 >= 1) throw DomainError("derivative needs 0 < growth*x^2 < 1");
  const std::size_t N = trunc_.n_max_f, D = trunc_.d_max;
  Real x_pow_neg_order = pow(x, -static_cast<long>(order));

  // series part: sum over d,m of f(d) f(m) (dm)(dm-1)..(dm-order+1) x^{dm-order}
  Real series_sum = 0;
  Real xd = x;  // x^d
  for (std::size_t d = 2; d <= D; ++d) {
    xd *= x;
    Real fd = to_real(counts_.at(d));
    Real inner = 0;
    Real ydm = xd;  // x^{d m}, entering the loop at m=2 below
    for (std::size_t m = 2; m <= N; ++m) {
      ydm *= xd;
      std::size_t e = d * m;
      if (e < order) continue;
      inner += to_real(counts_.at(m) * falling(e, order)) * ydm;
    }
    series_sum += fd * inner;
  }
  Real value = (order == 1 ? Real(1) : Real(0)) + series_sum * x_pow_neg_order;

  // Dropped (d,m) pairs all have exponent e > min(2D, 2N); coefficient mass at
  // exponent e is <= e g^2 (sqrt g)^e, so the derivative tail is
  // g^2 x^{-order} sum_{e>E} e^{order+1} (sqrt(g) x)^e.
  Real q = sqrt(Real(growth_)) * x;
  if (q >= 1) throw DomainError("derivative tail needs sqrt(growth)*x < 1");
  std::size_t E = 2 * std::min(D, N);
  Real tail =
      Real(growth_) * growth_ * x_pow_neg_order * poly_geometric_tail(q, E, order + 1);

  if (pow_counts_) {
    Real pow_sum = 0;
    Real xm = pow(x, 3ul);
    for (std::size_t m = 4; m <= N; ++m) {
      xm *= x;
      if (m < order || pow_counts_->at(m) == 0) continue;
      pow_sum += to_real(pow_counts_->at(m) * falling(m, order)) * xm;
    }
    value += pow_sum * x_pow_neg_order;
    // same domination requirement as in eval_F_tilde: f_pow(m) x^m <= x^{m/2}/2
    if (x > Real(0.31)) throw DomainError("pow-series tail certified only for x <= 0.31");
    Real m1 = Real(N + 1);
    Real coef_bound = (log(m1) / log(Real(2))) * pow(m1, Real("3.585")) *
                      exp(sqrt(m1) * log(Real(12)));
    Real sqrt_x = sqrt(x);
    if (N < 100 || coef_bound * pow(sqrt_x, static_cast<unsigned long>(N + 1)) > Real(0.5))
      throw InsufficientTable("pow-series table too short for a certified tail");
    tail += x_pow_neg_order * poly_geometric_tail(sqrt_x, N, order) / 2;
  }
  return {value, tail};
}

RootResult solve_xi(const FormulaSeries& series, const PrecisionContext& ctx) {
  ctx.activate();
  auto residual_at = [&](const Real& x) { return series.eval_F_tilde(x).value - Real(1) / 4; };

  Real lo = Real(1) / 100, hi = Real(1) / 4 - Real(1) / 1000000;
  Real f_lo = residual_at(lo), f_hi = residual_at(hi);
  if (f_lo >= 0 || f_hi <= 0)
    throw NoSignChange("F~ - 1/4 does not change sign on the bracket (table too short?)");
  for (int i = 0; i < 25; ++i) {
    Real mid = (lo + hi) / 2;
    if (residual_at(mid) < 0) lo = mid;
    else hi = mid;
  }

  Real x = (lo + hi) / 2;
  Real step_tol = pow(Real(10), -static_cast<long>(ctx.working_digits - 4));
  bool converged = false;
  for (int i = 0; i < 80; ++i) {
    Real r = residual_at(x);
    Real d = series.eval_F_tilde_derivative(x, 1).value;
    if (d <= 0) throw PrecisionExhausted("vanishing derivative in Newton step");
    Real step = r / d;
    x -= step;
    if (abs(step) < step_tol * x) {
      converged = true;
      break;
    }
  }
  if (!converged) throw PrecisionExhausted("Newton did not converge");

  BoundedValue ft = series.eval_F_tilde(x);
  // rounding allowance: the 60-digit evaluation itself is not exact
  Real rounding = pow(Real(10), -static_cast<long>(ctx.working_digits - 3));
  Real residual = abs(ft.value - Real(1) / 4) + ft.tail + rounding;
  return RootResult{x, 1 / x, residual};
}

BoundedValue compute_c(const FormulaSeries& series, const RootResult& root,
                       const PrecisionContext& ctx) {
  ctx.activate();
  BoundedValue d1 = series.eval_F_tilde_derivative(root.xi, 1);
  Real c = sqrt(root.xi * d1.value / pi_value()) / 2;
  // c ~ sqrt(xi F~'(xi)): relative error is half the sum of the factor errors
  Real xi_rel = root.residual / (d1.value * root.xi);
  Real rel = (d1.tail / d1.value + xi_rel) / 2;
  return {c, c * rel};
}

BoundedValue compute_sigma(const CountTable& f0_table, const PrecisionContext& ctx,
                           std::size_t terms) {
  ctx.activate();
  std::size_t M = terms == 0 ? f0_table.max_n() : std::min(terms, f0_table.max_n());
  check_f0_convolution_bound(f0_table);  // (f0 *' f0)(m) <= 3^m on the table
  Real value = 0;
  Real inv4m = 4;  // 4^{1-m}
  for (std::size_t m = 1; m <= M; ++m) {
    inv4m /= 4;
    mpz_class conv = proper_convolution(f0_table, f0_table, m);
    if (conv != 0) value += to_real(conv) * inv4m;
  }
  // term(m) <= 4 (3/4)^m for every m (3^m bound holds beyond the table by
  // m 2^m <= 3^m inside the divisor-sum estimate)
  Real tail = 4 * poly_geometric_tail(Real(3) / 4, M, 0);
  return {value, tail};
}

BoundedValue proper_conv_ratio_sum(const CountTable& fl, const CountTable& fr) {
  std::size_t T = std::min(fl.max_n(), fr.max_n());
  Real value = 0;
  Real inv4t = 4;
  for (std::size_t t = 1; t <= T; ++t) {
    inv4t /= 4;
    mpz_class conv = 0;
    for (std::size_t d : proper_divisors(t)) conv += fl.at(d) * fr.at(t / d);
    if (conv != 0) value += to_real(conv) * inv4t;
  }
  // (f_l *' f_r)(t) <= t 8^{2 + t/2}; term(t)/4^{t-1} <= 256 t (sqrt(8)/4)^t
  Real q = sqrt(Real(8)) / 4;
  Real tail = 256 * poly_geometric_tail(q, T, 1);
  return {value, tail};
}

Real binom_half_offset(std::size_t n, unsigned j) {
  Real out = 1;
  Real shift = Real(j) + Real(3) / 2;
  for (std::size_t i = 1; i <= n; ++i) out *= (Real(i) - shift) / Real(i);
  return out;
}

std::vector<Real> darboux_coefficients(const FormulaSeries& series, const RootResult& root,
                                       unsigned J, const PrecisionContext& ctx) {
  if (J > 4) throw std::invalid_argument("expansion supported up to J = 4");
  ctx.activate();
  // Taylor of G at xi: G(xi + h) = sum_m g_m h^m with g_m = 4 xi T_{m+1},
  // T_i the i-th Taylor coefficient of F~ at xi.
  std::vector<Real> g(J + 1);
  mpz_class fact = 1;
  for (unsigned m = 0; m <= J; ++m) {
    fact *= m + 1;  // (m+1)!
    Real deriv = series.eval_F_tilde_derivative(root.xi, m + 1).value;
    g[m] = 4 * root.xi * deriv / to_real(fact);
  }
  // G(z xi) around z=1 in powers of w = 1-z: a_m = g_m (-xi)^m
  std::vector<Real> a(J + 1);
  Real neg_xi_pow = 1;
  for (unsigned m = 0; m <= J; ++m) {
    a[m] = g[m] * neg_xi_pow;
    neg_xi_pow *= -root.xi;
  }
  // power-series square root
  std::vector<Real> c(J + 1);
  c[0] = sqrt(a[0]);
  for (unsigned m = 1; m <= J; ++m) {
    Real acc = a[m];
    for (unsigned i = 1; i < m; ++i) acc -= c[i] * c[m - i];
    c[m] = acc / (2 * c[0]);
  }
  return c;
}

Real darboux_prediction(std::span<const Real> coeffs, unsigned terms, std::size_t n) {
  Real out = 0;
  for (unsigned j = 0; j < terms && j < coeffs.size(); ++j)
    out += coeffs[j] * binom_half_offset(n, j);
  return -out / 2;
}

RatioReport asymptotic_ratio_report(unsigned k, std::span<const std::size_t> sample_ns,
                                    std::span<const CountTable> fk_tables,
                                    const CountTable& f0_table, const PrecisionContext& ctx) {
  ctx.activate();
  if (fk_tables.size() <= k) throw InsufficientTable("need tables f_0..f_k");
  Real pi = pi_value();
  Real sigma = compute_sigma(f0_table, ctx).value;

  // per-trace product of conv ratio sums
  std::vector<Trace> traces = enumerate_traces(k);
  std::vector<Real> trace_factor(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    Real prod = 1;
    for (std::size_t j = 0; j < traces[i].p(); ++j)
      prod *= proper_conv_ratio_sum(fk_tables[traces[i].l[j]], fk_tables[traces[i].r[j]]).value;
    trace_factor[i] = prod;
  }

  mpz_class k_fact = 1;
  for (unsigned i = 2; i <= k; ++i) k_fact *= i;

  RatioReport report;
  report.k = k;
  report.sigma = sigma;
  for (std::size_t n : sample_ns) {
    RatioRow row;
    row.n = n;
    row.f_k = fk_tables[k].at(n);
    Real four_n = pow(Real(4), static_cast<unsigned long>(n));
    Real base = four_n / (4 * sqrt(pi));  // 4^n / (4 sqrt(pi))
    row.crude_prediction = base * pow(sigma, static_cast<int>(k)) / to_real(k_fact) *
                           pow(Real(n), Real(static_cast<long>(k)) - Real(3) / 2);
    Real fine_sum = 0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
      std::size_t p = traces[i].p();
      mpz_class p_fact = 1;
      for (std::size_t t = 2; t <= p; ++t) p_fact *= t;
      fine_sum += pow(Real(n), static_cast<unsigned long>(p)) / to_real(p_fact) *
                  trace_factor[i];
    }
    row.fine_prediction = base * pow(Real(n), -Real(3) / 2) * fine_sum;
    Real fk_real = to_real(row.f_k);
    row.crude_ratio = fk_real / row.crude_prediction;
    row.fine_ratio = fk_real / row.fine_prediction;
    report.rows.push_back(std::move(row));
  }
  return report;
}

unsigned certified_digits_for(const Real& value, const Real& abs_error, unsigned cap) {
  if (value == 0) return 0;
  if (abs_error <= 0) return cap;
  Real rel = abs_error / abs(value);
  if (rel >= 1) return 0;
  long digits = static_cast<long>(mp::floor(-log10(rel))) - 1;
  if (digits < 0) return 0;
  return std::min<unsigned>(static_cast<unsigned>(digits), cap);
}

std::string format_real(const Real& value, unsigned digits) {
  std::string s = value.str(digits, std::ios_base::fmtflags(0));
  return s;
}

ConstantsReport compute_constants(const FTables& f_tables, const FExpTables& fexp_tables,
                                  const CountTable& f0_table, const PrecisionContext& ctx,
                                  SeriesTruncation trunc) {
  ctx.activate();
  ConstantsReport report;
  report.truncation = trunc;

  FormulaSeries arith(f_tables.f, trunc, 8);
  RootResult root = solve_xi(arith, ctx);
  Real d1 = arith.eval_F_tilde_derivative(root.xi, 1).value;
  Real xi_err = root.residual / d1;  // |F~ - 1/4| maps to xi through F~'

  auto pack = [&](const Real& v, const Real& err) {
    return ConstantValue{v, err, certified_digits_for(v, err, ctx.target_digits)};
  };
  report.xi = pack(root.xi, xi_err);
  report.rho = pack(root.rho, xi_err / (root.xi * root.xi));
  report.corollary_C = pack(root.rho / 4, xi_err / (root.xi * root.xi) / 4);

  BoundedValue c = compute_c(arith, root, ctx);
  report.c = pack(c.value, c.tail);

  BoundedValue sigma = compute_sigma(f0_table, ctx);
  report.sigma = pack(sigma.value, sigma.tail);

  FormulaSeries expo(fexp_tables.fexp, trunc, 12, &fexp_tables.fexp_pow);
  RootResult root_exp = solve_xi(expo, ctx);
  Real d1e = expo.eval_F_tilde_derivative(root_exp.xi, 1).value;
  Real xi_exp_err = root_exp.residual / d1e;
  report.rho_exp = pack(root_exp.rho, xi_exp_err / (root_exp.xi * root_exp.xi));

  return report;
}

}  // namespace formulas
