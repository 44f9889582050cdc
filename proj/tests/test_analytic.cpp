#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <span>

#include "formulas/analytic.hpp"
#include "formulas/counting.hpp"

using namespace formulas;

namespace {

struct Fixture {
  FTables ft = build_f_tables(400);
  FExpTables et = build_fexp_tables(400);
  CountTable f0t = build_f0_table(420);
  PrecisionContext ctx{};
  SeriesTruncation trunc{};

  FormulaSeries arith() const { return FormulaSeries(ft.f, trunc, 8); }
  FormulaSeries expo() const { return FormulaSeries(et.fexp, trunc, 12, &et.fexp_pow); }
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

Real abs_diff(const Real& a, const Real& b) { return abs(a - b); }

}  // namespace

TEST_CASE("F~ basics: zero at zero, above x, strictly increasing") {
  const Fixture& fx = fixture();
  fx.ctx.activate();
  FormulaSeries s = fx.arith();
  BoundedValue at_zero = s.eval_F_tilde(Real(0));
  CHECK(at_zero.value == 0);
  CHECK(at_zero.tail == 0);
  // F~(x) > x for x > 0
  for (double xd : {0.001, 0.01, 0.1, 0.2, 0.24}) {
    Real x(xd);
    BoundedValue v = s.eval_F_tilde(x);
    CHECK(v.value > x);
    CHECK(v.tail < Real("1e-17"));
  }
  Real prev = 0;
  for (double xd : {0.05, 0.10, 0.15, 0.20, 0.24}) {
    Real cur = s.eval_F_tilde(Real(xd)).value;
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK_THROWS_AS(s.eval_F_tilde(Real(-1)), DomainError);
  CHECK_THROWS_AS(s.eval_F_tilde(Real("0.36")), DomainError);  // 8 x^2 > 1
}

TEST_CASE("solve_xi reports NoSignChange when the series cannot reach 1/4") {
  fixture().ctx.activate();
  // counts that vanish beyond n=1 make F~(x) = x, whose root 1/4 lies outside
  // the bracket
  std::vector<mpz_class> flat(50, 0);
  flat[0] = 1;
  CountTable degenerate("flat", std::move(flat));
  FormulaSeries s(degenerate, SeriesTruncation{50, 50}, 8);
  CHECK_THROWS_AS(solve_xi(s, fixture().ctx), NoSignChange);
}

TEST_CASE("darboux expansion order is capped") {
  const Fixture& fx = fixture();
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  CHECK_THROWS_AS(darboux_coefficients(fx.arith(), root, 5, fx.ctx), std::invalid_argument);
}

TEST_CASE("eval_F matches a direct partial sum at a safe point") {
  const Fixture& fx = fixture();
  fx.ctx.activate();
  FormulaSeries s = fx.arith();
  Real x = Real(1) / 20;  // 8x = 0.4 < 1
  BoundedValue v = s.eval_F(x);
  Real direct = 0;
  Real xn = 1;
  for (std::size_t n = 1; n <= 400; ++n) {
    xn *= x;
    direct += to_real(fx.ft.f.at(n)) * xn;
  }
  CHECK(abs_diff(v.value, direct) < Real("1e-50"));
  CHECK(v.tail < Real("1e-100"));
  CHECK_THROWS_AS(s.eval_F(Real("0.2")), DomainError);  // 8x > 1
}

TEST_CASE("solve_xi reproduces the reference rho to 13+ digits") {
  const Fixture& fx = fixture();
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  CHECK(root.xi < Real(1) / 4);
  CHECK(root.xi > Real("0.24"));
  CHECK(abs_diff(root.rho, Real("4.076561785276046")) < Real("1e-13"));
  CHECK(root.residual < Real("1e-12"));
  // residual really is tiny: the root satisfies the equation
  BoundedValue at_root = fx.arith().eval_F_tilde(root.xi);
  CHECK(abs_diff(at_root.value, Real(1) / 4) < Real("1e-40"));
}

TEST_CASE("compute_c reproduces the reference constant to 13+ digits") {
  const Fixture& fx = fixture();
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  BoundedValue c = compute_c(fx.arith(), root, fx.ctx);
  CHECK(c.value > 0);
  CHECK(abs_diff(c.value, Real("0.145691854699979")) < Real("1e-13"));
  CHECK(c.tail < Real("1e-15"));
}

TEST_CASE("empirical fit: f(n) xi^n n^{3/2} drifts toward c like O(1/n)") {
  const Fixture& fx = fixture();
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  BoundedValue c = compute_c(fx.arith(), root, fx.ctx);
  Real prev_err = 0;
  bool first = true;
  for (std::size_t n : {100, 200, 400}) {
    Real lhs = to_real(fx.ft.f.at(n)) * pow(root.xi, static_cast<unsigned long>(n)) *
               pow(Real(n), Real(3) / 2);
    Real err = abs_diff(lhs, c.value);
    CHECK(err / c.value < Real("0.02"));
    if (!first) CHECK(err < prev_err / Real("1.7"));  // roughly halves with n
    prev_err = err;
    first = false;
  }
}

TEST_CASE("sigma: documented first terms and cross-check against exact rationals") {
  const Fixture& fx = fixture();
  BoundedValue sigma = compute_sigma(fx.f0t, fx.ctx);
  CHECK(sigma.tail < Real("1e-17"));

  // first contributions: m=4 gives 1/4^3, m=6 gives 4/4^5
  BoundedValue partial4 = compute_sigma(fx.f0t, fx.ctx, 4);
  CHECK(abs_diff(partial4.value, Real(1) / 64) < Real("1e-50"));
  BoundedValue partial6 = compute_sigma(fx.f0t, fx.ctx, 6);
  CHECK(abs_diff(partial6.value, Real(1) / 64 + Real(4) / 1024) < Real("1e-50"));

  // independent oracle: exact rational partial sum
  mpq_class exact = 0;
  mpq_class inv4m(1, 1);  // 4^{1-m}, starts at m=1 -> 1... adjusted in loop
  for (std::size_t m = 1; m <= 200; ++m) {
    mpz_class conv = proper_convolution(fx.f0t, fx.f0t, m);
    if (conv != 0) {
      mpz_class denom;
      mpz_ui_pow_ui(denom.get_mpz_t(), 4, static_cast<unsigned long>(m - 1));
      exact += mpq_class(conv) / mpq_class(denom);
    }
  }
  Real exact_real;
  mpfr_set_q(exact_real.backend().data(), exact.get_mpq_t(), MPFR_RNDN);
  // the rational sum is itself truncated at 200; both agree within both tails
  CHECK(abs_diff(sigma.value, exact_real) < Real("1e-20"));

  // partial sums stabilize to 12 digits by m ~ 120
  BoundedValue partial120 = compute_sigma(fx.f0t, fx.ctx, 120);
  CHECK(abs_diff(partial120.value, sigma.value) < Real("1e-12"));

  // regression pin, originally computed by the exact-rational route above
  CHECK(abs_diff(sigma.value, Real("0.020339431090286243197")) < Real("1e-18"));
}

TEST_CASE("rho_exp reproduces the reference value; dropping the pow series gives rho") {
  const Fixture& fx = fixture();
  RootResult root_exp = solve_xi(fx.expo(), fx.ctx);
  CHECK(abs_diff(root_exp.rho, Real("4.13073529514801")) < Real("1e-12"));
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  CHECK(root_exp.rho > root.rho);

  // degeneration: the same pipeline with the arithmetic table and no pow part
  FormulaSeries degenerate(fx.ft.f, fx.trunc, 8, nullptr);
  RootResult again = solve_xi(degenerate, fx.ctx);
  CHECK(abs_diff(again.rho, root.rho) == 0);
}

TEST_CASE("corollary constant rho/4") {
  const Fixture& fx = fixture();
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  CHECK(abs_diff(root.rho / 4, Real("1.019140446319")) < Real("5e-13"));
}

TEST_CASE("darboux coefficients: positivity, c relation, two-term refinement") {
  const Fixture& fx = fixture();
  RootResult root = solve_xi(fx.arith(), fx.ctx);
  std::vector<Real> coeffs = darboux_coefficients(fx.arith(), root, 3, fx.ctx);
  REQUIRE(coeffs.size() == 4);
  CHECK(coeffs[0] > 0);

  BoundedValue c = compute_c(fx.arith(), root, fx.ctx);
  Real pi = Real("3.14159265358979323846264338327950288419716939937510582097494");
  CHECK(abs_diff(coeffs[0] / (4 * sqrt(pi)), c.value) < Real("1e-40"));

  // -c0 binom(n-3/2, n)/2 matches f(n) xi^n to leading order at n=400
  std::size_t n = 400;
  Real truth = to_real(fx.ft.f.at(n)) * pow(root.xi, static_cast<unsigned long>(n));
  Real one_term = darboux_prediction(coeffs, 1, n);
  CHECK(abs_diff(truth, one_term) / truth < Real("0.01"));

  // the two-term prediction must at least halve the absolute error at n=200
  n = 200;
  truth = to_real(fx.ft.f.at(n)) * pow(root.xi, static_cast<unsigned long>(n));
  Real err1 = abs_diff(truth, darboux_prediction(coeffs, 1, n));
  Real err2 = abs_diff(truth, darboux_prediction(coeffs, 2, n));
  CHECK(err2 * 2 <= err1);
}

TEST_CASE("asymptotic ratios: k=0 within 2% at n=100; k=1,2 approach 1") {
  const Fixture& fx = fixture();
  std::vector<CountTable> fk = build_fk_tables(2, 400, /*cross_check=*/false);
  std::vector<std::size_t> ns = {100, 200, 400};

  RatioReport r0 = asymptotic_ratio_report(0, ns, std::span(fk.data(), fk.size()),
                                           fx.f0t, fx.ctx);
  CHECK(abs(r0.rows[0].crude_ratio - 1) < Real("0.02"));

  for (unsigned k : {1u, 2u}) {
    RatioReport r = asymptotic_ratio_report(k, ns, std::span(fk.data(), fk.size()),
                                            fx.f0t, fx.ctx);
    Real prev = Real(10);
    for (const RatioRow& row : r.rows) {
      Real gap = abs(row.crude_ratio - 1);
      CHECK(gap < prev);
      prev = gap;
    }
    if (k == 1) {
      // T_1 is a single trace: both predictions coincide
      for (const RatioRow& row : r.rows)
        CHECK(abs_diff(row.crude_prediction, row.fine_prediction) /
                  row.crude_prediction < Real("1e-30"));
    }
  }
}

TEST_CASE("each k=2 trace count converges to its own asymptotic term") {
  // Pins the measured convergence behind the ratio report: every trace table
  // approaches its predicted term like 1/n, with the (2,(0,0),(0,0)) trace
  // overshooting from below and the p=1 traces from above.
  const Fixture& fx = fixture();
  fx.ctx.activate();
  std::vector<CountTable> fk = build_fk_tables(1, 400, /*cross_check=*/false);
  std::span<const CountTable> span(fk.data(), fk.size());
  Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);

  for (const Trace& t : enumerate_traces(2)) {
    CountTable table = build_trace_table(t, 400, span, fx.f0t);
    Real factors = 1;
    for (std::size_t i = 0; i < t.p(); ++i)
      factors *= proper_conv_ratio_sum(fk[t.l[i]], fk[t.r[i]]).value;
    Real p_fact = (t.p() == 2) ? 2 : 1;
    Real prev_gap = 1;
    for (std::size_t n : {100, 200, 400}) {
      Real pred = pow(Real(4), static_cast<unsigned long>(n)) / (4 * sqrt(pi)) / p_fact *
                  pow(Real(n), Real(static_cast<long>(t.p())) - Real(3) / 2) * factors;
      Real gap = abs(to_real(table.at(n)) / pred - 1);
      CHECK(gap < Real("0.05"));
      CHECK(gap < prev_gap / Real("1.7"));  // roughly halves as n doubles
      prev_gap = gap;
    }
  }
}

TEST_CASE("certified digits accounting") {
  const Fixture& fx = fixture();
  ConstantsReport report = compute_constants(fx.ft, fx.et, fx.f0t, fx.ctx, fx.trunc);
  CHECK(report.rho.certified_digits >= 12);
  CHECK(report.c.certified_digits >= 12);
  CHECK(report.rho_exp.certified_digits >= 10);
  CHECK(report.corollary_C.certified_digits >= 12);
  CHECK(format_real(report.rho.value, 4) == std::string("4.077"));
}
