#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "formulas/counting.hpp"
#include "formulas/trace.hpp"

namespace formulas {

/// Variable-precision real; precision is set per thread via
/// PrecisionContext::activate().
using Real = boost::multiprecision::mpfr_float;

Real to_real(const mpz_class& z);

struct PrecisionContext {
  unsigned working_digits = 60;
  unsigned target_digits = 15;

  /// Sets the thread-default mpfr precision. Enforces working >= target + 10.
  void activate() const;
};

/// Truncation horizons for the generating-function sums.
struct SeriesTruncation {
  std::size_t n_max_f = 400;  // series terms use table values up to this index
  std::size_t d_max = 200;    // outer divisor cutoff in the F-tilde double sum
};

/// A truncated sum plus a certified bound on everything dropped.
struct BoundedValue {
  Real value;
  Real tail;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoSignChange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated evaluation of F(z) = sum f(n) z^n and
/// F~(z) = z + sum_{d>=2} f(d)(F(z^d) - z^d) [+ sum_m fpow(m) z^m].
///
/// `growth_base` is the proven per-term growth bound (f(n) < 8^n for the
/// arithmetic count, f_exp(n) < 12^n for the exponential one); every tail
/// certificate is geometric in growth_base * x^d. `pow_counts`, when given,
/// adds the ^-rooted component evaluated at the outer argument.
class FormulaSeries {
 public:
  FormulaSeries(const CountTable& counts, SeriesTruncation trunc, unsigned growth_base,
                const CountTable* pow_counts = nullptr);

  /// Requires growth_base * x < 1.
  BoundedValue eval_F(const Real& x) const;

  /// Requires 0 <= x and growth_base * x^2 < 1 (plus x <= 0.31 when the
  /// ^-component is present); F~(0) = 0 exactly.
  BoundedValue eval_F_tilde(const Real& x) const;

  /// Termwise derivative of the truncated series, with a certified bound on
  /// the dropped terms' contribution. order >= 1.
  BoundedValue eval_F_tilde_derivative(const Real& x, unsigned order) const;

  const SeriesTruncation& truncation() const { return trunc_; }

 private:
  const CountTable& counts_;
  const CountTable* pow_counts_;
  SeriesTruncation trunc_;
  unsigned growth_;
};

struct RootResult {
  Real xi;
  Real rho;        // 1/xi
  Real residual;   // |F~(xi) - 1/4| + truncation tail + rounding allowance
};

/// Smallest positive solution of F~(xi) = 1/4 by bisection plus Newton.
RootResult solve_xi(const FormulaSeries& series, const PrecisionContext& ctx);

/// Leading coefficient of f(n) ~ c rho^n / n^{3/2}:
/// c = sqrt(xi F~'(xi) / pi) / 2, with a propagated error bound.
BoundedValue compute_c(const FormulaSeries& series, const RootResult& root,
                       const PrecisionContext& ctx);

/// sigma = sum_m 4^{1-m} (f0 *' f0)(m); tail certified through the verified
/// (f0 *' f0)(m) <= 3^m bound. `terms` = 0 uses the whole table.
BoundedValue compute_sigma(const CountTable& f0_table, const PrecisionContext& ctx,
                           std::size_t terms = 0);

/// sum_t (f_l *' f_r)(t) / 4^{t-1} with a generic 8^t-based tail; the
/// per-trace factors of the finer f_k prediction.
BoundedValue proper_conv_ratio_sum(const CountTable& fl, const CountTable& fr);

/// Coefficients c_0..c_J (J <= 4) of sqrt(G(z xi)) around z = 1, where
/// 1 - 4 F~(z) = (1 - z/xi) G(z). The m-term tail prediction of f(n) xi^n is
/// -(1/2) sum_{j<=m} c_j binom(n - j - 3/2, n).
std::vector<Real> darboux_coefficients(const FormulaSeries& series, const RootResult& root,
                                       unsigned J, const PrecisionContext& ctx);

/// binom(n - j - 3/2, n) as a real product.
Real binom_half_offset(std::size_t n, unsigned j);

/// Prediction of f(n) xi^n using Darboux terms c_0..c_m.
Real darboux_prediction(std::span<const Real> coeffs, unsigned terms, std::size_t n);

struct RatioRow {
  std::size_t n;
  mpz_class f_k;
  Real crude_prediction;  // sigma^k/(4 sqrt(pi) k!) 4^n n^{k-3/2}
  Real crude_ratio;       // f_k(n) / crude
  Real fine_prediction;   // trace-resolved sum
  Real fine_ratio;
};

struct RatioReport {
  unsigned k = 0;
  Real sigma;
  std::vector<RatioRow> rows;
};

/// Compares f_k against both asymptotic predictions at the sample points.
/// `fk_tables` must contain f_0..f_k; f0_table only feeds sigma.
RatioReport asymptotic_ratio_report(unsigned k, std::span<const std::size_t> sample_ns,
                                    std::span<const CountTable> fk_tables,
                                    const CountTable& f0_table, const PrecisionContext& ctx);

struct ConstantValue {
  Real value;
  Real error_bound;          // absolute
  unsigned certified_digits; // significant digits backed by error_bound
};

struct ConstantsReport {
  ConstantValue xi, rho, c, sigma, rho_exp, corollary_C;
  SeriesTruncation truncation;
};

/// Decimal string with `digits` significant digits (used by reports; never
/// prints more digits than certified).
std::string format_real(const Real& value, unsigned digits);

unsigned certified_digits_for(const Real& value, const Real& abs_error, unsigned cap);

/// The full pipeline: xi/rho/c from the arithmetic tables, sigma from f0,
/// rho_exp from the exponential tables.
ConstantsReport compute_constants(const FTables& f_tables, const FExpTables& fexp_tables,
                                  const CountTable& f0_table, const PrecisionContext& ctx,
                                  SeriesTruncation trunc = {});

}  // namespace formulas
