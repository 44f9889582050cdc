#include "formulas/enumeration.hpp"

#include "formulas/counting.hpp"

namespace formulas {

namespace {

// Ascending (base, exponent) pairs with base^exp == n, base >= 2, exp >= 2.
std::vector<std::pair<std::size_t, std::size_t>> power_splits(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 2; a * a <= n; ++a) {
    std::size_t p = a * a;
    std::size_t b = 2;
    while (p < n && p <= n / a) {
      p *= a;
      ++b;
    }
    if (p == n) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

const std::vector<Formula>& Enumerator::memo_list(std::size_t n, FormulaKindSet kinds) const {
  auto key = std::make_pair(n, kinds.allow_pow);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<Formula> list;
  generate(n, kinds, [&](const Formula& f) { list.push_back(f); });
  return memo_.emplace(key, std::move(list)).first->second;
}

void Enumerator::split_pairs(std::size_t left_value, std::size_t right_value, NodeKind kind,
                             FormulaKindSet kinds,
                             const std::function<void(const Formula&)>& fn) const {
  std::size_t thr = config_.memo_threshold;
  bool left_memo = left_value <= thr;
  bool right_memo = right_value <= thr;
  if (left_memo && right_memo) {
    for (const Formula& l : memo_list(left_value, kinds))
      for (const Formula& r : memo_list(right_value, kinds))
        fn(Formula::make(kind, l, r));
    return;
  }
  if (right_memo) {
    // stream the big left side once, pair with the memoized right list
    generate(left_value, kinds, [&](const Formula& l) {
      for (const Formula& r : memo_list(right_value, kinds)) fn(Formula::make(kind, l, r));
    });
    return;
  }
  if (left_memo) {
    generate(right_value, kinds, [&](const Formula& r) {
      for (const Formula& l : memo_list(left_value, kinds)) fn(Formula::make(kind, l, r));
    });
    return;
  }
  // Both sides above the memo threshold (cannot happen for n <= 2*thr+1;
  // falls back to materializing the right side once).
  std::vector<Formula> right_list;
  generate(right_value, kinds, [&](const Formula& r) { right_list.push_back(r); });
  generate(left_value, kinds, [&](const Formula& l) {
    for (const Formula& r : right_list) fn(Formula::make(kind, l, r));
  });
}

void Enumerator::generate(std::size_t n, FormulaKindSet kinds,
                          const std::function<void(const Formula&)>& fn) const {
  if (n == 1) {
    fn(Formula::one());
    return;
  }
  for (std::size_t a = 1; a < n; ++a) split_pairs(a, n - a, NodeKind::add, kinds, fn);
  for (std::size_t d : proper_divisors(n)) split_pairs(d, n / d, NodeKind::mul, kinds, fn);
  if (kinds.allow_pow)
    for (auto [a, b] : power_splits(n)) split_pairs(a, b, NodeKind::pow, kinds, fn);
}

void Enumerator::for_each(std::size_t n, FormulaKindSet kinds,
                          const std::function<void(const Formula&)>& fn) const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > config_.max_n) throw CapExceeded(n, config_.max_n);
  generate(n, kinds, fn);
}

std::vector<Formula> Enumerator::all(std::size_t n, FormulaKindSet kinds) const {
  std::vector<Formula> out;
  for_each(n, kinds, [&](const Formula& f) { out.push_back(f); });
  return out;
}

mpz_class Enumerator::count(std::size_t n, FormulaKindSet kinds) const {
  mpz_class c = 0;
  for_each(n, kinds, [&](const Formula&) { ++c; });
  return c;
}

std::map<std::size_t, mpz_class> Enumerator::count_by_k(std::size_t n) const {
  std::map<std::size_t, mpz_class> out;
  for_each(n, arithmetic_kinds, [&](const Formula& f) { ++out[f.mul_count()]; });
  return out;
}

std::map<Trace, mpz_class> Enumerator::count_by_trace(std::size_t n) const {
  std::map<Trace, mpz_class> out;
  for_each(n, arithmetic_kinds, [&](const Formula& f) { ++out[trace_of(f)]; });
  return out;
}

void Enumerator::dump(std::size_t n, FormulaKindSet kinds, std::ostream& out) const {
  for_each(n, kinds, [&](const Formula& f) { out << to_polish(f) << "\n"; });
}

}  // namespace formulas
