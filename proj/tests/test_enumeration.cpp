#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <span>
#include <sstream>

#include "formulas/counting.hpp"
#include "formulas/enumeration.hpp"

using namespace formulas;

TEST_CASE("n=1 yields exactly the leaf") {
  Enumerator e;
  auto all = e.all(1, arithmetic_kinds);
  REQUIRE(all.size() == 1);
  CHECK(all[0].is_leaf());
}

TEST_CASE("n=4 arithmetic yields exactly the six documented formulas") {
  Enumerator e;
  std::set<std::string> keys;
  for (const Formula& f : e.all(4, arithmetic_kinds)) keys.insert(canonical_key(f));
  std::set<std::string> expect = {
      canonical_key(parse_infix("1+(1+(1+1))")),
      canonical_key(parse_infix("1+((1+1)+1)")),
      canonical_key(parse_infix("(1+(1+1))+1")),
      canonical_key(parse_infix("((1+1)+1)+1")),
      canonical_key(parse_infix("(1+1)+(1+1)")),
      canonical_key(parse_infix("(1+1)*(1+1)")),
  };
  CHECK(keys == expect);
}

TEST_CASE("n=4 exponential adds (1+1)^(1+1)") {
  Enumerator e;
  auto all = e.all(4, exponential_kinds);
  CHECK(all.size() == 7);
  std::set<std::string> keys;
  for (const Formula& f : all) keys.insert(canonical_key(f));
  CHECK(keys.count("^+11+11") == 1);
}

TEST_CASE("every yielded formula validates, evaluates to n, no duplicates") {
  Enumerator e;
  for (std::size_t n = 1; n <= 9; ++n) {
    std::set<std::string> keys;
    std::size_t total = 0;
    e.for_each(n, exponential_kinds, [&](const Formula& f) {
      ++total;
      CHECK(validate(f, exponential_kinds).ok());
      CHECK(f.value() == static_cast<long>(n));
      CHECK(keys.insert(canonical_key(f)).second);
    });
    CHECK(keys.size() == total);
  }
}

TEST_CASE("round trip through both notations on the full stream") {
  Enumerator e;
  for (std::size_t n : {5, 8, 10}) {
    e.for_each(n, exponential_kinds, [&](const Formula& f) {
      CHECK(parse_polish(to_polish(f)) == f);
      CHECK(parse_infix(to_infix(f)) == f);
      CHECK(to_polish(f).size() == f.size());
    });
  }
}

TEST_CASE("n <= 12 sweep: polish round trip and trace weight consistency") {
  Enumerator e;
  for (std::size_t n = 1; n <= 12; ++n) {
    std::size_t failures = 0;
    e.for_each(n, arithmetic_kinds, [&](const Formula& f) {
      if (!(parse_polish(to_polish(f)) == f)) ++failures;
      if (trace_of(f).weight() != f.mul_count()) ++failures;
      if (to_polish(f).size() != f.size()) ++failures;
    });
    CHECK(failures == 0);
  }
}

TEST_CASE("stream counts match the recurrence tables up to 12") {
  Enumerator e;
  FTables ft = build_f_tables(12);
  FExpTables et = build_fexp_tables(12);
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(e.count(n, arithmetic_kinds) == ft.f.at(n));
    CHECK(e.count(n, exponential_kinds) == et.fexp.at(n));
  }
}

TEST_CASE("counts grouped by multiplications: documented n=5 and f_k equality") {
  Enumerator e;
  auto by_k = e.count_by_k(5);
  REQUIRE(by_k.size() == 2);
  CHECK(by_k[0] == 14);
  CHECK(by_k[1] == 2);

  std::vector<CountTable> fk = build_fk_tables(3, 12, /*cross_check=*/true);
  for (std::size_t n = 1; n <= 12; ++n) {
    auto groups = e.count_by_k(n);
    for (unsigned k = 0; k < fk.size(); ++k) {
      mpz_class expect = fk[k].at(n);
      mpz_class got = groups.count(k) ? groups[k] : 0;
      CHECK(got == expect);
    }
  }
}

TEST_CASE("counts grouped by trace match the composition-sum formula") {
  Enumerator e;
  std::vector<CountTable> fk = build_fk_tables(3, 10, /*cross_check=*/false);
  CountTable f0t = build_f0_table(16);
  std::span<const CountTable> span(fk.data(), fk.size());
  for (std::size_t n = 1; n <= 10; ++n) {
    auto by_trace = e.count_by_trace(n);
    mpz_class total = 0;
    for (const auto& [trace, count] : by_trace) {
      CHECK(count == f_trace(trace, n, span, f0t));
      total += count;
    }
    CHECK(total == e.count(n, arithmetic_kinds));
    // traces absent from the stream must count zero
    for (unsigned k = 0; k <= 3; ++k)
      for (const Trace& t : enumerate_traces(k))
        if (!by_trace.count(t)) CHECK(f_trace(t, n, span, f0t) == 0);
  }
}

TEST_CASE("cap is enforced") {
  Enumerator e(EnumerationConfig{.max_n = 6, .memo_threshold = 4});
  CHECK_THROWS_AS(e.count(7, arithmetic_kinds), CapExceeded);
  CHECK(e.count(6, arithmetic_kinds) == 52);
}

TEST_CASE("dump emits one polish line per formula") {
  Enumerator e;
  std::ostringstream out;
  e.dump(3, arithmetic_kinds, out);
  CHECK(out.str() == "+1+11\n++111\n");
}
