#include "formulas/trace.hpp"

#include <numeric>
#include <stdexcept>

namespace formulas {

std::size_t Trace::weight() const {
  std::size_t w = p();
  w = std::accumulate(l.begin(), l.end(), w);
  w = std::accumulate(r.begin(), r.end(), w);
  return w;
}

std::string Trace::to_string() const {
  std::string out = "(" + std::to_string(p()) + ",(";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(l[i]);
  }
  out += "),(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(r[i]);
  }
  out += "))";
  return out;
}

namespace {

// Collects primitive mul nodes left to right. `inside_mul` is true once we
// are below some mul node.
void walk(const Formula& f, bool inside_mul, Trace& out) {
  if (f.is_leaf()) return;
  if (f.kind() == NodeKind::pow) throw PowDisallowed();
  if (f.kind() == NodeKind::mul && !inside_mul) {
    out.l.push_back(static_cast<std::uint32_t>(f.left().mul_count()));
    out.r.push_back(static_cast<std::uint32_t>(f.right().mul_count()));
    walk(f.left(), true, out);
    walk(f.right(), true, out);
    return;
  }
  bool below = inside_mul || f.kind() == NodeKind::mul;
  walk(f.left(), below, out);
  walk(f.right(), below, out);
}

// All ways to write `total` as an ordered sum of `parts` nonnegative terms.
void weak_compositions(std::uint32_t total, std::size_t parts,
                       std::vector<std::uint32_t>& current,
                       std::vector<std::vector<std::uint32_t>>& out) {
  if (parts == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::uint32_t v = 0; v <= total; ++v) {
    current.push_back(v);
    weak_compositions(total - v, parts - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

Trace trace_of(const Formula& formula) {
  Trace t;
  walk(formula, false, t);
  return t;
}

std::vector<Trace> enumerate_traces(unsigned k) {
  std::vector<Trace> out;
  if (k == 0) {
    out.push_back(Trace{});
    return out;
  }
  for (std::uint32_t p = 1; p <= k; ++p) {
    std::vector<std::vector<std::uint32_t>> comps;
    std::vector<std::uint32_t> current;
    weak_compositions(k - p, 2 * p, current, comps);
    for (const auto& c : comps) {
      Trace t;
      t.l.assign(c.begin(), c.begin() + p);
      t.r.assign(c.begin() + p, c.end());
      out.push_back(std::move(t));
    }
  }
  if (trace_count(k) != static_cast<long>(out.size()))
    throw std::logic_error("trace enumeration disagrees with stars-and-bars count");
  return out;
}

mpz_class trace_count(unsigned k) {
  if (k == 0) return 1;
  mpz_class total = 0;
  for (unsigned p = 1; p <= k; ++p) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), k + p - 1, 2 * p - 1);
    total += b;
  }
  return total;
}

}  // namespace formulas
