#include "formulas/rewrite_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "formulas/counting.hpp"
#include "formulas/encoders.hpp"

namespace formulas {

namespace {

// Rewrites applicable at the root of f.
void local_rewrites(const Formula& f, std::vector<Formula>& out) {
  if (f.is_leaf()) return;
  NodeKind k = f.kind();
  const Formula& a = f.left();
  const Formula& b = f.right();

  if (k == NodeKind::add || k == NodeKind::mul) {
    // commutativity (identical children would reproduce the same tree)
    if (!(a == b)) out.push_back(Formula::make(k, b, a));
    // associativity: (x∘y)∘z -> x∘(y∘z)
    if (a.kind() == k)
      out.push_back(Formula::make(k, a.left(), Formula::make(k, a.right(), b)));
    // associativity: x∘(y∘z) -> (x∘y)∘z
    if (b.kind() == k)
      out.push_back(Formula::make(k, Formula::make(k, a, b.left()), b.right()));
  }

  if (k == NodeKind::mul) {
    // distribute right: a*(x+y) -> a*x + a*y, both products must stay valid
    if (b.kind() == NodeKind::add && b.left().value() >= 2 && b.right().value() >= 2)
      out.push_back(
          Formula::add(Formula::mul(a, b.left()), Formula::mul(a, b.right())));
    // distribute left: (x+y)*a -> x*a + y*a
    if (a.kind() == NodeKind::add && a.left().value() >= 2 && a.right().value() >= 2)
      out.push_back(
          Formula::add(Formula::mul(a.left(), b), Formula::mul(a.right(), b)));
  }

  if (k == NodeKind::add && a.kind() == NodeKind::mul && b.kind() == NodeKind::mul) {
    // factor a shared side back out; the shared factor must be structurally equal
    if (a.left() == b.left())
      out.push_back(Formula::mul(a.left(), Formula::add(a.right(), b.right())));
    if (a.right() == b.right())
      out.push_back(Formula::mul(Formula::add(a.left(), b.left()), a.right()));
  }
}

// Applies local_rewrites at every node, reassembling the surrounding tree.
void rewrites_everywhere(const Formula& f,
                         const std::function<Formula(const Formula&)>& rebuild,
                         std::vector<Formula>& out) {
  std::vector<Formula> local;
  local_rewrites(f, local);
  for (const Formula& g : local) out.push_back(rebuild(g));
  if (f.is_leaf()) return;
  rewrites_everywhere(
      f.left(),
      [&](const Formula& sub) { return rebuild(Formula::make(f.kind(), sub, f.right())); },
      out);
  rewrites_everywhere(
      f.right(),
      [&](const Formula& sub) { return rebuild(Formula::make(f.kind(), f.left(), sub)); },
      out);
}

}  // namespace

std::vector<Formula> neighbors(const Formula& formula) {
  std::vector<Formula> raw;
  rewrites_everywhere(formula, [](const Formula& g) { return g; }, raw);
  std::vector<Formula> out;
  std::set<std::string> seen;
  std::string self = canonical_key(formula);
  for (const Formula& g : raw) {
    std::string key = canonical_key(g);
    if (key == self) throw std::logic_error("rewrite produced the original tree");
    if (seen.insert(std::move(key)).second) out.push_back(g);
  }
  return out;
}

RewriteGraph build_graph(std::size_t n, const Enumerator& enumerator, unsigned threads) {
  RewriteGraph graph;
  graph.n = n;
  enumerator.for_each(n, arithmetic_kinds, [&](const Formula& f) {
    graph.keys.push_back(canonical_key(f));
    graph.vertices.push_back(f);
  });
  graph.index.reserve(graph.keys.size());
  for (std::uint32_t i = 0; i < graph.keys.size(); ++i) {
    if (!graph.index.emplace(graph.keys[i], i).second)
      throw std::logic_error("duplicate canonical key in enumeration");
  }

  std::size_t count = graph.vertices.size();
  std::vector<std::vector<std::uint32_t>> adjacency(count);
  auto expand = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t v = lo; v < hi; ++v) {
      const Formula& f = graph.vertices[v];
      std::size_t internal = (f.size() - 1) / 2;
      std::vector<Formula> nbrs = neighbors(f);
      if (nbrs.size() > 5 * internal)
        throw std::logic_error("degree exceeds the 5x internal-node cap");
      for (const Formula& g : nbrs) {
        if (g.value() != f.value())
          throw std::logic_error("rewrite changed the formula value");
        auto it = graph.index.find(canonical_key(g));
        if (it == graph.index.end())
          throw std::logic_error("rewrite left the vertex set of G_n");
        adjacency[v].push_back(it->second);
      }
    }
  };
  if (threads <= 1 || count < 256) {
    expand(0, count);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        try {
          expand(lo, hi);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
  for (std::uint32_t v = 0; v < count; ++v)
    for (std::uint32_t w : adjacency[v])
      edge_set.insert({std::min(v, w), std::max(v, w)});
  graph.edges.assign(edge_set.begin(), edge_set.end());
  graph.degree.assign(count, 0);
  for (auto [u, v] : graph.edges) {
    ++graph.degree[u];
    ++graph.degree[v];
  }
  return graph;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Formula horner_vertex(std::size_t n) {
  std::function<Formula(const Formula&)> project = [&](const Formula& f) -> Formula {
    if (f.is_leaf()) return f;
    Formula l = project(f.left());
    Formula r = project(f.right());
    if (f.kind() != NodeKind::pow) return Formula::make(f.kind(), l, r);
    // expand l^r into a left-associated product of value(r) copies of l
    if (!f.right().value().fits_ulong_p())
      throw std::overflow_error("exponent too large to expand");
    unsigned long copies = f.right().value().get_ui();
    Formula out = l;
    for (unsigned long i = 1; i < copies; ++i) out = Formula::mul(out, l);
    return out;
  };
  return project(encode_horner(n).formula);
}

GraphStats stats(const RewriteGraph& graph) {
  GraphStats s;
  s.n = graph.n;
  s.vertex_count = graph.vertex_count();
  s.edge_count = graph.edge_count();
  for (std::uint32_t d : graph.degree) s.max_degree = std::max(s.max_degree, d);

  UnionFind uf(graph.vertex_count());
  for (auto [u, v] : graph.edges) uf.unite(u, v);
  std::set<std::uint32_t> roots;
  for (std::uint32_t i = 0; i < graph.vertex_count(); ++i) roots.insert(uf.find(i));
  s.component_count = roots.size();

  for (std::uint32_t i = 0; i < graph.vertex_count(); ++i)
    if (graph.vertices[i].mul_count() == 0)
      s.addition_only_degrees.push_back(graph.degree[i]);

  if (graph.n >= 2) {
    auto it = graph.index.find(canonical_key(horner_vertex(graph.n)));
    if (it != graph.index.end()) {
      s.horner_vertex_found = true;
      std::uint32_t start_root = uf.find(it->second);
      for (std::uint32_t i = 0; i < graph.vertex_count(); ++i) {
        if (graph.vertices[i].kind() == NodeKind::mul && uf.find(i) == start_root) {
          s.mul_root_reachable_from_horner = true;
          break;
        }
      }
    }
  }
  return s;
}

DegreeReport degree_report(const RewriteGraph& graph, double corollary_C) {
  DegreeReport report;
  report.n = graph.n;
  report.graph_stats = stats(graph);
  report.f0_minus_1 = f0(graph.n) - 1;

  const auto& degs = report.graph_stats.addition_only_degrees;
  if (!degs.empty()) {
    report.min_addition_only_degree = *std::min_element(degs.begin(), degs.end());
    report.max_addition_only_degree = *std::max_element(degs.begin(), degs.end());
    report.max_degree_vertex_is_addition_only =
        report.max_addition_only_degree == report.graph_stats.max_degree;
  }
  report.order_over_C_pow_n =
      static_cast<double>(graph.vertex_count()) / std::pow(corollary_C, double(graph.n));
  return report;
}

void write_edge_list(const RewriteGraph& graph, std::ostream& out) {
  for (auto [u, v] : graph.edges) out << graph.keys[u] << '\t' << graph.keys[v] << "\n";
}

void write_dot(const RewriteGraph& graph, std::ostream& out) {
  out << "graph G" << graph.n << " {\n";
  for (std::size_t i = 0; i < graph.keys.size(); ++i)
    out << "  v" << i << " [label=\"" << graph.keys[i] << "\"];\n";
  for (auto [u, v] : graph.edges) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
}

}  // namespace formulas
