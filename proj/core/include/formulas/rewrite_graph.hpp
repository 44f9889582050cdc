#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "formulas/enumeration.hpp"
#include "formulas/formula.hpp"

namespace formulas {

enum class RewriteRule : std::uint8_t {
  comm_swap,
  assoc_left,
  assoc_right,
  distrib_expand,
  distrib_factor,
};

/// All distinct valid formulas one local rewrite away (commutativity,
/// associativity or distributivity applied at a single node). Symmetric:
/// every rule has its inverse in the set. No self-edges.
std::vector<Formula> neighbors(const Formula& formula);

/// G_n: one vertex per arithmetic formula for n, keyed canonically; edges are
/// single rewrites, stored once with u < v.
struct RewriteGraph {
  std::size_t n = 0;
  std::vector<Formula> vertices;             // enumeration order
  std::vector<std::string> keys;             // canonical_key per vertex
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, deduplicated
  std::vector<std::uint32_t> degree;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
};

RewriteGraph build_graph(std::size_t n, const Enumerator& enumerator, unsigned threads = 1);

struct GraphStats {
  std::size_t n = 0;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::uint32_t max_degree = 0;
  std::size_t component_count = 0;
  std::vector<std::uint32_t> addition_only_degrees;  // one per k=0 vertex
  bool horner_vertex_found = false;
  bool mul_root_reachable_from_horner = false;
};

GraphStats stats(const RewriteGraph& graph);

struct DegreeReport {
  std::size_t n = 0;
  GraphStats graph_stats;
  mpz_class f0_minus_1;          // the degree §-claim for addition-only vertices
  std::uint32_t min_addition_only_degree = 0;
  std::uint32_t max_addition_only_degree = 0;
  bool max_degree_vertex_is_addition_only = false;
  double order_over_C_pow_n = 0;  // |G_n| / C^n with C = rho/4
};

/// Side-by-side comparison of observed degrees with f0(n)-1 and |G_n|/C^n.
/// Observations are reported, never asserted.
DegreeReport degree_report(const RewriteGraph& graph, double corollary_C);

/// Two canonical keys per line, tab separated.
void write_edge_list(const RewriteGraph& graph, std::ostream& out);
void write_dot(const RewriteGraph& graph, std::ostream& out);

/// The arithmetic projection of the Horner formula for n: every pow node is
/// expanded into a left-associated product of copies of its base. Used as the
/// designated start vertex for reachability reporting.
Formula horner_vertex(std::size_t n);

}  // namespace formulas
