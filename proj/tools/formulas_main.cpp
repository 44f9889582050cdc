// Command line front end: every subcommand is a thin adapter over the library.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <span>
#include <thread>

#include "formulas/analytic.hpp"
#include "formulas/counting.hpp"
#include "formulas/encoders.hpp"
#include "formulas/enumeration.hpp"
#include "formulas/rewrite_graph.hpp"
#include "formulas/table_io.hpp"

using json = nlohmann::ordered_json;
using namespace formulas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 0;

  unsigned worker_count() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }

  TableCache cache() const {
    return TableCache(default_cache_dir(cache_dir.empty()
                                            ? std::optional<std::string>{}
                                            : std::optional<std::string>{cache_dir}),
                      !no_cache);
  }

  bool json_output() const { return format == "json"; }
};

void emit(const GlobalOptions& opts, const json& j, const std::string& text) {
  if (opts.json_output())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------- count ----

struct CountArgs {
  std::string seq = "f";
  std::size_t n = 1;
  unsigned k = 0;
  bool k_given = false;
};

int run_count(const GlobalOptions& opts, const CountArgs& args) {
  TableCache cache = opts.cache();
  mpz_class value;
  if (args.seq == "f") {
    value = cache.f_tables(std::max<std::size_t>(args.n, 400)).f.at(args.n);
  } else if (args.seq == "f0") {
    value = f0(args.n);
  } else if (args.seq == "fexp") {
    value = cache.fexp_tables(std::max<std::size_t>(args.n, 400)).fexp.at(args.n);
  } else if (args.seq == "fk") {
    if (!args.k_given) {
      std::cerr << "count --seq fk requires --k\n";
      return kExitUsage;
    }
    // the trace-formula cross-check enumerates T_0..T_k; feasible for small k
    bool cross_check = trace_count(args.k) <= 200;
    auto tables = build_fk_tables(args.k, args.n, cross_check);
    value = tables[args.k].at(args.n);
  } else {
    std::cerr << "unknown sequence '" << args.seq << "'\n";
    return kExitUsage;
  }
  json j{{"seq", args.seq}, {"n", args.n}, {"value", value.get_str()}};
  if (args.seq == "fk") j["k"] = args.k;
  emit(opts, j, value.get_str() + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- traces ---

int run_traces(const GlobalOptions& opts, unsigned k) {
  std::vector<Trace> traces = enumerate_traces(k);
  json j{{"k", k}, {"count", trace_count(k).get_str()}, {"traces", json::array()}};
  std::string text;
  for (const Trace& t : traces) {
    j["traces"].push_back({{"p", t.p()}, {"l", t.l}, {"r", t.r}});
    text += t.to_string() + "\n";
  }
  text += "|T_" + std::to_string(k) + "| = " + trace_count(k).get_str() + "\n";
  emit(opts, j, text);
  return kExitOk;
}

// ------------------------------------------------------------- constants ---

json constant_json(const ConstantValue& c, unsigned digits) {
  unsigned shown = std::min(digits, std::max(1u, c.certified_digits));
  return json{{"value", format_real(c.value, shown)},
              {"certified_digits", c.certified_digits},
              {"residual", format_real(c.error_bound, 3)}};
}

std::string constant_line(const char* name, const ConstantValue& c, unsigned digits) {
  unsigned shown = std::min(digits, std::max(1u, c.certified_digits));
  std::string line = std::string(name) + " = " + format_real(c.value, shown);
  line += "  (certified digits: " + std::to_string(c.certified_digits) +
          ", error bound: " + format_real(c.error_bound, 3) + ")\n";
  return line;
}

struct ConstantsArgs {
  unsigned digits = 15;
  std::size_t n_max = 400;
  std::size_t d_max = 200;
};

int run_constants(const GlobalOptions& opts, const ConstantsArgs& args) {
  PrecisionContext ctx{std::max(args.digits + 15, 60u), args.digits};
  SeriesTruncation trunc{args.n_max, args.d_max};
  TableCache cache = opts.cache();
  FTables ft = cache.f_tables(args.n_max);
  FExpTables et = cache.fexp_tables(args.n_max);
  CountTable f0t = cache.f0_table(args.n_max);

  ConstantsReport report = compute_constants(ft, et, f0t, ctx, trunc);

  json j{{"truncation", {{"n_max_f", trunc.n_max_f}, {"d_max", trunc.d_max}}},
         {"working_digits", ctx.working_digits},
         {"constants",
          {{"xi", constant_json(report.xi, args.digits)},
           {"rho", constant_json(report.rho, args.digits)},
           {"c", constant_json(report.c, args.digits)},
           {"sigma", constant_json(report.sigma, args.digits)},
           {"rho_exp", constant_json(report.rho_exp, args.digits)},
           {"C", constant_json(report.corollary_C, args.digits)}}}};
  std::string text;
  text += constant_line("xi     ", report.xi, args.digits);
  text += constant_line("rho    ", report.rho, args.digits);
  text += constant_line("c      ", report.c, args.digits);
  text += constant_line("sigma  ", report.sigma, args.digits);
  text += constant_line("rho_exp", report.rho_exp, args.digits);
  text += constant_line("C      ", report.corollary_C, args.digits);
  emit(opts, j, text);
  return kExitOk;
}

// ------------------------------------------------------------- enumerate ---

struct EnumerateArgs {
  std::size_t n = 1;
  bool allow_pow = false;
  bool dump = false;
  std::size_t cap = 12;
};

int run_enumerate(const GlobalOptions& opts, const EnumerateArgs& args) {
  Enumerator e(EnumerationConfig{args.cap, 9});
  FormulaKindSet kinds{args.allow_pow};
  if (args.dump) {
    e.dump(args.n, kinds, std::cout);
    return kExitOk;
  }
  mpz_class count = e.count(args.n, kinds);
  json j{{"n", args.n}, {"pow", args.allow_pow}, {"count", count.get_str()}};
  emit(opts, j, count.get_str() + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- encode ---

struct EncodeArgs {
  std::string scheme = "fcf";
  std::uint64_t n = 1;
};

int run_encode(const GlobalOptions& opts, const EncodeArgs& args) {
  if (args.scheme == "short") {
    if (args.n > (std::size_t(1) << 20)) {
      std::cerr << "short-encoding DP supports n <= 2^20\n";
      return kExitUsage;
    }
    auto sizes = shortest_sizes(args.n);
    json j{{"scheme", "short"}, {"n", args.n}, {"length", sizes[args.n]}};
    emit(opts, j, std::to_string(sizes[args.n]) + "\n");
    return kExitOk;
  }
  Scheme scheme;
  if (args.scheme == "fcf") scheme = Scheme::fcf;
  else if (args.scheme == "scf") scheme = Scheme::scf;
  else if (args.scheme == "horner") scheme = Scheme::horner;
  else {
    std::cerr << "unknown scheme '" << args.scheme << "'\n";
    return kExitUsage;
  }
  EncodingResult r = encode(scheme, args.n);
  json j{{"scheme", args.scheme},
         {"n", args.n},
         {"infix", to_infix(r.formula)},
         {"polish", to_polish(r.formula)},
         {"length", r.length},
         {"value", r.formula.value().get_str()}};
  std::string text = to_infix(r.formula) + "\n" + "length = " + std::to_string(r.length) +
                     ", value = " + r.formula.value().get_str() + "\n";
  emit(opts, j, text);
  return kExitOk;
}

// ---------------------------------------------------------------- census ---

struct CensusArgs {
  std::size_t limit = 1 << 16;
  double epsilon = 0.5;
  std::string csv_path;
};

json census_summary_json(const SizeCensus& census) {
  return json{
      {"limit", census.limit},
      {"epsilon", census.epsilon},
      {"violations",
       {{"scf_6t", census.scf_6t_violations.size()},
        {"t_log2", census.t_log2_violations.size()},
        {"fcf_s2", census.fcf_s2_violations.size()},
        {"short_min", census.short_min_violations.size()},
        {"pow2_t", census.pow2_t_violations.size()}}},
      {"short_below_threshold", census.short_below_threshold},
      {"short_threshold_bound", census.short_threshold_bound},
      {"fit",
       {{"max_fcf_over_loglog", census.max_fcf_over_loglog},
        {"mean_fcf_over_loglog", census.mean_fcf_over_loglog},
        {"max_horner_over_log", census.max_horner_over_log},
        {"mean_scf_len", census.mean_scf_len},
        {"mean_horner_len", census.mean_horner_len}}}};
}

int run_census(const GlobalOptions& opts, const CensusArgs& args) {
  SizeCensus census = formulas::run_census(args.limit, args.epsilon, opts.worker_count());
  if (!args.csv_path.empty()) {
    std::ofstream out(args.csv_path, std::ios::trunc);
    if (!out) {
      std::cerr << "cannot write " << args.csv_path << "\n";
      return kExitUsage;
    }
    write_census_csv(census, out);
  }
  std::size_t total_violations =
      census.scf_6t_violations.size() + census.t_log2_violations.size() +
      census.fcf_s2_violations.size() + census.short_min_violations.size() +
      census.pow2_t_violations.size();
  std::ostringstream text;
  text << "census 2.." << args.limit << " (epsilon " << args.epsilon << ")\n"
       << "violations: " << total_violations << "\n"
       << "#{n : S_short(n) <= (1-eps) log_4 n} = " << census.short_below_threshold
       << " (bound " << census.short_threshold_bound << ")\n"
       << "max S_FCF/(log n loglog n) = " << census.max_fcf_over_loglog << "\n"
       << "mean S_SCF = " << census.mean_scf_len
       << ", mean S_Hor = " << census.mean_horner_len << "\n";
  emit(opts, census_summary_json(census), text.str());
  return kExitOk;
}

// ----------------------------------------------------------------- graph ---

struct GraphArgs {
  std::size_t n = 4;
  std::string dot_path;
  std::string edges_path;
  std::size_t cap = 12;
};

json graph_stats_json(const GraphStats& s, const DegreeReport& report) {
  return json{{"n", s.n},
              {"vertex_count", s.vertex_count},
              {"edge_count", s.edge_count},
              {"max_degree", s.max_degree},
              {"component_count", s.component_count},
              {"addition_only_degrees", s.addition_only_degrees},
              {"f0_minus_1", report.f0_minus_1.get_str()},
              {"max_degree_vertex_is_addition_only",
               report.max_degree_vertex_is_addition_only},
              {"order_over_C_pow_n", report.order_over_C_pow_n},
              {"horner_vertex_found", s.horner_vertex_found},
              {"mul_root_reachable_from_horner", s.mul_root_reachable_from_horner}};
}

int run_graph(const GlobalOptions& opts, const GraphArgs& args) {
  Enumerator e(EnumerationConfig{args.cap, 9});
  RewriteGraph g = build_graph(args.n, e, opts.worker_count());
  GraphStats s = stats(g);
  DegreeReport report = degree_report(g, 1.019140446319);

  if (!args.dot_path.empty()) {
    std::ofstream out(args.dot_path, std::ios::trunc);
    if (!out) {
      std::cerr << "cannot write " << args.dot_path << "\n";
      return kExitUsage;
    }
    write_dot(g, out);
  }
  if (!args.edges_path.empty()) {
    std::ofstream out(args.edges_path, std::ios::trunc);
    if (!out) {
      std::cerr << "cannot write " << args.edges_path << "\n";
      return kExitUsage;
    }
    write_edge_list(g, out);
  }

  std::ostringstream text;
  text << "G_" << s.n << ": " << s.vertex_count << " vertices, " << s.edge_count
       << " edges, " << s.component_count << " components\n"
       << "max degree " << s.max_degree << "; f0(n)-1 = " << report.f0_minus_1.get_str()
       << "; addition-only degrees ";
  if (s.addition_only_degrees.empty()) {
    text << "(none)";
  } else {
    text << "min " << report.min_addition_only_degree << " max "
         << report.max_addition_only_degree;
  }
  text << "\n|G_n|/C^n = " << report.order_over_C_pow_n << "\n"
       << "mul-rooted vertex reachable from Horner vertex: "
       << (s.mul_root_reachable_from_horner ? "yes" : "no") << "\n";
  emit(opts, graph_stats_json(s, report), text.str());
  return kExitOk;
}

// ---------------------------------------------------------------- verify ---

void check(bool ok, const std::string& what) {
  if (!ok) throw VerificationFailure(what);
  std::cerr << "ok: " << what << "\n";
}

void verify_counting() {
  Enumerator e;
  FTables ft = build_f_tables(400);
  check_f_invariants(ft);
  check(true, "f = f_plus + f_times, f < 8^n, f >= f0 up to 400");
  FExpTables et = build_fexp_tables(64);
  check_fexp_invariants(et, ft);
  check(true, "f_exp invariants up to 64");
  check_f0_convolution_bound(build_f0_table(400));
  check(true, "(f0 *' f0)(n) <= 3^n up to 400");

  std::vector<CountTable> fk = build_fk_tables(3, 64, /*cross_check=*/true);
  check(true, "f_k dual-method agreement up to 64 (k <= 3)");
  CountTable f0t = build_f0_table(80);
  for (std::size_t n = 1; n <= 12; ++n) {
    if (e.count(n, arithmetic_kinds) != ft.f.at(n))
      throw VerificationFailure("enumeration != f(n) at n=" + std::to_string(n));
    if (e.count(n, exponential_kinds) != et.fexp.at(n))
      throw VerificationFailure("enumeration != f_exp(n) at n=" + std::to_string(n));
    auto by_k = e.count_by_k(n);
    for (unsigned k = 0; k < fk.size(); ++k) {
      mpz_class got = by_k.count(k) ? by_k[k] : 0;
      if (got != fk[k].at(n))
        throw VerificationFailure("enumeration by k != f_k at n=" + std::to_string(n) +
                                  " k=" + std::to_string(k));
    }
    for (const auto& [trace, count] : e.count_by_trace(n)) {
      if (count != f_trace(trace, n, std::span(fk.data(), fk.size()), f0t))
        throw VerificationFailure("trace group mismatch at n=" + std::to_string(n) +
                                  " trace=" + trace.to_string());
    }
  }
  check(true, "oracle equivalence n <= 12 (f, f_exp, f_k, traces)");

  mpz_class partition_total;
  for (std::size_t n = 1; n <= 15; ++n) {
    partition_total = 0;
    for (const auto& t : fk) partition_total += t.at(n);
    if (partition_total != ft.f.at(n))
      throw VerificationFailure("partition identity fails at n=" + std::to_string(n));
  }
  check(true, "partition identity sum_k f_k = f for n <= 15");
}

void verify_encodings(unsigned threads) {
  SizeCensus census = verify_bounds(100000, 0.5, threads);
  check(true, "bound sweep to 10^5: S_SCF <= 6t-1, t <= log2 n, S_FCF >= s2, "
              "S_short <= encoders, n >= 2^t");
  check(census.short_below_threshold <= census.short_threshold_bound,
        "counting-argument threshold bound");

  check(encode_fcf(31).formula ==
            parse_infix("(1+1)^((1+1)^(1+1))+((1+1)^((1+1)+1)+((1+1)^(1+1)+((1+1)+1)))"),
        "FCF(31) equals the displayed tree");
  check(encode_scf(2430).formula ==
            parse_infix("((1+1)*(1+(1+1))^(1+(1+1)^(1+1)))*(1+(1+1)^(1+1))"),
        "SCF(2430) equals the displayed tree");
  check(encode_horner(53376).formula ==
            parse_infix("((((1+1)+1)(1+1)^(1+1)+1)(1+1)^((1+1)^(1+1)+1)+1)"
                        "(1+1)^(((1+1)+1)(1+1)+1)"),
        "Horner(53376) equals the displayed tree");
  check(t_count(51) == 4, "t(51) = 4");

  Enumerator e;
  auto sizes = shortest_sizes(12);
  for (std::size_t n = 1; n <= 12; ++n) {
    std::size_t best = SIZE_MAX;
    e.for_each(n, exponential_kinds,
               [&](const Formula& f) { best = std::min(best, f.size()); });
    if (sizes[n] != best)
      throw VerificationFailure("DP non-optimal at n=" + std::to_string(n));
  }
  check(true, "DP optimality vs full enumeration for n <= 12");
}

void verify_graph(unsigned threads) {
  Enumerator e;
  FTables ft = build_f_tables(10);
  for (std::size_t n = 3; n <= 8; ++n) {
    RewriteGraph g = build_graph(n, e, threads);  // value preservation checked inside
    if (g.vertex_count() != ft.f.at(n).get_ui())
      throw VerificationFailure("vertex count != f(n) at n=" + std::to_string(n));
    GraphStats s = stats(g);
    (void)s;
  }
  check(true, "G_n builds for n in 3..8 with |V| = f(n), value-preserving edges");
}

void verify_constants() {
  PrecisionContext ctx{};
  SeriesTruncation trunc{};
  FTables ft = build_f_tables(400);
  FExpTables et = build_fexp_tables(400);
  CountTable f0t = build_f0_table(420);
  ConstantsReport report = compute_constants(ft, et, f0t, ctx, trunc);
  ctx.activate();

  auto close = [](const Real& a, const char* digits, const char* tol) {
    return abs(a - Real(digits)) < Real(tol);
  };
  check(close(report.rho.value, "4.076561785276046", "1e-13"),
        "rho matches the reference digits");
  check(close(report.c.value, "0.145691854699979", "1e-13"),
        "c matches the reference digits");
  check(close(report.rho_exp.value, "4.13073529514801", "1e-12"),
        "rho_exp matches the reference digits");
  check(close(report.corollary_C.value, "1.019140446319", "5e-13"),
        "C = rho/4 matches the reference digits");
  check(report.xi.error_bound < Real("1e-12"), "residual certificate below 1e-12");

  FormulaSeries arith(ft.f, trunc, 8);
  RootResult root = solve_xi(arith, ctx);
  std::vector<Real> coeffs = darboux_coefficients(arith, root, 2, ctx);
  Real truth = to_real(ft.f.at(200)) * pow(root.xi, 200ul);
  Real err1 = abs(truth - darboux_prediction(coeffs, 1, 200));
  Real err2 = abs(truth - darboux_prediction(coeffs, 2, 200));
  check(err2 * 2 <= err1, "two-term Darboux prediction halves the error at n=200");

  std::vector<CountTable> fk = build_fk_tables(2, 400, /*cross_check=*/true);
  std::vector<std::size_t> ns = {100, 200, 400};
  for (unsigned k : {0u, 1u, 2u}) {
    RatioReport r =
        asymptotic_ratio_report(k, ns, std::span(fk.data(), fk.size()), f0t, ctx);
    if (k == 0) {
      check(abs(r.rows[0].crude_ratio - 1) < Real("0.02"),
            "k=0 ratio within 2% of 1 at n=100");
    } else {
      Real prev("10");
      for (const RatioRow& row : r.rows) {
        Real gap = abs(row.crude_ratio - 1);
        if (!(gap < prev))
          throw VerificationFailure("k=" + std::to_string(k) +
                                    " ratio not approaching 1 at n=" + std::to_string(row.n));
        prev = gap;
      }
      if (k == 2) {
        // comparison of the two predictions is reported, not asserted
        const RatioRow& mid = r.rows[1];
        std::cerr << "note: at n=200, k=2 relative errors are "
                  << format_real(abs(mid.fine_ratio - 1), 4) << " (trace-resolved) vs "
                  << format_real(abs(mid.crude_ratio - 1), 4) << " (leading term)\n";
      }
    }
  }
  check(true, "asymptotic ratio portfolio");
}

int run_verify(const GlobalOptions& opts, const std::string& suite) {
  try {
    if (suite == "counting") verify_counting();
    else if (suite == "encodings") verify_encodings(opts.worker_count());
    else if (suite == "graph") verify_graph(opts.worker_count());
    else if (suite == "constants") verify_constants();
    else {
      std::cerr << "unknown suite '" << suite << "'\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  }
  std::cout << "suite '" << suite << "' passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and asymptotic counting of arithmetic formulas"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cache-dir", opts.cache_dir,
                 "table cache directory (overrides FORMULA_CACHE_DIR)");
  app.add_flag("--no-cache", opts.no_cache, "compute everything in memory");
  app.add_option("--threads", opts.threads, "worker cap (0 = hardware)");

  CountArgs count_args;
  CLI::App* count = app.add_subcommand("count", "exact sequence values");
  count->fallthrough();
  count->add_option("--seq", count_args.seq, "sequence")
      ->check(CLI::IsMember({"f", "f0", "fk", "fexp"}))
      ->capture_default_str();
  count->add_option("--n", count_args.n, "index")->required()->check(CLI::PositiveNumber);
  count->add_option("--k", count_args.k, "multiplication count (for fk)")
      ->each([&](const std::string&) { count_args.k_given = true; });

  unsigned traces_k = 0;
  CLI::App* traces = app.add_subcommand("traces", "enumerate k-traces");
  traces->fallthrough();
  traces->add_option("--k", traces_k, "trace weight")->required()
      ->check(CLI::Range(0u, 12u));

  ConstantsArgs constants_args;
  CLI::App* constants = app.add_subcommand("constants", "analytic constants");
  constants->fallthrough();
  constants->add_option("--digits", constants_args.digits, "target digits")
      ->check(CLI::Range(4u, 40u))
      ->capture_default_str();
  constants->add_option("--n-max", constants_args.n_max, "table horizon")
      ->check(CLI::Range(std::size_t(64), std::size_t(4000)))
      ->capture_default_str();
  constants->add_option("--d-max", constants_args.d_max, "outer sum cutoff")
      ->check(CLI::Range(std::size_t(16), std::size_t(2000)))
      ->capture_default_str();

  EnumerateArgs enum_args;
  CLI::App* enumerate = app.add_subcommand("enumerate", "brute-force formula streams");
  enumerate->fallthrough();
  enumerate->add_option("--n", enum_args.n, "target value")->required()
      ->check(CLI::PositiveNumber);
  enumerate->add_flag("--pow", enum_args.allow_pow, "allow exponentiation");
  enumerate->add_flag("--dump", enum_args.dump, "print one Polish formula per line");
  enumerate->add_option("--cap", enum_args.cap, "enumeration cap (n above 12 costs real time and memory)")
      ->capture_default_str();

  EncodeArgs encode_args;
  CLI::App* encode_cmd = app.add_subcommand("encode", "integer encodings");
  encode_cmd->fallthrough();
  encode_cmd->add_option("--scheme", encode_args.scheme, "encoding scheme")
      ->check(CLI::IsMember({"fcf", "scf", "horner", "short"}))
      ->capture_default_str();
  encode_cmd->add_option("--n", encode_args.n, "integer to encode")->required()
      ->check(CLI::PositiveNumber);

  CensusArgs census_args;
  CLI::App* census = app.add_subcommand("census", "encoding-length census");
  census->fallthrough();
  census->add_option("--limit", census_args.limit, "sweep bound")
      ->check(CLI::Range(std::size_t(2), std::size_t(1) << 20))
      ->capture_default_str();
  census->add_option("--epsilon", census_args.epsilon, "threshold parameter")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  census->add_option("--csv", census_args.csv_path, "write per-n rows to this file");

  GraphArgs graph_args;
  CLI::App* graph = app.add_subcommand("graph", "rewrite graph G_n");
  graph->fallthrough();
  graph->add_option("--n", graph_args.n, "target value")->required()
      ->check(CLI::PositiveNumber);
  graph->add_option("--dot", graph_args.dot_path, "write DOT to this file");
  graph->add_option("--edges", graph_args.edges_path, "write edge list to this file");
  graph->add_option("--cap", graph_args.cap, "enumeration cap")->capture_default_str();

  std::string verify_suite;
  CLI::App* verify = app.add_subcommand("verify", "module invariant suites");
  verify->fallthrough();
  verify->add_option("--suite", verify_suite, "which suite")->required()
      ->check(CLI::IsMember({"counting", "encodings", "graph", "constants"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (count->parsed()) return run_count(opts, count_args);
    if (traces->parsed()) return run_traces(opts, traces_k);
    if (constants->parsed()) return run_constants(opts, constants_args);
    if (enumerate->parsed()) return run_enumerate(opts, enum_args);
    if (encode_cmd->parsed()) return run_encode(opts, encode_args);
    if (census->parsed()) return run_census(opts, census_args);
    if (graph->parsed()) return run_graph(opts, graph_args);
    if (verify->parsed()) return run_verify(opts, verify_suite);
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << " (raise --cap explicitly)\n";
    return kExitUsage;
  } catch (const CacheValidationError& e) {
    std::cerr << "cache invalid: " << e.what() << "\nDelete the cache directory or pass "
              << "--no-cache.\n";
    return kExitVerification;
  } catch (const ChecksumMismatch& e) {
    std::cerr << "cache invalid: " << e.what() << "\nDelete the cache directory or pass "
              << "--no-cache.\n";
    return kExitVerification;
  } catch (const FormatError& e) {
    std::cerr << "cache invalid: " << e.what() << "\nDelete the cache directory or pass "
              << "--no-cache.\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitUsage;
}
