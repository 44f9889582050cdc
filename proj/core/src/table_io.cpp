#include "formulas/table_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "formulas/sha256.hpp"

namespace formulas {

namespace {

std::string table_body(const CountTable& table) {
  std::ostringstream body;
  body << "# sequence=" << table.name() << " max_n=" << table.max_n() << "\n";
  for (std::size_t n = 1; n <= table.max_n(); ++n)
    body << n << " " << table.at(n).get_str() << "\n";
  return body.str();
}

// Prefix copy of a table, so an oversized cache file serves smaller requests.
CountTable truncated(const CountTable& t, std::size_t max_n) {
  std::vector<mpz_class> v(t.values().begin(), t.values().begin() + max_n);
  return CountTable(t.name(), std::move(v));
}

}  // namespace

void save_table(const CountTable& table, const std::filesystem::path& path) {
  std::string body = table_body(table);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body << "# sha256=" << sha256_hex(body) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

CountTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty table file: " + path.string());

  auto parse_size = [&](const std::string& s) -> std::size_t {
    try {
      std::size_t pos = 0;
      std::size_t value = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return value;
    } catch (const std::exception&) {
      throw FormatError("bad number '" + s + "' in " + path.string());
    }
  };

  std::string name;
  std::size_t max_n = 0;
  {
    std::istringstream header(line);
    std::string hash_mark, seq_field, max_field;
    header >> hash_mark >> seq_field >> max_field;
    if (hash_mark != "#" || seq_field.rfind("sequence=", 0) != 0 ||
        max_field.rfind("max_n=", 0) != 0)
      throw FormatError("bad header in " + path.string());
    name = seq_field.substr(9);
    max_n = parse_size(max_field.substr(6));
  }

  std::string body = line + "\n";
  std::vector<mpz_class> values;
  values.reserve(max_n);
  std::string checksum_line;
  while (std::getline(in, line)) {
    if (line.rfind("# sha256=", 0) == 0) {
      checksum_line = line;
      break;
    }
    body += line;
    body += "\n";
    std::istringstream row(line);
    std::string n_str, v_str;
    if (!(row >> n_str >> v_str)) throw FormatError("bad row in " + path.string());
    std::size_t n = parse_size(n_str);
    if (n != values.size() + 1)
      throw FormatError("non-contiguous index " + n_str + " in " + path.string());
    mpz_class v;
    if (v.set_str(v_str, 10) != 0 || v < 0)
      throw FormatError("bad value at n=" + n_str + " in " + path.string());
    values.push_back(std::move(v));
  }
  if (checksum_line.empty()) throw FormatError("missing checksum line in " + path.string());
  if (values.size() != max_n)
    throw FormatError("row count disagrees with max_n in " + path.string());
  std::string expected = checksum_line.substr(std::string("# sha256=").size());
  if (expected != sha256_hex(body))
    throw ChecksumMismatch("checksum mismatch in " + path.string());
  return CountTable(name, std::move(values));
}

std::filesystem::path default_cache_dir(const std::optional<std::string>& override_dir) {
  if (override_dir && !override_dir->empty()) return *override_dir;
  if (const char* env = std::getenv("FORMULA_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "formulas";
  return std::filesystem::path(".formula-cache");
}

std::optional<CountTable> TableCache::try_load(const std::string& name, std::size_t max_n) {
  if (!enabled_) return std::nullopt;
  std::filesystem::path path = dir_ / (name + ".seq");
  if (!std::filesystem::exists(path)) return std::nullopt;
  CountTable t = load_table(path);
  if (t.name() != name || t.max_n() < max_n) return std::nullopt;
  if (t.max_n() > max_n) return truncated(t, max_n);
  return t;
}

void TableCache::store(const CountTable& table) {
  if (!enabled_) return;
  save_table(table, dir_ / (table.name() + ".seq"));
}

FTables TableCache::f_tables(std::size_t max_n) {
  auto f = try_load("f", max_n);
  auto fp = try_load("f_plus", max_n);
  auto fx = try_load("f_times", max_n);
  if (f && fp && fx) {
    FTables out{std::move(*f), std::move(*fp), std::move(*fx)};
    try {
      check_f_invariants(out);
    } catch (const std::runtime_error& e) {
      throw CacheValidationError(std::string("cached f tables fail validation: ") + e.what());
    }
    return out;
  }
  FTables out = build_f_tables(max_n);
  store(out.f);
  store(out.f_plus);
  store(out.f_times);
  return out;
}

namespace {

// Sampled indices for semantic re-checks of loaded tables.
std::vector<std::size_t> sample_indices(std::size_t max_n) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= max_n && n <= 64; ++n) out.push_back(n);
  for (std::size_t n = 64 + 41; n <= max_n; n += 41) out.push_back(n);
  return out;
}

// Recompute the exponential recursion at n from the loaded prefix.
void check_fexp_sample(const FExpTables& e) {
  for (std::size_t n : sample_indices(e.fexp.max_n())) {
    if (n == 1) {
      if (e.fexp.at(1) != 1 || e.fexp_pow.at(1) != 0)
        throw CacheValidationError("cached f_exp base values wrong");
      continue;
    }
    mpz_class expect = e.fexp_pow.at(n);
    for (std::size_t h = 1; h < n; ++h) expect += e.fexp.at(n - h) * e.fexp.at(h);
    expect += proper_convolution(e.fexp, e.fexp, n);
    if (expect != e.fexp.at(n))
      throw CacheValidationError("cached f_exp fails its recursion at n=" + std::to_string(n));
  }
}

}  // namespace

FExpTables TableCache::fexp_tables(std::size_t max_n) {
  auto fe = try_load("f_exp", max_n);
  auto fpow = try_load("f_exp_pow", max_n);
  if (fe && fpow) {
    FExpTables out{std::move(*fe), std::move(*fpow)};
    check_fexp_sample(out);
    return out;
  }
  FExpTables out = build_fexp_tables(max_n);
  store(out.fexp);
  store(out.fexp_pow);
  return out;
}

CountTable TableCache::f0_table(std::size_t max_n) {
  if (auto t = try_load("f0", max_n)) {
    for (std::size_t n : sample_indices(t->max_n()))
      if (t->at(n) != f0(n))
        throw CacheValidationError("cached f0 disagrees with Catalan at n=" + std::to_string(n));
    return std::move(*t);
  }
  CountTable out = build_f0_table(max_n);
  store(out);
  return out;
}

}  // namespace formulas
