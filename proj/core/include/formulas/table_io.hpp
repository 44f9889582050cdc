#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "formulas/counting.hpp"

namespace formulas {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ChecksumMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Loaded values break a known cross-table identity (tampered cache).
struct CacheValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line format:
///   # sequence=<name> max_n=<N>
///   <n> <decimal value>          (one line per n, ascending from 1)
///   # sha256=<hex of everything above>
void save_table(const CountTable& table, const std::filesystem::path& path);
CountTable load_table(const std::filesystem::path& path);

/// Directory, in order: explicit override, FORMULA_CACHE_DIR, then
/// $HOME/.cache/formulas, then ./.formula-cache.
std::filesystem::path default_cache_dir(const std::optional<std::string>& override_dir = {});

/// Disk-backed access to the counting tables. Loads when a cached file covers
/// the requested range (validating checksums and cross-table identities on a
/// sample), rebuilds and saves otherwise. With `enabled == false` everything
/// is computed in memory.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir, bool enabled = true)
      : dir_(std::move(dir)), enabled_(enabled) {}

  FTables f_tables(std::size_t max_n);
  FExpTables fexp_tables(std::size_t max_n);
  CountTable f0_table(std::size_t max_n);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::optional<CountTable> try_load(const std::string& name, std::size_t max_n);
  void store(const CountTable& table);

  std::filesystem::path dir_;
  bool enabled_;
};

}  // namespace formulas
