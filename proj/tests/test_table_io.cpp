#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "formulas/counting.hpp"
#include "formulas/sha256.hpp"
#include "formulas/table_io.hpp"

using namespace formulas;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("formulas-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
}

}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("save/load round trip") {
  TempDir tmp;
  FTables t = build_f_tables(50);
  fs::path p = tmp.path / "f.seq";
  save_table(t.f, p);
  CountTable loaded = load_table(p);
  CHECK(loaded.name() == "f");
  CHECK(loaded.max_n() == 50);
  for (std::size_t n = 1; n <= 50; ++n) CHECK(loaded.at(n) == t.f.at(n));
}

TEST_CASE("truncated file fails as FormatError") {
  TempDir tmp;
  fs::path p = tmp.path / "f.seq";
  save_table(build_f_tables(20).f, p);
  std::string text = slurp(p);
  spit(p, text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_table(p), FormatError);
}

TEST_CASE("bit flip fails as ChecksumMismatch") {
  TempDir tmp;
  fs::path p = tmp.path / "f.seq";
  save_table(build_f_tables(20).f, p);
  std::string text = slurp(p);
  std::size_t pos = text.find("\n4 6\n");
  REQUIRE(pos != std::string::npos);
  text[pos + 3] = '7';
  spit(p, text);
  CHECK_THROWS_AS(load_table(p), ChecksumMismatch);
}

TEST_CASE("tampered value with a fixed-up checksum fails semantic validation") {
  TempDir tmp;
  TableCache cache(tmp.path);
  cache.f_tables(30);  // populate

  fs::path p = tmp.path / "f.seq";
  std::string text = slurp(p);
  std::size_t body_end = text.rfind("# sha256=");
  REQUIRE(body_end != std::string::npos);
  std::string body = text.substr(0, body_end);
  std::size_t pos = body.find("\n4 6\n");
  REQUIRE(pos != std::string::npos);
  body.replace(pos, 5, "\n4 7\n");  // f(4) = 7 is wrong
  spit(p, body + "# sha256=" + sha256_hex(body) + "\n");

  CHECK_NOTHROW(load_table(p));  // checksum is now consistent
  CHECK_THROWS_AS(cache.f_tables(30), CacheValidationError);
}

TEST_CASE("cache round trip and prefix reuse") {
  TempDir tmp;
  TableCache cache(tmp.path);
  FTables first = cache.f_tables(40);
  CHECK(fs::exists(tmp.path / "f.seq"));
  // a smaller request is served from the larger cached file
  FTables prefix = cache.f_tables(20);
  CHECK(prefix.f.max_n() == 20);
  for (std::size_t n = 1; n <= 20; ++n) CHECK(prefix.f.at(n) == first.f.at(n));

  FExpTables e = cache.fexp_tables(30);
  CHECK(e.fexp.at(4) == 7);
  FExpTables e2 = cache.fexp_tables(30);
  CHECK(e2.fexp.at(30) == e.fexp.at(30));

  CountTable f0t = cache.f0_table(25);
  CHECK(f0t.at(10) == 4862);
}

TEST_CASE("cache directory resolution order") {
  CHECK(default_cache_dir(std::string("/tmp/explicit")) == fs::path("/tmp/explicit"));
  ::setenv("FORMULA_CACHE_DIR", "/tmp/from-env", 1);
  CHECK(default_cache_dir() == fs::path("/tmp/from-env"));
  ::unsetenv("FORMULA_CACHE_DIR");
}
