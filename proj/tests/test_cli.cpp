#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "plfg/io.hpp"

using namespace plfg;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  auto d = fs::temp_directory_path() / "plfg-cli-test";
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

int run(const std::string& args) {
  int rc = std::system(("./plfg " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("cayley table parses") {
  // C_2
  auto G = parse_group_text("cayley\n2\n0 1\n1 0\n");
  CHECK(G.order() == 2);
  CHECK(G.mul(1, 1) == 0);
  // comments and arbitrary line breaks
  auto K = parse_group_text(
      "# klein four\ncayley 4\n0 1 2 3\n1 0 3 2\n2 3\n0 1\n3 2 1 0\n");
  CHECK(K.order() == 4);
  CHECK(K.element_order(3) == 2);
}

TEST_CASE("cayley errors carry line numbers and name the cell") {
  CHECK_THROWS_AS(parse_group_text(""), ParseError);
  CHECK_THROWS_AS(parse_group_text("magma\n2\n"), ParseError);
  try {
    parse_group_text("cayley\n2\n0 1\n1 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("cell (1,1)") != std::string::npos);
  }
  try {
    parse_group_text("cayley\n2\n0 1\n1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("table ends") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_group_text("cayley\n2\n0 1\n1 0\n7\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("cayley\n2\n0 x\n1 0\n"), ParseError);
  // a valid table whose identity is not element 0 fails group validation
  CHECK_THROWS_AS(parse_group_text("cayley\n2\n1 0\n0 1\n"),
                  InvalidGroupTable);
}

TEST_CASE("perm input parses") {
  auto S3 = parse_group_text("perm\n3\n1 0 2\n1 2 0\n");
  CHECK(S3.order() == 6);
  try {
    parse_group_text("perm\n3\n1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("expected 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_group_text("perm\n3\n1 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("perm\n3\n1 0 5\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("perm\n3\n"), ParseError);
}

TEST_CASE("content hash matches the FNV-1a vectors") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("ab") != content_hash("ba"));
}

TEST_CASE("report helpers") {
  Json rep = new_report("info");
  CHECK(rep["format_version"] == kReportFormatVersion);
  CHECK(rep["verb"] == "info");
  rep["timing"] = Json{{"total_ms", 12}};
  CHECK(report_text(rep).back() == '\n');
  Json stripped = without_timing(rep);
  CHECK(!stripped.contains("timing"));
  CHECK(rep.contains("timing"));
}

TEST_CASE("report cache stores and reloads, lock released") {
  auto dir = scratch() / "cache";
  fs::remove_all(dir);
  ReportCache cache(dir.string());
  CHECK(!cache.load("k").has_value());
  Json v = new_report("info");
  v["group_order"] = 6;
  cache.store("k", v);
  CHECK(!fs::exists(dir / "lock"));
  auto back = cache.load("k");
  REQUIRE(back.has_value());
  CHECK(*back == v);
}

TEST_CASE("cli exit codes") {
  REQUIRE(fs::exists("./plfg"));
  auto dir = scratch();
  write_file(dir / "s3.txt", "perm\n3\n1 0 2\n1 2 0\n");
  write_file(dir / "bad.txt", "cayley\n2\n0 1\n1 2\n");
  std::string g = (dir / "s3.txt").string();
  std::string cachedir = " --cache-dir " + (dir / "cc").string();
  CHECK(run("info --group " + g + cachedir) == 0);
  CHECK(run("decompose --group " + g + " --theorem A --dim 4" + cachedir) == 0);
  CHECK(run("decompose --group " + g + " --theorem B --dim 4" + cachedir) == 0);
  CHECK(run("info --group " + (dir / "bad.txt").string() + cachedir) == 2);
  CHECK(run("decompose --group " + g + " --theorem A --p 4" + cachedir) == 2);
  CHECK(run("decompose --group " + g + " --theorem A --budget 1" + cachedir) ==
        3);
  CHECK(run("selftest") == 0);
}

TEST_CASE("cli reports are deterministic modulo timing") {
  REQUIRE(fs::exists("./plfg"));
  auto dir = scratch();
  write_file(dir / "s3.txt", "perm\n3\n1 0 2\n1 2 0\n");
  std::string g = (dir / "s3.txt").string();
  std::string common = "decompose --group " + g +
                       " --theorem A --dim 4 --cache-dir " +
                       (dir / "cc2").string() + " --report ";
  CHECK(run(common + (dir / "r1.json").string()) == 0);
  CHECK(run(common + (dir / "r2.json").string()) == 0);
  std::ifstream i1(dir / "r1.json"), i2(dir / "r2.json");
  Json r1 = Json::parse(i1), r2 = Json::parse(i2);
  r1.erase("cache");
  r2.erase("cache");  // first run stores, second verifies against the cache
  CHECK(without_timing(r1) == without_timing(r2));
  CHECK(r1["betti_source"] == Json::array({1, 1, 1, 1}));
}
