#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "vdwcp/errors.hpp"
#include "vdwcp/io/csv.hpp"
#include "vdwcp/io/run_config.hpp"

using namespace vdwcp;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("full-precision formatting survives a read back") {
  const double cases[] = {0.0,
                          -0.0,
                          0.1,
                          1.0 / 3.0,
                          -17.25,
                          6.02214076e23,
                          3.14159265358979323846,
                          1e-300,
                          1e308,
                          5e-324,
                          -2.2250738585072014e-308};
  for (double v : cases) {
    double back = parse_double(format_full(v));
    INFO("value " << format_full(v));
    CHECK(back == v);
    CHECK(std::signbit(back) == std::signbit(v));
  }
}

TEST_CASE("strict number parsing") {
  CHECK(parse_double("1.5") == 1.5);
  CHECK(parse_double("  -2e3") == -2000.0);  // leading space is fine
  CHECK(parse_double("7 ") == 7.0);          // so is trailing space
  CHECK_THROWS_AS(parse_double(""), ConfigError);
  CHECK_THROWS_AS(parse_double("abc"), ConfigError);
  CHECK_THROWS_AS(parse_double("1.5 tail"), ConfigError);
  CHECK_THROWS_WITH(parse_double("12f"), ContainsSubstring("not a number"));
}

TEST_CASE("field splitting keeps empty cells") {
  auto f = split_fields("a,b,,c");
  REQUIRE(f.size() == 4);
  CHECK(f[0] == "a");
  CHECK(f[2] == "");
  CHECK(f[3] == "c");
  CHECK(split_fields("x,").size() == 2);
  CHECK(split_fields("").size() == 1);
  CHECK(split_fields("a\r,b")[0] == "a");
}

TEST_CASE("csv write and read are inverse up to byte identity") {
  Table t;
  t.notes = {"sample annotation", "second line"};
  t.columns = {"r", "value", "scaled"};
  t.rows = {{0.1, 1.0 / 3.0, -0.0}, {1e-300, 6.02214076e23, 2.5}};

  std::string first = to_csv_string(t);
  std::istringstream is(first);
  Table back = read_csv(is);
  CHECK(back.notes == t.notes);
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == 2);
  std::string second = to_csv_string(back);
  CHECK(first == second);
}

TEST_CASE("csv reader tolerates blank lines and carriage returns") {
  std::istringstream is("# note\r\na,b\r\n\r\n1,2\r\n# trailing comment\n3,4\n");
  Table t = read_csv(is);
  CHECK(t.notes == std::vector<std::string>{"note"});
  CHECK(t.columns == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == 4.0);
}

TEST_CASE("csv structural errors") {
  {
    std::istringstream is("a,b\n1,2,3\n");
    CHECK_THROWS_WITH(read_csv(is), ContainsSubstring("row width"));
  }
  {
    std::istringstream is("# only a note\n");
    CHECK_THROWS_WITH(read_csv(is), ContainsSubstring("no header"));
  }
  {
    std::istringstream is("a,b\n1,oops\n");
    CHECK_THROWS_AS(read_csv(is), ConfigError);
  }
  Table t;
  CHECK_THROWS_WITH(t.validate(), ContainsSubstring("no columns"));
  t.columns = {"x"};
  t.rows = {{1.0, 2.0}};
  CHECK_THROWS_WITH(t.validate(), ContainsSubstring("row width"));
}

TEST_CASE("run config grammar") {
  auto rc = RunConfig::from_string(
      "# leading comment\n"
      "\n"
      "basis.n = 40\n"
      "profile.kind=gaussian\n"
      "  regime.e2r_file =  table = with = equals.csv  \n"
      "quad.rel_tol = 2.5e-11\n");
  CHECK(rc.has("basis.n"));
  CHECK_FALSE(rc.has("basis.lambda"));
  CHECK(rc.integer("basis.n", 0) == 40);
  CHECK(rc.text("profile.kind", "bump") == "gaussian");
  // the value keeps everything after the first '='
  CHECK(rc.text("regime.e2r_file", "") == "table = with = equals.csv");
  CHECK(rc.number("quad.rel_tol", 0.0) == 2.5e-11);
  CHECK(rc.number("missing", 7.5) == 7.5);
  CHECK(rc.integer("missing", -3) == -3);
  CHECK(rc.text("missing", "dflt") == "dflt");
  CHECK(rc.entries().size() == 4);

  CHECK_NOTHROW(rc.allow_only(
      {"basis.n", "profile.kind", "regime.e2r_file", "quad.rel_tol"}));
  CHECK_THROWS_WITH(rc.allow_only({"basis.n"}),
                    ContainsSubstring("unknown config key"));
}

TEST_CASE("run config rejects malformed input") {
  CHECK_THROWS_WITH(RunConfig::from_string("basis.n = 1\nbasis.n = 2\n"),
                    ContainsSubstring("duplicate config key"));
  CHECK_THROWS_WITH(RunConfig::from_string("fine = 1\nnot a pair\n"),
                    ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(RunConfig::from_string("= orphan value\n"),
                    ContainsSubstring("empty key"));
  auto rc = RunConfig::from_string("k = not_numeric\n");
  CHECK_THROWS_WITH(rc.number("k", 0.0), ContainsSubstring("not a number"));
  CHECK_THROWS_WITH(rc.integer("k", 0), ContainsSubstring("not an integer"));
  auto frac = RunConfig::from_string("n = 2.5\n");
  CHECK_THROWS_AS(frac.integer("n", 0), ConfigError);
  CHECK_THROWS_WITH(RunConfig::from_file("/nonexistent/path/run.cfg"),
                    ContainsSubstring("cannot open"));
}
