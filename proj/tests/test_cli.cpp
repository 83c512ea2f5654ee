#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "vdwcp/crossover.hpp"
#include "vdwcp/hydrogen_spectral.hpp"
#include "vdwcp/io/csv.hpp"

using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

// runs the installed binary through /bin/sh, stdout captured, stderr dropped
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(VDWCP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

vdwcp::Table as_table(const std::string& text) {
  std::istringstream is(text);
  return vdwcp::read_csv(is);
}

}  // namespace

TEST_CASE("help and argument errors") {
  auto help = run_cli("--help");
  CHECK(help.status == 0);
  CHECK_THAT(help.out, ContainsSubstring("spectrum"));
  CHECK_THAT(help.out, ContainsSubstring("crossover"));

  CHECK(run_cli("spectrum --no-such-flag").status == 2);
  CHECK(run_cli("").status == 2);                      // no subcommand
  CHECK(run_cli("regime --gamma 1 --r 1").status == 2);  // missing --alpha
  CHECK(run_cli("--format yaml spectrum").status == 2);
  CHECK(run_cli("kernels").status == 2);  // --selftest is required
}

TEST_CASE("spectrum emits a closed table") {
  auto res = run_cli("spectrum --basis-n 20");
  REQUIRE(res.status == 0);
  auto t = as_table(res.out);
  CHECK(t.columns == std::vector<std::string>{"level", "energy", "strength"});
  REQUIRE(t.rows.size() == 20);
  double s = 0.0, se = 0.0;
  for (const auto& row : t.rows) {
    CHECK(row[1] >= 0.375);
    s += row[2];
    se += row[2] * row[1];
  }
  CHECK(s == Catch::Approx(1.0).margin(1e-10));
  CHECK(se == Catch::Approx(0.5).margin(1e-10));
}

TEST_CASE("polarizability grid forms") {
  auto res = run_cli("polarizability --u-grid 0:2:5 --basis-n 30");
  REQUIRE(res.status == 0);
  auto t = as_table(res.out);
  CHECK(t.columns == std::vector<std::string>{"u", "f", "alpha_iu"});
  REQUIRE(t.rows.size() == 5);
  CHECK(t.rows[0][0] == 0.0);
  CHECK(t.rows[4][0] == 2.0);
  CHECK(t.rows[0][1] == Catch::Approx(2.25).margin(1e-9));   // f(0) = 9/4
  CHECK(t.rows[0][2] == Catch::Approx(4.5).margin(1e-9));    // alpha(0)

  auto listed = run_cli("polarizability --u-grid 0.5,1.5 --basis-n 30");
  REQUIRE(listed.status == 0);
  CHECK(as_table(listed.out).rows.size() == 2);

  CHECK(run_cli("polarizability --u-grid 0:bad:3").status == 2);
}

TEST_CASE("crossover with zero points is a documented header-only success") {
  auto res = run_cli("crossover --r-min 1 --r-max 10 --points 0 --basis-n 30");
  REQUIRE(res.status == 0);
  auto t = as_table(res.out);
  CHECK_FALSE(t.columns.empty());
  CHECK(t.rows.empty());

  auto few = run_cli("crossover --r-min 0.5 --r-max 50 --points 4 --basis-n 30");
  REQUIRE(few.status == 0);
  auto ft = as_table(few.out);
  REQUIRE(ft.rows.size() == 4);
  CHECK(ft.rows.front()[0] == Catch::Approx(0.5).margin(1e-12));
  CHECK(ft.rows.back()[0] == Catch::Approx(50.0).margin(1e-10));
}

TEST_CASE("regime dispatch and failure modes") {
  // dispersion branch needs no tabulated constants
  auto disp = run_cli("regime --alpha 0.3 --gamma 1.5 --r 2.0");
  REQUIRE(disp.status == 0);
  auto t = as_table(disp.out);
  REQUIRE(t.rows.size() == 1);
  vdwcp::BasisConfig bc;
  bc.n = 80;
  auto spec = vdwcp::build_dipole_spectrum(bc);
  double a_vw = vdwcp::vdw_coefficient(spec, vdwcp::QuadratureSettings{});
  double expect = -std::pow(0.3, 5.0) * a_vw / 64.0;
  CHECK(t.rows[0][3] == Catch::Approx(expect).epsilon(1e-12));

  // the two-atom bound-state branch needs data that was not supplied
  CHECK(run_cli("regime --alpha 0.1 --gamma 1 --r 1.4").status == 2);
  CHECK(run_cli("regime --alpha 1.5 --gamma 2 --r 1").status == 2);
}

TEST_CASE("config file supplies regime data and flags take precedence") {
  const char* table_path = "/tmp/vdwcp_cli_e2r.csv";
  {
    std::ofstream f(table_path);
    f << "R,E\n1,-1.124538\n1.4,-1.174475\n";
  }
  const char* cfg_path = "/tmp/vdwcp_cli_run.cfg";
  {
    std::ofstream f(cfg_path);
    f << "# run file\nbasis.n = 12\nregime.a0 = 0.18\nregime.e2r_file = "
      << table_path << "\n";
  }

  auto res = run_cli(std::string("--config ") + cfg_path +
                     " regime --alpha 0.1 --gamma 1 --r 1.4");
  REQUIRE(res.status == 0);
  double expect = 0.1 * 0.1 * (-1.174475 - 2.0 * 0.18);
  CHECK(as_table(res.out).rows[0][3] == Catch::Approx(expect).margin(1e-15));

  // basis.n from the file shapes the spectrum
  auto spec12 = run_cli(std::string("--config ") + cfg_path + " spectrum");
  REQUIRE(spec12.status == 0);
  CHECK(as_table(spec12.out).rows.size() == 12);

  // an explicit flag beats the file
  auto spec9 = run_cli(std::string("--config ") + cfg_path +
                       " --basis-n 9 spectrum");
  REQUIRE(spec9.status == 0);
  CHECK(as_table(spec9.out).rows.size() == 9);

  const char* bad_path = "/tmp/vdwcp_cli_bad.cfg";
  {
    std::ofstream f(bad_path);
    f << "basis.m = 12\n";  // typo: unknown key
  }
  CHECK(run_cli(std::string("--config ") + bad_path + " spectrum").status == 2);
  std::remove(table_path);
  std::remove(cfg_path);
  std::remove(bad_path);
}

TEST_CASE("fixed seed reproduces action sampling byte for byte") {
  const std::string cmd =
      "mc-action --alpha 0.5 --tau 0.25 --dt 0.02 --paths 40 --seed 42";
  auto first = run_cli(cmd);
  REQUIRE(first.status == 0);
  auto second = run_cli(cmd);
  REQUIRE(second.status == 0);
  CHECK(first.out == second.out);

  auto t = as_table(first.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.columns.size() == 15);
  CHECK(t.columns[0] == "alpha");
  CHECK(t.columns[7] == "variance");
  CHECK(t.rows[0][4] == 40.0);

  auto other = run_cli(
      "mc-action --alpha 0.5 --tau 0.25 --dt 0.02 --paths 40 --seed 43");
  REQUIRE(other.status == 0);
  CHECK(other.out != first.out);
}

TEST_CASE("json output carries the schema marker") {
  auto res = run_cli("--format json --basis-n 30 coefficients");
  REQUIRE(res.status == 0);
  CHECK_THAT(res.out, ContainsSubstring("\"schema\": 1"));
  CHECK_THAT(res.out, ContainsSubstring("\"command\": \"coefficients\""));
  CHECK_THAT(res.out, ContainsSubstring("a_vw_closed"));
}

TEST_CASE("output file redirection") {
  const char* out_path = "/tmp/vdwcp_cli_out.csv";
  std::remove(out_path);
  auto res = run_cli(std::string("spectrum --basis-n 5 --output ") + out_path);
  REQUIRE(res.status == 0);
  CHECK(res.out.empty());
  std::ifstream f(out_path);
  REQUIRE(f.good());
  auto t = vdwcp::read_csv(f);
  CHECK(t.rows.size() == 5);
  std::remove(out_path);
}

TEST_CASE("invalid thread override is rejected") {
  std::string cmd = std::string("VDWCP_THREADS=abc ") + VDWCP_CLI_PATH +
                    " mc-action --alpha 0.5 --tau 0.25 --dt 0.02 --paths 10 "
                    "--seed 1 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (std::fread(buf, 1, sizeof buf, pipe) > 0) {
  }
  int rc = pclose(pipe);
  CHECK((WIFEXITED(rc) ? WEXITSTATUS(rc) : -1) == 2);
}
