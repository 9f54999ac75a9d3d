#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "jordan/errors.hpp"

using namespace jordan;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("jordan_cli_test_" + name); }

}  // namespace

TEST_CASE("parse_coefficients") {
  const Vector v = cli::parse_coefficients({"1,0,2i,0,-5,0"});
  REQUIRE(v.size() == 3);
  CHECK(v[0] == Complex(1, 0));
  CHECK(v[1] == Complex(0, 2));
  CHECK(v[2] == Complex(-5, 0));

  const Vector w = cli::parse_coefficients({"1.5-3i,1", "-i,+2e-1"});
  CHECK(w[0] == Complex(1.5, -2.0));
  CHECK(w[1] == Complex(0, -1) + Complex(0, 0.2));

  const fs::path file = scratch("element.txt");
  std::ofstream(file) << "1 0\n0 1\n";
  const Vector f = cli::parse_coefficients({"@" + file.string()});
  CHECK(f[1] == Complex(0, 1));

  CHECK_THROWS_AS(cli::parse_coefficients({"1,0,2"}), ParseError);
  CHECK_THROWS_AS(cli::parse_coefficients({"1,x"}), ParseError);
  try {
    cli::parse_coefficients({"1,0,2q,0"});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("parse_grid") {
  const cli::GridSpec g = cli::parse_grid("16:4096:2");
  CHECK(g.min == 16);
  CHECK(g.max == 4096);
  CHECK(g.ratio == 2);
  for (const char* bad : {"1:100:2", "16:8:2", "16:64:1", "16:64", "a:b:c", "16::2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(cli::parse_grid(bad), ParseError);
  }
}

TEST_CASE("spectrum subcommand") {
  const Run r = invoke({"spectrum", "--algebra", "fn:3", "--element", "1,0,2i,0,-5,0"});
  CHECK(r.code == 0);
  CHECK(r.out == "1,0\n0,2\n-5,0\n");

  const Run unit = invoke({"spectrum", "--algebra", "matrix:2", "--element", "1,0,0,0,0,0,1,0"});
  CHECK(unit.out == "1,0\n");

  CHECK(invoke({"spectrum", "--algebra", "fn:3", "--element", "1,0"}).code == 2);
  CHECK(invoke({"spectrum", "--algebra", "fn:3", "--element", "1,0,nan,0,1,0"}).code == 2);
  CHECK(invoke({"spectrum", "--algebra", "fn:3"}).code == 2);
}

TEST_CASE("validate subcommand") {
  const Run r = invoke({"validate", "--algebra", "spin:4"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.front() == "invariant,max_residual,tolerance,result");
  CHECK(rows.size() == 7);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].ends_with(",PASS"));

  const Run m = invoke({"validate", "--algebra", "matrix:3", "--samples", "5"});
  CHECK(m.code == 0);
  CHECK(m.out.find("special_product") != std::string::npos);

  const Run strict = invoke({"validate", "--algebra", "fn:2", "--tol", "unit=-1"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("unit,0,-1,FAIL") != std::string::npos);

  CHECK(invoke({"validate", "--algebra", "matrix:0"}).code == 2);
  CHECK(invoke({"validate", "--algebra", "sum:fn:2+"}).code == 2);
  CHECK(invoke({"validate", "--algebra", "fn:2", "--samples", "0"}).code == 2);
  CHECK(invoke({"validate", "--algebra", "fn:2", "--tol", "unit"}).code == 2);
}

TEST_CASE("trotter subcommand") {
  const fs::path csv = scratch("r.csv");
  const std::vector<std::string> args = {"trotter", "--algebra", "matrix:2", "--formula", "U_single",
                                         "--n-grid", "16:4096:2", "--seed", "7", "--out", csv.string()};
  const Run r = invoke(args);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string first = slurp(csv);
  CHECK(first.find('\r') == std::string::npos);
  const auto rows = lines(first);
  REQUIRE(rows.size() >= 11);
  CHECK(rows[0] == "formula,algebra,seed,n,error");
  int data = 0;
  for (const auto& row : rows) {
    if (row.starts_with("U_single,matrix:2,7,")) ++data;
  }
  CHECK(data == 9);
  CHECK(rows[1].starts_with("U_single,matrix:2,7,16,"));
  CHECK(rows[9].starts_with("U_single,matrix:2,7,4096,"));
  CHECK(rows[10].starts_with("# fitted_slope,"));

  // Same seed, same bytes, whatever the worker count.
  CHECK(invoke(args).code == 0);
  CHECK(slurp(csv) == first);
  setenv("JORDAN_THREADS", "3", 1);
  CHECK(invoke(args).code == 0);
  unsetenv("JORDAN_THREADS");
  CHECK(slurp(csv) == first);

  const Run other = invoke({"trotter", "--algebra", "matrix:2", "--formula", "U_single", "--seed", "8"});
  CHECK(other.out != first);

  const Run general = invoke({"trotter", "--algebra", "spin:2", "--formula", "general", "--n-grid", "16:1024:2"});
  CHECK(general.code == 0);
  CHECK(general.out.starts_with("formula,algebra,seed,n,error\ngeneral,spin:2,0,16,"));

  const Run commuting = invoke({"trotter", "--algebra", "fn:3", "--formula", "jordan_product"});
  CHECK(commuting.code == 0);
  CHECK(commuting.out.find("# fitted_slope,undefined") != std::string::npos);

  CHECK(invoke({"trotter", "--algebra", "matrix:2"}).code == 2);
  CHECK(invoke({"trotter", "--algebra", "matrix:2", "--formula", "sideways"}).code == 2);
  CHECK(invoke({"trotter", "--algebra", "matrix:2", "--formula", "U_single", "--n-grid", "16:64:2"}).code == 2);
  CHECK(invoke({"trotter", "--algebra", "spin:2", "--formula", "associative_identity"}).code == 2);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = scratch("exp.toml");
  std::ofstream(cfg) << "algebra = \"spin:3\"\nformula = \"U_pair\"\nn-grid = \"8:512:2\"\nseed = 3\n";
  const Run from_file = invoke({"trotter", "--config", cfg.string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out.find("U_pair,spin:3,3,8,") != std::string::npos);
  const Run overridden = invoke({"trotter", "--config", cfg.string(), "--seed", "4"});
  CHECK(overridden.out.find("U_pair,spin:3,4,8,") != std::string::npos);
}

TEST_CASE("functional subcommand") {
  const Run ok = invoke({"functional", "--algebra", "fn:4", "--functional", "char:2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.ends_with("result,PASS\n"));

  const Run block = invoke({"functional", "--algebra", "sum:fn:2+matrix:2", "--functional", "char:0"});
  CHECK(block.code == 0);

  const Run flipped = invoke({"functional", "--algebra", "fn:4", "--functional", "negchar:1"});
  CHECK(flipped.code == 0);
  CHECK(flipped.out.find("# unit_sign,-1") != std::string::npos);

  const Run trace = invoke({"functional", "--algebra", "matrix:2", "--functional", "trace"});
  CHECK(trace.code == 1);
  CHECK(trace.out.ends_with("result,FAIL\n"));
  CHECK(invoke({"functional", "--algebra", "fn:2", "--functional", "sqchar:0"}).code == 1);

  CHECK(invoke({"functional", "--algebra", "fn:2", "--functional", "char:5"}).code == 2);
  CHECK(invoke({"functional", "--algebra", "fn:2", "--functional", "cube:0"}).code == 2);
  CHECK(invoke({"functional", "--algebra", "matrix:2", "--functional", "char:0"}).code == 2);
  CHECK(invoke({"functional", "--algebra", "fn:2"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--algebra", "fn:2"}).code == 2);
  CHECK(invoke({"explode", "--algebra", "fn:2"}).code == 2);
  CHECK(invoke({"validate", "--algebra", "fn:2", "--seed", "x"}).code == 2);
  const Run help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("trotter") != std::string::npos);
}
