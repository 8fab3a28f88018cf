#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gpcp/cli.hpp"
#include "gpcp/errors.hpp"
#include "gpcp/io.hpp"

using namespace gpcp;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = GPCP_FIXTURE_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

bool same_problem(const GpcpProblem& a, const GpcpProblem& b) {
  const auto same_map = [](const PolyMap& f, const PolyMap& g) {
    const auto& ft = f.tuple().tensors();
    const auto& gt = g.tuple().tensors();
    if (ft.size() != gt.size() || f.constant() != g.constant()) return false;
    for (std::size_t k = 0; k < ft.size(); ++k) {
      if (!(ft[k] == gt[k])) return false;
    }
    return true;
  };
  return a.dim() == b.dim() && a.cone().kind() == b.cone().kind() && same_map(a.f(), b.f()) &&
         same_map(a.g(), b.g());
}

const char* kLcp = R"({
  "schema_version": 1, "n": 2, "m": 2, "l": 2,
  "F": {"tensors": [{"order": 2, "entries": [[[1, 1], 1.0], [[2, 2], 1.0]]}], "constant": [-1.0, -2.0]},
  "G": {"tensors": [{"order": 2, "entries": [[[1, 1], 1.0], [[2, 2], 1.0]]}]}
})";

}  // namespace

TEST_CASE("fixture files match the built-in fixtures") {
  for (const auto& name : fixtures::names()) {
    const auto loaded = load_problem(kFixtures / (name + ".json"));
    CHECK(loaded.name() == name);
    CHECK(same_problem(loaded, fixtures::by_name(name)));
  }
  CHECK_THROWS_AS(fixtures::by_name("nope"), InvalidArgument);
}

TEST_CASE("missing orders become zero tensors") {
  const auto p = problem_from_json_text(R"({
    "schema_version": 1, "n": 2, "m": 4, "l": 2,
    "F": {"tensors": [{"order": 3, "entries": [[[1, 2, 2], 2.0]]}]},
    "G": {"tensors": [{"order": 2, "entries": [[[1, 1], 1.0]]}]}
  })");
  const auto& t = p.f().tuple().tensors();
  REQUIRE(t.size() == 3);
  CHECK(t[0] == DenseTensor::zeros(4, 2));
  CHECK(t[1].at({0, 1, 1}) == 2.0);
  CHECK(t[2] == DenseTensor::zeros(2, 2));
  CHECK(p.f().constant() == Vector::Zero(2));
  CHECK(p.cone().kind() == Cone::Kind::NonnegativeOrthant);
}

TEST_CASE("validation errors name the offending entry") {
  const std::string bad = R"({
    "schema_version": 1, "n": 2, "m": 2, "l": 2,
    "F": {"tensors": [{"order": 2, "entries": [[[1, 1], 1.0], [[1, 3], 1.0]]}]},
    "G": {"tensors": []}
  })";
  try {
    problem_from_json_text(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("F.tensors[0].entries[1]") != std::string::npos);
    CHECK(std::string(e.what()).find("index 3") != std::string::npos);
  }

  CHECK_THROWS_AS(problem_from_json_text(R"({"schema_version": 2, "n": 1, "m": 2, "l": 2, "F": {"tensors": []},
                                             "G": {"tensors": []}})"),
                  ValidationError);
  CHECK_THROWS_AS(problem_from_json_text(R"({"schema_version": 1, "n": 2, "m": 3, "l": 2,
    "F": {"tensors": [{"order": 2, "entries": []}, {"order": 3, "entries": []}]}, "G": {"tensors": []}})"),
                  ValidationError);
  CHECK_THROWS_AS(problem_from_json_text(R"({"schema_version": 1, "n": 2, "m": 2, "l": 2,
    "F": {"tensors": [{"order": 2, "entries": [[[1, 1], 1.0], [[1, 1], 2.0]]}]}, "G": {"tensors": []}})"),
                  ValidationError);
  CHECK_THROWS_AS(problem_from_json_text(R"({"schema_version": 1, "n": 2, "m": 2, "l": 2,
    "F": {"tensors": []}, "G": {"tensors": []}, "cone": {"generated": [[0, 0]]}})"),
                  ValidationError);
}

TEST_CASE("parse errors report a line") {
  try {
    problem_from_json_text("{\n  \"n\": 2,\n  \"m\": ,\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), ParseError);
}

TEST_CASE("save and load round trip") {
  for (const auto& name : fixtures::names()) {
    const auto p = fixtures::by_name(name);
    const fs::path path = fs::temp_directory_path() / ("gpcp_roundtrip_" + name + ".json");
    save_problem(p, path);
    CHECK(same_problem(load_problem(path), p));
    fs::remove(path);
  }
  const GpcpProblem generated(PolyMap::identity(2), PolyMap::identity(2),
                              Cone::generated({Vector{{1.0, 0.0}}, Vector{{1.0, 1.0}}}), "gen");
  const auto back = problem_from_json_text(problem_to_json(generated).dump());
  CHECK(back.cone().kind() == Cone::Kind::FinitelyGenerated);
  CHECK(back.cone().generators()[1] == Vector{{1.0, 1.0}});
}

TEST_CASE("cli solve and residual") {
  const auto solve = cli({"solve", "--fixture", "example_5_1"});
  CHECK(solve.code == kExitOk);
  CHECK(solve.out.find("(1.000000, 1.000000)") != std::string::npos);

  const auto lcp = cli({"solve", "--file", write_temp("gpcp_cli_lcp.json", kLcp).string()});
  CHECK(lcp.code == kExitOk);
  CHECK(lcp.out.find("(1.000000, 2.000000)") != std::string::npos);

  const auto homotopy = cli({"solve", "--fixture", "tcp_unit", "--homotopy"});
  CHECK(homotopy.code == kExitOk);
  CHECK(homotopy.out.find("(1.000000, 1.000000)") != std::string::npos);

  const auto residual = cli({"residual", "--fixture", "example_5_1", "--at", "0,0"});
  CHECK(residual.code == kExitOk);
  CHECK(residual.out.find("r(x) = 1") != std::string::npos);
  CHECK(residual.out.find("is_solution(tol=") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  const auto infeasible = write_temp("gpcp_cli_infeasible.json", R"({
    "schema_version": 1, "n": 1, "m": 2, "l": 2,
    "F": {"tensors": [], "constant": [-1.0]},
    "G": {"tensors": [{"order": 2, "entries": [[[1, 1], 1.0]]}]}
  })");
  CHECK(cli({"solve", "--file", infeasible.string(), "--starts", "8"}).code == kExitSolverFailure);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"solve"}).code == kExitUsage);
  CHECK(cli({"classify", "--fixture", "example_5_1", "--query", "nonsense"}).code == kExitUsage);
  CHECK(cli({"solve", "--fixture", "example_5_1", "--tol", "-1"}).code == kExitUsage);
  CHECK(cli({"solve", "--file", "/nonexistent/problem.json"}).code == kExitBadInput);
  const auto broken = write_temp("gpcp_cli_broken.json", "{\"n\": ");
  const auto run = cli({"solve", "--file", broken.string()});
  CHECK(run.code == kExitBadInput);
  CHECK(run.err.find("parse error") != std::string::npos);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("cli classify") {
  const auto none = cli({"classify", "--fixture", "example_2_1_pair", "--query", "er-pair", "--budget", "64"});
  CHECK(none.code == kExitOk);
  CHECK(none.out.rfind("NoCounterexampleFound (budget 64 starts)", 0) == 0);

  const auto found = cli({"classify", "--fixture", "zero_unit_pair", "--query", "r0-pair", "--budget", "16"});
  CHECK(found.code == kExitOk);
  CHECK(found.out.rfind("CounterexampleFound", 0) == 0);
}

TEST_CASE("seed precedence and byte-identical reports") {
  const std::vector<std::string> base{"classify", "--fixture", "example_2_1_pair", "--query", "er-pair",
                                      "--budget", "8", "--iters", "20", "--out", "-"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return cli(args).out;
  };

  ::unsetenv("GPCP_SEED");
  const auto seed7 = with({"--seed", "7"});
  const auto seed9 = with({"--seed", "9"});
  CHECK(seed7 == with({"--seed", "7"}));
  CHECK(seed7 != seed9);

  ::setenv("GPCP_SEED", "7", 1);
  CHECK(with({}) == seed7);
  CHECK(with({"--seed", "9"}) == seed9);
  ::unsetenv("GPCP_SEED");

  const auto solve_a = cli({"solve", "--fixture", "lcp_demo", "--out", "-"}).out;
  const auto solve_b = cli({"solve", "--fixture", "lcp_demo", "--out", "-"}).out;
  CHECK(solve_a == solve_b);
  CHECK(nlohmann::json::parse(solve_a).is_object());
}

TEST_CASE("cli errorbound and demo") {
  const auto eb = cli({"errorbound", "--fixture", "example_5_1", "--samples", "2000", "--pairs", "200"});
  CHECK(eb.code == kExitOk);
  CHECK(eb.out.find("pair monotonicity (i): ViolationFound") != std::string::npos);

  const auto demo = cli({"demo", "--budget", "64"});
  CHECK(demo.code == kExitOk);
  CHECK(demo.out.find("FAIL") == std::string::npos);
}
