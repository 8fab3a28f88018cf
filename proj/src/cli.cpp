#include "gpcp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gpcp/classify.hpp"
#include "gpcp/errorbound.hpp"
#include "gpcp/errors.hpp"
#include "gpcp/io.hpp"
#include "gpcp/random.hpp"
#include "gpcp/solvers.hpp"

namespace gpcp {

namespace {

using nlohmann::json;

struct Common {
  std::string file;
  std::string fixture;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct Options {
  Common common;
  // solve
  int starts = 64;
  double tol = 1e-10;
  std::vector<double> box;
  bool homotopy = false;
  // residual
  std::vector<double> at;
  // classify
  std::string query;
  int budget = 256;
  int iters = 500;
  // errorbound
  int samples = 10000;
  int pairs = 1000;
  int rays = 64;
  std::vector<double> rho_grid{1e-1, 1e-2, 1e-3};
  bool include_samples = false;
};

void add_problem_flags(CLI::App* cmd, Common& c) {
  auto* file = cmd->add_option("--file", c.file, "Problem file (JSON)");
  auto* fixture = cmd->add_option("--fixture", c.fixture, "Built-in fixture name");
  file->excludes(fixture);
}

void add_seed_flag(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed (overrides GPCP_SEED)");
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("GPCP_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("GPCP_SEED", std::string("not an unsigned integer: ") + env);
    }
  }
  return 42;
}

GpcpProblem resolve_problem(const Common& c) {
  if (!c.file.empty()) return load_problem(c.file);
  if (!c.fixture.empty()) return fixtures::by_name(c.fixture);
  throw CLI::RequiredError("--file or --fixture");
}

Box resolve_box(const GpcpProblem& p, const std::vector<double>& flag) {
  if (flag.empty()) return default_box(p);
  if (flag.size() != 2 || !(flag[0] < flag[1])) {
    throw CLI::ValidationError("--box", "expects lo,hi with lo < hi");
  }
  return Box::uniform(p.dim(), flag[0], flag[1]);
}

std::string format_point(const Vector& x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

void emit(const json& report, const Common& c, std::ostream& out) {
  if (c.out.empty()) return;
  if (c.out == "-") {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw InvalidArgument("cannot write report to " + c.out);
  file << report.dump(2) << '\n';
}

json envelope(const GpcpProblem& p, const std::string& command, json config, json results) {
  return {{"problem", p.name()}, {"command", command}, {"config", std::move(config)}, {"results", std::move(results)}};
}

int cmd_solve(const Options& o, std::ostream& text, std::ostream& out) {
  const auto p = resolve_problem(o.common);
  SolveConfig cfg;
  cfg.seed = resolve_seed(o.common);
  cfg.starts = o.starts;
  cfg.tol = o.tol;
  const Box box = resolve_box(p, o.box);
  json config{{"seed", cfg.seed}, {"starts", cfg.starts}, {"tol", cfg.tol}, {"max_iters", cfg.max_iters}};

  if (o.homotopy) {
    const auto trace = homotopy_solve(p, cfg);
    text << "homotopy: " << to_string(trace.outcome) << " after " << trace.samples.size() << " path samples\n";
    if (trace.solution) text << "solution " << format_point(*trace.solution) << '\n';
    emit(envelope(p, "solve", config, {{"homotopy", to_json(trace)}}), o.common, out);
    return trace.solution ? kExitOk : kExitSolverFailure;
  }

  const auto omega = multistart_solve(p, cfg, box);
  text << omega.size() << (omega.size() == 1 ? " solution" : " solutions") << '\n';
  for (std::size_t i = 0; i < omega.size(); ++i) {
    text << format_point(omega.points[i]) << "  residual " << std::scientific << std::setprecision(3)
        << omega.residuals[i] << std::defaultfloat << '\n';
  }
  config["box"] = {{"lo", to_json(box.lo)}, {"hi", to_json(box.hi)}};
  emit(envelope(p, "solve", config, {{"omega_hat", to_json(omega)}}), o.common, out);
  return omega.empty() ? kExitSolverFailure : kExitOk;
}

int cmd_residual(const Options& o, std::ostream& text, std::ostream& out) {
  const auto p = resolve_problem(o.common);
  if (static_cast<int>(o.at.size()) != p.dim()) {
    throw CLI::ValidationError("--at", "expects " + std::to_string(p.dim()) + " comma-separated values");
  }
  const Vector x = Eigen::Map<const Vector>(o.at.data(), p.dim());
  const auto check = is_solution(p, x, o.tol);
  json results{{"x", to_json(x)},
               {"normal_map_norm", normal_map(p, x).norm()},
               {"is_solution", check.accepted},
               {"feas_f", check.feas_f},
               {"feas_g", check.feas_g},
               {"gap", check.gap}};
  text << std::setprecision(17);
  if (p.orthant()) {
    const double r = natural_residual(p, x);
    results["residual"] = r;
    text << "r(x) = " << r << '\n';
  } else {
    text << "||Phi(x)|| = " << results["normal_map_norm"].get<double>() << '\n';
  }
  text << "is_solution(tol=" << o.tol << "): " << (check.accepted ? "yes" : "no") << '\n';
  emit(envelope(p, "residual", {{"tol", o.tol}}, results), o.common, out);
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& text, std::ostream& out) {
  const auto p = resolve_problem(o.common);
  const std::uint64_t seed = resolve_seed(o.common);
  const SearchBudget budget{o.budget, o.iters};
  const auto& a = p.f().leading_tensor();
  const auto& b = p.g().leading_tensor();

  ClassificationVerdict verdict;
  if (o.query == "er-pair") {
    verdict = find_er_counterexample(a, b, p.cone(), budget, seed);
  } else if (o.query == "r0-pair") {
    verdict = find_r0_counterexample(a, b, p.cone(), budget, seed);
  } else if (o.query == "pd") {
    verdict = check_positive_definite(a, budget, seed);
  } else if (o.query == "copositive") {
    verdict = check_strictly_copositive(a, budget, seed);
  } else if (o.query == "k-positive") {
    verdict = check_strictly_k_positive(a, p.cone(), budget, seed);
  } else {
    verdict = check_s_map_invariance(p, o.samples, seed);
  }

  text << verdict.summary() << '\n';
  text << std::setprecision(10) << (verdict.counterexample_found ? "witness " : "best point ")
      << format_point(verdict.best.x);
  if (verdict.query == Query::ErPair) text << " v=" << verdict.best.v << " t=" << verdict.best.t;
  text << " value=" << verdict.best.value << '\n';
  json config{{"seed", seed}, {"starts", budget.starts}, {"iters", budget.iters}};
  if (verdict.query == Query::SMapsConeIntoCone) config = {{"seed", seed}, {"samples", o.samples}};
  emit(envelope(p, "classify", config, to_json(verdict)), o.common, out);
  return kExitOk;
}

std::vector<Vector> probe_directions(int n, int random_count, std::uint64_t seed) {
  std::vector<Vector> dirs;
  for (int i = 0; i < n; ++i) {
    dirs.push_back(Vector::Unit(n, i));
    dirs.push_back(-Vector::Unit(n, i));
  }
  Rng rng(seed);
  for (int k = 0; k < random_count; ++k) dirs.push_back(rng.unit_vector(n));
  return dirs;
}

int cmd_errorbound(const Options& o, std::ostream& text, std::ostream& out) {
  const auto p = resolve_problem(o.common);
  SolveConfig cfg;
  cfg.seed = resolve_seed(o.common);
  cfg.starts = o.starts;
  cfg.tol = o.tol;
  const Box box = resolve_box(p, o.box);

  const auto omega = multistart_solve(p, cfg, box);
  if (omega.empty()) {
    text << "no solution found; error bound scan skipped\n";
    emit(envelope(p, "errorbound", {{"seed", cfg.seed}}, {{"omega_hat", to_json(omega)}}), o.common, out);
    return kExitSolverFailure;
  }
  const auto report = error_bound_scan(p, omega, box, o.samples, cfg.seed);
  const auto a51i = falsify_assumption_5_1(p, MonotoneVariant::I, o.rho_grid, o.pairs, cfg.seed);
  const auto a51ii = falsify_assumption_5_1(p, MonotoneVariant::II, o.rho_grid, o.pairs, cfg.seed);
  json a52 = json::array();
  for (const auto& xbar : omega.points) {
    try {
      a52.push_back(to_json(probe_assumption_5_2(p, xbar, probe_directions(p.dim(), 8, cfg.seed))));
    } catch (const NotASolution&) {
      a52.push_back({{"target", to_string(ProbeTarget::A52)}, {"outcome", "skipped: point not a solution within 1e-8"}});
    }
  }
  const auto c54 = probe_condition_5_4(p, probe_directions(p.dim(), o.rays, cfg.seed + 1));

  text << "solutions: " << omega.size() << '\n';
  text << "c_estimate: " << report.c_estimate << "  tau_fit: " << report.tau_fit
      << "  tau_fit_box: " << report.tau_fit_box << '\n';
  text << "pair monotonicity (i): " << a51i.summary() << "  (ii): " << a51ii.summary() << '\n';
  text << "ray limsup: " << c54.summary() << '\n';

  json config{{"seed", cfg.seed},
              {"starts", cfg.starts},
              {"tol", cfg.tol},
              {"samples", o.samples},
              {"pairs", o.pairs},
              {"rays", o.rays},
              {"rho_grid", o.rho_grid},
              {"box", {{"lo", to_json(box.lo)}, {"hi", to_json(box.hi)}}}};
  json results{{"error_bound", to_json(report, o.include_samples)},
               {"assumption_5_1_i", to_json(a51i)},
               {"assumption_5_1_ii", to_json(a51ii)},
               {"assumption_5_2", std::move(a52)},
               {"condition_5_4", to_json(c54)}};
  emit(envelope(p, "errorbound", config, results), o.common, out);
  return kExitOk;
}

struct DemoRow {
  std::string name;
  bool pass;
  std::string detail;
};

int cmd_demo(const Options& o, std::ostream& text) {
  const std::uint64_t seed = resolve_seed(o.common);
  std::vector<DemoRow> rows;
  SolveConfig cfg;
  cfg.seed = seed;

  {
    const auto v = find_er_counterexample(fixtures::example_2_1_a(), fixtures::example_2_1_b(), Cone::orthant(2),
                                          {o.budget, o.iters}, seed);
    rows.push_back({"example_2_1_pair ER search", !v.counterexample_found, v.summary()});
  }
  const auto ex51 = fixtures::example_5_1();
  const auto omega = multistart_solve(ex51, cfg, Box::uniform(2, 0.0, 3.0));
  {
    const bool ok = omega.size() == 1 && (omega.points[0] - Vector::Ones(2)).norm() <= 1e-8;
    rows.push_back({"example_5_1 solve", ok,
                    std::to_string(omega.size()) + " point(s)" + (omega.empty() ? "" : " " + format_point(omega.points[0]))});
  }
  {
    const auto r = falsify_assumption_5_1(ex51, MonotoneVariant::I, {0.01}, 0, seed);
    const auto& w = r.rho_probes[0].witness;
    const bool ok = r.violation_found && w && std::abs(w->value - 1.09375e-7) <= 1e-12;
    std::ostringstream d;
    d << std::setprecision(6) << "max product " << (w ? w->value : 0.0);
    rows.push_back({"example_5_1 pair monotonicity violated", ok, d.str()});
  }
  {
    const auto r = probe_assumption_5_2(ex51, Vector::Ones(2), {Vector{{0.0, 1.0}}, Vector{{0.0, -1.0}}});
    const auto& up = r.directions[0];
    const auto& down = r.directions[1];
    const bool ok = !r.violation_found && up.j0 == 1 && std::abs(up.limit - 1.0) <= 0.05 && down.j0 == 1 &&
                    std::abs(down.limit + 3.0) <= 0.1;
    std::ostringstream d;
    d << std::setprecision(6) << "limits " << up.limit << ", " << down.limit;
    rows.push_back({"example_5_1 min-map ratio probe", ok, d.str()});
  }
  if (!omega.empty()) {
    const auto report = error_bound_scan(ex51, omega, Box::uniform(2, 0.0, 2.0), 10000, seed);
    const bool ok = std::isfinite(report.c_estimate) && report.tau_fit >= 0.8 && report.tau_fit <= 1.2;
    std::ostringstream d;
    d << std::setprecision(4) << "c " << report.c_estimate << ", tau " << report.tau_fit;
    rows.push_back({"example_5_1 error bound", ok, d.str()});
  } else {
    rows.push_back({"example_5_1 error bound", false, "no solution estimate"});
  }
  for (const auto& [name, expected] : {std::pair{std::string("tcp_unit"), Vector{{1.0, 1.0}}},
                                       std::pair{std::string("lcp_demo"), Vector{{1.0, 2.0}}}}) {
    const auto p = fixtures::by_name(name);
    const auto est = multistart_solve(p, cfg, default_box(p));
    const bool ok = est.size() == 1 && (est.points[0] - expected).norm() <= 1e-8;
    rows.push_back({name + " solve", ok,
                    std::to_string(est.size()) + " point(s)" + (est.empty() ? "" : " " + format_point(est.points[0]))});
  }

  bool all = true;
  for (const auto& row : rows) {
    text << (row.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(42) << row.name << row.detail << '\n';
    all = all && row.pass;
  }
  text << (all ? "all fixture checks passed" : "some fixture checks failed") << '\n';
  return all ? kExitOk : kExitSolverFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized polynomial complementarity toolkit", "gpcp"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Multistart solve; prints the solution estimate");
  add_problem_flags(solve, o.common);
  add_seed_flag(solve, o.common);
  solve->add_option("--starts", o.starts, "Number of Newton starts")->check(CLI::PositiveNumber);
  solve->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--box", o.box, "Sampling box lo,hi")->delimiter(',');
  solve->add_flag("--homotopy", o.homotopy, "Follow the homotopy path instead of multistart Newton");
  solve->add_option("--out", o.common.out, "Write a JSON report ('-' for stdout)");

  auto* residual = app.add_subcommand("residual", "Natural residual at a point");
  add_problem_flags(residual, o.common);
  residual->add_option("--at", o.at, "Point x1,x2,...")->delimiter(',')->required();
  residual->add_option("--tol", o.tol, "Tolerance for the solution test");
  residual->add_option("--out", o.common.out, "Write a JSON report ('-' for stdout)");

  auto* classify = app.add_subcommand("classify", "Counterexample search for tensor classes");
  add_problem_flags(classify, o.common);
  add_seed_flag(classify, o.common);
  classify->add_option("--query", o.query, "er-pair|r0-pair|pd|copositive|k-positive|smap")
      ->required()
      ->check(CLI::IsMember({"er-pair", "r0-pair", "pd", "copositive", "k-positive", "smap"}));
  classify->add_option("--budget", o.budget, "Number of starts")->check(CLI::PositiveNumber);
  classify->add_option("--iters", o.iters, "Descent iterations per start")->check(CLI::NonNegativeNumber);
  classify->add_option("--samples", o.samples, "Samples for the smap query")->check(CLI::PositiveNumber);
  classify->add_option("--out", o.common.out, "Write a JSON report ('-' for stdout)");

  auto* errorbound = app.add_subcommand("errorbound", "Error bound scan and assumption probes");
  add_problem_flags(errorbound, o.common);
  add_seed_flag(errorbound, o.common);
  errorbound->add_option("--starts", o.starts, "Number of Newton starts")->check(CLI::PositiveNumber);
  errorbound->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  errorbound->add_option("--box", o.box, "Sampling box lo,hi")->delimiter(',');
  errorbound->add_option("--samples", o.samples, "Uniform samples for the scan")->check(CLI::PositiveNumber);
  errorbound->add_option("--pairs", o.pairs, "Random pairs for the monotonicity probe")->check(CLI::NonNegativeNumber);
  errorbound->add_option("--rays", o.rays, "Random ray directions for the limsup probe")->check(CLI::NonNegativeNumber);
  errorbound->add_option("--rho", o.rho_grid, "rho grid for the monotonicity probe")->delimiter(',');
  errorbound->add_flag("--include-samples", o.include_samples, "Write every ratio sample to the report");
  errorbound->add_option("--out", o.common.out, "Write a JSON report ('-' for stdout)");

  auto* demo = app.add_subcommand("demo", "Run the built-in fixtures end to end");
  add_seed_flag(demo, o.common);
  demo->add_option("--budget", o.budget, "Starts for the ER pair search")->check(CLI::PositiveNumber);
  o.budget = 256;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  // With --out -, stdout carries only the JSON report.
  std::ostream null_stream(nullptr);
  std::ostream& text = o.common.out == "-" ? null_stream : out;
  try {
    if (solve->parsed()) return cmd_solve(o, text, out);
    if (residual->parsed()) return cmd_residual(o, text, out);
    if (classify->parsed()) return cmd_classify(o, text, out);
    if (errorbound->parsed()) return cmd_errorbound(o, text, out);
    return cmd_demo(o, text);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gpcp
