// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "gpcp/classify.hpp"
#include "gpcp/errorbound.hpp"
#include "gpcp/io.hpp"
#include "gpcp/solvers.hpp"
#include "oracles.hpp"

using namespace gpcp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

Outcome er_pair_reproduction() {
  const auto t0 = Clock::now();
  const auto a = fixtures::example_2_1_a();
  const auto b = fixtures::example_2_1_b();
  const auto verdict = find_er_counterexample(a, b, Cone::orthant(2), {10000, 500}, 42);
  const auto grid = oracle::er_grid_min(a, b, 3600, true);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = !verdict.counterexample_found && grid.merit >= 1e-6 && secs < 60.0;
  o.detail = verdict.summary() + ", best merit " + fmt(verdict.best.value) + ", grid min " + fmt(grid.merit) +
             ", " + fmt(secs, 3) + " s";
  return o;
}

Outcome solve_reproduction() {
  const auto t0 = Clock::now();
  const auto p = fixtures::example_5_1();
  SolveConfig cfg;
  cfg.starts = 64;
  cfg.seed = 42;
  const auto omega = multistart_solve(p, cfg, Box::uniform(2, 0.0, 3.0));
  const double r = natural_residual(p, Vector::Ones(2));
  const double secs = seconds_since(t0);
  Outcome o;
  const double err = omega.size() == 1 ? (omega.points[0] - Vector::Ones(2)).norm() : INFINITY;
  o.pass = omega.size() == 1 && err <= 1e-8 && r == 0.0 && secs < 5.0;
  o.detail = std::to_string(omega.size()) + " solution(s), distance to (1,1) " + fmt(err) + ", r(1,1) = " +
             fmt(r) + ", " + fmt(secs, 3) + " s";
  return o;
}

Outcome monotonicity_falsification() {
  const auto result = falsify_assumption_5_1(fixtures::example_5_1(), MonotoneVariant::I, {0.01}, 0, 42);
  const auto& w = result.rho_probes.at(0).witness;
  const double want = 7.0 * std::pow(0.1, 6) / 64.0;
  Outcome o;
  o.pass = result.violation_found && w && (w->x - Vector{{0.1, 0.05}}).norm() <= 1e-15 &&
           (w->y - Vector{{0.1, 0.1}}).norm() <= 1e-15 && std::abs(w->value - want) <= 1e-12 &&
           std::abs(w->value - 1.09375e-7) <= 1e-12;
  o.detail = w ? "max product " + fmt(w->value, 10) + " at x=(" + fmt(w->x[0]) + "," + fmt(w->x[1]) + ")"
               : "no witness";
  return o;
}

Outcome ratio_probe() {
  const auto result =
      probe_assumption_5_2(fixtures::example_5_1(), Vector::Ones(2), {Vector{{0.0, 1.0}}, Vector{{0.0, -1.0}}});
  const auto& up = result.directions.at(0);
  const auto& down = result.directions.at(1);
  Outcome o;
  o.pass = up.j0 == 1 && down.j0 == 1 && std::abs(up.limit - 1.0) <= 0.05 && std::abs(down.limit + 3.0) <= 0.1 &&
           std::abs(up.radii.back() - std::ldexp(1.0, -30)) == 0.0;
  o.detail = "limits " + fmt(up.limit, 8) + " and " + fmt(down.limit, 8);
  return o;
}

Outcome error_bound_scale() {
  const auto t0 = Clock::now();
  const auto p = fixtures::example_5_1();
  const auto omega = multistart_solve(p, {}, Box::uniform(2, 0.0, 3.0));
  const Box box = Box::uniform(2, 0.0, 2.0);
  const auto a = error_bound_scan(p, omega, box, 10000, 42);
  const auto b = error_bound_scan(p, omega, box, 20000, 42);
  const double secs = seconds_since(t0);
  const double change = std::abs(b.c_estimate - a.c_estimate) / a.c_estimate;
  Outcome o;
  o.pass = std::isfinite(a.c_estimate) && change < 0.2 && a.tau_fit >= 0.8 && a.tau_fit <= 1.2 && secs < 30.0;
  o.detail = "c " + fmt(a.c_estimate, 4) + " -> " + fmt(b.c_estimate, 4) + ", tau " + fmt(a.tau_fit, 4) + ", " +
             fmt(secs, 3) + " s";
  return o;
}

Outcome solver_cross_validation() {
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 5;
    const Matrix r = Matrix::NullaryExpr(n, n, [&]() { return u(gen); });
    const Matrix m = r * r.transpose() + 0.5 * Matrix::Identity(n, n);
    const Vector q = oracle::random_vector(gen, n, -2.0, 2.0);
    const GpcpProblem p(PolyMap::affine(m, q), PolyMap::identity(n), Cone::orthant(n));
    const auto newton = newton_minmap(p, Vector::Zero(n), {});
    const auto trace = homotopy_solve(p, {});
    if (!newton.solved() || !trace.solution) {
      ++failures;
      continue;
    }
    worst = std::max(worst, (newton.x - *trace.solution).norm());
  }
  const auto demo = newton_minmap(fixtures::lcp_demo(), Vector{{0.5, 0.5}}, {});
  const double demo_err = (demo.x - Vector{{1.0, 2.0}}).norm();
  Outcome o;
  o.pass = failures == 0 && worst <= 1e-6 && demo.solved() && demo_err <= 1e-10;
  o.detail = "max disagreement " + fmt(worst) + " over 50 LCPs (" + std::to_string(failures) +
             " failed), LCP demo error " + fmt(demo_err);
  return o;
}

Outcome oracle_suites() {
  std::mt19937_64 gen(7);
  std::ostringstream why;
  bool ok = true;

  double contraction = 0.0;
  std::uniform_int_distribution<int> order(1, 4), dim(1, 3);
  for (int k = 0; k < 1000; ++k) {
    const auto t = oracle::random_tensor(gen, order(gen), dim(gen), 2.0);
    const Vector x = oracle::random_vector(gen, t.dim(), -2.0, 2.0);
    const Vector want = oracle::naive_contract(t, x);
    contraction = std::max(contraction, (contract_to_vector(t, x) - want).norm() / std::max(1.0, want.norm()));
  }
  ok = ok && contraction <= 1e-13;

  double jacobian = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4;
    std::vector<DenseTensor> ts;
    for (int ord = 2 + k % 3; ord >= 2; --ord) ts.push_back(oracle::random_tensor(gen, ord, n));
    const PolyMap f(TensorTuple(std::move(ts)), oracle::random_vector(gen, n));
    const Vector x = oracle::random_vector(gen, n);
    const Matrix fd = oracle::central_jacobian([&](const Vector& z) { return f.evaluate(z); }, x, 1e-6);
    jacobian = std::max(jacobian, (f.jacobian(x) - fd).cwiseAbs().maxCoeff());
  }
  ok = ok && jacobian <= 1e-5;

  bool laws = true;
  for (const auto& k : {Cone::orthant(3), Cone::generated({Vector{{1.0, 0.0, 0.0}}, Vector{{1.0, 1.0, 0.0}},
                                                             Vector{{0.0, 1.0, 1.0}}})}) {
    for (int s = 0; s < 200; ++s) {
      const Vector x = oracle::random_vector(gen, 3, -3.0, 3.0);
      const Vector y = oracle::random_vector(gen, 3, -3.0, 3.0);
      const Vector px = project(k, x);
      laws = laws && (project(k, px) - px).norm() <= 1e-9;
      laws = laws && std::abs((px - x).dot(px)) <= 1e-6;
      laws = laws && (px - project(k, y)).norm() <= (x - y).norm() + 1e-9;
    }
  }
  ok = ok && laws;

  const auto zero = DenseTensor::zeros(4, 2);
  const auto unit = unit_tensor(4, 2);
  const auto r0 = find_r0_counterexample(zero, unit, Cone::orthant(2), {64, 500}, 1);
  const bool transfer = r0.counterexample_found &&
                        er_terms(zero, unit, Cone::orthant(2), r0.best.x, 0.0, 0.0).merit() <= 1e-12 &&
                        find_er_counterexample(zero, unit, Cone::orthant(2), {64, 500}, 1).counterexample_found;
  ok = ok && transfer;

  const auto p = fixtures::example_5_1();
  const auto report = [&]() {
    const auto omega = multistart_solve(p, {}, Box::uniform(2, 0.0, 3.0));
    const auto eb = error_bound_scan(p, omega, Box::uniform(2, 0.0, 2.0), 2000, 42);
    const auto v = find_er_counterexample(fixtures::example_2_1_a(), fixtures::example_2_1_b(), Cone::orthant(2),
                                          {32, 200}, 42);
    return to_json(omega).dump() + to_json(eb, false).dump() + to_json(v).dump();
  };
  const bool deterministic = report() == report();
  ok = ok && deterministic;

  why << "contraction " << std::setprecision(3) << contraction << ", jacobian " << jacobian << ", projection laws "
      << (laws ? "ok" : "broken") << ", ER=>R0 transfer " << (transfer ? "ok" : "broken") << ", determinism "
      << (deterministic ? "ok" : "broken");
  return {ok, why.str()};
}

Outcome r0_ray_consistency() {
  std::mt19937_64 gen(55);
  std::vector<Vector> rays{Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}, Vector{{1.0, 1.0}} / std::sqrt(2.0)};
  for (int k = 0; k < 64; ++k) {
    Vector d = oracle::random_vector(gen, 2);
    rays.push_back(d / d.norm());
  }
  bool ok = true;
  std::ostringstream why;
  for (const auto& name : {"example_2_1_pair", "unit_unit_pair", "zero_unit_pair"}) {
    const auto p = fixtures::by_name(name);
    const auto r0 = find_r0_counterexample(p.f().leading_tensor(), p.g().leading_tensor(), p.cone(), {256, 500}, 42);
    const auto rays_result = probe_condition_5_4(p, rays);
    const bool is_r0 = !r0.counterexample_found;
    if (is_r0 && rays_result.violation_found) ok = false;
    if (std::string(name) == "zero_unit_pair" && (is_r0 || !rays_result.violation_found)) ok = false;
    why << (why.tellp() > 0 ? "; " : "") << name << ": R0 " << (is_r0 ? "yes" : "no") << ", ray violation "
        << (rays_result.violation_found ? "yes" : "no");
  }
  return {ok, why.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ER pair reproduction", er_pair_reproduction},
      {"single-solution reproduction", solve_reproduction},
      {"pair monotonicity falsification", monotonicity_falsification},
      {"min-map ratio probe", ratio_probe},
      {"error bound at desk scale", error_bound_scale},
      {"solver cross-validation", solver_cross_validation},
      {"oracle and property suites", oracle_suites},
      {"R0 and ray probe consistency", r0_ray_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << std::left << std::setw(34)
              << criteria[i].first << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
