#include "gpcp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "gpcp/errors.hpp"
#include "gpcp/random.hpp"

namespace gpcp {

namespace {

constexpr double kPivotFloor = 1e-12;
constexpr double kMinStep = 1e-12;
constexpr double kPathEnd = 1e-8;
constexpr double kScheduleDelta = 0.05;
constexpr double kScheduleRatio = 0.9;

struct CoreResult {
  NewtonResult::Status status;
  Vector x;
  double norm;
  int iters;
};

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;
using AcceptFn = std::function<bool(const Vector&, double)>;

// Damped semismooth Newton on R(x) = 0 with Armijo backtracking on 1/2 ||R||^2.
// `accept` decides convergence from (x, ||R(x)||); `blowup` aborts once the
// iterate norm exceeds it.
CoreResult damped_newton(const ResidualFn& residual, const JacobianFn& jacobian,
                         const AcceptFn& accept, Vector x, const SolveConfig& cfg,
                         double blowup = std::numeric_limits<double>::infinity()) {
  Vector r = residual(x);
  double norm = r.norm();
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (!std::isfinite(norm)) return {NewtonResult::Status::Diverged, x, norm, iter};
    if (accept(x, norm)) return {NewtonResult::Status::Solved, x, norm, iter};

    const Matrix jac = jacobian(x);
    Eigen::PartialPivLU<Matrix> lu(jac);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(min_pivot >= kPivotFloor)) return {NewtonResult::Status::Singular, x, norm, iter};
    const Vector step = lu.solve(-r);

    const double merit = 0.5 * norm * norm;
    double alpha = 1.0;
    Vector trial;
    Vector trial_r;
    double trial_norm = 0.0;
    while (true) {
      trial = x + alpha * step;
      trial_r = residual(trial);
      trial_norm = trial_r.norm();
      if (std::isfinite(trial_norm) &&
          0.5 * trial_norm * trial_norm <= (1.0 - 2.0 * cfg.armijo * alpha) * merit) {
        break;
      }
      alpha *= cfg.backtrack;
      if (alpha < kMinStep) return {NewtonResult::Status::LineSearchStalled, x, norm, iter};
    }
    x = std::move(trial);
    r = std::move(trial_r);
    norm = trial_norm;
    if (x.norm() > blowup) return {NewtonResult::Status::Diverged, x, norm, iter + 1};
  }
  if (std::isfinite(norm) && accept(x, norm)) {
    return {NewtonResult::Status::Solved, x, norm, cfg.max_iters};
  }
  return {NewtonResult::Status::MaxIters, x, norm, cfg.max_iters};
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace

void SolveConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("solve tolerance must be positive");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (starts < 1) throw InvalidArgument("starts must be at least 1");
  if (!(backtrack > 0.0 && backtrack < 1.0)) {
    throw InvalidArgument("backtracking factor must lie in (0, 1)");
  }
  if (!(armijo > 0.0 && armijo < 0.5)) throw InvalidArgument("armijo constant must lie in (0, 0.5)");
  if (!(blowup_norm > 0.0)) throw InvalidArgument("blowup norm must be positive");
}

Box Box::uniform(int dim, double lo, double hi) {
  return {Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
}

Box default_box(const GpcpProblem& p) {
  const double hi = 2.0 * (1.0 + p.f().constant().norm() + p.g().constant().norm());
  return Box::uniform(p.dim(), 0.0, hi);
}

std::string to_string(NewtonResult::Status status) {
  switch (status) {
    case NewtonResult::Status::Solved: return "Solved";
    case NewtonResult::Status::Singular: return "Singular";
    case NewtonResult::Status::MaxIters: return "MaxIters";
    case NewtonResult::Status::LineSearchStalled: return "LineSearchStalled";
    case NewtonResult::Status::Diverged: return "Diverged";
  }
  return "Unknown";
}

std::string to_string(PathTrace::Outcome outcome) {
  switch (outcome) {
    case PathTrace::Outcome::Converged: return "Converged";
    case PathTrace::Outcome::ExceptionalFamilySuspected: return "ExceptionalFamilySuspected";
    case PathTrace::Outcome::Stalled: return "Stalled";
  }
  return "Unknown";
}

NewtonResult newton_minmap(const GpcpProblem& p, const Vector& x0, const SolveConfig& cfg) {
  if (!p.orthant()) throw UnsupportedCone("newton_minmap needs the nonnegative orthant");
  if (x0.size() != p.dim()) throw DimensionError("start point does not match problem dimension");
  cfg.validate();

  const auto core = damped_newton(
      [&](const Vector& x) { return min_map(p, x); },
      [&](const Vector& x) { return normal_map_jacobian(p, x); },
      [&](const Vector& x, double norm) {
        return norm <= cfg.tol && is_solution(p, x, 10.0 * cfg.tol).accepted;
      },
      x0, cfg);
  return {core.status, core.x, core.norm, core.iters};
}

Vector homotopy_map(const GpcpProblem& p, const Vector& x, double t) {
  return t * x + (1.0 - t) * normal_map(p, x);
}

PathTrace homotopy_solve(const GpcpProblem& p, const SolveConfig& cfg) {
  if (!p.cone().supports_projection()) {
    throw ProjectionUnsupported("homotopy needs a cone with a projection");
  }
  cfg.validate();
  const int n = p.dim();
  const Matrix identity = Matrix::Identity(n, n);

  PathTrace trace;
  Vector x = Vector::Zero(n);
  double t = 1.0;
  trace.samples.push_back({t, x, 0.0, normal_map(p, x).norm()});

  while (t > 0.0) {
    double next = std::max(t - kScheduleDelta, t * kScheduleRatio);
    if (next <= kPathEnd) next = 0.0;
    t = next;

    const auto core = damped_newton(
        [&](const Vector& z) { return homotopy_map(p, z, t); },
        [&](const Vector& z) { return Matrix(t * identity + (1.0 - t) * normal_map_jacobian(p, z)); },
        [&](const Vector&, double norm) { return norm <= cfg.tol; }, x, cfg, cfg.blowup_norm);

    const double norm_x = core.x.norm();
    if (core.x.allFinite()) {
      trace.samples.push_back({t, core.x, norm_x, normal_map(p, core.x).norm()});
    }
    if (t > kPathEnd && !(norm_x <= cfg.blowup_norm)) {
      trace.outcome = PathTrace::Outcome::ExceptionalFamilySuspected;
      return trace;
    }
    if (core.status != NewtonResult::Status::Solved) {
      trace.outcome = PathTrace::Outcome::Stalled;
      return trace;
    }
    x = core.x;
  }

  if (is_solution(p, x, 10.0 * cfg.tol).accepted) {
    trace.outcome = PathTrace::Outcome::Converged;
    trace.solution = x;
  } else {
    trace.outcome = PathTrace::Outcome::Stalled;
  }
  return trace;
}

SolutionSetEstimate dedupe_solutions(std::vector<Vector> points, std::vector<double> residuals,
                                     double radius) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (lex_less(points[a], points[b])) return true;
    if (lex_less(points[b], points[a])) return false;
    return residuals[a] < residuals[b];
  });

  SolutionSetEstimate out;
  out.dedupe_radius = radius;
  for (std::size_t idx : order) {
    const bool duplicate = std::any_of(out.points.begin(), out.points.end(), [&](const Vector& kept) {
      return (kept - points[idx]).norm() <= radius;
    });
    if (!duplicate) {
      out.points.push_back(points[idx]);
      out.residuals.push_back(residuals[idx]);
    }
  }
  return out;
}

SolutionSetEstimate multistart_solve(const GpcpProblem& p, const SolveConfig& cfg, const Box& box) {
  if (!p.orthant()) throw UnsupportedCone("multistart_solve uses the min-map Newton backend");
  if (box.dim() != p.dim() || box.hi.size() != p.dim()) {
    throw DimensionError("sampling box does not match problem dimension");
  }
  cfg.validate();

  Rng rng(cfg.seed);
  std::vector<Vector> points;
  std::vector<double> residuals;
  for (int s = 0; s < cfg.starts; ++s) {
    Vector x0(p.dim());
    for (int i = 0; i < p.dim(); ++i) x0[i] = rng.uniform(box.lo[i], box.hi[i]);
    const auto result = newton_minmap(p, x0, cfg);
    if (result.solved()) {
      points.push_back(result.x);
      residuals.push_back(result.residual);
    }
  }
  return dedupe_solutions(std::move(points), std::move(residuals), 1e-6);
}

}  // namespace gpcp
