#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpcp/problem.hpp"

namespace gpcp {

struct SolveConfig {
  double tol = 1e-10;       ///< residual target
  int max_iters = 200;      ///< Newton iterations per start / per corrector
  int starts = 64;
  std::uint64_t seed = 42;
  double backtrack = 0.5;   ///< line-search step reduction factor
  double armijo = 1e-4;     ///< sufficient-decrease constant
  double blowup_norm = 1e6;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Axis-aligned sampling box.
struct Box {
  Vector lo;
  Vector hi;

  static Box uniform(int dim, double lo, double hi);
  int dim() const { return static_cast<int>(lo.size()); }
};

/// [0, 2 (1 + ||a|| + ||b||)]^n.
Box default_box(const GpcpProblem& p);

struct NewtonResult {
  enum class Status { Solved, Singular, MaxIters, LineSearchStalled, Diverged };

  Status status = Status::MaxIters;
  Vector x;
  double residual = 0.0;
  int iters = 0;

  bool solved() const { return status == Status::Solved; }
};

std::string to_string(NewtonResult::Status status);

/// Semismooth Newton on min{F(x), G(x)} = 0 with backtracking on 1/2 r(x)^2.
NewtonResult newton_minmap(const GpcpProblem& p, const Vector& x0, const SolveConfig& cfg);

/// H(x, t) = t x + (1 - t) Phi(x).
Vector homotopy_map(const GpcpProblem& p, const Vector& x, double t);

struct PathSample {
  double t = 1.0;
  Vector x;
  double norm_x = 0.0;
  double residual = 0.0;  ///< ||Phi(x)||
};

struct PathTrace {
  enum class Outcome { Converged, ExceptionalFamilySuspected, Stalled };

  std::vector<PathSample> samples;
  Outcome outcome = Outcome::Stalled;
  std::optional<Vector> solution;
};

std::string to_string(PathTrace::Outcome outcome);

/// Follows the zero curve of H from (0, 1) toward t = 0 with the schedule
/// t <- max(t - 0.05, 0.9 t), correcting x by damped semismooth Newton at each
/// t. Norm blow-up past cfg.blowup_norm while t > 1e-8 is reported as a
/// suspected exceptional family.
PathTrace homotopy_solve(const GpcpProblem& p, const SolveConfig& cfg);

/// Newton from cfg.starts seeded uniform points in `box`; solved points are
/// deduplicated within 1e-6 and sorted lexicographically.
SolutionSetEstimate multistart_solve(const GpcpProblem& p, const SolveConfig& cfg, const Box& box);

/// Sorts lexicographically and drops points within `radius` of a kept one.
SolutionSetEstimate dedupe_solutions(std::vector<Vector> points, std::vector<double> residuals,
                                     double radius);

}  // namespace gpcp
