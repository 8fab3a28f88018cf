#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpcp/problem.hpp"
#include "gpcp/solvers.hpp"

namespace gpcp {

struct RatioSample {
  Vector x;
  double dist = 0.0;  ///< distance to the nearest estimated solution
  double r = 0.0;     ///< natural residual
  double ratio = 0.0;
  bool local = false;  ///< drawn from a shell around a solution estimate
};

struct ErrorBoundOptions {
  int local_samples = 512;
  double local_log_radius_lo = -6.0;
  double local_log_radius_hi = -1.0;
  double fit_r_lo = 1e-12;
  double fit_r_hi = 1.0;
  double residual_floor = 1e-14;  ///< samples at or below are not divided by
};

/// Sampled estimate of c in dist(x, Omega) <= c r(x). Distances are taken to
/// the solution estimate, so c_estimate overestimates c when the estimate
/// misses solutions.
struct ErrorBoundReport {
  SolutionSetEstimate omega_hat;
  Box box;
  int sample_count = 0;
  std::vector<RatioSample> ratios;
  std::size_t excluded = 0;  ///< samples with r at or below the residual floor
  double c_estimate = 0.0;
  /// log-log slope of dist against r on the shell samples near the estimate.
  double tau_fit = 0.0;
  /// The same slope over the box samples with r in (fit_r_lo, fit_r_hi].
  double tau_fit_box = 0.0;
};

double distance_to_set(const SolutionSetEstimate& omega, const Vector& x);

/// Least-squares slope of log(dist) against log(r) over samples whose r lies
/// in (lo, hi]. NaN if fewer than two samples qualify.
double fit_log_slope(const std::vector<RatioSample>& samples, double lo, double hi);

ErrorBoundReport error_bound_scan(const GpcpProblem& p, const SolutionSetEstimate& omega_hat,
                                  const Box& box, int sample_count, std::uint64_t seed,
                                  const ErrorBoundOptions& options = {});

enum class ProbeTarget { A51i, A51ii, A52, C54 };
std::string to_string(ProbeTarget target);

struct PairWitness {
  Vector x;
  Vector y;
  double rho = 0.0;
  double value = 0.0;  ///< max_j product (variant i) or the full inner product (ii)
  double bound = 0.0;  ///< rho ||x - y||^2
};

struct RhoProbe {
  double rho = 0.0;
  bool violated = false;
  std::optional<PairWitness> witness;
  /// min over tested pairs of value / ||x - y||^2 - rho
  double min_slack = 0.0;
  int pairs_tested = 0;
};

struct DirectionProbe {
  Vector direction;
  std::vector<double> radii;
  std::vector<std::vector<double>> ratios;  ///< ratios[j][k]
  std::vector<double> limits;               ///< last ratio per component
  std::vector<bool> stable;
  int j0 = -1;  ///< 0-based; -1 when no component stabilizes
  double limit = 0.0;
  bool violation = false;
};

struct RayProbe {
  Vector direction;
  std::vector<double> scales;  ///< scales actually evaluated (truncated on overflow)
  bool truncated = false;
  bool premise_met = false;
  double neg_f_tail = 0.0;
  double neg_g_tail = 0.0;
  std::vector<double> limsup;  ///< per component
  int j0 = -1;
  double j0_limsup = 0.0;
  bool violation = false;
  std::string note;
};

struct AssumptionProbeResult {
  ProbeTarget target = ProbeTarget::A51i;
  bool violation_found = false;
  std::vector<RhoProbe> rho_probes;
  std::vector<DirectionProbe> directions;
  std::vector<RayProbe> rays;

  /// "ViolationFound" or "ConsistentWithinBudget".
  std::string summary() const;
};

struct ProbeOptions {
  double premise_tol = 1e-3;
  double nonzero_limit = 0.01;
  double stabilization = 0.05;
  int window = 5;
  double overflow = 1e300;
};

enum class MonotoneVariant { I, II };

/// Looks for pairs with max_j [F_j(x)-F_j(y)][G_j(x)-G_j(y)] <= rho ||x-y||^2
/// (variant I) or [F(x)-F(y)]^T [G(x)-G(y)] <= rho ||x-y||^2 (variant II).
/// For n = 2 the family x = (e, e/2), y = (e, e) with e = 10^-k, k = 0..6 is
/// tried before `pair_budget` seeded random pairs. The result is a violation
/// when every rho in the grid is violated.
AssumptionProbeResult falsify_assumption_5_1(const GpcpProblem& p, MonotoneVariant variant,
                                             const std::vector<double>& rho_grid, int pair_budget,
                                             std::uint64_t seed);

std::vector<double> default_radii();   ///< 2^-k, k = 1..30
std::vector<double> default_scales();  ///< 2^k, k = 1..40

/// Ratios min{F_j, G_j}(xbar + r d) / r along shrinking radii for each
/// direction. Throws NotASolution unless xbar solves p within 1e-8.
AssumptionProbeResult probe_assumption_5_2(const GpcpProblem& p, const Vector& xbar,
                                           const std::vector<Vector>& directions,
                                           const std::vector<double>& radii = default_radii(),
                                           const ProbeOptions& options = {});

/// Evaluates the diverging-ray premise and the limsup of
/// min{F_j, G_j}(s d) / ||s d|| along each ray. Orthant only.
AssumptionProbeResult probe_condition_5_4(const GpcpProblem& p,
                                          const std::vector<Vector>& ray_directions,
                                          const std::vector<double>& scales = default_scales(),
                                          const ProbeOptions& options = {});

}  // namespace gpcp
