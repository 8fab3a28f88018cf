#include "gpcp/errorbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpcp/errors.hpp"
#include "gpcp/random.hpp"

namespace gpcp {

namespace {

constexpr double kSolutionTol = 1e-8;

void require_orthant(const GpcpProblem& p, const char* what) {
  if (!p.orthant()) {
    throw UnsupportedCone(std::string(what) + " is defined only for the nonnegative orthant");
  }
}

Vector unit(const Vector& d) {
  const double norm = d.norm();
  if (!(norm > 0.0)) throw InvalidArgument("probe direction must be nonzero");
  return d / norm;
}

bool overflowed(const Vector& v, double limit) {
  return !v.allFinite() || v.cwiseAbs().maxCoeff() > limit;
}

RatioSample make_sample(const GpcpProblem& p, const SolutionSetEstimate& omega, Vector x,
                        bool local) {
  RatioSample s;
  s.dist = distance_to_set(omega, x);
  s.r = natural_residual(p, x);
  s.x = std::move(x);
  s.local = local;
  return s;
}

}  // namespace

double distance_to_set(const SolutionSetEstimate& omega, const Vector& x) {
  if (omega.empty()) throw EmptySolutionEstimate("solution estimate is empty");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& point : omega.points) best = std::min(best, (x - point).norm());
  return best;
}

double fit_log_slope(const std::vector<RatioSample>& samples, double lo, double hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& s : samples) {
    if (!(s.r > lo && s.r <= hi) || !(s.dist > 0.0)) continue;
    const double lx = std::log(s.r);
    const double ly = std::log(s.dist);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / denom;
}

ErrorBoundReport error_bound_scan(const GpcpProblem& p, const SolutionSetEstimate& omega_hat,
                                  const Box& box, int sample_count, std::uint64_t seed,
                                  const ErrorBoundOptions& options) {
  require_orthant(p, "the error bound scan");
  if (omega_hat.empty()) throw EmptySolutionEstimate("error bound scan needs a nonempty solution estimate");
  if (box.dim() != p.dim()) throw DimensionError("sampling box does not match problem dimension");
  if (sample_count < 1) throw InvalidArgument("sample count must be positive");

  ErrorBoundReport report;
  report.omega_hat = omega_hat;
  report.box = box;
  report.sample_count = sample_count;

  Rng rng(seed);
  std::vector<RatioSample> box_samples;
  std::vector<RatioSample> shell_samples;
  for (int s = 0; s < sample_count; ++s) {
    Vector x(p.dim());
    for (int i = 0; i < p.dim(); ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
    box_samples.push_back(make_sample(p, omega_hat, std::move(x), false));
  }
  for (int s = 0; s < options.local_samples; ++s) {
    const auto& center = omega_hat.points[static_cast<std::size_t>(s) % omega_hat.size()];
    const double radius =
        std::pow(10.0, rng.uniform(options.local_log_radius_lo, options.local_log_radius_hi));
    Vector x = center + radius * rng.unit_vector(p.dim());
    shell_samples.push_back(make_sample(p, omega_hat, std::move(x), true));
  }

  report.tau_fit_box = fit_log_slope(box_samples, options.fit_r_lo, options.fit_r_hi);
  report.tau_fit = fit_log_slope(shell_samples, options.fit_r_lo, options.fit_r_hi);

  for (auto* group : {&box_samples, &shell_samples}) {
    for (auto& s : *group) {
      if (!(s.r > options.residual_floor)) {
        ++report.excluded;
        continue;
      }
      s.ratio = s.dist / s.r;
      report.c_estimate = std::max(report.c_estimate, s.ratio);
      report.ratios.push_back(std::move(s));
    }
  }
  return report;
}

std::string to_string(ProbeTarget target) {
  switch (target) {
    case ProbeTarget::A51i: return "assumption-5.1(i)";
    case ProbeTarget::A51ii: return "assumption-5.1(ii)";
    case ProbeTarget::A52: return "assumption-5.2";
    case ProbeTarget::C54: return "condition-5.4";
  }
  return "unknown";
}

std::string AssumptionProbeResult::summary() const {
  return violation_found ? "ViolationFound" : "ConsistentWithinBudget";
}

AssumptionProbeResult falsify_assumption_5_1(const GpcpProblem& p, MonotoneVariant variant,
                                             const std::vector<double>& rho_grid, int pair_budget,
                                             std::uint64_t seed) {
  if (rho_grid.empty()) throw InvalidArgument("rho grid must not be empty");
  if (pair_budget < 0) throw InvalidArgument("pair budget must be nonnegative");
  const int n = p.dim();

  std::vector<std::pair<Vector, Vector>> pairs;
  if (n == 2) {
    for (int k = 0; k <= 6; ++k) {
      const double e = std::pow(10.0, -k);
      pairs.emplace_back(Vector{{e, e / 2.0}}, Vector{{e, e}});
    }
  }
  Rng rng(seed);
  for (int s = 0; s < pair_budget; ++s) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-2.0, 2.0);
    // Half the random pairs are close together, where the product terms are
    // of higher order in ||x - y||.
    const double spread = s % 2 == 0 ? 1.0 : std::pow(10.0, rng.uniform(-6.0, -1.0));
    Vector y = x + spread * rng.unit_vector(n);
    pairs.emplace_back(std::move(x), std::move(y));
  }

  struct Evaluated {
    double value;
    double dist2;
  };
  std::vector<Evaluated> evaluated;
  evaluated.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    const Vector df = p.f().evaluate(x) - p.f().evaluate(y);
    const Vector dg = p.g().evaluate(x) - p.g().evaluate(y);
    const double value = variant == MonotoneVariant::I ? df.cwiseProduct(dg).maxCoeff() : df.dot(dg);
    evaluated.push_back({value, (x - y).squaredNorm()});
  }

  AssumptionProbeResult result;
  result.target = variant == MonotoneVariant::I ? ProbeTarget::A51i : ProbeTarget::A51ii;
  bool all_violated = true;
  for (double rho : rho_grid) {
    RhoProbe probe;
    probe.rho = rho;
    probe.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& e = evaluated[i];
      if (e.dist2 == 0.0) continue;
      ++probe.pairs_tested;
      probe.min_slack = std::min(probe.min_slack, e.value / e.dist2 - rho);
      const double bound = rho * e.dist2;
      if (!probe.violated && e.value <= bound) {
        probe.violated = true;
        probe.witness = PairWitness{pairs[i].first, pairs[i].second, rho, e.value, bound};
      }
    }
    all_violated = all_violated && probe.violated;
    result.rho_probes.push_back(std::move(probe));
  }
  result.violation_found = all_violated;
  return result;
}

std::vector<double> default_radii() {
  std::vector<double> radii;
  for (int k = 1; k <= 30; ++k) radii.push_back(std::ldexp(1.0, -k));
  return radii;
}

std::vector<double> default_scales() {
  std::vector<double> scales;
  for (int k = 1; k <= 40; ++k) scales.push_back(std::ldexp(1.0, k));
  return scales;
}

AssumptionProbeResult probe_assumption_5_2(const GpcpProblem& p, const Vector& xbar,
                                           const std::vector<Vector>& directions,
                                           const std::vector<double>& radii,
                                           const ProbeOptions& options) {
  require_orthant(p, "the min-map ratio probe");
  if (!is_solution(p, xbar, kSolutionTol).accepted) {
    throw NotASolution("probe point is not a solution within 1e-8");
  }
  if (radii.empty()) throw InvalidArgument("radius schedule must not be empty");
  const int n = p.dim();
  const auto last = radii.size() - 1;
  const auto earlier = radii.size() > static_cast<std::size_t>(options.window)
                           ? last - static_cast<std::size_t>(options.window)
                           : 0;

  AssumptionProbeResult result;
  result.target = ProbeTarget::A52;
  for (const auto& raw : directions) {
    DirectionProbe probe;
    probe.direction = unit(raw);
    probe.radii = radii;
    probe.ratios.assign(static_cast<std::size_t>(n), {});
    for (double r : radii) {
      const Vector m = min_map(p, xbar + r * probe.direction);
      for (int j = 0; j < n; ++j) probe.ratios[static_cast<std::size_t>(j)].push_back(m[j] / r);
    }
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      const auto& seq = probe.ratios[static_cast<std::size_t>(j)];
      const double a = seq[last];
      const double b = seq[earlier];
      const double scale = std::max(std::abs(a), std::abs(b));
      const bool stable = scale < 1e-12 || std::abs(a - b) <= options.stabilization * scale;
      probe.limits.push_back(a);
      probe.stable.push_back(stable);
      if (stable && std::abs(a) > best) {
        best = std::abs(a);
        probe.j0 = j;
        probe.limit = a;
      }
    }
    probe.violation = probe.j0 < 0 || std::abs(probe.limit) < options.nonzero_limit;
    result.violation_found = result.violation_found || probe.violation;
    result.directions.push_back(std::move(probe));
  }
  return result;
}

AssumptionProbeResult probe_condition_5_4(const GpcpProblem& p,
                                          const std::vector<Vector>& ray_directions,
                                          const std::vector<double>& scales,
                                          const ProbeOptions& options) {
  require_orthant(p, "the diverging-ray probe");
  const int n = p.dim();
  const auto window = static_cast<std::size_t>(options.window);

  AssumptionProbeResult result;
  result.target = ProbeTarget::C54;
  for (const auto& raw : ray_directions) {
    RayProbe probe;
    probe.direction = unit(raw);
    std::vector<double> neg_f, neg_g;
    std::vector<std::vector<double>> mins(static_cast<std::size_t>(n));
    for (double s : scales) {
      const Vector x = s * probe.direction;
      const Vector fx = p.f().evaluate(x);
      const Vector gx = p.g().evaluate(x);
      if (overflowed(fx, options.overflow) || overflowed(gx, options.overflow)) {
        probe.truncated = true;
        break;
      }
      const double norm = x.norm();
      probe.scales.push_back(s);
      neg_f.push_back((-fx).cwiseMax(0.0).norm() / norm);
      neg_g.push_back((-gx).cwiseMax(0.0).norm() / norm);
      for (int j = 0; j < n; ++j) {
        mins[static_cast<std::size_t>(j)].push_back(std::min(fx[j], gx[j]) / norm);
      }
    }

    if (probe.scales.size() < window) {
      probe.note = "too few finite evaluations";
      result.rays.push_back(std::move(probe));
      continue;
    }
    auto tail_mean = [&](const std::vector<double>& seq) {
      return std::accumulate(seq.end() - static_cast<std::ptrdiff_t>(window), seq.end(), 0.0) /
             static_cast<double>(window);
    };
    probe.neg_f_tail = tail_mean(neg_f);
    probe.neg_g_tail = tail_mean(neg_g);
    probe.premise_met = probe.neg_f_tail < options.premise_tol && probe.neg_g_tail < options.premise_tol;
    if (!probe.premise_met) {
      probe.note = "premise not met";
      result.rays.push_back(std::move(probe));
      continue;
    }

    probe.j0_limsup = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const auto& seq = mins[static_cast<std::size_t>(j)];
      const double limsup = *std::max_element(seq.end() - static_cast<std::ptrdiff_t>(window), seq.end());
      probe.limsup.push_back(limsup);
      if (limsup > probe.j0_limsup) {
        probe.j0_limsup = limsup;
        probe.j0 = j;
      }
    }
    probe.violation = probe.j0_limsup <= options.premise_tol;
    if (probe.violation) {
      probe.j0 = -1;
      probe.note = "no component with positive limsup";
    }
    result.violation_found = result.violation_found || probe.violation;
    result.rays.push_back(std::move(probe));
  }
  return result;
}

}  // namespace gpcp
