#include "gpcp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "gpcp/errors.hpp"
#include "gpcp/random.hpp"

namespace gpcp {

namespace {

constexpr double kFdStep = 1e-7;
constexpr double kArmijo = 1e-4;
constexpr double kMaxStep = 1e2;
constexpr double kMinStep = 1e-20;
constexpr double kLogSlackLo = -4.0;  // log10 of the smallest initial slack
constexpr double kRefineGate = 1e-6;
constexpr int kPolishIters = 200;

using Objective = std::function<double(const Vector&)>;
using Gradient = std::function<Vector(const Vector&)>;
using Projector = std::function<std::optional<Vector>(const Vector&)>;

struct Descent {
  Vector z;
  double value;
};

// Projected gradient with Armijo backtracking along the projection arc.
Descent projected_descent(const Objective& f, const Gradient& grad, const Projector& proj,
                          Vector z, int iters) {
  double fz = f(z);
  double step = 1.0;
  for (int it = 0; it < iters && fz > 0.0; ++it) {
    const Vector g = grad(z);
    if (!g.allFinite() || g.squaredNorm() == 0.0) break;
    bool moved = false;
    while (step >= kMinStep) {
      const auto candidate = proj(z - step * g);
      if (candidate) {
        const double fc = f(*candidate);
        if (std::isfinite(fc) && fc <= fz - kArmijo * g.dot(z - *candidate)) {
          moved = (*candidate - z).norm() > 1e-15 * std::max(1.0, z.norm());
          z = *candidate;
          fz = fc;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) break;
    step = std::min(2.0 * step, kMaxStep);
  }
  return {std::move(z), fz};
}

Vector central_difference(const Objective& f, const Vector& z) {
  Vector g(z.size());
  Vector probe = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    probe[i] = z[i] + kFdStep;
    const double up = f(probe);
    probe[i] = z[i] - kFdStep;
    const double down = f(probe);
    probe[i] = z[i];
    g[i] = (up - down) / (2.0 * kFdStep);
  }
  return g;
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Minimum value first, then lexicographic on (x, v, t).
bool better(const Witness& a, const Witness& b) {
  if (a.value != b.value) return a.value < b.value;
  if (lex_less(a.x, b.x)) return true;
  if (lex_less(b.x, a.x)) return false;
  if (a.v != b.v) return a.v < b.v;
  return a.t < b.t;
}

void require_pair(const DenseTensor& a, const DenseTensor& b, const Cone& k) {
  if (a.dim() != b.dim() || a.dim() != k.dim()) {
    throw DimensionError("tensor pair and cone must share one dimension");
  }
}

// Orthant slacks are the negative parts; other cones use projection or
// halfspace violation.
double cone_slack(const Cone& k, const Vector& u) {
  return k.kind() == Cone::Kind::NonnegativeOrthant ? u.cwiseMin(0.0).norm() : violation(k, u);
}

std::optional<Vector> normalized(Vector x) {
  const double norm = x.norm();
  if (!(norm > 1e-12) || !std::isfinite(norm)) return std::nullopt;
  return x / norm;
}

ClassificationVerdict pair_search(Query query, const DenseTensor& a, const DenseTensor& b,
                                  const Cone& k, SearchBudget budget, std::uint64_t seed) {
  require_pair(a, b, k);
  if (budget.starts < 1 || budget.iters < 0) throw InvalidArgument("search budget must be positive");
  const int n = a.dim();
  const bool slacks = query == Query::ErPair;
  const Cone dual_k = dual(k);

  // z = (x, v, t) for the ER query, z = x for R0.
  auto split = [&](const Vector& z) {
    return std::tuple<Vector, double, double>{z.head(n), slacks ? z[n] : 0.0, slacks ? z[n + 1] : 0.0};
  };
  auto merit_at = [&](const Vector& x, double v, double t) {
    const Vector u = contract_to_vector(a, x) + v * x;
    const Vector w = contract_to_vector(b, x) + t * x;
    const double cv = cone_slack(k, u);
    const double dv = cone_slack(dual_k, w);
    const double in = u.dot(w);
    return cv * cv + dv * dv + in * in;
  };
  const Objective merit = [&](const Vector& z) {
    const auto [x, v, t] = split(z);
    return merit_at(x, v, t);
  };
  const Gradient grad = [&](const Vector& z) { return central_difference(merit, z); };
  const Projector proj = [&](const Vector& z) -> std::optional<Vector> {
    auto x = normalized(z.head(n));
    if (!x) return std::nullopt;
    Vector out = z;
    out.head(n) = *x;
    if (slacks) {
      out[n] = std::clamp(z[n], 0.0, kSlackCap);
      out[n + 1] = std::clamp(z[n + 1], 0.0, kSlackCap);
    }
    return out;
  };

  Rng rng(seed);
  std::optional<Witness> best;
  for (int s = 0; s < budget.starts; ++s) {
    Vector z(slacks ? n + 2 : n);
    z.head(n) = rng.unit_vector(n);
    if (slacks) {
      z[n] = std::pow(10.0, rng.uniform(kLogSlackLo, std::log10(kSlackCap)));
      z[n + 1] = std::pow(10.0, rng.uniform(kLogSlackLo, std::log10(kSlackCap)));
    }
    auto result = projected_descent(merit, grad, proj, std::move(z), budget.iters);

    // Refinement: try the slack-free faces of the box, then polish x there.
    if (slacks && result.value < kRefineGate) {
      const auto [x, v, t] = split(result.z);
      for (const auto& [sv, st] : {std::pair{0.0, t}, std::pair{v, 0.0}, std::pair{0.0, 0.0}}) {
        const Objective face = [&, sv = sv, st = st](const Vector& y) { return merit_at(y, sv, st); };
        const Gradient face_grad = [&](const Vector& y) { return central_difference(face, y); };
        const Projector face_proj = [](const Vector& y) { return normalized(y); };
        auto polished = projected_descent(face, face_grad, face_proj, x, kPolishIters);
        if (polished.value < result.value) {
          Vector z2(n + 2);
          z2 << polished.z, sv, st;
          result = {std::move(z2), polished.value};
        }
      }
    }

    const auto [x, v, t] = split(result.z);
    Witness w{x, v, t, result.value};
    if (!best || better(w, *best)) best = std::move(w);
  }

  ClassificationVerdict verdict;
  verdict.query = query;
  verdict.best = *best;
  verdict.counterexample_found = best->value < kPairMeritThreshold;
  verdict.budget_used = budget.starts;
  verdict.iters_per_start = budget.iters;
  return verdict;
}

// Minimizes A x^m over {||x|| = 1} intersected with whatever `proj` enforces.
ClassificationVerdict form_search(Query query, const DenseTensor& a, SearchBudget budget,
                                  std::uint64_t seed, const Projector& proj,
                                  const std::function<std::optional<Vector>(Rng&)>& draw) {
  if (budget.starts < 1 || budget.iters < 0) throw InvalidArgument("search budget must be positive");
  const Objective form = [&](const Vector& x) { return contract_to_scalar(a, x); };
  const Gradient grad = [&](const Vector& x) { return contract_gradient(a, x); };

  Rng rng(seed);
  std::optional<Witness> best;
  int used = 0;
  for (int s = 0; s < budget.starts; ++s) {
    auto x0 = draw(rng);
    if (!x0) continue;
    ++used;
    // projected_descent stops at nonpositive values, so shift the objective
    // by a bound on |A x^m| over the unit sphere.
    const double shift = frobenius_norm(a) + 1.0;
    const Objective shifted = [&](const Vector& x) { return form(x) + shift; };
    auto result = projected_descent(shifted, grad, proj, std::move(*x0), budget.iters);
    Witness w{result.z, 0.0, 0.0, form(result.z)};
    if (!best || better(w, *best)) best = std::move(w);
  }
  if (!best) throw InvalidArgument("no feasible starting point could be drawn");

  ClassificationVerdict verdict;
  verdict.query = query;
  verdict.best = *best;
  verdict.counterexample_found = best->value <= kDefiniteThreshold;
  verdict.budget_used = used;
  verdict.iters_per_start = budget.iters;
  return verdict;
}

}  // namespace

std::string to_string(Query q) {
  switch (q) {
    case Query::ErPair: return "er-pair";
    case Query::R0Pair: return "r0-pair";
    case Query::PositiveDefinite: return "pd";
    case Query::StrictlyCopositive: return "copositive";
    case Query::StrictlyKPositive: return "k-positive";
    case Query::SMapsConeIntoCone: return "smap";
  }
  return "unknown";
}

std::string ClassificationVerdict::summary() const {
  if (counterexample_found) return "CounterexampleFound";
  const char* unit = query == Query::SMapsConeIntoCone ? " samples)" : " starts)";
  return "NoCounterexampleFound (budget " + std::to_string(budget_used) + unit;
}

ErTerms er_terms(const DenseTensor& a, const DenseTensor& b, const Cone& k, const Vector& x,
                 double v, double t) {
  require_pair(a, b, k);
  const Vector u = contract_to_vector(a, x) + v * x;
  const Vector w = contract_to_vector(b, x) + t * x;
  return {cone_slack(k, u), cone_slack(dual(k), w), u.dot(w)};
}

ClassificationVerdict find_er_counterexample(const DenseTensor& a, const DenseTensor& b,
                                             const Cone& k, SearchBudget budget,
                                             std::uint64_t seed) {
  return pair_search(Query::ErPair, a, b, k, budget, seed);
}

ClassificationVerdict find_r0_counterexample(const DenseTensor& a, const DenseTensor& b,
                                             const Cone& k, SearchBudget budget,
                                             std::uint64_t seed) {
  return pair_search(Query::R0Pair, a, b, k, budget, seed);
}

ClassificationVerdict check_positive_definite(const DenseTensor& a, SearchBudget budget,
                                              std::uint64_t seed) {
  if (a.order() % 2 != 0) {
    throw OddOrderError("positive definiteness needs an even-order tensor, got order " +
                        std::to_string(a.order()));
  }
  return form_search(
      Query::PositiveDefinite, a, budget, seed, [](const Vector& x) { return normalized(x); },
      [n = a.dim()](Rng& rng) -> std::optional<Vector> { return rng.unit_vector(n); });
}

ClassificationVerdict check_strictly_copositive(const DenseTensor& a, SearchBudget budget,
                                                std::uint64_t seed) {
  return form_search(
      Query::StrictlyCopositive, a, budget, seed,
      [](const Vector& x) { return normalized(x.cwiseMax(0.0)); },
      [n = a.dim()](Rng& rng) -> std::optional<Vector> { return rng.unit_vector(n).cwiseAbs(); });
}

ClassificationVerdict check_strictly_k_positive(const DenseTensor& a, const Cone& k,
                                                SearchBudget budget, std::uint64_t seed) {
  if (a.dim() != k.dim()) throw DimensionError("tensor and cone must share one dimension");
  if (!k.supports_projection()) {
    throw ProjectionUnsupported("strict K-positivity search needs a cone with a projection");
  }
  return form_search(
      Query::StrictlyKPositive, a, budget, seed,
      [&k](const Vector& x) { return normalized(project(k, x)); },
      [&k, n = a.dim()](Rng& rng) { return normalized(project(k, rng.normal_vector(n))); });
}

Vector s_map(const GpcpProblem& p, const Vector& x) { return x - p.f().evaluate(x); }

ClassificationVerdict check_s_map_invariance(const GpcpProblem& p, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("sample count must be positive");
  const Cone& k = p.cone();
  const int n = p.dim();
  const double tol = k.options().membership_tol;
  Rng rng(seed);

  auto draw = [&]() -> std::optional<Vector> {
    const double scale = std::pow(10.0, rng.uniform(-2.0, 2.0));
    switch (k.kind()) {
      case Cone::Kind::NonnegativeOrthant:
        return scale * rng.normal_vector(n).cwiseAbs();
      case Cone::Kind::FinitelyGenerated: {
        Vector x = Vector::Zero(n);
        for (const auto& g : k.generators()) x += std::abs(rng.normal()) * g;
        return scale * x;
      }
      case Cone::Kind::DualOfFinitelyGenerated:
        for (int attempt = 0; attempt < 1000; ++attempt) {
          Vector x = rng.normal_vector(n);
          if (contains(k, x)) return scale * x;
        }
        return std::nullopt;
    }
    return std::nullopt;
  };

  ClassificationVerdict verdict;
  verdict.query = Query::SMapsConeIntoCone;
  verdict.best.value = -1.0;
  int used = 0;
  for (int s = 0; s < samples; ++s) {
    auto x = draw();
    if (!x) continue;
    ++used;
    const double viol = violation(k, s_map(p, *x));
    if (viol > tol) {
      verdict.counterexample_found = true;
      verdict.best = {*x, 0.0, 0.0, viol};
      break;
    }
    if (viol > verdict.best.value) verdict.best = {*x, 0.0, 0.0, viol};
  }
  verdict.budget_used = used;
  return verdict;
}

}  // namespace gpcp
