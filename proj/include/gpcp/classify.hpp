#pragma once

#include <cstdint>
#include <string>

#include "gpcp/problem.hpp"

namespace gpcp {

enum class Query {
  ErPair,
  R0Pair,
  PositiveDefinite,
  StrictlyCopositive,
  StrictlyKPositive,
  SMapsConeIntoCone,
};

std::string to_string(Query q);

struct SearchBudget {
  int starts = 256;
  int iters = 500;  ///< descent iterations per start
};

/// Best point found by a search. For pair queries `value` is the merit; for
/// definiteness queries it is A x^m; for the S-map query it is the cone
/// violation of x - F(x).
struct Witness {
  Vector x;
  double v = 0.0;
  double t = 0.0;
  double value = 0.0;
};

/// Outcome of a counterexample search. A negative answer only means nothing
/// was found within the budget.
struct ClassificationVerdict {
  Query query = Query::ErPair;
  bool counterexample_found = false;
  Witness best;           ///< witness, or the best point seen when none was found
  int budget_used = 0;    ///< starts (or samples for the S-map query)
  int iters_per_start = 0;

  /// "CounterexampleFound" or "NoCounterexampleFound (budget N starts)".
  std::string summary() const;
};

/// The three slacks of the augmented complementarity system
///   A x^{m-1} + v x in K,  B x^{l-1} + t x in K*,  <., .> = 0.
struct ErTerms {
  double cone_violation = 0.0;
  double dual_violation = 0.0;
  double inner = 0.0;

  double merit() const {
    return cone_violation * cone_violation + dual_violation * dual_violation + inner * inner;
  }
};

ErTerms er_terms(const DenseTensor& a, const DenseTensor& b, const Cone& k, const Vector& x,
                 double v, double t);

inline constexpr double kPairMeritThreshold = 1e-16;
inline constexpr double kDefiniteThreshold = 1e-10;
inline constexpr double kSlackCap = 100.0;

/// Multistart projected descent over {||x|| = 1, 0 <= v, t <= 100}.
ClassificationVerdict find_er_counterexample(const DenseTensor& a, const DenseTensor& b,
                                             const Cone& k, SearchBudget budget,
                                             std::uint64_t seed);

/// Same search with v = t = 0 held fixed.
ClassificationVerdict find_r0_counterexample(const DenseTensor& a, const DenseTensor& b,
                                             const Cone& k, SearchBudget budget,
                                             std::uint64_t seed);

/// Minimizes A x^m over the unit sphere. Throws OddOrderError for odd order.
ClassificationVerdict check_positive_definite(const DenseTensor& a, SearchBudget budget,
                                              std::uint64_t seed);

/// Minimizes A x^m over {x >= 0, ||x|| = 1}.
ClassificationVerdict check_strictly_copositive(const DenseTensor& a, SearchBudget budget,
                                                std::uint64_t seed);

/// Minimizes A x^m over {x in K, ||x|| = 1}; K must support projection.
ClassificationVerdict check_strictly_k_positive(const DenseTensor& a, const Cone& k,
                                                SearchBudget budget, std::uint64_t seed);

/// S(x) = x - F(x).
Vector s_map(const GpcpProblem& p, const Vector& x);

/// Samples points of K at several magnitudes and reports one whose image
/// under S leaves K.
ClassificationVerdict check_s_map_invariance(const GpcpProblem& p, int samples,
                                             std::uint64_t seed);

}  // namespace gpcp
