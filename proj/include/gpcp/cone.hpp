#pragma once

#include <vector>

#include "gpcp/tensor.hpp"

namespace gpcp {

struct ConeOptions {
  double membership_tol = 1e-8;
  /// Projected-gradient stopping rule for finitely generated cones.
  double projection_step_tol = 1e-10;
  int projection_max_iters = 100000;
};

/// Closed convex cone in R^n: the nonnegative orthant, a cone spanned by
/// finitely many generators, or the dual of such a cone (given by the same
/// generators as halfspace normals).
class Cone {
 public:
  enum class Kind { NonnegativeOrthant, FinitelyGenerated, DualOfFinitelyGenerated };

  static Cone orthant(int dim, ConeOptions options = {});
  static Cone generated(std::vector<Vector> generators, ConeOptions options = {});
  static Cone dual_of_generated(std::vector<Vector> generators, ConeOptions options = {});

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  const ConeOptions& options() const { return options_; }
  bool supports_projection() const { return kind_ != Kind::DualOfFinitelyGenerated; }

 private:
  Cone(Kind kind, int dim, std::vector<Vector> generators, ConeOptions options);

  Kind kind_;
  int dim_;
  std::vector<Vector> generators_;
  ConeOptions options_;
};

/// Projection onto a finitely generated cone together with the nonnegative
/// generator weights that produce it.
struct GeneratedProjection {
  Vector point;
  Vector weights;
  int iterations = 0;
};

Vector project(const Cone& k, const Vector& x);
GeneratedProjection project_generated(const Cone& k, const Vector& x);

/// Generalized Jacobian of the projection at x. For the orthant a 0/1 diagonal
/// where exact zeros map to 0; for generated cones the orthogonal projector
/// onto the span of generators with positive weight.
Matrix projection_jacobian(const Cone& k, const Vector& x);

Cone dual(const Cone& k);

/// ||x - P_K(x)||.
double distance(const Cone& k, const Vector& x);

/// Nonnegative measure of how far x is from lying in k: the Euclidean
/// distance when k supports projection, otherwise the norm of the normalized
/// halfspace violations.
double violation(const Cone& k, const Vector& x);
double dual_violation(const Cone& k, const Vector& y);

bool contains(const Cone& k, const Vector& x);

}  // namespace gpcp
