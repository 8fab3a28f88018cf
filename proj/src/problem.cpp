#include "gpcp/problem.hpp"

#include <cmath>

#include "gpcp/errors.hpp"

namespace gpcp {

namespace {

void require_orthant(const GpcpProblem& p, const char* what) {
  if (!p.orthant()) {
    throw UnsupportedCone(std::string(what) + " is defined only for the nonnegative orthant");
  }
}

void require_dim(const GpcpProblem& p, const Vector& x) {
  if (x.size() != p.dim()) {
    throw DimensionError("point has length " + std::to_string(x.size()) + ", problem dim is " +
                         std::to_string(p.dim()));
  }
}

}  // namespace

GpcpProblem::GpcpProblem(PolyMap f, PolyMap g, Cone cone, std::string name)
    : f_(std::move(f)), g_(std::move(g)), cone_(std::move(cone)), name_(std::move(name)) {
  if (f_.dim() != g_.dim() || f_.dim() != cone_.dim()) {
    throw DimensionError("F, G and the cone must share one dimension (got " +
                         std::to_string(f_.dim()) + ", " + std::to_string(g_.dim()) + ", " +
                         std::to_string(cone_.dim()) + ")");
  }
  if (f_.degree_plus_one() < 2 || g_.degree_plus_one() < 2) {
    throw InvalidArgument("F and G must have degree at least one");
  }
}

Vector min_map(const GpcpProblem& p, const Vector& x) {
  require_orthant(p, "the min-map");
  require_dim(p, x);
  return p.f().evaluate(x).cwiseMin(p.g().evaluate(x));
}

double natural_residual(const GpcpProblem& p, const Vector& x) { return min_map(p, x).norm(); }

Vector normal_map(const GpcpProblem& p, const Vector& x) {
  require_dim(p, x);
  const Vector fx = p.f().evaluate(x);
  if (p.orthant()) return fx.cwiseMin(p.g().evaluate(x));
  return fx - project(p.cone(), fx - p.g().evaluate(x));
}

Matrix normal_map_jacobian(const GpcpProblem& p, const Vector& x) {
  require_dim(p, x);
  const Vector fx = p.f().evaluate(x);
  const Vector gx = p.g().evaluate(x);
  const Matrix jf = p.f().jacobian(x);
  const Matrix jg = p.g().jacobian(x);
  if (p.orthant()) {
    Matrix jac = jf;
    for (Eigen::Index j = 0; j < jac.rows(); ++j) {
      if (gx[j] < fx[j]) jac.row(j) = jg.row(j);
    }
    return jac;
  }
  const Matrix jp = projection_jacobian(p.cone(), fx - gx);
  return jf - jp * (jf - jg);
}

SolutionCheck is_solution(const GpcpProblem& p, const Vector& x, double tol) {
  require_dim(p, x);
  const Vector fx = p.f().evaluate(x);
  const Vector gx = p.g().evaluate(x);
  SolutionCheck check;
  check.feas_f = violation(p.cone(), fx);
  check.feas_g = dual_violation(p.cone(), gx);
  check.gap = std::abs(fx.dot(gx)) / (1.0 + fx.norm() * gx.norm());
  check.accepted = check.feas_f <= tol && check.feas_g <= tol && check.gap <= tol;
  return check;
}

}  // namespace gpcp
