#include "gpcp/cone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpcp/errors.hpp"

namespace gpcp {

namespace {

void require_dim(const Cone& k, const Vector& x) {
  if (x.size() != k.dim()) {
    throw DimensionError("cone dimension " + std::to_string(k.dim()) +
                         " does not match vector length " + std::to_string(x.size()));
  }
}

Matrix generator_matrix(const Cone& k) {
  Matrix g(k.dim(), static_cast<Eigen::Index>(k.generators().size()));
  for (std::size_t i = 0; i < k.generators().size(); ++i) {
    g.col(static_cast<Eigen::Index>(i)) = k.generators()[i];
  }
  return g;
}

}  // namespace

Cone::Cone(Kind kind, int dim, std::vector<Vector> generators, ConeOptions options)
    : kind_(kind), dim_(dim), generators_(std::move(generators)), options_(options) {
  if (dim_ < 1) throw InvalidArgument("cone dimension must be positive");
  if (options_.membership_tol < 0.0) throw InvalidArgument("membership tolerance must be >= 0");
  for (const auto& g : generators_) {
    if (g.size() != dim_) throw DimensionError("generators must share a common length");
    if (!g.allFinite() || g.norm() == 0.0) {
      throw InvalidArgument("generators must be finite and nonzero");
    }
  }
}

Cone Cone::orthant(int dim, ConeOptions options) {
  return Cone(Kind::NonnegativeOrthant, dim, {}, options);
}

Cone Cone::generated(std::vector<Vector> generators, ConeOptions options) {
  if (generators.empty()) throw InvalidArgument("a generated cone needs at least one generator");
  const auto dim = static_cast<int>(generators.front().size());
  return Cone(Kind::FinitelyGenerated, dim, std::move(generators), options);
}

Cone Cone::dual_of_generated(std::vector<Vector> generators, ConeOptions options) {
  if (generators.empty()) throw InvalidArgument("a generated cone needs at least one generator");
  const auto dim = static_cast<int>(generators.front().size());
  return Cone(Kind::DualOfFinitelyGenerated, dim, std::move(generators), options);
}

GeneratedProjection project_generated(const Cone& k, const Vector& x) {
  if (k.kind() != Cone::Kind::FinitelyGenerated) {
    throw ProjectionUnsupported("generator-weight projection needs a finitely generated cone");
  }
  require_dim(k, x);
  const Matrix g = generator_matrix(k);
  const Matrix gram = g.transpose() * g;
  // Gershgorin bound on the largest eigenvalue of G^T G.
  const double lipschitz = gram.cwiseAbs().rowwise().sum().maxCoeff();
  const double step = 1.0 / lipschitz;
  const Vector gtx = g.transpose() * x;

  Vector weights = Vector::Zero(g.cols());
  int iter = 0;
  for (; iter < k.options().projection_max_iters; ++iter) {
    Vector next = (weights - step * (gram * weights - gtx)).cwiseMax(0.0);
    const double change = (next - weights).norm();
    weights = std::move(next);
    if (change < k.options().projection_step_tol) {
      ++iter;
      break;
    }
  }
  return {g * weights, std::move(weights), iter};
}

Vector project(const Cone& k, const Vector& x) {
  require_dim(k, x);
  switch (k.kind()) {
    case Cone::Kind::NonnegativeOrthant:
      return x.cwiseMax(0.0);
    case Cone::Kind::FinitelyGenerated:
      return project_generated(k, x).point;
    case Cone::Kind::DualOfFinitelyGenerated:
      break;
  }
  throw ProjectionUnsupported("no projection onto a halfspace-represented dual cone");
}

Matrix projection_jacobian(const Cone& k, const Vector& x) {
  require_dim(k, x);
  switch (k.kind()) {
    case Cone::Kind::NonnegativeOrthant: {
      Vector diag = (x.array() > 0.0).cast<double>();
      return diag.asDiagonal();
    }
    case Cone::Kind::FinitelyGenerated: {
      const auto proj = project_generated(k, x);
      const double cutoff = 1e-12 * std::max(1.0, proj.weights.cwiseAbs().maxCoeff());
      std::vector<Eigen::Index> active;
      for (Eigen::Index i = 0; i < proj.weights.size(); ++i) {
        if (proj.weights[i] > cutoff) active.push_back(i);
      }
      if (active.empty()) return Matrix::Zero(k.dim(), k.dim());
      Matrix ga(k.dim(), static_cast<Eigen::Index>(active.size()));
      for (std::size_t c = 0; c < active.size(); ++c) {
        ga.col(static_cast<Eigen::Index>(c)) = k.generators()[static_cast<std::size_t>(active[c])];
      }
      Eigen::ColPivHouseholderQR<Matrix> qr(ga);
      const Matrix q = qr.householderQ() * Matrix::Identity(k.dim(), qr.rank());
      return q * q.transpose();
    }
    case Cone::Kind::DualOfFinitelyGenerated:
      break;
  }
  throw ProjectionUnsupported("no projection onto a halfspace-represented dual cone");
}

Cone dual(const Cone& k) {
  switch (k.kind()) {
    case Cone::Kind::NonnegativeOrthant:
      return Cone::orthant(k.dim(), k.options());
    case Cone::Kind::FinitelyGenerated:
      return Cone::dual_of_generated(k.generators(), k.options());
    case Cone::Kind::DualOfFinitelyGenerated:
      return Cone::generated(k.generators(), k.options());
  }
  return k;
}

double distance(const Cone& k, const Vector& x) { return (x - project(k, x)).norm(); }

double violation(const Cone& k, const Vector& x) {
  require_dim(k, x);
  switch (k.kind()) {
    case Cone::Kind::NonnegativeOrthant:
      return x.cwiseMin(0.0).norm();
    case Cone::Kind::FinitelyGenerated:
      return distance(k, x);
    case Cone::Kind::DualOfFinitelyGenerated: {
      double sum = 0.0;
      for (const auto& g : k.generators()) {
        const double s = std::min(0.0, g.dot(x) / g.norm());
        sum += s * s;
      }
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

double dual_violation(const Cone& k, const Vector& y) { return violation(dual(k), y); }

bool contains(const Cone& k, const Vector& x) {
  require_dim(k, x);
  const double tol = k.options().membership_tol;
  if (k.kind() == Cone::Kind::DualOfFinitelyGenerated) {
    return std::all_of(k.generators().begin(), k.generators().end(),
                       [&](const Vector& g) { return g.dot(x) >= -tol; });
  }
  return violation(k, x) <= tol;
}

}  // namespace gpcp
