#pragma once

#include <string>
#include <vector>

#include "gpcp/cone.hpp"
#include "gpcp/polymap.hpp"

namespace gpcp {

/// Find x with F(x) in K, G(x) in K*, <F(x), G(x)> = 0.
class GpcpProblem {
 public:
  GpcpProblem(PolyMap f, PolyMap g, Cone cone, std::string name = {});

  const PolyMap& f() const { return f_; }
  const PolyMap& g() const { return g_; }
  const Cone& cone() const { return cone_; }
  const std::string& name() const { return name_; }
  int dim() const { return f_.dim(); }
  bool orthant() const { return cone_.kind() == Cone::Kind::NonnegativeOrthant; }

 private:
  PolyMap f_;
  PolyMap g_;
  Cone cone_;
  std::string name_;
};

/// Numerical estimate of the solution set: deduplicated points with their
/// residuals.
struct SolutionSetEstimate {
  std::vector<Vector> points;
  std::vector<double> residuals;
  double dedupe_radius = 1e-6;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

struct SolutionCheck {
  bool accepted = false;
  double feas_f = 0.0;  ///< distance of F(x) from K
  double feas_g = 0.0;  ///< dual-cone violation of G(x)
  double gap = 0.0;     ///< |<F,G>| / (1 + ||F|| ||G||)
};

/// componentwise min{F(x), G(x)}; orthant only.
Vector min_map(const GpcpProblem& p, const Vector& x);

/// r(x) = ||min{F(x), G(x)}||; orthant only.
double natural_residual(const GpcpProblem& p, const Vector& x);

/// Phi(x) = F(x) - P_K(F(x) - G(x)).
Vector normal_map(const GpcpProblem& p, const Vector& x);

/// Generalized Jacobian of Phi at x. At orthant kinks (F_j = G_j) the F row
/// is taken.
Matrix normal_map_jacobian(const GpcpProblem& p, const Vector& x);

SolutionCheck is_solution(const GpcpProblem& p, const Vector& x, double tol);

}  // namespace gpcp
