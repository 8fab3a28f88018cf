#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gpcp/errors.hpp"
#include "gpcp/io.hpp"
#include "gpcp/problem.hpp"
#include "oracles.hpp"

using namespace gpcp;

TEST_CASE("min map on example_5_1") {
  const auto p = fixtures::example_5_1();
  CHECK(min_map(p, Vector{{1.0, 1.0}}) == Vector{{0.0, 0.0}});
  CHECK(min_map(p, Vector{{0.0, 0.0}}) == Vector{{-1.0, 0.0}});
  for (const auto& [tau, eps] : {std::pair{0.0, 0.1}, std::pair{-0.05, 0.02}, std::pair{0.01, 0.3}}) {
    const Vector m = min_map(p, Vector{{1.0 + tau, 1.0 + eps}});
    CHECK(m[1] == doctest::Approx((1 + eps) * (1 + eps) * (eps - tau)).epsilon(1e-12));
    CHECK(m[0] == doctest::Approx(tau * tau * tau + 3 * tau * tau + 3 * tau).epsilon(1e-12));
  }
}

TEST_CASE("natural residual") {
  CHECK(natural_residual(fixtures::example_5_1(), Vector{{1.0, 1.0}}) == 0.0);
  CHECK(natural_residual(fixtures::example_5_1(), Vector{{0.0, 0.0}}) == 1.0);
  CHECK(natural_residual(fixtures::tcp_unit(), Vector{{1.0, 1.0}}) == 0.0);
}

TEST_CASE("normal map") {
  const auto p = fixtures::example_5_1();
  CHECK(normal_map(p, Vector{{0.0, 0.0}}) == Vector{{-1.0, 0.0}});
  CHECK(normal_map(p, Vector{{1.0, 1.0}}) == Vector{{0.0, 0.0}});

  // F = G: P_K(0) = 0 so Phi = F, which vanishes only at the origin.
  const auto k = Cone::generated({Vector{{1.0, 0.0}}, Vector{{1.0, 1.0}}});
  const auto f = PolyMap::affine(Matrix::Identity(2, 2), Vector::Zero(2));
  const GpcpProblem same(f, f, k);
  CHECK((normal_map(same, Vector{{2.0, 1.0}}) - Vector{{2.0, 1.0}}).norm() <= 1e-12);
  CHECK(normal_map(same, Vector::Zero(2)).norm() <= 1e-12);
}

TEST_CASE("is_solution diagnostics") {
  const auto p = fixtures::example_5_1();
  CHECK(is_solution(p, Vector{{1.0, 1.0}}, 1e-9).accepted);
  const auto bad = is_solution(p, Vector{{0.0, 0.0}}, 1e-9);
  CHECK_FALSE(bad.accepted);
  CHECK(bad.feas_f == 1.0);
  CHECK(bad.feas_g == 0.0);
}

TEST_CASE("orthant-only operations reject other cones") {
  const auto k = Cone::generated({Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}});
  const GpcpProblem p(PolyMap::identity(2), PolyMap::identity(2), k);
  CHECK_THROWS_AS(min_map(p, Vector::Zero(2)), UnsupportedCone);
  CHECK_THROWS_AS(natural_residual(p, Vector::Zero(2)), UnsupportedCone);
  CHECK_NOTHROW(is_solution(p, Vector::Zero(2), 1e-9));

  const GpcpProblem halfspace(PolyMap::identity(2), PolyMap::identity(2),
                              Cone::dual_of_generated({Vector{{1.0, 0.0}}}));
  CHECK_THROWS_AS(normal_map(halfspace, Vector::Zero(2)), ProjectionUnsupported);
  CHECK_THROWS_AS(is_solution(p, Vector::Zero(3), 1e-9), DimensionError);
  CHECK_THROWS_AS(GpcpProblem(PolyMap::identity(2), PolyMap::identity(3), Cone::orthant(2)), DimensionError);
}

TEST_CASE("min-map and complementarity tests agree on random points") {
  std::mt19937_64 gen(404);
  int disagreements = 0;
  for (const auto& p : {fixtures::example_5_1(), fixtures::tcp_unit(), fixtures::lcp_demo()}) {
    for (int s = 0; s < 10000 / 3; ++s) {
      const Vector x = oracle::random_vector(gen, 2, -0.5, 2.5);
      const double tol = 1e-6;
      disagreements += (natural_residual(p, x) <= tol) != is_solution(p, x, tol).accepted;
    }
    // exact fixtures
    CHECK(natural_residual(p, Vector{{1.0, p.name() == "lcp_demo" ? 2.0 : 1.0}}) == 0.0);
    CHECK(is_solution(p, Vector{{1.0, p.name() == "lcp_demo" ? 2.0 : 1.0}}, 0.0).accepted);
  }
  CHECK(disagreements == 0);
}

TEST_CASE("small normal map implies small residual") {
  const auto p = fixtures::lcp_demo();
  std::mt19937_64 gen(5);
  for (int s = 0; s < 1000; ++s) {
    const Vector x = oracle::random_vector(gen, 2, -1.0, 3.0);
    if (normal_map(p, x).norm() <= 1e-9) CHECK(natural_residual(p, x) <= 1e-6);
  }
  CHECK(normal_map(p, Vector{{1.0, 2.0}}).norm() <= 1e-9);
}

TEST_CASE("residual is locally Lipschitz on a box") {
  const auto p = fixtures::example_5_1();
  std::mt19937_64 gen(6);
  // |d r| <= ||J|| ||dx||; the Jacobian Frobenius norm on the box stays below 25.
  for (int s = 0; s < 2000; ++s) {
    const Vector x = oracle::random_vector(gen, 2, 0.0, 2.0);
    const Vector y = x + 1e-3 * oracle::random_vector(gen, 2);
    CHECK(std::abs(natural_residual(p, x) - natural_residual(p, y)) <= 25.0 * (x - y).norm());
  }
}
