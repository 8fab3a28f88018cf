#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gpcp/cone.hpp"
#include "gpcp/errors.hpp"
#include "oracles.hpp"

using namespace gpcp;

namespace {

std::vector<Cone> sample_cones() {
  return {
      Cone::orthant(3),
      Cone::generated({Vector{{1.0, 0.0, 0.0}}, Vector{{1.0, 1.0, 0.0}}, Vector{{0.0, 1.0, 1.0}}}),
      Cone::generated({Vector{{1.0, 2.0, -1.0}}, Vector{{-1.0, 1.0, 1.0}}}),
  };
}

Vector sample_in(const Cone& k, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  if (k.kind() == Cone::Kind::NonnegativeOrthant) return oracle::random_vector(gen, k.dim(), 0.0, 2.0);
  Vector x = Vector::Zero(k.dim());
  for (const auto& g : k.generators()) x += u(gen) * g;
  return x;
}

}  // namespace

TEST_CASE("orthant projection and distance") {
  const auto k = Cone::orthant(2);
  CHECK(project(k, Vector{{-1.0, 2.0}}) == Vector{{0.0, 2.0}});
  CHECK(project(k, Vector{{0.5, 2.0}}) == Vector{{0.5, 2.0}});
  CHECK(distance(k, Vector{{-3.0, 4.0}}) == 3.0);
  CHECK(distance(k, Vector{{3.0, 4.0}}) == 0.0);
}

TEST_CASE("generated cone projections") {
  const auto ray = Cone::generated({Vector{{1.0, 0.0}}});
  CHECK(project(ray, Vector{{0.0, 1.0}}).norm() <= 1e-12);
  const auto diag = Cone::generated({Vector{{1.0, 1.0}}});
  CHECK(distance(diag, Vector{{1.0, -1.0}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK((project(diag, Vector{{3.0, 1.0}}) - Vector{{2.0, 2.0}}).norm() <= 1e-8);
}

TEST_CASE("dual cones") {
  CHECK(dual(Cone::orthant(2)).kind() == Cone::Kind::NonnegativeOrthant);
  const auto half = dual(Cone::generated({Vector{{1.0, 0.0}}}));
  CHECK(half.kind() == Cone::Kind::DualOfFinitelyGenerated);
  CHECK(contains(half, Vector{{0.0, -5.0}}));
  CHECK(contains(half, Vector{{2.0, 7.0}}));
  CHECK_FALSE(contains(half, Vector{{-0.1, 0.0}}));
  CHECK_THROWS_AS(project(half, Vector{{1.0, 1.0}}), ProjectionUnsupported);
  CHECK_THROWS_AS(distance(half, Vector{{1.0, 1.0}}), ProjectionUnsupported);
}

TEST_CASE("bidual membership matches on random points") {
  std::mt19937_64 gen(8);
  for (const auto& k : sample_cones()) {
    const auto kk = dual(dual(k));
    int disagreements = 0;
    for (int s = 0; s < 1000; ++s) {
      const Vector x = oracle::random_vector(gen, k.dim(), -2.0, 2.0);
      disagreements += contains(k, x) != contains(kk, x);
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("projection laws") {
  std::mt19937_64 gen(21);
  for (const auto& k : sample_cones()) {
    const double tol = k.kind() == Cone::Kind::NonnegativeOrthant ? 0.0 : 1e-6;
    for (int s = 0; s < 200; ++s) {
      const Vector x = oracle::random_vector(gen, k.dim(), -3.0, 3.0);
      const Vector y = oracle::random_vector(gen, k.dim(), -3.0, 3.0);
      const Vector px = project(k, x);
      // orthogonality and variational inequality
      CHECK(std::abs((px - x).dot(px)) <= tol + 1e-15);
      for (int q = 0; q < 5; ++q) CHECK((px - x).dot(sample_in(k, gen)) >= -tol);
      CHECK((project(k, px) - px).norm() <= 1e-9);
      CHECK((px - project(k, y)).norm() <= (x - y).norm() + 1e-9);
    }
  }
}

TEST_CASE("membership and duality are consistent") {
  std::mt19937_64 gen(34);
  for (const auto& k : sample_cones()) {
    const auto kd = dual(k);
    for (int s = 0; s < 500; ++s) {
      const Vector x = sample_in(k, gen);
      Vector y = oracle::random_vector(gen, k.dim(), -2.0, 2.0);
      if (!contains(kd, y)) continue;
      CHECK(x.dot(y) >= -1e-9);
    }
  }
}

TEST_CASE("membership tolerance is configurable") {
  ConeOptions loose;
  loose.membership_tol = 1e-3;
  CHECK(contains(Cone::orthant(2, loose), Vector{{-1e-4, 1.0}}));
  CHECK_FALSE(contains(Cone::orthant(2), Vector{{-1e-4, 1.0}}));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(project(Cone::orthant(2), Vector::Zero(3)), DimensionError);
  CHECK_THROWS_AS(Cone::generated({Vector{{0.0, 0.0}}}), InvalidArgument);
  CHECK_THROWS_AS(Cone::generated({Vector{{1.0, 0.0}}, Vector{{1.0, 0.0, 0.0}}}), DimensionError);
}
