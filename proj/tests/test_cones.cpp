#include "catch_amalgamated.hpp"

#include <random>

#include "conegen/cones.hpp"

using namespace conegen;

namespace {

// Independent 2-D decomposition oracle: solve x = a g1 + b g2 directly.
bool nonneg_combination_2d(const Vector& g1, const Vector& g2, const Vector& x) {
  Eigen::Matrix2d m;
  m << g1(0), g2(0), g1(1), g2(1);
  const Eigen::Vector2d c = m.inverse() * Eigen::Vector2d(x(0), x(1));
  return c.minCoeff() >= -1e-12;
}

Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  std::vector<Vector> v;
  for (auto row : r) v.push_back(vec(row));
  return stack_rows(v, static_cast<Eigen::Index>(r.begin()->size()));
}

PolyhedralCone random_cone(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const int k = n + static_cast<int>(rng() % 4);
    Matrix g(k, n);
    for (int i = 0; i < k; ++i) {
      g(i, 0) = 1.0;
      for (int j = 1; j < n; ++j) g(i, j) = u(rng);
    }
    try {
      return PolyhedralCone::from_generators(g);
    } catch (const InputError&) {
      // degenerate draw (e.g. coplanar generators); redraw
    }
  }
}

Vector random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  return Vector::NullaryExpr(n, [&](Eigen::Index) { return g(rng); });
}

}  // namespace

TEST_CASE("cones: membership in the orthant and in a generated cone", "[cones]") {
  const auto orth = PolyhedralCone::coordinate(2);
  CHECK(cone_contains(orth, vec({1, 2}), 0));
  CHECK_FALSE(cone_contains(orth, vec({1, -1}), 0));

  const auto c = PolyhedralCone::from_generators(rows({{1, 0}, {1, 1}}));
  const Vector x = vec({2, 1});
  REQUIRE(nonneg_combination_2d(vec({1, 0}), vec({1, 1}), x));
  CHECK(cone_contains(c, x, 0));
}

TEST_CASE("cones: order relation", "[cones]") {
  const auto orth = PolyhedralCone::coordinate(2);
  CHECK(cone_order_leq(orth, vec({0, 0}), vec({1, 1})));
  CHECK_FALSE(cone_order_leq(orth, vec({1, 0}), vec({0, 1})));
  CHECK_FALSE(cone_order_leq(orth, vec({0, 1}), vec({1, 0})));
  const auto c = PolyhedralCone::from_generators(rows({{1, 0}, {1, 1}}));
  CHECK(cone_order_leq(c, vec({0, 0}), vec({2, 1})));
}

TEST_CASE("cones: dual cones", "[cones]") {
  const auto orth_dual = dual_cone(PolyhedralCone::coordinate(2));
  CHECK(orth_dual.kind() == PolyhedralCone::Kind::kCoordinate);

  // Expected dual {y : y1 >= 0, y1 + y2 >= 0} has extreme rays (0,1), (1,-1).
  const auto d = dual_cone(PolyhedralCone::from_generators(rows({{1, 0}, {1, 1}})));
  CHECK(cone_contains(d, vec({0, 1})));
  CHECK(cone_contains(d, vec({1, -1})));
  CHECK_FALSE(cone_contains(d, vec({-0.01, 1})));
  CHECK_FALSE(cone_contains(d, vec({1, -1.01})));
  for (Eigen::Index r = 0; r < d.generators().rows(); ++r) {
    const Vector g = d.generators().row(r).transpose();
    CHECK(g(0) >= -1e-12);
    CHECK(g(0) + g(1) >= -1e-12);
  }

  const auto d2 = dual_cone(PolyhedralCone::from_generators(rows({{1, 0}, {0, 1}, {1, 1}})));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Vector y = random_vector(rng, 2);
    CHECK(cone_contains(d2, y, 0) == (y.minCoeff() >= 0.0));
  }
}

TEST_CASE("cones: interior and strict positivity examples", "[cones]") {
  CHECK(interior_contains(PolyhedralCone::coordinate(3), vec({1, 1, 1})));
  CHECK_FALSE(interior_contains(PolyhedralCone::coordinate(3), vec({1, 0, 1})));
  const auto c = PolyhedralCone::from_halfspaces(rows({{1, 0}, {1, 1}}));
  CHECK(interior_contains(c, vec({1, 0})));

  CHECK(is_strictly_positive(PolyhedralCone::coordinate(2), vec({1, 1})));
  CHECK_FALSE(is_strictly_positive(PolyhedralCone::coordinate(2), vec({1, 0})));
  CHECK(is_strictly_positive(PolyhedralCone::from_generators(rows({{1, 0}, {1, 1}})), vec({1, -0.5})));
}

TEST_CASE("cones: construction errors", "[cones][errors]") {
  const auto orth = PolyhedralCone::coordinate(2);
  CHECK_THROWS_AS(cone_contains(orth, vec({1, 2, 3})), InputError);
  CHECK_THROWS_AS(PolyhedralCone::from_halfspaces(rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}})), InputError);
  CHECK_THROWS_AS(PolyhedralCone::from_halfspaces(rows({{1, 0}})), InputError);  // half-plane contains a line
  CHECK_THROWS_AS(PolyhedralCone::from_halfspaces(Matrix::Identity(2, 2), rows({{1, 0}, {-1, 1}})), InputError);
  CHECK_THROWS_AS(PolyhedralCone::from_halfspaces(Matrix::Identity(2, 2), rows({{1, 0}})), InputError);
  CHECK_THROWS_AS(PolyhedralCone::weighted_coordinate(vec({1, 0})), InputError);
  CHECK_THROWS_AS(dual_cone(PolyhedralCone::from_halfspaces(Matrix::Identity(4, 4))), UnsupportedRepresentation);
  CHECK_THROWS_AS(PolyhedralCone::from_generators(Matrix::Identity(4, 4)), UnsupportedRepresentation);
}

TEST_CASE("cones: coordinate cone is self-dual", "[cones][property]") {
  for (int n = 1; n <= 8; ++n) {
    const auto d = dual_cone(PolyhedralCone::coordinate(n));
    CHECK(d.halfspaces() == Matrix::Identity(n, n));
    CHECK(d.generators() == Matrix::Identity(n, n));
  }
  // Same cone through the general path in low dimension.
  for (int n = 1; n <= 3; ++n) {
    const auto d = dual_cone(PolyhedralCone::from_halfspaces(Matrix::Identity(n, n)));
    std::mt19937_64 rng(n);
    for (int i = 0; i < 100; ++i) {
      const Vector y = random_vector(rng, n);
      CHECK(cone_contains(d, y, 0) == (y.minCoeff() >= 0.0));
    }
  }
}

TEST_CASE("cones: double dual agrees with the original on samples", "[cones][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const auto c = random_cone(rng, n);
    const auto dd = dual_cone(dual_cone(c));
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_vector(rng, n);
      const double margin = (c.halfspaces() * x).minCoeff() / c.halfspaces().rowwise().norm().maxCoeff();
      if (std::abs(margin) < 1e-7) continue;
      CHECK(cone_contains(c, x) == cone_contains(dd, x));
    }
  }
}

TEST_CASE("cones: interior points survive small perturbations", "[cones][property]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const auto c = random_cone(rng, n);
    const Vector x = c.generators().colwise().sum().transpose();  // interior of a full cone
    REQUIRE(interior_contains(c, x));
    for (int i = 0; i < 20; ++i) {
      const Vector b = random_vector(rng, n).normalized();
      bool ok = false;
      for (double eps = 1.0; eps > 1e-12 && !ok; eps *= 0.5) ok = cone_contains(c, x - eps * b, 0);
      CHECK(ok);
    }
  }
}

TEST_CASE("cones: strict positivity equals interior of the dual", "[cones][property]") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const auto c = random_cone(rng, n);
    const auto d = dual_cone(c);
    for (int i = 0; i < 100; ++i) {
      const Vector f = random_vector(rng, n);
      CHECK(is_strictly_positive(c, f) == interior_contains(d, f));
    }
  }
}

TEST_CASE("cones: weighted-coordinate cone matches the orthant", "[cones]") {
  const auto w = PolyhedralCone::weighted_coordinate(vec({2, 0.5, 3}));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Vector x = random_vector(rng, 3);
    CHECK(cone_contains(w, x, 0) == (x.minCoeff() >= 0.0));
  }
  CHECK(dual_cone(w).kind() == PolyhedralCone::Kind::kCoordinate);
}
