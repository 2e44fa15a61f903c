#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "conegen/gauge.hpp"

#include "support/instances.hpp"

using namespace conegen;
using namespace conegen::testing;
using Catch::Approx;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  std::vector<Vector> v;
  for (auto row : r) v.push_back(vec(row));
  return stack_rows(v, static_cast<Eigen::Index>(r.begin()->size()));
}

// Bisection on lambda for the predicate "x is in lambda * body".
double bisect(const std::function<bool(double)>& inside, double hi = 1e6) {
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("gauge: truncated l1 example with dyadic generating element", "[gauge]") {
  const GaugeBody body(PolyhedralCone::coordinate(3), vec({0.5, 0.25, 0.125}));
  CHECK(order_interval_gauge(body, vec({0.5, -0.25, 0.125})).value() == 1.0);
  CHECK(order_interval_gauge(body, vec({0, 0, 1})).value() == 8.0);
  CHECK(order_interval_gauge(body, vec({0, 0, 0})).value() == 0.0);
}

TEST_CASE("gauge: general cone matches the defining infimum", "[gauge]") {
  const Matrix a = rows({{1, 0}, {1, 1}});
  const GaugeBody body(PolyhedralCone::from_halfspaces(a), vec({1, 0}));
  const Vector u = vec({1, 0});
  const Vector x = vec({0, 1});
  const double oracle = bisect([&](double l) {
    return (a * (l * u - x)).minCoeff() >= 0.0 && (a * (l * u + x)).minCoeff() >= 0.0;
  });
  CHECK(oracle == Approx(1.0).margin(1e-12));
  CHECK(order_interval_gauge(body, x).value() == Approx(oracle).margin(1e-9));
}

TEST_CASE("gauge: Minkowski gauge of polytopes", "[gauge]") {
  const std::vector<Vector> square = {vec({1, 1}), vec({1, -1}), vec({-1, 1}), vec({-1, -1})};
  CHECK(minkowski_gauge(square, vec({1, 1})).value() == Approx(1.0));
  const Vector x = vec({2, 0});
  const double oracle = bisect([&](double l) { return (x / l).cwiseAbs().maxCoeff() <= 1.0; });
  CHECK(minkowski_gauge(square, x).value() == Approx(oracle).margin(1e-9));
  CHECK(minkowski_gauge({vec({-1, 0}), vec({1, 0})}, vec({0, 1})).is_plus_infinity());
  CHECK_THROWS_AS(minkowski_gauge({}, vec({0, 1})), InputError);
}

TEST_CASE("gauge: equivalence constants", "[gauge]") {
  const auto orth = PolyhedralCone::coordinate(2);
  CHECK(equivalence_constant(orth, vec({1, 1}), vec({1, 1})).value() == 1.0);

  const Vector u = vec({1, 2});
  const Vector v = vec({2, 1});
  // Closed forms: |v|_u = max(2/1, 1/2), |u|_v = max(1/2, 2/1).
  const double v_in_u = std::max(2.0 / 1.0, 1.0 / 2.0);
  const double u_in_v = std::max(1.0 / 2.0, 2.0 / 1.0);
  CHECK(order_interval_gauge(GaugeBody(orth, u), v, GaugePath::kLinearProgram).value() == Approx(v_in_u));
  CHECK(order_interval_gauge(GaugeBody(orth, v), u, GaugePath::kLinearProgram).value() == Approx(u_in_v));
  CHECK(equivalence_constant(orth, u, v).value() == Approx(std::max({v_in_u, u_in_v, 1.0})));

  CHECK(equivalence_constant(orth, vec({1, 1}), vec({3, 3})).value() == Approx(3.0));
  CHECK_THROWS_AS(equivalence_constant(orth, vec({1, 0}), vec({1, 1})), InputError);
}

TEST_CASE("gauge: sup-norm isometry", "[gauge]") {
  const Vector u = vec({0.5, 0.25, 0.125});
  const Vector t = linfty_isometry(u, vec({0.5, -0.25, 0.125}));
  CHECK(t == vec({1, -1, 1}));
  const Vector x = vec({0.3, -7, 2});
  CHECK(linfty_isometry(Vector::Ones(3), x) == x);
  const Vector t2 = linfty_isometry(vec({1, 2}), vec({2, 2}));
  CHECK(t2 == vec({2, 1}));
  CHECK(t2.cwiseAbs().maxCoeff() == order_interval_gauge(GaugeBody(PolyhedralCone::coordinate(2), vec({1, 2})), vec({2, 2})).value());
  CHECK_THROWS_AS(linfty_isometry(vec({1, 0}), vec({1, 1})), InputError);
}

TEST_CASE("gauge: norm axioms", "[gauge][property]") {
  std::mt19937_64 rng(41);
  const auto general = PolyhedralCone::from_generators(rows({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}));
  for (int trial = 0; trial < 200; ++trial) {
    const bool coord = trial % 2 == 0;
    const int n = coord ? 1 + trial % 7 : 3;
    const auto cone = coord ? PolyhedralCone::coordinate(n) : general;
    const Vector u = coord ? random_positive(rng, n) : Vector(general.generators().colwise().sum().transpose());
    const GaugeBody body(cone, u);
    const Vector x = random_vector(rng, n);
    const Vector y = random_vector(rng, n);
    const double a = std::normal_distribution<double>(0.0, 3.0)(rng);
    const double gx = order_interval_gauge(body, x).value();
    const double gy = order_interval_gauge(body, y).value();
    CHECK(std::abs(order_interval_gauge(body, a * x).value() - std::abs(a) * gx) <= 1e-12 * (1.0 + std::abs(a) * gx));
    CHECK(order_interval_gauge(body, x + y).value() <= gx + gy + 1e-9);
    CHECK(gx > 0.0);
  }
}

TEST_CASE("gauge: isometry, fast path and monotonicity on coordinate cones", "[gauge][property]") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 20;
    const Vector u = random_positive(rng, n);
    const GaugeBody body(PolyhedralCone::coordinate(n), u);
    const Vector x = random_vector(rng, n);
    const double g = order_interval_gauge(body, x).value();
    CHECK(std::abs(linfty_isometry(u, x).cwiseAbs().maxCoeff() - g) <= 1e-12);
    CHECK(std::abs(order_interval_gauge(body, x, GaugePath::kLinearProgram).value() - g) <= 1e-9);
    Vector b = x;
    for (int i = 0; i < n; ++i) b(i) *= std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    CHECK(order_interval_gauge(body, b).value() <= g);
  }
}

TEST_CASE("gauge: equivalence sandwich and tightness", "[gauge][property]") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const auto cone = PolyhedralCone::coordinate(n);
    const Vector u = random_positive(rng, n);
    const Vector v = random_positive(rng, n);
    const auto rep = equivalence_report(cone, u, v);
    const GaugeBody bu(cone, u);
    const GaugeBody bv(cone, v);
    for (int i = 0; i < 50; ++i) {
      const Vector x = random_vector(rng, n);
      const double nu = order_interval_gauge(bu, x).value();
      const double nv = order_interval_gauge(bv, x).value();
      CHECK(nu / rep.c - 1e-9 <= nv);
      CHECK(nv <= rep.c * nu + 1e-9);
    }
    CHECK(rep.tightness_residual <= 1e-9);
  }
}

TEST_CASE("gauge: dominance report against a unit-normalized generating element", "[gauge]") {
  // With the sup-norm scaled by u the gauge equals the ambient norm.
  const Vector u = vec({1, 2, 4});
  const GaugeBody body(PolyhedralCone::coordinate(3), u);
  Norm ambient = Norm::inf();
  ambient.weights = u.cwiseInverse();
  std::mt19937_64 rng(53);
  std::vector<Vector> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(random_vector(rng, 3));
  const auto rep = gauge_dominance(body, ambient, pts);
  CHECK(rep.samples == 100);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_ratio == Approx(1.0));
}
