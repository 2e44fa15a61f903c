#include "catch_amalgamated.hpp"

#include <random>

#include "conegen/duality.hpp"

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

BoxProgram scalar_program(double q2, double q1, double lo, double hi) {
  BoxProgram p;
  p.Q = Matrix::Constant(1, 1, q2);
  p.q = vec({q1});
  p.lower = vec({lo});
  p.upper = vec({hi});
  return p;
}

// min x1 + x2 on [0,1]^2 with 1 - x1 - x2 <= 0.
BoxProgram lp_program() {
  BoxProgram p;
  p.Q = Matrix::Zero(2, 2);
  p.q = vec({1, 1});
  p.G = rows({{-1, -1}});
  p.g0 = vec({1});
  p.lower = vec({0, 0});
  p.upper = vec({1, 1});
  return p;
}

}  // namespace

TEST_CASE("duality: modified Slater condition", "[duality]") {
  auto p = scalar_program(0, 0, 0, 1);
  p.G = Matrix::Ones(1, 1);
  p.g0 = vec({-2});
  auto s = check_modified_slater(p, vec({1}));
  CHECK(s.holds);
  CHECK(s.witness(0) == 0.0);
  CHECK(s.lambda == Approx(1.0));
  // -lambda g(x) - e interior: 1 * 2 - 1 > 0.
  CHECK(-s.lambda * p.g(s.witness)(0) - 1.0 > 0.0);
  CHECK(s.neighborhood);

  p.g0 = vec({0});
  s = check_modified_slater(p, vec({1}));
  CHECK_FALSE(s.holds);
  CHECK(s.margin == Approx(0.0).margin(1e-12));

  BoxProgram h;
  h.Q = Matrix::Zero(2, 2);
  h.q = vec({0, 0});
  h.H = rows({{1, -1}});
  h.h0 = vec({0});
  h.lower = vec({0, 0});
  h.upper = vec({1, 1});
  s = check_modified_slater(h, Vector(0));
  CHECK(s.holds);
  CHECK(s.neighborhood);
  CHECK(s.h_rank == 1);
  CHECK(s.interior_slack == Approx(0.5));

  // h(x) = x1 - x2 - 3 has no zero on the box.
  h.h0 = vec({-3});
  s = check_modified_slater(h, Vector(0));
  CHECK_FALSE(s.holds);
  CHECK_FALSE(s.neighborhood);
  CHECK(farkas_signs_ok(s.lp, s.farkas));

  // h touches the box only at a corner: no neighborhood of 0.
  h.h0 = vec({-1});
  s = check_modified_slater(h, Vector(0));
  CHECK(s.holds);
  CHECK_FALSE(s.neighborhood);

  CHECK_THROWS_AS(check_modified_slater(p, vec({0})), InputError);
}

TEST_CASE("duality: Lagrangian values", "[duality]") {
  auto p = scalar_program(0, 1, 0, 2);
  p.G = Matrix::Ones(1, 1);
  p.g0 = vec({-1});
  Multipliers m = Multipliers::zero(p);
  CHECK(lagrangian_value(p, vec({1.5}), m) == p.objective(vec({1.5})));
  m.y = vec({1});
  CHECK(lagrangian_value(p, vec({0}), m) == -1.0);
  CHECK(lagrangian_value(p, vec({0}), m, LagrangianForm::kAsDisplayed) == -1.0);
  // Complementary multipliers at a feasible point leave f unchanged.
  m = Multipliers::zero(p);
  m.x1 = vec({3});
  CHECK(lagrangian_value(p, vec({0}), m) == p.objective(vec({0})));
  // The two forms differ by twice the box terms.
  m.x2 = vec({0.5});
  const double x = 0.7;
  const double box_terms = 3 * (0 - x) + 0.5 * (x - 2);
  CHECK(lagrangian_value(p, vec({x}), m) - lagrangian_value(p, vec({x}), m, LagrangianForm::kAsDisplayed) ==
        Approx(2 * box_terms));
}

TEST_CASE("duality: dual function values", "[duality]") {
  auto p = scalar_program(1, 0, -1, 1);
  CHECK(dual_value(p, Multipliers::zero(p)).value() == 0.0);

  auto lp = scalar_program(0, 1, 0, 1);
  CHECK(dual_value(lp, Multipliers::zero(lp)).is_minus_infinity());

  p = scalar_program(1, 0, -5, 5);
  p.G = Matrix::Ones(1, 1);
  p.g0 = vec({-1});
  Multipliers m = Multipliers::zero(p);
  m.y = vec({1});
  // min_x x^2/2 + x - 1 at x = -1.
  const double oracle = 0.5 * 1 + (-1) - 1;
  const auto ev = evaluate_dual(p, m);
  CHECK(ev.value.value() == Approx(oracle));
  CHECK(ev.value.value() == -1.5);
  CHECK(ev.minimizer(0) == Approx(-1.0));
  CHECK(lagrangian_value(p, ev.minimizer, m) == Approx(oracle));
}

TEST_CASE("duality: primal solves", "[duality]") {
  auto r = solve_primal(scalar_program(1, 0, 1, 2));
  REQUIRE(r.feasible);
  CHECK(r.x(0) == 1.0);
  CHECK(r.value == 0.5);
  CHECK(r.kkt_residual <= 1e-6);

  r = solve_primal(lp_program());
  REQUIRE(r.feasible);
  CHECK(r.value == Approx(1.0));
  CHECK(r.x.sum() == Approx(1.0));
  CHECK(r.kkt_residual <= 1e-6);
  // Simplex on the same LP.
  numkernel::LPProblem ref;
  ref.cost = vec({1, 1});
  ref.ineq = rows({{1, 1}});
  ref.ineq_rhs = vec({1});
  ref.lower = vec({0, 0});
  ref.upper = vec({1, 1});
  CHECK(r.value == Approx(numkernel::solve_lp(ref).value).margin(1e-12));

  auto inf = scalar_program(0, 0, 0, 1);
  inf.G = Matrix::Ones(1, 1);
  inf.g0 = vec({1});
  r = solve_primal(inf);
  CHECK_FALSE(r.feasible);
  CHECK(farkas_signs_ok(r.feasibility, r.farkas));
}

TEST_CASE("duality: program validation", "[duality][errors]") {
  auto p = scalar_program(-1, 0, 0, 1);
  CHECK_THROWS_AS(solve_primal(p), InputError);
  p = scalar_program(1, 0, 1, 1);
  CHECK_THROWS_AS(solve_primal(p), InputError);
  p = scalar_program(1, 0, 0, 1);
  p.G = Matrix::Ones(2, 1);
  p.g0 = vec({1});
  CHECK_THROWS_AS(solve_primal(p), InputError);
  BoxProgram asym;
  asym.Q = rows({{1, 1}, {0, 1}});
  asym.q = vec({0, 0});
  asym.lower = vec({0, 0});
  asym.upper = vec({1, 1});
  CHECK_THROWS_AS(solve_dual(asym), InputError);
}

TEST_CASE("duality: dual solves", "[duality]") {
  // Unconstrained minimizer inside the box.
  BoxProgram u;
  u.Q = rows({{2, 0}, {0, 1}});
  u.q = vec({-2, 1});
  u.c = 3;
  u.lower = vec({-5, -5});
  u.upper = vec({5, 5});
  const Vector xmin = -u.Q.inverse() * u.q;
  const double fmin = u.objective(xmin);
  auto d = solve_dual(u);
  REQUIRE(d.status == DualStatus::kOptimal);
  CHECK(d.value.value() == Approx(fmin).epsilon(1e-12));
  CHECK(solve_primal(u).value == Approx(fmin).epsilon(1e-12));

  d = solve_dual(lp_program());
  REQUIRE(d.status == DualStatus::kOptimal);
  CHECK(d.multipliers.y(0) == Approx(1.0));
  CHECK(d.value.value() == Approx(1.0));

  // Feasible set {0}: weak duality holds, no gap claim.
  auto p = scalar_program(1, -1, 0, 1);
  p.c = 0.5;
  p.G = Matrix::Ones(1, 1);
  p.g0 = vec({0});
  const auto rep = duality_gap_report(p, vec({1}));
  CHECK_FALSE(rep.slater.holds);
  CHECK_FALSE(rep.asserted);
  CHECK(rep.verified);
  CHECK(rep.primal.value() == Approx(0.5));
  CHECK(rep.dual.value() <= rep.primal.value() + 1e-9);
}

TEST_CASE("duality: gap reports", "[duality]") {
  // min x^2/2 on [0, 2] with 1 - x <= 0: x* = 1, y* = 1 from x* + (-1) y* = 0.
  auto p = scalar_program(1, 0, 0, 2);
  p.G = Matrix::Constant(1, 1, -1);
  p.g0 = vec({1});
  auto rep = duality_gap_report(p, vec({1}));
  CHECK(rep.slater.holds);
  CHECK(rep.asserted);
  CHECK(rep.verified);
  CHECK(rep.primal.value() == Approx(0.5));
  CHECK(rep.gap.value() <= 1e-5);
  CHECK(rep.dual_solution.multipliers.y(0) == Approx(1.0));
  CHECK(rep.primal_solution.multipliers.y(0) == Approx(1.0));
  CHECK(rep.lift.pi == vec({2}));
  CHECK(rep.lift.e_prime_interior);

  rep = duality_gap_report(lp_program(), vec({1}));
  CHECK(rep.slater.holds);
  CHECK(rep.gap.value() <= 1e-7);

  auto inf = scalar_program(0, 0, 0, 1);
  inf.G = Matrix::Ones(1, 1);
  inf.g0 = vec({1});
  rep = duality_gap_report(inf, vec({1}));
  CHECK(rep.primal.is_plus_infinity());
  CHECK(rep.dual.is_plus_infinity());
  CHECK_FALSE(rep.asserted);
}

TEST_CASE("duality: stationarity certificates", "[duality]") {
  // F(x) = x^2 on [1, 2] at the left end.
  QuadraticMap f{{Matrix::Constant(1, 1, 2.0)}, Matrix::Zero(1, 1), vec({0})};
  const auto r1 = PolyhedralCone::coordinate(1);
  auto c = stationarity_certificate(f, r1, vec({1}), vec({2}), vec({1}), vec({1}));
  REQUIRE(c.certified);
  CHECK(c.y == vec({1}));
  CHECK(c.normal == vec({-2}));
  CHECK(c.jacobian(0, 0) + c.normal(0) == 0.0);

  // Interior point with nonzero gradient.
  c = stationarity_certificate(f, r1, vec({1}), vec({2}), vec({1.5}), vec({1}));
  CHECK_FALSE(c.certified);
  CHECK(c.farkas_verified);
  CHECK(farkas_signs_ok(c.lp, c.farkas));

  // Outside the box.
  c = stationarity_certificate(f, r1, vec({1}), vec({2}), vec({0.5}), vec({1}));
  CHECK_FALSE(c.certified);
  CHECK(c.farkas_verified);
  CHECK(farkas_signs_ok(c.lp, c.farkas));

  // F = (x, -x) into R^2_+ with e = (1, 1).
  QuadraticMap g{{}, rows({{1}, {-1}}), vec({0, 0})};
  c = stationarity_certificate(g, PolyhedralCone::coordinate(2), vec({-1}), vec({1}), vec({0}), vec({1, 1}));
  REQUIRE(c.certified);
  CHECK(c.y(0) == Approx(0.5));
  CHECK(c.y(1) == Approx(0.5));
  CHECK(c.normal(0) == Approx(0.0).margin(1e-12));
}

TEST_CASE("duality: strong duality on Slater instances", "[duality][property]") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_slater_program(rng, trial);
    const Vector e = Vector::Ones(p.m());
    const auto rep = duality_gap_report(p, e);
    CHECK(rep.slater.holds);
    CHECK(rep.asserted);
    CHECK(rep.gap.value() <= 1e-5);
    CHECK(rep.verified);
    CHECK(rep.primal_solution.kkt_residual <= 1e-6);
    CHECK(multipliers_valid(p, rep.dual_solution.multipliers));
    CHECK(multipliers_valid(p, rep.primal_solution.multipliers));
    const double pv = rep.primal.value();
    for (int s = 0; s < 30; ++s) {
      const auto m = random_multipliers(rng, p);
      const auto dv = dual_value(p, m);
      CHECK((dv.is_minus_infinity() || dv.value() <= pv + 1e-9 * (1.0 + std::abs(pv))));
    }
    if (p.Q.isZero()) {
      numkernel::LPProblem ref = numkernel::feasibility_lp(primal_qp(p));
      ref.cost = p.q;
      CHECK(std::abs(numkernel::solve_lp(ref).value + p.c - pv) <= 1e-9 * (1.0 + std::abs(pv)));
    }
  }
}

TEST_CASE("duality: certificates on random vector objectives", "[duality][property]") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  int certified = 0;
  int refused = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const int m = 1 + trial % 3;
    QuadraticMap f;
    for (int i = 0; i < m; ++i) {
      const Matrix b = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return std::normal_distribution<double>()(rng); });
      f.quad.push_back(b.transpose() * b * (trial % 2));
    }
    f.lin = Matrix::NullaryExpr(m, n, [&](Eigen::Index, Eigen::Index) { return std::normal_distribution<double>()(rng); });
    f.constant = random_vector(rng, m);
    const auto cone = PolyhedralCone::coordinate(m);
    const Vector e = Vector::NullaryExpr(m, [&](Eigen::Index) { return u(rng); });
    const Vector lower = -Vector::Ones(n);
    const Vector upper = Vector::Ones(n);

    // Minimizer of <y0, F> for a positive y0: a certificate must exist.
    Vector y0 = Vector::NullaryExpr(m, [&](Eigen::Index) { return u(rng); });
    y0 /= y0.dot(e);
    BoxProgram sc;
    sc.Q = Matrix::Zero(n, n);
    for (int i = 0; i < m; ++i) sc.Q += y0(i) * f.quad[static_cast<std::size_t>(i)];
    sc.q = f.lin.transpose() * y0;
    sc.lower = lower;
    sc.upper = upper;
    const auto xbar = solve_primal(sc).x;
    auto c = stationarity_certificate(f, cone, lower, upper, xbar, e);
    REQUIRE(c.certified);
    CHECK(certificate_holds(f, cone.halfspaces(), lower, upper, xbar, e, c, 1e-8));
    ++certified;

    // A random point: certificate or verified refusal.
    const Vector x = random_vector(rng, n).cwiseMax(lower).cwiseMin(upper);
    c = stationarity_certificate(f, cone, lower, upper, x, e);
    if (c.certified) {
      CHECK(certificate_holds(f, cone.halfspaces(), lower, upper, x, e, c, 1e-8));
      ++certified;
    } else {
      CHECK(farkas_signs_ok(c.lp, c.farkas));
      ++refused;
    }
  }
  CHECK(refused > 0);
  CHECK(certified >= 100);
}

TEST_CASE("duality: scalar primal minimizers certify", "[duality][property]") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix b = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return std::normal_distribution<double>()(rng); });
    BoxProgram p;
    p.Q = b.transpose() * b * (trial % 3 == 0 ? 0.0 : 1.0);
    p.q = random_vector(rng, n, 2.0);
    p.lower = -Vector::Ones(n);
    p.upper = Vector::Ones(n);
    const auto r = solve_primal(p);
    REQUIRE(r.feasible);
    QuadraticMap f{{p.Q}, p.q.transpose(), vec({0})};
    const auto c = stationarity_certificate(f, PolyhedralCone::coordinate(1), p.lower, p.upper, r.x, vec({1}));
    CHECK(c.certified);
  }
}
