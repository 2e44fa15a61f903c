#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Cholesky>

#include "conegen/duality.hpp"
#include "conegen/numkernel/projection.hpp"

namespace conegen::demos {

// ---------------------------------------------------------------------------
// Elastic-plastic torsion on (0, 1)
//
//     min 1/2 int u'^2 - c int u   s.t. u'^2 <= 1, u >= 0, u(0) = u(1) = 0,
//
// on N interior nodes with spacing h = 1/(N+1) and slopes
// s_j = (u_{j+1} - u_j)/h, j = 0..N.

/// Linearized program: |u_{j+1} - u_j| <= h as 2(N+1) affine rows, box [0, 1].
inline BoxProgram torsion_program(int n, double c) {
  require(n >= 1, "torsion grid needs at least one interior node");
  require(std::isfinite(c), "torsion load must be finite");
  const double h = 1.0 / (n + 1);
  BoxProgram p;
  p.Q = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    p.Q(i, i) = 2.0 / h;
    if (i + 1 < n) p.Q(i, i + 1) = p.Q(i + 1, i) = -1.0 / h;
  }
  p.q = Vector::Constant(n, -c * h);
  Matrix d = Matrix::Zero(n + 1, n);  // d u = u_{j+1} - u_j
  for (int j = 0; j <= n; ++j) {
    if (j < n) d(j, j) = 1.0;
    if (j >= 1) d(j, j - 1) = -1.0;
  }
  p.G.resize(2 * (n + 1), n);
  p.G << d, -d;
  p.g0 = Vector::Constant(2 * (n + 1), -h);
  p.lower = Vector::Zero(n);
  p.upper = Vector::Ones(n);
  return p;
}

/// Slope-space solution: s_j = clamp(c h (N - j) - tau, -1, 1) with tau
/// fixed by sum s = 0 (bisection), which is the KKT system of the
/// slope-form program.
struct TorsionOracle {
  Vector u;
  Vector slopes;
  double tau = 0.0;
  double value = 0.0;
};

inline TorsionOracle torsion_oracle(int n, double c) {
  const double h = 1.0 / (n + 1);
  auto slopes = [&](double tau) {
    Vector s(n + 1);
    for (int j = 0; j <= n; ++j) s(j) = std::clamp(c * h * (n - j) - tau, -1.0, 1.0);
    return s;
  };
  double lo = -1.0 - std::abs(c);
  double hi = 1.0 + std::abs(c) * h * n;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slopes(mid).sum() > 0.0 ? lo : hi) = mid;
  }
  TorsionOracle o;
  o.tau = 0.5 * (lo + hi);
  o.slopes = slopes(o.tau);
  o.u = Vector::Zero(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += h * o.slopes(i);
    o.u(i) = acc;
  }
  double lin = 0.0;
  for (int j = 0; j <= n; ++j) lin += (n - j) * o.slopes(j);
  o.value = h * (0.5 * o.slopes.squaredNorm() - c * h * lin);
  return o;
}

/// Dual function of the quadratic-constraint form with multipliers y_j >= 0
/// weighted by h:
///
///     theta(y) = inf_u 1/2 u'Q u + q'u + h sum y_j (s_j(u)^2 - 1).
struct TorsionDual {
  double value = 0.0;
  Vector slopes;  // at the inner minimizer
  Vector u;
};

inline TorsionDual torsion_dual_function(const BoxProgram& p, const Vector& y) {
  const Eigen::Index n = p.n();
  const double h = 1.0 / static_cast<double>(n + 1);
  const Matrix d = p.G.topRows(n + 1) / h;  // slopes s = d u
  const Vector w = (Vector::Ones(n + 1) + 2.0 * y) * h;
  const Matrix qy = d.transpose() * w.asDiagonal() * d;
  TorsionDual t;
  t.u = qy.ldlt().solve(-p.q);
  t.slopes = d * t.u;
  t.value = 0.5 * t.u.dot(qy * t.u) + p.q.dot(t.u) - h * y.sum();
  return t;
}

struct TorsionReport {
  int grid = 0;
  double h = 0.0;
  double load = 0.0;
  PrimalResult primal;
  TorsionOracle oracle;
  double oracle_error = 0.0;
  GapReport linear_gap;

  Vector kkt_multipliers;  // (lambda+ + lambda-)/2 per slope
  double kkt_dual_value = 0.0;
  Vector ascent_multipliers;
  double ascent_dual_value = 0.0;
  int ascent_iterations = 0;
  bool ascent_converged = false;
  double displayed_gap = 0.0;

  double bump_height = 0.0;       // lambda of the bump witness
  double bump_max_constraint = 0.0;  // max_j s_j^2 - 1 of the bump
  bool bump_strictly_feasible = false;

  bool pass = false;
};

inline TorsionReport torsion_demo(int n = 12, double c = 4.0, const Config& cfg = Config{}) {
  TorsionReport r;
  r.grid = n;
  r.h = 1.0 / (n + 1);
  r.load = c;
  const BoxProgram p = torsion_program(n, c);
  r.primal = solve_primal(p, cfg);
  require(r.primal.feasible, "torsion program reported infeasible");
  r.oracle = torsion_oracle(n, c);
  r.oracle_error = std::abs(r.primal.value - r.oracle.value);
  r.linear_gap = duality_gap_report(p, Vector::Ones(p.m()), cfg);

  // Multipliers of |s_j| <= 1 mapped to the squared constraint s_j^2 <= 1.
  const Vector& lam = r.primal.multipliers.y;
  r.kkt_multipliers = 0.5 * (lam.head(n + 1) + lam.tail(n + 1));
  r.kkt_dual_value = torsion_dual_function(p, r.kkt_multipliers).value;

  // Projected gradient ascent on theta over y >= 0.
  const double h = r.h;
  auto neg_theta = [&](const Vector& y) { return -torsion_dual_function(p, y).value; };
  auto grad = [&](const Vector& y) {
    const auto t = torsion_dual_function(p, y);
    return Vector(-h * (t.slopes.array().square() - 1.0).matrix());
  };
  auto proj = [](const Vector& y) { return Vector(y.cwiseMax(0.0)); };
  numkernel::Schedule sched;
  sched.step = 1.0 / h;
  sched.stop_tol = 1e-9;
  const auto asc = numkernel::projected_gradient(neg_theta, grad, proj, Vector::Zero(n + 1), sched, cfg);
  r.ascent_multipliers = asc.x;
  r.ascent_dual_value = -asc.value;
  r.ascent_iterations = asc.iterations;
  r.ascent_converged = asc.status == numkernel::SolveStatus::kOptimal;
  r.displayed_gap = r.primal.value - std::max(r.ascent_dual_value, r.kkt_dual_value);

  // Bump u = (lambda/2r)(r^2 - |x - 1/2|^2) with r = 1/2, lambda < 1/(2r).
  const double rad = 0.5;
  r.bump_height = 0.9 / (2.0 * rad);
  Vector bump(n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const double x = i * h;
    bump(i) = std::max(0.0, r.bump_height / (2.0 * rad) * (rad * rad - (x - 0.5) * (x - 0.5)));
  }
  r.bump_max_constraint = -numkernel::kInf;
  for (int j = 0; j <= n; ++j) {
    const double s = (bump(j + 1) - bump(j)) / h;
    r.bump_max_constraint = std::max(r.bump_max_constraint, s * s - 1.0);
  }
  r.bump_strictly_feasible = r.bump_max_constraint < 0.0 && bump.segment(1, n).minCoeff() > 0.0;

  r.pass = r.oracle_error <= 1e-6 && r.primal.kkt_residual <= cfg.tol.kkt;
  return r;
}

// ---------------------------------------------------------------------------
// Vector variational inequality on a weighted L2 box
//
// Find x in [x_a, x_b] with (T x)(z - x) notin -R^n_+ \ {0} for every z in
// the box, where T(x) = sum_k x_k T_k. The instance is built so that
// y0' T(x) = (M' x)' for a positive y0 and a monotone M; a solution of the
// scalar box VI for M' is then a solution of the vector VI.

struct VIInstance {
  std::vector<Matrix> t;  // T_k
  Vector weights;         // probability weights mu_i
  Vector lower;
  Vector upper;
  Vector e;  // unit in the weighted L2 norm
  Vector y0;
  Matrix monotone;  // M
};

inline Matrix vi_operator(const VIInstance& inst, const Vector& x) {
  Matrix out = Matrix::Zero(x.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) out += x(k) * inst.t[static_cast<std::size_t>(k)];
  return out;
}

inline VIInstance vi_instance(int n, std::uint64_t seed) {
  require(n >= 1, "VI dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.1, 0.5);
  auto gauss = [&](Eigen::Index r, Eigen::Index c) {
    return Matrix(Matrix::NullaryExpr(r, c, [&](Eigen::Index, Eigen::Index) { return g(rng); }));
  };
  VIInstance inst;
  inst.weights = Vector::Constant(n, 1.0 / n);
  inst.lower = Vector::NullaryExpr(n, [&](Eigen::Index) { return u(rng); });
  inst.upper = inst.lower + Vector::NullaryExpr(n, [&](Eigen::Index) { return 1.0 + u(rng); });
  inst.e = Vector::Ones(n);  // sum mu_i e_i^2 = 1
  inst.y0 = Vector::NullaryExpr(n, [&](Eigen::Index) { return 0.5 + u(rng); });
  const Matrix b = gauss(n, n);
  const Matrix s = gauss(n, n);
  inst.monotone = b.transpose() * b + 0.5 * (s - s.transpose());
  const double yy = inst.y0.squaredNorm();
  const Matrix perp = Matrix::Identity(n, n) - inst.y0 * inst.y0.transpose() / yy;
  for (int k = 0; k < n; ++k) {
    inst.t.push_back(inst.y0 * inst.monotone.row(k) / yy + perp * gauss(n, n));
  }
  return inst;
}

struct VIReport {
  VIInstance instance;
  Vector x;
  double vi_residual = 0.0;
  StationarityCertificate certificate;
  int samples = 0;
  int violations = 0;  // sampled z with (T x)(z - x) in -R^n_+ \ {0}
  bool pass = false;
};

inline VIReport vi_demo(int n = 6, std::uint64_t seed = 0, int samples = 2000, const Config& cfg = Config{}) {
  VIReport r;
  r.instance = vi_instance(n, seed);
  const auto& inst = r.instance;
  const auto sol = numkernel::solve_box_vi(inst.monotone.transpose(), Vector::Zero(n), inst.lower, inst.upper, cfg);
  require(sol.status == numkernel::LCPStatus::kSolved, "box VI solve did not terminate with a solution");
  r.x = sol.x;
  r.vi_residual = sol.residual;

  // Linearized objective F(z) = T(x)(z - x).
  const Matrix tx = vi_operator(inst, r.x);
  QuadraticMap f{{}, tx, -tx * r.x};
  r.certificate = stationarity_certificate(f, PolyhedralCone::coordinate(n), inst.lower, inst.upper, r.x, inst.e, cfg);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  r.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Vector z(n);
    for (int i = 0; i < n; ++i) {
      const double t = s % 2 == 0 ? std::round(u(rng)) : u(rng);  // vertices and interior points
      z(i) = inst.lower(i) + t * (inst.upper(i) - inst.lower(i));
    }
    const Vector v = tx * (z - r.x);
    const double scale = 1.0 + v.cwiseAbs().maxCoeff();
    if (v.maxCoeff() <= 1e-12 * scale && v.cwiseAbs().maxCoeff() > 1e-8 * scale) ++r.violations;
  }
  r.pass = r.certificate.certified && r.violations == 0;
  return r;
}

}  // namespace conegen::demos
