#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "conegen/cones.hpp"
#include "conegen/numkernel/qp.hpp"

namespace conegen {

/// Box-constrained convex quadratic program
///
///     min  f(x) = 1/2 x'Qx + q'x + c
///     s.t. g(x) = Gx + g0 in -Y+,  h(x) = Hx + h0 = 0,  lower <= x <= upper.
///
/// Y+ defaults to the nonnegative orthant of R^m. An empty g0 (or h0) means
/// the constraint block is absent.
struct BoxProgram {
  Matrix Q;
  Vector q;
  double c = 0.0;
  Matrix G;
  Vector g0;
  std::optional<PolyhedralCone> y_cone;
  Matrix H;
  Vector h0;
  Vector lower;
  Vector upper;

  Eigen::Index n() const { return q.size(); }
  Eigen::Index m() const { return g0.size(); }
  Eigen::Index k() const { return h0.size(); }

  Matrix g_mat() const { return m() == 0 ? Matrix(0, n()) : G; }
  Matrix h_mat() const { return k() == 0 ? Matrix(0, n()) : H; }
  /// Inward normals of Y+ (rows).
  Matrix y_halfspaces() const { return y_cone ? y_cone->halfspaces() : Matrix(Matrix::Identity(m(), m())); }

  double objective(const Vector& x) const { return 0.5 * x.dot(Q * x) + q.dot(x) + c; }
  Vector g(const Vector& x) const { return m() == 0 ? Vector(0) : Vector(G * x + g0); }
  Vector h(const Vector& x) const { return k() == 0 ? Vector(0) : Vector(H * x + h0); }

  /// Largest violation of g in -Y+, h = 0 and the box.
  double infeasibility(const Vector& x) const {
    require_dim(n(), x.size(), "program point");
    double v = std::max((lower - x).maxCoeff(), (x - upper).maxCoeff());
    if (m() > 0) v = std::max(v, (y_halfspaces() * g(x)).maxCoeff());
    if (k() > 0) v = std::max(v, h(x).cwiseAbs().maxCoeff());
    return std::max(v, 0.0);
  }

  void validate(const Config& cfg = Config{}) const {
    const Eigen::Index nn = n();
    require(nn >= 1, "program dimension must be positive");
    require_finite(q, "q");
    require(std::isfinite(c), "c must be finite");
    require_dim(nn, Q.rows(), "Q rows");
    require_dim(nn, Q.cols(), "Q cols");
    require(Q.allFinite(), "Q must be finite");
    require((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff()),
            "Q must be symmetric");
    const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(Q, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    require(min_eig >= cfg.tol.psd_floor,
            "Q must be positive semidefinite (smallest eigenvalue " + std::to_string(min_eig) + ")");
    require_dim(nn, lower.size(), "box lower bound");
    require_dim(nn, upper.size(), "box upper bound");
    require_finite(lower, "box lower bound");
    require_finite(upper, "box upper bound");
    require((upper - lower).minCoeff() > 0.0, "box needs lower < upper in every coordinate");
    if (m() > 0) {
      require_dim(m(), G.rows(), "G rows");
      require_dim(nn, G.cols(), "G cols");
      require(G.allFinite() && g0.allFinite(), "g must be finite");
      if (y_cone) require_dim(m(), y_cone->dim(), "constraint cone");
    } else {
      require(G.size() == 0 || G.rows() == 0, "G given without g0");
      require(!y_cone, "constraint cone given without g");
    }
    if (k() > 0) {
      require_dim(k(), H.rows(), "H rows");
      require_dim(nn, H.cols(), "H cols");
      require(H.allFinite() && h0.allFinite(), "h must be finite");
    } else {
      require(H.size() == 0 || H.rows() == 0, "H given without h0");
    }
  }
};

/// Lagrange multipliers: y in (Y+)*, x1, x2 >= 0 for the lower and upper
/// bounds, z free for h.
struct Multipliers {
  Vector y;
  Vector x1;
  Vector x2;
  Vector z;

  static Multipliers zero(const BoxProgram& p) {
    return {Vector::Zero(p.m()), Vector::Zero(p.n()), Vector::Zero(p.n()), Vector::Zero(p.k())};
  }
};

inline void require_multiplier_dims(const BoxProgram& p, const Multipliers& mult) {
  require_dim(p.m(), mult.y.size(), "multiplier y*");
  require_dim(p.n(), mult.x1.size(), "multiplier x1*");
  require_dim(p.n(), mult.x2.size(), "multiplier x2*");
  require_dim(p.k(), mult.z.size(), "multiplier z*");
}

/// Sign checks: y* in the dual of Y+ within `tol`, x1*, x2* >= -1e-12.
inline bool multipliers_valid(const BoxProgram& p, const Multipliers& mult, double tol = 1e-9,
                              const Config& cfg = Config{}) {
  require_multiplier_dims(p, mult);
  if (p.n() > 0 && (mult.x1.minCoeff() < -1e-12 || mult.x2.minCoeff() < -1e-12)) return false;
  if (p.m() == 0) return true;
  if (!p.y_cone || p.y_cone->is_coordinate_like()) return mult.y.minCoeff() >= -tol;
  if (p.y_cone->has_generators()) return (p.y_cone->generators() * mult.y).minCoeff() >= -tol;
  numkernel::LPProblem lp;
  lp.cost = Vector::Zero(p.y_cone->halfspaces().rows());
  lp.eq = p.y_cone->halfspaces().transpose();
  lp.eq_rhs = mult.y;
  lp.lower = Vector::Zero(lp.cost.size());
  return numkernel::solve_lp(lp, cfg).status == numkernel::SolveStatus::kOptimal;
}

/// kSignCorrected pairs the box multipliers with x_a - x and x - x_b, the
/// slack signs under which inf_x L <= f on the feasible set. kAsDisplayed
/// pairs them with x - x_a and x_b - x.
enum class LagrangianForm { kSignCorrected, kAsDisplayed };

inline double lagrangian_value(const BoxProgram& p, const Vector& x, const Multipliers& mult,
                               LagrangianForm form = LagrangianForm::kSignCorrected) {
  require_dim(p.n(), x.size(), "lagrangian point");
  require_multiplier_dims(p, mult);
  const double s = form == LagrangianForm::kSignCorrected ? 1.0 : -1.0;
  double v = p.objective(x) + s * mult.x1.dot(p.lower - x) + s * mult.x2.dot(x - p.upper);
  if (p.m() > 0) v += mult.y.dot(p.g(x));
  if (p.k() > 0) v += mult.z.dot(p.h(x));
  return v;
}

/// L(x) = 1/2 x'Qx + r'x + constant for fixed multipliers.
struct LagrangianAffinePart {
  Vector r;
  double constant = 0.0;
};

inline LagrangianAffinePart lagrangian_affine_part(const BoxProgram& p, const Multipliers& mult) {
  require_multiplier_dims(p, mult);
  LagrangianAffinePart a;
  a.r = p.q - mult.x1 + mult.x2;
  a.constant = p.c + mult.x1.dot(p.lower) - mult.x2.dot(p.upper);
  if (p.m() > 0) {
    a.r += p.G.transpose() * mult.y;
    a.constant += mult.y.dot(p.g0);
  }
  if (p.k() > 0) {
    a.r += p.H.transpose() * mult.z;
    a.constant += mult.z.dot(p.h0);
  }
  return a;
}

struct DualEvaluation {
  Extended value;
  Vector minimizer;  // empty when the value is -inf
};

/// inf over R^n of the sign-corrected Lagrangian, by an exact linear solve.
/// -inf when r has a component in the kernel of Q.
inline DualEvaluation evaluate_dual(const BoxProgram& p, const Multipliers& mult) {
  const auto a = lagrangian_affine_part(p, mult);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(p.Q);
  const Vector lam = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  const double lam_max = std::max(lam.cwiseAbs().maxCoeff(), 1.0);
  const double kernel_tol = 1e-9 * (1.0 + a.r.norm());
  const Vector coeff = v.transpose() * a.r;
  Vector x = Vector::Zero(p.n());
  double value = a.constant;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > 1e-12 * lam_max) {
      value -= 0.5 * coeff(i) * coeff(i) / lam(i);
      x -= (coeff(i) / lam(i)) * v.col(i);
    } else if (std::abs(coeff(i)) > kernel_tol) {
      return {Extended::minus_infinity(), Vector()};
    }
  }
  return {value, x};
}

inline Extended dual_value(const BoxProgram& p, const Multipliers& mult) { return evaluate_dual(p, mult).value; }

/// Max over stationarity, feasibility, sign and complementarity violations.
inline double kkt_residual(const BoxProgram& p, const Vector& x, const Multipliers& mult) {
  const auto a = lagrangian_affine_part(p, mult);
  double v = (p.Q * x + a.r).cwiseAbs().maxCoeff();
  v = std::max(v, p.infeasibility(x));
  v = std::max({v, -mult.x1.minCoeff(), -mult.x2.minCoeff()});
  v = std::max(v, mult.x1.cwiseProduct(x - p.lower).cwiseAbs().maxCoeff());
  v = std::max(v, mult.x2.cwiseProduct(p.upper - x).cwiseAbs().maxCoeff());
  if (p.m() > 0) v = std::max(v, std::abs(mult.y.dot(p.g(x))));
  return v;
}

// ---------------------------------------------------------------------------
// Modified Slater condition

struct SlaterResult {
  bool holds = false;
  Vector witness;       // maximizer of the margin
  double lambda = 0.0;  // -lambda g(witness) - e is interior to Y+
  double margin = 0.0;  // max_x min_k <A_k, -g(x)> over the feasible box slice
  bool neighborhood = false;  // h(box) contains a neighborhood of 0
  Eigen::Index h_rank = 0;
  double interior_slack = 0.0;  // largest t with x_a + t <= x <= x_b - t, h(x) = 0
  std::string diagnosis;
  numkernel::LPProblem lp;
  numkernel::FarkasCertificate farkas;  // when h has no zero in the box
};

namespace detail {

// Variables (x, s): max s s.t. <A_k, -(Gx + g0)> >= s, Hx = -h0, box.
inline numkernel::LPProblem slater_lp(const BoxProgram& p) {
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  const Eigen::Index nv = m > 0 ? n + 1 : n;
  numkernel::LPProblem lp;
  lp.cost = Vector::Zero(nv);
  lp.lower = Vector::Constant(nv, -numkernel::kInf);
  lp.upper = Vector::Constant(nv, numkernel::kInf);
  lp.lower.head(n) = p.lower;
  lp.upper.head(n) = p.upper;
  if (m > 0) {
    const Matrix a = p.y_halfspaces();
    lp.cost(n) = -1.0;
    lp.ineq = Matrix::Zero(a.rows(), nv);
    lp.ineq.leftCols(n) = -a * p.G;
    lp.ineq.col(n).setConstant(-1.0);
    lp.ineq_rhs = a * p.g0;
  }
  if (p.k() > 0) {
    lp.eq = Matrix::Zero(p.k(), nv);
    lp.eq.leftCols(n) = p.H;
    lp.eq_rhs = -p.h0;
  }
  return lp;
}

}  // namespace detail

/// Searches for x in the box with h(x) = 0 and -g(x) interior to Y+, and
/// reports whether h maps the box onto a neighborhood of 0 (rank of H plus
/// a strictly interior zero of h).
inline SlaterResult check_modified_slater(const BoxProgram& p, const Vector& e, const Config& cfg = Config{}) {
  p.validate(cfg);
  SlaterResult res;
  if (p.m() > 0) {
    require_dim(p.m(), e.size(), "Slater direction e");
    require((p.y_halfspaces() * e).minCoeff() > cfg.tol.interior_margin, "e must be interior to Y+");
  }
  res.lp = detail::slater_lp(p);
  const auto r = numkernel::solve_lp(res.lp, cfg);
  if (r.status == numkernel::SolveStatus::kInfeasible) {
    res.diagnosis = "h(x) = 0 has no solution in the box";
    res.farkas = r.farkas;
    return res;
  }
  if (r.status != numkernel::SolveStatus::kOptimal) throw Error("Slater LP ended with status " + to_string(r.status));
  res.witness = r.x.head(p.n());
  if (p.m() == 0) {
    res.holds = true;
    res.lambda = 1.0;
    res.diagnosis = "no cone constraint";
  } else {
    const Vector neg_g = -(p.y_halfspaces() * p.g(res.witness));
    res.margin = neg_g.minCoeff();
    res.holds = res.margin > cfg.tol.membership;
    if (res.holds) {
      res.lambda = 2.0 * (p.y_halfspaces() * e).cwiseQuotient(neg_g).maxCoeff();
      res.diagnosis = "strictly feasible point found";
    } else {
      res.diagnosis = "no point of the box makes -g(x) interior to Y+";
    }
  }

  // Neighborhood of 0 in h(box).
  if (p.k() == 0) {
    res.neighborhood = true;
    res.interior_slack = 0.5 * (p.upper - p.lower).minCoeff();
  } else {
    Eigen::FullPivLU<Matrix> lu(p.H);
    lu.setThreshold(1e-10);
    res.h_rank = lu.rank();
    const Eigen::Index n = p.n();
    numkernel::LPProblem t;
    t.cost = Vector::Zero(n + 1);
    t.cost(n) = -1.0;
    t.ineq = Matrix::Zero(2 * n, n + 1);
    t.ineq.topLeftCorner(n, n).setIdentity();
    t.ineq.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    t.ineq.col(n).setConstant(-1.0);
    t.ineq_rhs.resize(2 * n);
    t.ineq_rhs << p.lower, -p.upper;
    t.eq = Matrix::Zero(p.k(), n + 1);
    t.eq.leftCols(n) = p.H;
    t.eq_rhs = -p.h0;
    t.upper = Vector::Constant(n + 1, numkernel::kInf);
    t.upper(n) = (p.upper - p.lower).maxCoeff();
    const auto tr = numkernel::solve_lp(t, cfg);
    if (tr.status == numkernel::SolveStatus::kOptimal) res.interior_slack = tr.x(n);
    res.neighborhood = res.h_rank == p.k() && res.interior_slack > cfg.tol.membership;
  }
  return res;
}

/// Finite-dimensional generating-space lift: pi = x_b - x_a and
/// e' = (e - g(x)) / |e - g(x)| at a Slater point x. Both are interior, so
/// the reweighted dual cones coincide with the original ones as sets and
/// multipliers need no rescaling.
struct LiftReport {
  Vector pi;
  Vector e_prime;
  bool e_prime_interior = false;
};

inline LiftReport generating_lift(const BoxProgram& p, const Vector& e, const Vector& witness) {
  LiftReport l;
  l.pi = p.upper - p.lower;
  if (p.m() == 0) return l;
  const Vector d = e - p.g(witness);
  l.e_prime = d / d.norm();
  l.e_prime_interior = (p.y_halfspaces() * l.e_prime).minCoeff() > 0.0;
  return l;
}

// ---------------------------------------------------------------------------
// Primal and dual solves

struct PrimalResult {
  bool feasible = false;
  Vector x;
  double value = 0.0;
  Multipliers multipliers;
  double kkt_residual = 0.0;
  int pivots = 0;
  numkernel::LPProblem feasibility;     // constraint system in x
  numkernel::FarkasCertificate farkas;  // when infeasible
};

inline numkernel::QPProblem primal_qp(const BoxProgram& p) {
  numkernel::QPProblem qp;
  qp.q_mat = p.Q;
  qp.cost = p.q;
  if (p.m() > 0) {
    const Matrix a = p.y_halfspaces();
    qp.ineq = -a * p.G;
    qp.ineq_rhs = a * p.g0;
  }
  if (p.k() > 0) {
    qp.eq = p.H;
    qp.eq_rhs = -p.h0;
  }
  qp.lower = p.lower;
  qp.upper = p.upper;
  return qp;
}

/// Exact primal solve through the KKT complementarity system.
inline PrimalResult solve_primal(const BoxProgram& p, const Config& cfg = Config{}) {
  p.validate(cfg);
  const auto qp = primal_qp(p);
  const auto r = numkernel::solve_qp(qp, cfg);
  PrimalResult res;
  res.pivots = r.pivots;
  res.feasibility = numkernel::feasibility_lp(qp);
  if (r.status == numkernel::QPStatus::kInfeasible) {
    res.farkas = r.farkas;
    return res;
  }
  if (r.status != numkernel::QPStatus::kOptimal) throw Error("primal solve ended with status " + to_string(r.status));
  res.feasible = true;
  res.x = r.x;
  res.value = p.objective(r.x);
  res.multipliers.y = p.m() > 0 ? Vector(p.y_halfspaces().transpose() * r.lambda) : Vector(0);
  res.multipliers.x1 = r.mu_lower;
  res.multipliers.x2 = r.mu_upper;
  res.multipliers.z = p.k() > 0 ? Vector(-r.nu) : Vector(0);
  res.kkt_residual = kkt_residual(p, res.x, res.multipliers);
  return res;
}

enum class DualStatus { kOptimal, kUnbounded, kIterationCap };

inline std::string to_string(DualStatus s) {
  switch (s) {
    case DualStatus::kOptimal:
      return "optimal";
    case DualStatus::kUnbounded:
      return "unbounded";
    default:
      return "iteration-cap";
  }
}

struct DualResult {
  DualStatus status = DualStatus::kIterationCap;
  Multipliers multipliers;
  Vector cone_coefficients;  // y* = A' mu
  Extended value;
  int pivots = 0;
};

/// Maximizes the dual function through its Wolfe form
///
///     max const(m) - 1/2 x'Qx  s.t.  Qx + r(m) = 0,  m in the multiplier cone,
///
/// with y* = A'mu, mu >= 0, for the halfspace rows A of Y+. The returned
/// value is the closed-form dual value at the optimal multipliers.
/// kUnbounded (+inf) means the primal is infeasible.
inline DualResult solve_dual(const BoxProgram& p, const Config& cfg = Config{}) {
  p.validate(cfg);
  const Eigen::Index n = p.n();
  const Eigen::Index k = p.k();
  const Matrix a = p.m() > 0 ? p.y_halfspaces() : Matrix(0, 0);
  const Eigen::Index nk = a.rows();
  const Eigen::Index nv = n + nk + 2 * n + k;
  numkernel::QPProblem qp;
  qp.q_mat = Matrix::Zero(nv, nv);
  qp.q_mat.topLeftCorner(n, n) = p.Q;
  qp.cost = Vector::Zero(nv);
  qp.eq = Matrix::Zero(n, nv);
  qp.eq.leftCols(n) = p.Q;
  if (nk > 0) {
    qp.cost.segment(n, nk) = -a * p.g0;
    qp.eq.middleCols(n, nk) = p.G.transpose() * a.transpose();
  }
  qp.cost.segment(n + nk, n) = -p.lower;
  qp.cost.segment(2 * n + nk, n) = p.upper;
  qp.eq.middleCols(n + nk, n) = -Matrix::Identity(n, n);
  qp.eq.middleCols(2 * n + nk, n) = Matrix::Identity(n, n);
  if (k > 0) {
    qp.cost.tail(k) = -p.h0;
    qp.eq.rightCols(k) = p.H.transpose();
  }
  qp.eq_rhs = -p.q;
  qp.lower = Vector::Constant(nv, -numkernel::kInf);
  qp.lower.segment(n, nk + 2 * n).setZero();

  const auto r = numkernel::solve_qp(qp, cfg);
  DualResult res;
  res.pivots = r.pivots;
  if (r.status == numkernel::QPStatus::kUnbounded) {
    res.status = DualStatus::kUnbounded;
    res.value = Extended::plus_infinity();
    return res;
  }
  if (r.status != numkernel::QPStatus::kOptimal) {
    throw Error("dual solve ended with status " + numkernel::to_string(r.status));
  }
  res.status = DualStatus::kOptimal;
  res.cone_coefficients = r.x.segment(n, nk);
  res.multipliers.y = nk > 0 ? Vector(a.transpose() * res.cone_coefficients) : Vector(0);
  res.multipliers.x1 = r.x.segment(n + nk, n);
  res.multipliers.x2 = r.x.segment(2 * n + nk, n);
  res.multipliers.z = r.x.tail(k);
  res.value = dual_value(p, res.multipliers);
  if (!res.value.finite()) {
    // Kernel drift beyond tolerance; fall back to the Wolfe objective.
    res.value = p.c - r.value;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Gap report

struct GapReport {
  Extended primal;
  Extended dual;
  Extended gap;
  SlaterResult slater;
  LiftReport lift;
  PrimalResult primal_solution;
  DualResult dual_solution;
  bool asserted = false;  // gap <= tolerance is claimed (Slater holds)
  bool verified = true;   // claim met, or nothing claimed
  double tolerance = 0.0;
};

/// Solves both programs, checks weak duality (throws on violation) and
/// claims a zero gap only when the modified Slater condition holds.
inline GapReport duality_gap_report(const BoxProgram& p, const Vector& e, const Config& cfg = Config{}) {
  GapReport rep;
  rep.tolerance = cfg.tol.gap;
  rep.slater = check_modified_slater(p, e, cfg);
  if (rep.slater.holds) rep.lift = generating_lift(p, e, rep.slater.witness);
  rep.primal_solution = solve_primal(p, cfg);
  rep.dual_solution = solve_dual(p, cfg);
  rep.primal = rep.primal_solution.feasible ? Extended(rep.primal_solution.value) : Extended::plus_infinity();
  rep.dual = rep.dual_solution.value;
  if (rep.primal.finite() && rep.dual.finite()) {
    const double pv = rep.primal.value();
    const double dv = rep.dual.value();
    if (dv > pv + 1e-9 * (1.0 + std::abs(pv))) {
      throw Error("weak duality violated: dual " + std::to_string(dv) + " > primal " + std::to_string(pv));
    }
    rep.gap = std::max(pv - dv, 0.0);
  } else {
    rep.gap = rep.primal.is_plus_infinity() && rep.dual.is_plus_infinity() ? Extended(0.0) : Extended::plus_infinity();
  }
  rep.asserted = rep.slater.holds && rep.primal_solution.feasible;
  rep.verified = !rep.asserted || (rep.gap.finite() && rep.gap.value() <= rep.tolerance);
  return rep;
}

// ---------------------------------------------------------------------------
// Stationarity certificates

/// F : R^n -> R^m with F_i(x) = 1/2 x'Q_i x + <L_i, x> + c_i. An empty
/// `quad` list means F is affine.
struct QuadraticMap {
  std::vector<Matrix> quad;
  Matrix lin;  // m x n
  Vector constant;

  Eigen::Index m() const { return lin.rows(); }
  Eigen::Index n() const { return lin.cols(); }

  void validate() const {
    require(m() >= 1 && n() >= 1, "objective map needs positive dimensions");
    require_dim(m(), constant.size(), "objective constants");
    require(lin.allFinite() && constant.allFinite(), "objective map must be finite");
    require(quad.empty() || static_cast<Eigen::Index>(quad.size()) == m(), "one quadratic term per component");
    for (const auto& qi : quad) {
      require_dim(n(), qi.rows(), "quadratic term rows");
      require_dim(n(), qi.cols(), "quadratic term cols");
      require(qi.allFinite(), "quadratic term must be finite");
    }
  }

  Vector value(const Vector& x) const {
    require_dim(n(), x.size(), "objective point");
    Vector v = lin * x + constant;
    for (std::size_t i = 0; i < quad.size(); ++i) v(static_cast<Eigen::Index>(i)) += 0.5 * x.dot(quad[i] * x);
    return v;
  }

  Matrix jacobian(const Vector& x) const {
    require_dim(n(), x.size(), "objective point");
    Matrix j = lin;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      j.row(static_cast<Eigen::Index>(i)) += (0.5 * (quad[i] + quad[i].transpose()) * x).transpose();
    }
    return j;
  }
};

/// Bound activity per coordinate: -1 lower, +1 upper, 0 interior.
inline std::vector<int> active_pattern(const Vector& x, const Vector& lower, const Vector& upper, double tol) {
  std::vector<int> a(static_cast<std::size_t>(x.size()), 0);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const bool lo = std::abs(x(j) - lower(j)) <= tol;
    const bool hi = std::abs(x(j) - upper(j)) <= tol;
    if (lo && !hi) a[static_cast<std::size_t>(j)] = -1;
    if (hi && !lo) a[static_cast<std::size_t>(j)] = 1;
    if (lo && hi) a[static_cast<std::size_t>(j)] = 2;  // degenerate coordinate, any sign
  }
  return a;
}

/// Either y* in (Y+)* with <y*, e> = 1 and nu = -J'y* in N(x, box), or a
/// refusal carrying the infeasible LP and its Farkas certificate.
struct StationarityCertificate {
  bool certified = false;
  Vector y;
  Vector cone_coefficients;
  Vector normal;
  Matrix jacobian;
  std::vector<int> active;
  double slack = 0.0;  // admitted violation of the normal-cone signs
  std::string reason;
  numkernel::LPProblem lp;
  numkernel::FarkasCertificate farkas;
  bool farkas_verified = false;
};

inline StationarityCertificate stationarity_certificate(const QuadraticMap& f, const PolyhedralCone& y_cone,
                                                        const Vector& lower, const Vector& upper, const Vector& x,
                                                        const Vector& e, const Config& cfg = Config{}) {
  f.validate();
  const Eigen::Index n = f.n();
  require_dim(f.m(), y_cone.dim(), "certificate cone");
  require_dim(n, lower.size(), "box lower bound");
  require_dim(n, upper.size(), "box upper bound");
  require_dim(n, x.size(), "certificate point");
  require_dim(f.m(), e.size(), "certificate direction e");
  require_finite(x, "certificate point");
  require((upper - lower).minCoeff() >= 0.0, "invalid box");
  require(e.norm() > 0.0 && cone_contains(y_cone, e, 0.0), "e must be a nonzero element of Y+");

  StationarityCertificate cert;
  const double atol = cfg.tol.active_bound;
  cert.slack = cfg.tol.certificate;

  if ((lower - x).maxCoeff() > atol || (x - upper).maxCoeff() > atol) {
    // N(x, box) is empty; certify x notin box with the system {z = x, box}.
    cert.reason = "point lies outside the box: the normal cone is empty";
    cert.lp.cost = Vector::Zero(n);
    cert.lp.eq = Matrix::Identity(n, n);
    cert.lp.eq_rhs = x;
    cert.lp.lower = lower;
    cert.lp.upper = upper;
    const auto r = numkernel::solve_lp(cert.lp, cfg);
    cert.farkas = r.farkas;
    cert.farkas_verified = r.status == numkernel::SolveStatus::kInfeasible &&
                           numkernel::farkas_margin(cert.lp, cert.farkas) > 0.0;
    return cert;
  }

  cert.jacobian = f.jacobian(x);
  cert.active = active_pattern(x, lower, upper, atol);
  const Matrix& a = y_cone.halfspaces();
  const Matrix b = cert.jacobian.transpose() * a.transpose();  // (J'y)_j = (B mu)_j
  const Eigen::Index nk = a.rows();
  auto build = [&](double slack) {
    std::vector<Vector> rows;
    std::vector<double> rhs;
    for (Eigen::Index j = 0; j < n; ++j) {
      const int s = cert.active[static_cast<std::size_t>(j)];
      if (s == 2) continue;
      if (s <= 0) {  // nu_j <= 0 allowed at a lower bound: (J'y)_j >= 0
        rows.push_back(b.row(j).transpose());
        rhs.push_back(-slack);
      }
      if (s >= 0) {
        rows.push_back(-b.row(j).transpose());
        rhs.push_back(-slack);
      }
    }
    numkernel::LPProblem lp;
    lp.cost = Vector::Zero(nk);
    lp.ineq = stack_rows(rows, nk);
    lp.ineq_rhs = Eigen::Map<const Vector>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    lp.eq = (a * e).transpose();
    lp.eq_rhs = vec({1.0});
    lp.lower = Vector::Zero(nk);
    return lp;
  };
  // Exact signs first; the slack only absorbs rounding in x and J.
  cert.lp = build(0.0);
  auto r = numkernel::solve_lp(cert.lp, cfg);
  if (r.status == numkernel::SolveStatus::kInfeasible) {
    cert.lp = build(cert.slack);
    r = numkernel::solve_lp(cert.lp, cfg);
  }
  if (r.status == numkernel::SolveStatus::kInfeasible) {
    cert.reason = "no y* in the dual cone with <y*, e> = 1 makes -J'y* normal to the box";
    cert.farkas = r.farkas;
    cert.farkas_verified = numkernel::farkas_margin(cert.lp, cert.farkas) > 0.0;
    return cert;
  }
  if (r.status != numkernel::SolveStatus::kOptimal) throw Error("certificate LP ended with status " + to_string(r.status));
  cert.certified = true;
  cert.cone_coefficients = r.x;
  cert.y = a.transpose() * r.x;
  cert.normal = -cert.jacobian.transpose() * cert.y;
  cert.reason = "certified";
  return cert;
}

}  // namespace conegen
