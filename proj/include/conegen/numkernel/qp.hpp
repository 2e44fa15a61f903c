#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "conegen/numkernel/lcp.hpp"
#include "conegen/numkernel/lp.hpp"

namespace conegen::numkernel {

/// Convex quadratic program
///
///     min  1/2 x'Qx + c'x
///     s.t. ineq x >= ineq_rhs,  eq x = eq_rhs,  lower <= x <= upper
///
/// Q must be symmetric positive semidefinite. Bound conventions follow
/// LPProblem.
struct QPProblem {
  Matrix q_mat;
  Vector cost;
  Matrix ineq;
  Vector ineq_rhs;
  Matrix eq;
  Vector eq_rhs;
  Vector lower;
  Vector upper;

  Eigen::Index num_vars() const { return cost.size(); }
};

enum class QPStatus { kOptimal, kInfeasible, kUnbounded, kIterationCap };

inline std::string to_string(QPStatus s) {
  switch (s) {
    case QPStatus::kOptimal:
      return "optimal";
    case QPStatus::kInfeasible:
      return "infeasible";
    case QPStatus::kUnbounded:
      return "unbounded";
    default:
      return "iteration-cap";
  }
}

/// KKT point: Qx + c - ineq'lambda - eq'nu - mu_lower + mu_upper = 0.
struct QPResult {
  QPStatus status = QPStatus::kIterationCap;
  Vector x;
  double value = 0.0;
  Vector lambda;    // inequality multipliers, >= 0
  Vector nu;        // equality multipliers
  Vector mu_lower;  // >= 0
  Vector mu_upper;  // >= 0
  double stationarity_residual = 0.0;
  double primal_residual = 0.0;
  double complementarity = 0.0;
  int pivots = 0;
  FarkasCertificate farkas;  // when infeasible
};

inline LPProblem feasibility_lp(const QPProblem& p) {
  LPProblem lp;
  lp.cost = Vector::Zero(p.num_vars());
  lp.ineq = p.ineq;
  lp.ineq_rhs = p.ineq_rhs;
  lp.eq = p.eq;
  lp.eq_rhs = p.eq_rhs;
  lp.lower = p.lower;
  lp.upper = p.upper;
  return lp;
}

/// Solves `p` exactly (up to rounding) through the KKT linear
/// complementarity problem and Lemke's method.
inline QPResult solve_qp(const QPProblem& p, const Config& cfg = Config{}) {
  const Eigen::Index n = p.num_vars();
  const Matrix ineq = detail::rows_or_empty(p.ineq, n);
  const Matrix eq = detail::rows_or_empty(p.eq, n);
  const Vector ineq_rhs = detail::or_empty(p.ineq_rhs);
  const Vector eq_rhs = detail::or_empty(p.eq_rhs);
  require_dim(n, p.q_mat.rows(), "QP matrix rows");
  require_dim(n, p.q_mat.cols(), "QP matrix cols");
  require_dim(ineq.rows(), ineq_rhs.size(), "QP inequality rhs");
  require_dim(eq.rows(), eq_rhs.size(), "QP equality rhs");
  auto lo = [&](Eigen::Index j) { return p.lower.size() == 0 ? -kInf : p.lower(j); };
  auto hi = [&](Eigen::Index j) { return p.upper.size() == 0 ? kInf : p.upper(j); };

  // x = x0 + T z with z >= 0.
  Vector x0 = Vector::Zero(n);
  std::vector<Eigen::Index> first_col(static_cast<std::size_t>(n));
  std::vector<int> kind(static_cast<std::size_t>(n));  // 0 shift-lower, 1 flip-upper, 2 split
  std::vector<Eigen::Index> ub_vars;
  Eigen::Index nz = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    require(!(lo(j) > hi(j)), "QP bounds cross at variable " + std::to_string(j));
    first_col[static_cast<std::size_t>(j)] = nz;
    if (std::isfinite(lo(j))) {
      kind[static_cast<std::size_t>(j)] = 0;
      x0(j) = lo(j);
      nz += 1;
      if (std::isfinite(hi(j))) ub_vars.push_back(j);
    } else if (std::isfinite(hi(j))) {
      kind[static_cast<std::size_t>(j)] = 1;
      x0(j) = hi(j);
      nz += 1;
    } else {
      kind[static_cast<std::size_t>(j)] = 2;
      nz += 2;
    }
  }
  Matrix tmap = Matrix::Zero(n, nz);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index c = first_col[static_cast<std::size_t>(j)];
    switch (kind[static_cast<std::size_t>(j)]) {
      case 0:
        tmap(j, c) = 1.0;
        break;
      case 1:
        tmap(j, c) = -1.0;
        break;
      default:
        tmap(j, c) = 1.0;
        tmap(j, c + 1) = -1.0;
    }
  }

  const Eigen::Index n_in = ineq.rows();
  const Eigen::Index n_eq = eq.rows();
  const Eigen::Index n_ub = static_cast<Eigen::Index>(ub_vars.size());
  const Eigen::Index nr = n_in + 2 * n_eq + n_ub;
  Matrix r_mat = Matrix::Zero(nr, nz);
  Vector r_rhs(nr);
  if (n_in > 0) {
    r_mat.topRows(n_in) = ineq * tmap;
    r_rhs.head(n_in) = ineq_rhs - ineq * x0;
  }
  if (n_eq > 0) {
    r_mat.middleRows(n_in, n_eq) = eq * tmap;
    r_rhs.segment(n_in, n_eq) = eq_rhs - eq * x0;
    r_mat.middleRows(n_in + n_eq, n_eq) = -eq * tmap;
    r_rhs.segment(n_in + n_eq, n_eq) = -(eq_rhs - eq * x0);
  }
  for (Eigen::Index k = 0; k < n_ub; ++k) {
    const Eigen::Index j = ub_vars[static_cast<std::size_t>(k)];
    r_mat(n_in + 2 * n_eq + k, first_col[static_cast<std::size_t>(j)]) = -1.0;
    r_rhs(n_in + 2 * n_eq + k) = -(hi(j) - lo(j));
  }

  const Matrix pz = tmap.transpose() * p.q_mat * tmap;
  const Vector cz = tmap.transpose() * (p.q_mat * x0 + p.cost);
  Matrix m = Matrix::Zero(nz + nr, nz + nr);
  m.topLeftCorner(nz, nz) = pz;
  m.topRightCorner(nz, nr) = -r_mat.transpose();
  m.bottomLeftCorner(nr, nz) = r_mat;
  Vector q(nz + nr);
  q.head(nz) = cz;
  q.tail(nr) = -r_rhs;

  const LCPResult lcp = solve_lcp(m, q, cfg);
  QPResult res;
  res.pivots = lcp.pivots;
  if (lcp.status != LCPStatus::kSolved) {
    res.x = Vector::Zero(n);
    if (lcp.status == LCPStatus::kIterationCap) {
      res.status = QPStatus::kIterationCap;
      return res;
    }
    const SolveReport feas = solve_lp(feasibility_lp(p), cfg);
    if (feas.status == SolveStatus::kInfeasible) {
      res.status = QPStatus::kInfeasible;
      res.farkas = feas.farkas;
    } else {
      res.status = QPStatus::kUnbounded;
      res.x = feas.x;
    }
    return res;
  }

  const Vector z = lcp.z.head(nz);
  const Vector lam = lcp.z.tail(nr);
  const Vector w1 = lcp.w.head(nz);
  res.x = x0 + tmap * z;
  res.lambda = lam.head(n_in);
  res.nu = lam.segment(n_in, n_eq) - lam.segment(n_in + n_eq, n_eq);
  res.mu_lower = Vector::Zero(n);
  res.mu_upper = Vector::Zero(n);
  for (Eigen::Index k = 0; k < n_ub; ++k) res.mu_upper(ub_vars[static_cast<std::size_t>(k)]) = lam(n_in + 2 * n_eq + k);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index c = first_col[static_cast<std::size_t>(j)];
    if (kind[static_cast<std::size_t>(j)] == 0) res.mu_lower(j) = std::max(w1(c), 0.0);
    if (kind[static_cast<std::size_t>(j)] == 1) res.mu_upper(j) = std::max(w1(c), 0.0);
  }
  // Clip the solution into its bounds; Lemke leaves at most rounding-level drift.
  for (Eigen::Index j = 0; j < n; ++j) res.x(j) = std::clamp(res.x(j), lo(j), hi(j));

  res.value = 0.5 * res.x.dot(p.q_mat * res.x) + p.cost.dot(res.x);
  Vector grad = p.q_mat * res.x + p.cost - res.mu_lower + res.mu_upper;
  if (n_in > 0) grad -= ineq.transpose() * res.lambda;
  if (n_eq > 0) grad -= eq.transpose() * res.nu;
  res.stationarity_residual = n > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
  res.primal_residual = primal_violation(feasibility_lp(p), res.x);
  res.complementarity = std::abs(lcp.z.dot(lcp.w));
  res.status = QPStatus::kOptimal;
  return res;
}

struct BoxVIResult {
  LCPStatus status = LCPStatus::kIterationCap;
  Vector x;
  Vector mu_lower;
  Vector mu_upper;
  double residual = 0.0;  // max |F(x) - mu_lower + mu_upper|
};

/// Affine variational inequality on a finite box: find x in [lower, upper]
/// with <M x + b, y - x> >= 0 for all y in the box. Solved as the LCP
/// w1 = M (lower + z) + b + mu_u, w2 = (upper - lower) - z.
inline BoxVIResult solve_box_vi(const Matrix& m, const Vector& b, const Vector& lower, const Vector& upper,
                                const Config& cfg = Config{}) {
  const Eigen::Index n = b.size();
  require_dim(n, m.rows(), "VI matrix rows");
  require_dim(n, m.cols(), "VI matrix cols");
  require_dim(n, lower.size(), "VI lower bound");
  require_dim(n, upper.size(), "VI upper bound");
  require(lower.allFinite() && upper.allFinite(), "VI box must be finite");
  require((upper - lower).minCoeff() >= 0.0, "VI box is empty");
  Matrix lm = Matrix::Zero(2 * n, 2 * n);
  lm.topLeftCorner(n, n) = m;
  lm.topRightCorner(n, n).setIdentity();
  lm.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  Vector lq(2 * n);
  lq.head(n) = m * lower + b;
  lq.tail(n) = upper - lower;
  const LCPResult r = solve_lcp(lm, lq, cfg);
  BoxVIResult out;
  out.status = r.status;
  if (r.status != LCPStatus::kSolved) return out;
  out.x = (lower + r.z.head(n)).cwiseMax(lower).cwiseMin(upper);
  out.mu_upper = r.z.tail(n);
  out.mu_lower = r.w.head(n).cwiseMax(0.0);
  out.residual = (m * out.x + b - out.mu_lower + out.mu_upper).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace conegen::numkernel
