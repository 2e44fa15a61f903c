#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "conegen/config.hpp"
#include "conegen/types.hpp"

namespace conegen::numkernel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense linear program
///
///     min  cost' x
///     s.t. ineq x >= ineq_rhs
///          eq   x  = eq_rhs
///          lower <= x <= upper
///
/// Empty `lower` / `upper` mean unbounded on that side; individual entries may
/// be +-infinity for the same effect. Empty constraint blocks may be given as
/// 0 x n matrices or left default-constructed.
struct LPProblem {
  Vector cost;
  Matrix ineq;
  Vector ineq_rhs;
  Matrix eq;
  Vector eq_rhs;
  Vector lower;
  Vector upper;

  Eigen::Index num_vars() const { return cost.size(); }
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationCap };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    default:
      return "iteration-cap";
  }
}

/// Multipliers proving infeasibility of { ineq x >= b, eq x = f, l <= x <= u }:
/// ineq' y + eq' z + w_lower - w_upper = 0 with y, w >= 0 and
/// b'y + f'z + l'w_lower - u'w_upper > 0.
struct FarkasCertificate {
  Vector ineq;
  Vector eq;
  Vector lower;
  Vector upper;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kIterationCap;
  Vector x;
  double value = 0.0;
  double primal_residual = 0.0;  // max constraint violation of x
  double dual_residual = 0.0;    // max negative reduced cost at termination
  int iterations = 0;
  Vector ineq_duals;  // >= 0, valid when optimal
  Vector eq_duals;
  Vector ray;         // improving direction when unbounded
  FarkasCertificate farkas;  // when infeasible
};

namespace detail {

inline Matrix rows_or_empty(const Matrix& m, Eigen::Index n) {
  if (m.size() == 0) return Matrix(0, n);
  return m;
}

inline Vector or_empty(const Vector& v) { return v.size() == 0 ? Vector(0) : v; }

/// Column mapping from the original variable to standard-form columns.
struct VarMap {
  enum class Kind { kShiftLower, kFlipUpper, kSplit } kind;
  double anchor = 0.0;  // l_j or u_j
  Eigen::Index col = 0;  // first standard column
};

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Matrix::Zero(rows + 1, cols + 1)), basis_(rows) {}

  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double at(Eigen::Index r, Eigen::Index c) const { return t_(r, c); }
  double& rhs(Eigen::Index r) { return t_(r, t_.cols() - 1); }
  double rhs(Eigen::Index r) const { return t_(r, t_.cols() - 1); }
  double& obj(Eigen::Index c) { return t_(t_.rows() - 1, c); }
  double obj(Eigen::Index c) const { return t_(t_.rows() - 1, c); }
  double& obj_value() { return t_(t_.rows() - 1, t_.cols() - 1); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const double p = t_(r, c);
    t_.row(r) /= p;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  /// Recomputes the reduced-cost row for the given column costs.
  void price(const Vector& costs) {
    for (Eigen::Index c = 0; c <= cols(); ++c) t_(rows(), c) = c < cols() ? costs(c) : 0.0;
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const double cb = costs(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) t_.row(rows()) -= cb * t_.row(r);
    }
  }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded, kCap };

/// Bland's rule: lowest-index improving column; ratio ties go to the lowest
/// basic variable index.
inline PhaseResult run_simplex(Tableau& t, Eigen::Index allowed_cols, const Tolerances& tol, int cap,
                               int& iterations, Eigen::Index& unbounded_col) {
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index c = 0; c < allowed_cols; ++c) {
      if (t.obj(c) < -tol.lp_feasibility) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return PhaseResult::kOptimal;
    if (iterations >= cap) return PhaseResult::kCap;

    Eigen::Index leave = -1;
    double best = kInf;
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= tol.pivot) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      const double slack = 1e-12 * (1.0 + std::abs(best));
      if (leave < 0 || ratio < best - slack) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + slack &&
                 t.basis()[static_cast<std::size_t>(r)] < t.basis()[static_cast<std::size_t>(leave)]) {
        leave = r;
      }
    }
    if (leave < 0) {
      unbounded_col = enter;
      return PhaseResult::kUnbounded;
    }
    t.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace detail

/// Max violation of the constraints of `p` at `x`.
inline double primal_violation(const LPProblem& p, const Vector& x) {
  const Eigen::Index n = p.num_vars();
  double v = 0.0;
  const Matrix ineq = detail::rows_or_empty(p.ineq, n);
  const Matrix eq = detail::rows_or_empty(p.eq, n);
  if (ineq.rows() > 0) v = std::max(v, (p.ineq_rhs - ineq * x).cwiseMax(0.0).maxCoeff());
  if (eq.rows() > 0) v = std::max(v, (eq * x - p.eq_rhs).cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < n; ++j) {
    if (p.lower.size() != 0 && std::isfinite(p.lower(j))) v = std::max(v, p.lower(j) - x(j));
    if (p.upper.size() != 0 && std::isfinite(p.upper(j))) v = std::max(v, x(j) - p.upper(j));
  }
  return v;
}

/// Checks a Farkas certificate against the constraint system of `p`.
/// Returns the certified positive gap, or a nonpositive number when the
/// certificate does not prove infeasibility at tolerance `tol`.
inline double farkas_margin(const LPProblem& p, const FarkasCertificate& f, double tol = 1e-9) {
  const Eigen::Index n = p.num_vars();
  const Matrix ineq = detail::rows_or_empty(p.ineq, n);
  const Matrix eq = detail::rows_or_empty(p.eq, n);
  if (f.ineq.size() != ineq.rows() || f.eq.size() != eq.rows() || f.lower.size() != n || f.upper.size() != n) {
    return -1.0;
  }
  if ((f.ineq.array() < -tol).any() || (f.lower.array() < -tol).any() || (f.upper.array() < -tol).any()) {
    return -1.0;
  }
  Vector combo = Vector::Zero(n);
  if (ineq.rows() > 0) combo += ineq.transpose() * f.ineq;
  if (eq.rows() > 0) combo += eq.transpose() * f.eq;
  combo += f.lower - f.upper;
  double rhs = 0.0;
  double scale = 1.0;
  if (ineq.rows() > 0) {
    rhs += p.ineq_rhs.dot(f.ineq);
    scale += f.ineq.cwiseAbs().sum() * (1.0 + ineq.cwiseAbs().maxCoeff());
  }
  if (eq.rows() > 0) {
    rhs += p.eq_rhs.dot(f.eq);
    scale += f.eq.cwiseAbs().sum() * (1.0 + eq.cwiseAbs().maxCoeff());
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (f.lower(j) != 0.0) {
      if (p.lower.size() == 0 || !std::isfinite(p.lower(j))) return -1.0;
      rhs += p.lower(j) * f.lower(j);
    }
    if (f.upper(j) != 0.0) {
      if (p.upper.size() == 0 || !std::isfinite(p.upper(j))) return -1.0;
      rhs -= p.upper(j) * f.upper(j);
    }
  }
  if (combo.cwiseAbs().maxCoeff() > tol * scale) return -1.0;
  return rhs;
}

/// Solves `p` with a dense two-phase tableau simplex under Bland's rule.
/// Deterministic: identical inputs give bitwise-identical reports.
inline SolveReport solve_lp(const LPProblem& p, const Config& cfg = Config{}) {
  using detail::VarMap;
  const Tolerances& tol = cfg.tol;
  const Eigen::Index n = p.num_vars();
  const Matrix ineq = detail::rows_or_empty(p.ineq, n);
  const Matrix eq = detail::rows_or_empty(p.eq, n);
  const Vector ineq_rhs = detail::or_empty(p.ineq_rhs);
  const Vector eq_rhs = detail::or_empty(p.eq_rhs);
  require_dim(ineq.rows(), ineq_rhs.size(), "LP inequality rhs");
  require_dim(eq.rows(), eq_rhs.size(), "LP equality rhs");
  if (p.lower.size() != 0) require_dim(n, p.lower.size(), "LP lower bounds");
  if (p.upper.size() != 0) require_dim(n, p.upper.size(), "LP upper bounds");
  require(p.cost.allFinite() && ineq.allFinite() && eq.allFinite() && ineq_rhs.allFinite() && eq_rhs.allFinite(),
          "LP data must be finite");

  auto lo = [&](Eigen::Index j) { return p.lower.size() == 0 ? -kInf : p.lower(j); };
  auto hi = [&](Eigen::Index j) { return p.upper.size() == 0 ? kInf : p.upper(j); };
  for (Eigen::Index j = 0; j < n; ++j) {
    require(!(lo(j) > hi(j)), "LP bounds cross at variable " + std::to_string(j));
  }

  // Variable substitution into nonnegative standard columns.
  std::vector<VarMap> vars(static_cast<std::size_t>(n));
  Eigen::Index ncols = 0;
  std::vector<Eigen::Index> upper_rows_var;  // variables needing an explicit upper-bound row
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& v = vars[static_cast<std::size_t>(j)];
    v.col = ncols;
    if (std::isfinite(lo(j))) {
      v.kind = VarMap::Kind::kShiftLower;
      v.anchor = lo(j);
      ncols += 1;
      if (std::isfinite(hi(j))) upper_rows_var.push_back(j);
    } else if (std::isfinite(hi(j))) {
      v.kind = VarMap::Kind::kFlipUpper;
      v.anchor = hi(j);
      ncols += 1;
    } else {
      v.kind = VarMap::Kind::kSplit;
      ncols += 2;
    }
  }
  const Eigen::Index nstruct = ncols;

  // Rows in standard column space: ineq rows, upper-bound rows, equality rows.
  const Eigen::Index m_in = ineq.rows() + static_cast<Eigen::Index>(upper_rows_var.size());
  const Eigen::Index m = m_in + eq.rows();
  Matrix a = Matrix::Zero(m, nstruct);
  Vector b(m);
  auto map_row = [&](const Eigen::RowVectorXd& row, double rhs, Eigen::Index r) {
    double shift = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& v = vars[static_cast<std::size_t>(j)];
      const double c = row(j);
      switch (v.kind) {
        case VarMap::Kind::kShiftLower:
          a(r, v.col) = c;
          shift += c * v.anchor;
          break;
        case VarMap::Kind::kFlipUpper:
          a(r, v.col) = -c;
          shift += c * v.anchor;
          break;
        case VarMap::Kind::kSplit:
          a(r, v.col) = c;
          a(r, v.col + 1) = -c;
          break;
      }
    }
    b(r) = rhs - shift;
  };
  for (Eigen::Index i = 0; i < ineq.rows(); ++i) map_row(ineq.row(i), ineq_rhs(i), i);
  for (std::size_t k = 0; k < upper_rows_var.size(); ++k) {
    const Eigen::Index j = upper_rows_var[k];
    const Eigen::Index r = ineq.rows() + static_cast<Eigen::Index>(k);
    a(r, vars[static_cast<std::size_t>(j)].col) = -1.0;
    b(r) = -(hi(j) - lo(j));
  }
  for (Eigen::Index i = 0; i < eq.rows(); ++i) map_row(eq.row(i), eq_rhs(i), m_in + i);

  Vector cstd = Vector::Zero(nstruct);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    switch (v.kind) {
      case VarMap::Kind::kShiftLower:
        cstd(v.col) = p.cost(j);
        break;
      case VarMap::Kind::kFlipUpper:
        cstd(v.col) = -p.cost(j);
        break;
      case VarMap::Kind::kSplit:
        cstd(v.col) = p.cost(j);
        cstd(v.col + 1) = -p.cost(j);
        break;
    }
  }

  // Columns: structural | surplus (one per inequality row) | artificial (one per row).
  const Eigen::Index surplus0 = nstruct;
  const Eigen::Index art0 = nstruct + m_in;
  const Eigen::Index total = art0 + m;
  detail::Tableau t(m, total);
  Vector sign = Vector::Ones(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    if (b(r) < 0.0) sign(r) = -1.0;
    for (Eigen::Index c = 0; c < nstruct; ++c) t.at(r, c) = sign(r) * a(r, c);
    if (r < m_in) t.at(r, surplus0 + r) = -sign(r);
    t.at(r, art0 + r) = 1.0;
    t.rhs(r) = sign(r) * b(r);
    t.basis()[static_cast<std::size_t>(r)] = art0 + r;
  }

  SolveReport rep;
  Vector phase1_cost = Vector::Zero(total);
  phase1_cost.tail(m).setOnes();
  t.price(phase1_cost);
  Eigen::Index ucol = -1;
  auto res = detail::run_simplex(t, total, tol, cfg.limits.simplex_pivots, rep.iterations, ucol);
  if (res == detail::PhaseResult::kCap) {
    rep.status = SolveStatus::kIterationCap;
    rep.x = Vector::Zero(n);
    return rep;
  }
  const double bscale = 1.0 + (m > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  const double infeas = -t.obj_value();  // phase-I optimum
  if (infeas > tol.lp_feasibility * bscale) {
    // y_i = 1 - reduced cost of artificial i is a Farkas vector for the
    // standard-form system; map it back to the original constraint rows.
    Vector y(m);
    for (Eigen::Index r = 0; r < m; ++r) y(r) = (1.0 - t.obj(art0 + r)) * sign(r);
    FarkasCertificate f;
    f.ineq = y.head(ineq.rows()).cwiseMax(0.0);
    f.eq = y.tail(eq.rows());
    f.lower = Vector::Zero(n);
    f.upper = Vector::Zero(n);
    for (std::size_t k = 0; k < upper_rows_var.size(); ++k) {
      f.upper(upper_rows_var[k]) = std::max(0.0, y(ineq.rows() + static_cast<Eigen::Index>(k)));
    }
    Vector combo = Vector::Zero(n);
    if (ineq.rows() > 0) combo += ineq.transpose() * f.ineq;
    if (eq.rows() > 0) combo += eq.transpose() * f.eq;
    combo -= f.upper;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& v = vars[static_cast<std::size_t>(j)];
      if (v.kind == VarMap::Kind::kShiftLower) {
        f.lower(j) = std::max(0.0, -combo(j));
      } else if (v.kind == VarMap::Kind::kFlipUpper) {
        f.upper(j) = std::max(0.0, combo(j));
      }
    }
    rep.status = SolveStatus::kInfeasible;
    rep.farkas = std::move(f);
    rep.x = Vector::Zero(n);
    return rep;
  }

  // Phase II: artificial columns never re-enter.
  for (Eigen::Index r = 0; r < m; ++r) {
    if (t.basis()[static_cast<std::size_t>(r)] < art0) continue;
    for (Eigen::Index c = 0; c < art0; ++c) {
      if (std::abs(t.at(r, c)) > 1e-9) {
        t.pivot(r, c);
        break;
      }
    }
  }
  Vector phase2_cost = Vector::Zero(total);
  phase2_cost.head(nstruct) = cstd;
  t.price(phase2_cost);
  res = detail::run_simplex(t, art0, tol, cfg.limits.simplex_pivots, rep.iterations, ucol);

  Vector xs = Vector::Zero(total);
  for (Eigen::Index r = 0; r < m; ++r) xs(t.basis()[static_cast<std::size_t>(r)]) = std::max(t.rhs(r), 0.0);
  auto to_original = [&](const Vector& s, bool direction) {
    Vector x(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& v = vars[static_cast<std::size_t>(j)];
      const double anchor = direction ? 0.0 : v.anchor;
      switch (v.kind) {
        case VarMap::Kind::kShiftLower:
          x(j) = anchor + s(v.col);
          break;
        case VarMap::Kind::kFlipUpper:
          x(j) = anchor - s(v.col);
          break;
        case VarMap::Kind::kSplit:
          x(j) = s(v.col) - s(v.col + 1);
          break;
      }
    }
    return x;
  };
  rep.x = to_original(xs, false);
  rep.value = p.cost.dot(rep.x);
  rep.primal_residual = primal_violation(p, rep.x);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < art0; ++c) worst = std::min(worst, t.obj(c));
  rep.dual_residual = -worst;

  if (res == detail::PhaseResult::kUnbounded) {
    Vector d = Vector::Zero(total);
    d(ucol) = 1.0;
    for (Eigen::Index r = 0; r < m; ++r) d(t.basis()[static_cast<std::size_t>(r)]) = -t.at(r, ucol);
    rep.ray = to_original(d, true);
    rep.status = SolveStatus::kUnbounded;
    return rep;
  }
  if (res == detail::PhaseResult::kCap) {
    rep.status = SolveStatus::kIterationCap;
    return rep;
  }
  // Simplex multipliers y = c_B B^{-1}; artificial columns hold B^{-1}.
  Vector y(m);
  for (Eigen::Index r = 0; r < m; ++r) y(r) = -t.obj(art0 + r) * sign(r);
  rep.ineq_duals = y.head(ineq.rows());
  rep.eq_duals = y.tail(eq.rows());
  rep.status = SolveStatus::kOptimal;
  return rep;
}

}  // namespace conegen::numkernel
