#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "conegen/cones.hpp"

namespace conegen {

/// Symmetric order interval [-u, u] of a cone, with u interior.
class GaugeBody {
 public:
  GaugeBody(PolyhedralCone cone, Vector u) : cone_(std::move(cone)), u_(std::move(u)) {
    require_dim(cone_.dim(), u_.size(), "generating element");
    require_finite(u_, "generating element");
    if (!interior_contains(cone_, u_)) throw InputError("generating element u is not interior to the cone");
    au_ = cone_.halfspaces() * u_;
  }

  const PolyhedralCone& cone() const { return cone_; }
  const Vector& u() const { return u_; }
  /// True when the closed-form coordinate formula applies.
  bool closed_form() const { return cone_.is_coordinate_like(); }
  /// <A_k, u> for every halfspace row (all strictly positive).
  const Vector& halfspace_levels() const { return au_; }

 private:
  PolyhedralCone cone_;
  Vector u_;
  Vector au_;
};

enum class GaugePath { kAuto, kLinearProgram };

/// Order-interval norm |x|_u = inf{lambda > 0 : -lambda u <= x <= lambda u}.
inline Extended order_interval_gauge(const GaugeBody& body, const Vector& x, GaugePath path = GaugePath::kAuto,
                                     const Config& cfg = Config{}) {
  require_dim(body.u().size(), x.size(), "order_interval_gauge");
  require_finite(x, "gauge argument");
  if (x.isZero(0.0)) return 0.0;
  if (path == GaugePath::kAuto && body.closed_form()) {
    return x.cwiseAbs().cwiseQuotient(body.u()).maxCoeff();
  }
  // min lambda s.t. lambda <Au> >= <Ax>, lambda <Au> >= -<Ax>
  const Matrix& a = body.cone().halfspaces();
  const Vector ax = a * x;
  numkernel::LPProblem lp;
  lp.cost = vec({1.0});
  lp.ineq = Matrix(2 * a.rows(), 1);
  lp.ineq << body.halfspace_levels(), body.halfspace_levels();
  lp.ineq_rhs = Vector(2 * a.rows());
  lp.ineq_rhs << ax, -ax;
  lp.lower = vec({0.0});
  const auto r = numkernel::solve_lp(lp, cfg);
  if (r.status == numkernel::SolveStatus::kInfeasible) return Extended::plus_infinity();
  if (r.status != numkernel::SolveStatus::kOptimal) throw Error("gauge LP ended with status " + to_string(r.status));
  return r.value;
}

/// Minkowski gauge of the polytope conv(vertices):
/// inf{lambda >= 0 : x in lambda conv(vertices)}; +inf when x is unreachable.
inline Extended minkowski_gauge(const std::vector<Vector>& vertices, const Vector& x, const Config& cfg = Config{}) {
  if (vertices.empty()) throw InputError("minkowski_gauge: empty vertex list");
  const Eigen::Index n = x.size();
  const Matrix v = stack_rows(vertices, n);
  if (x.isZero(0.0)) return 0.0;
  // x = sum beta_j v_j, beta >= 0, minimize sum beta.
  numkernel::LPProblem lp;
  lp.cost = Vector::Ones(v.rows());
  lp.eq = v.transpose();
  lp.eq_rhs = x;
  lp.lower = Vector::Zero(v.rows());
  const auto r = numkernel::solve_lp(lp, cfg);
  if (r.status == numkernel::SolveStatus::kInfeasible) return Extended::plus_infinity();
  if (r.status != numkernel::SolveStatus::kOptimal) throw Error("gauge LP ended with status " + to_string(r.status));
  return r.value;
}

struct EquivalenceReport {
  double c = 1.0;
  double v_in_u = 0.0;  // |v|_u
  double u_in_v = 0.0;  // |u|_v
  Vector witness;       // point at which one side of the sandwich is an equality
  double tightness_residual = 0.0;
};

/// Least c >= 1 with c^-1 |.|_u <= |.|_v <= c |.|_u, together with the
/// witness (u or v) at which it is attained.
inline EquivalenceReport equivalence_report(const PolyhedralCone& cone, const Vector& u, const Vector& v,
                                            const Config& cfg = Config{}) {
  const GaugeBody bu(cone, u);
  const GaugeBody bv(cone, v);
  EquivalenceReport rep;
  rep.v_in_u = order_interval_gauge(bu, v, GaugePath::kAuto, cfg).value();
  rep.u_in_v = order_interval_gauge(bv, u, GaugePath::kAuto, cfg).value();
  rep.c = std::max({rep.v_in_u, rep.u_in_v, 1.0});
  if (rep.u_in_v >= rep.v_in_u) {
    // Upper side at x = u: |u|_v = c |u|_u.
    rep.witness = u;
    rep.tightness_residual = std::abs(order_interval_gauge(bv, u, GaugePath::kAuto, cfg).value() -
                                      rep.c * order_interval_gauge(bu, u, GaugePath::kAuto, cfg).value());
  } else {
    // Lower side at x = v: c^-1 |v|_u = |v|_v.
    rep.witness = v;
    rep.tightness_residual = std::abs(order_interval_gauge(bu, v, GaugePath::kAuto, cfg).value() / rep.c -
                                      order_interval_gauge(bv, v, GaugePath::kAuto, cfg).value());
  }
  return rep;
}

inline Extended equivalence_constant(const PolyhedralCone& cone, const Vector& u, const Vector& v,
                                     const Config& cfg = Config{}) {
  return equivalence_report(cone, u, v, cfg).c;
}

/// Isometry (X_u, |.|_u) -> (R^n, |.|_inf) for the coordinate cone: x / u.
inline Vector linfty_isometry(const Vector& u, const Vector& x) {
  require_dim(u.size(), x.size(), "linfty_isometry");
  require_finite(u, "generating element");
  if (u.size() == 0 || u.minCoeff() <= 0.0) throw InputError("invalid generating element: u must be strictly positive");
  return x.cwiseQuotient(u);
}

/// Per-instance comparison of |.|_u against an ambient norm with |u| = 1.
struct DominanceReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_ratio = std::numeric_limits<double>::infinity();  // min of |x|_u / |x|
};

inline DominanceReport gauge_dominance(const GaugeBody& body, const Norm& ambient, const std::vector<Vector>& points,
                                       const Config& cfg = Config{}) {
  DominanceReport rep;
  const double scale = ambient(body.u());
  for (const auto& x : points) {
    const double nx = ambient(x) / scale;
    if (nx <= 0.0) continue;
    const double g = order_interval_gauge(body, x, GaugePath::kAuto, cfg).value();
    ++rep.samples;
    rep.worst_ratio = std::min(rep.worst_ratio, g / nx);
    if (g < nx * (1.0 - 1e-12)) ++rep.violations;
  }
  return rep;
}

}  // namespace conegen
