#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conegen/cones.hpp"
#include "conegen/numkernel/enumerate.hpp"

namespace conegen {

/// Gerstewitz scalarization phi(y) = inf{t : t e in y + C} for a closed
/// polyhedral cone C and a direction e in C \ {0}.
class GerstewitzFn {
 public:
  GerstewitzFn(PolyhedralCone cone, Vector e) : cone_(std::move(cone)), e_(std::move(e)) {
    require_dim(cone_.dim(), e_.size(), "scalarization direction");
    require_finite(e_, "scalarization direction");
    require(e_.norm() > 0.0, "scalarization direction e must be nonzero");
    if (!cone_contains(cone_, e_, 0.0)) throw InputError("scalarization direction e must lie in the cone (C + R_+ e = C)");
    ae_ = cone_.halfspaces() * e_;
  }

  const PolyhedralCone& cone() const { return cone_; }
  const Vector& e() const { return e_; }
  bool interior_direction() const { return interior_contains(cone_, e_); }
  /// <A_k, e> for every halfspace row (all >= 0).
  const Vector& halfspace_levels() const { return ae_; }

 private:
  PolyhedralCone cone_;
  Vector e_;
  Vector ae_;
};

enum class ScalarizationPath { kAuto, kLinearProgram };

/// phi(y) = min{t : t e - y in C}; +inf when y is outside R e - C.
inline Extended gerstewitz_value(const GerstewitzFn& fn, const Vector& y,
                                 ScalarizationPath path = ScalarizationPath::kAuto, const Config& cfg = Config{}) {
  require_dim(fn.e().size(), y.size(), "gerstewitz_value");
  require_finite(y, "scalarization argument");
  if (path == ScalarizationPath::kAuto && fn.cone().is_coordinate_like() && fn.e().minCoeff() > 0.0) {
    return y.cwiseQuotient(fn.e()).maxCoeff();
  }
  const Matrix& a = fn.cone().halfspaces();
  if (path == ScalarizationPath::kAuto && fn.halfspace_levels().minCoeff() > 0.0) {
    // Interior e: the LP below has the closed-form value max_k <A_k,y>/<A_k,e>.
    return (a * y).cwiseQuotient(fn.halfspace_levels()).maxCoeff();
  }
  numkernel::LPProblem lp;
  lp.cost = vec({1.0});
  lp.ineq = fn.halfspace_levels();
  lp.ineq_rhs = a * y;
  const auto r = numkernel::solve_lp(lp, cfg);
  if (r.status == numkernel::SolveStatus::kInfeasible) return Extended::plus_infinity();
  if (r.status != numkernel::SolveStatus::kOptimal) {
    throw Error("scalarization LP ended with status " + to_string(r.status));
  }
  return r.value;
}

/// phi(y) <= r, i.e. r e - y in C.
inline bool gerstewitz_sublevel(const GerstewitzFn& fn, const Vector& y, double r, double tol = 1e-9) {
  require_dim(fn.e().size(), y.size(), "gerstewitz_sublevel");
  return cone_contains(fn.cone(), r * fn.e() - y, tol);
}

/// The polytope {y* in C* : <y*, e> = 1, <y*, y> = phi(y)}.
///
/// `exact` results (dimension <= 3) list all vertices and extreme rays.
/// Otherwise only `element` is populated and membership is answered by
/// subdifferential_contains.
struct Subdifferential {
  bool exact = false;
  double phi = 0.0;
  std::vector<Vector> vertices;
  std::vector<Vector> rays;
  Vector element;
};

namespace detail {

// y* = A' mu with mu >= 0 and the two defining equalities.
inline numkernel::LPProblem subdifferential_lp(const GerstewitzFn& fn, const Vector& y, double phi,
                                               const Vector& objective) {
  const Matrix& a = fn.cone().halfspaces();
  numkernel::LPProblem lp;
  lp.cost = a * objective;
  lp.eq = Matrix(2, a.rows());
  lp.eq.row(0) = (a * fn.e()).transpose();
  lp.eq.row(1) = (a * y).transpose();
  lp.eq_rhs = vec({1.0, phi});
  lp.lower = Vector::Zero(a.rows());
  return lp;
}

inline double finite_phi(const GerstewitzFn& fn, const Vector& y, const Config& cfg) {
  const Extended v = gerstewitz_value(fn, y, ScalarizationPath::kAuto, cfg);
  if (!v.finite()) throw DomainError("subdifferential requested outside the effective domain (phi = +inf)");
  return v.value();
}

}  // namespace detail

inline Subdifferential gerstewitz_subdifferential(const GerstewitzFn& fn, const Vector& y,
                                                  const Config& cfg = Config{}) {
  Subdifferential sd;
  sd.phi = detail::finite_phi(fn, y, cfg);
  const auto r = numkernel::solve_lp(detail::subdifferential_lp(fn, y, sd.phi, Vector::Zero(y.size())), cfg);
  if (r.status != numkernel::SolveStatus::kOptimal) throw Error("subdifferential LP failed: " + to_string(r.status));
  sd.element = fn.cone().halfspaces().transpose() * r.x;
  const Eigen::Index m = y.size();
  if (m <= 3) {
    sd.exact = true;
    Matrix eqs(2, m);
    eqs.row(0) = fn.e().transpose();
    eqs.row(1) = y.transpose();
    const auto v = numkernel::enumerate_polyhedron(fn.cone().generators(), Vector::Zero(fn.cone().generators().rows()),
                                                   eqs, vec({1.0, sd.phi}), 1e-9);
    sd.vertices = v.vertices;
    sd.rays = v.rays;
  }
  return sd;
}

/// Membership of y* in the subdifferential at y.
inline bool subdifferential_contains(const GerstewitzFn& fn, const Vector& y, const Vector& ystar, double tol = 1e-9,
                                     const Config& cfg = Config{}) {
  require_dim(y.size(), ystar.size(), "subdifferential_contains");
  const double phi = detail::finite_phi(fn, y, cfg);
  const double scale = 1.0 + ystar.cwiseAbs().maxCoeff();
  if (std::abs(ystar.dot(fn.e()) - 1.0) > tol * scale) return false;
  if (std::abs(ystar.dot(y) - phi) > tol * scale * (1.0 + y.cwiseAbs().maxCoeff())) return false;
  if (fn.cone().has_generators()) return (fn.cone().generators() * ystar).minCoeff() >= -tol * scale;
  numkernel::LPProblem lp;
  lp.cost = Vector::Zero(fn.cone().halfspaces().rows());
  lp.eq = fn.cone().halfspaces().transpose();
  lp.eq_rhs = ystar;
  lp.lower = Vector::Zero(lp.cost.size());
  return numkernel::solve_lp(lp, cfg).status == numkernel::SolveStatus::kOptimal;
}

/// phi'(y; d) = max{<y*, d> : y* in the subdifferential at y}; +inf when the
/// subdifferential is unbounded in direction d.
inline Extended gerstewitz_directional_derivative(const GerstewitzFn& fn, const Vector& y, const Vector& d,
                                                  const Config& cfg = Config{}) {
  require_dim(y.size(), d.size(), "directional derivative");
  const double phi = detail::finite_phi(fn, y, cfg);
  const auto r = numkernel::solve_lp(detail::subdifferential_lp(fn, y, phi, -d), cfg);
  if (r.status == numkernel::SolveStatus::kUnbounded) return Extended::plus_infinity();
  if (r.status != numkernel::SolveStatus::kOptimal) throw Error("directional derivative LP failed: " + to_string(r.status));
  return -r.value;
}

/// Difference quotients of phi at y along d with step s.
inline double forward_difference(const GerstewitzFn& fn, const Vector& y, const Vector& d, double s,
                                 const Config& cfg = Config{}) {
  return (gerstewitz_value(fn, y + s * d, ScalarizationPath::kAuto, cfg).value() -
          gerstewitz_value(fn, y, ScalarizationPath::kAuto, cfg).value()) /
         s;
}

inline double symmetric_difference(const GerstewitzFn& fn, const Vector& y, const Vector& d, double s,
                                   const Config& cfg = Config{}) {
  return (gerstewitz_value(fn, y + s * d, ScalarizationPath::kAuto, cfg).value() -
          gerstewitz_value(fn, y - s * d, ScalarizationPath::kAuto, cfg).value()) /
         (2.0 * s);
}

}  // namespace conegen
