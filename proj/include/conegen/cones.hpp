#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conegen/config.hpp"
#include "conegen/numkernel/enumerate.hpp"
#include "conegen/numkernel/lp.hpp"
#include "conegen/types.hpp"

namespace conegen {

/// Polyhedral ordering cone C = {x : <A_k, x> >= 0 for all k} in R^n.
///
/// The halfspace rows A_k are always present. Generators (extreme rays) are
/// present for coordinate cones, for cones built from generators, and for
/// any cone of dimension <= 3; above dimension 3 the caller must supply both
/// representations to use the dual-side operations.
///
/// Values are immutable after construction.
class PolyhedralCone {
 public:
  enum class Kind { kCoordinate, kWeightedCoordinate, kGeneral };

  /// The nonnegative orthant R^n_+.
  static PolyhedralCone coordinate(Eigen::Index n) {
    require(n >= 1, "cone dimension must be positive");
    PolyhedralCone c;
    c.kind_ = Kind::kCoordinate;
    c.halfspaces_ = Matrix::Identity(n, n);
    c.generators_ = Matrix::Identity(n, n);
    c.weights_ = Vector::Ones(n);
    return c;
  }

  /// R^n_+ described by the rows w_i e_i with w_i > 0.
  static PolyhedralCone weighted_coordinate(const Vector& weights) {
    require(weights.size() >= 1, "cone dimension must be positive");
    require_finite(weights, "cone weights");
    require(weights.minCoeff() > 0.0, "weighted-coordinate cone needs strictly positive weights");
    PolyhedralCone c;
    c.kind_ = Kind::kWeightedCoordinate;
    c.halfspaces_ = weights.asDiagonal();
    c.generators_ = Matrix::Identity(weights.size(), weights.size());
    c.weights_ = weights;
    return c;
  }

  /// General cone from inward normals, with optional generators.
  static PolyhedralCone from_halfspaces(const Matrix& halfspaces, std::optional<Matrix> generators = std::nullopt,
                                        const Config& cfg = Config{}) {
    PolyhedralCone c;
    c.kind_ = Kind::kGeneral;
    c.halfspaces_ = halfspaces;
    require(halfspaces.rows() >= 1 && halfspaces.cols() >= 1, "cone needs at least one halfspace");
    if (generators) {
      require_dim(halfspaces.cols(), generators->cols(), "cone generators");
      c.generators_ = *generators;
    } else if (halfspaces.cols() <= 3) {
      c.require_pointed();
      c.generators_ = stack_rows(numkernel::cone_extreme_rays(halfspaces), halfspaces.cols());
    }
    c.validate(cfg);
    return c;
  }

  /// General cone generated by the rows of `generators` (dimension <= 3,
  /// full-dimensional), or with explicit halfspaces in any dimension.
  static PolyhedralCone from_generators(const Matrix& generators, std::optional<Matrix> halfspaces = std::nullopt,
                                        const Config& cfg = Config{}) {
    require(generators.rows() >= 1 && generators.cols() >= 1, "cone needs at least one generator");
    if (halfspaces) return from_halfspaces(*halfspaces, generators, cfg);
    if (generators.cols() > 3) {
      throw UnsupportedRepresentation("halfspaces must be supplied for generator cones above dimension 3");
    }
    Eigen::FullPivLU<Matrix> lu(generators);
    lu.setThreshold(1e-10);
    require(lu.rank() == generators.cols(), "generators must span the space to derive halfspaces");
    const auto facets = numkernel::cone_extreme_rays(generators);
    return from_halfspaces(stack_rows(facets, generators.cols()), generators, cfg);
  }

  Eigen::Index dim() const { return halfspaces_.cols(); }
  Kind kind() const { return kind_; }
  bool is_coordinate_like() const { return kind_ != Kind::kGeneral; }
  const Matrix& halfspaces() const { return halfspaces_; }
  bool has_generators() const { return generators_.has_value(); }
  const Matrix& generators() const {
    if (!generators_) throw UnsupportedRepresentation("cone has no generator representation");
    return *generators_;
  }
  /// Row weights of a (weighted-)coordinate cone.
  const Vector& weights() const { return weights_; }

 private:
  PolyhedralCone() = default;

  void require_pointed() const {
    Eigen::FullPivLU<Matrix> lu(halfspaces_);
    lu.setThreshold(1e-10);
    if (lu.rank() != dim()) throw InputError("cone contains a line (halfspace normals do not span)");
  }

  void validate(const Config& cfg) const {
    require(halfspaces_.allFinite(), "cone halfspaces have non-finite entries");
    require_pointed();
    // Nontrivial: some x with A x >= 0 and sum(A x) >= 1.
    numkernel::LPProblem lp;
    lp.cost = Vector::Zero(dim());
    lp.ineq = Matrix(halfspaces_.rows() + 1, dim());
    lp.ineq.topRows(halfspaces_.rows()) = halfspaces_;
    lp.ineq.row(halfspaces_.rows()) = halfspaces_.colwise().sum();
    lp.ineq_rhs = Vector::Zero(halfspaces_.rows() + 1);
    lp.ineq_rhs(halfspaces_.rows()) = 1.0;
    if (numkernel::solve_lp(lp, cfg).status != numkernel::SolveStatus::kOptimal) {
      throw InputError("degenerate cone {0} is not an ordering cone");
    }
    if (!generators_) return;
    const Matrix& g = *generators_;
    require(g.allFinite(), "cone generators have non-finite entries");
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      require(g.row(r).norm() > 0.0, "zero generator");
      const double scale = 1.0 + g.row(r).cwiseAbs().maxCoeff();
      const double worst = (halfspaces_ * g.row(r).transpose()).minCoeff();
      if (worst < -cfg.tol.membership * scale) {
        throw InputError("halfspaces/generators mismatch: generator " + std::to_string(r) +
                         " violates a halfspace by " + std::to_string(-worst));
      }
    }
    // In low dimension also require every extreme ray of the H-cone to be a
    // nonnegative combination of the generators.
    if (dim() <= 3) {
      for (const auto& ray : numkernel::cone_extreme_rays(halfspaces_)) {
        numkernel::LPProblem comb;
        comb.cost = Vector::Zero(g.rows());
        comb.eq = g.transpose();
        comb.eq_rhs = ray;
        comb.lower = Vector::Zero(g.rows());
        if (numkernel::solve_lp(comb, cfg).status != numkernel::SolveStatus::kOptimal) {
          throw InputError("halfspaces/generators mismatch: generators do not span an extreme ray of the halfspace cone");
        }
      }
    }
  }

  Kind kind_ = Kind::kGeneral;
  Matrix halfspaces_;
  std::optional<Matrix> generators_;
  Vector weights_;
};

inline std::string to_string(PolyhedralCone::Kind k) {
  switch (k) {
    case PolyhedralCone::Kind::kCoordinate:
      return "coordinate";
    case PolyhedralCone::Kind::kWeightedCoordinate:
      return "weighted-coordinate";
    default:
      return "general";
  }
}

inline bool cone_contains(const PolyhedralCone& cone, const Vector& x, double tol = 1e-9) {
  require_dim(cone.dim(), x.size(), "cone_contains");
  if (cone.is_coordinate_like()) return x.cwiseProduct(cone.weights()).minCoeff() >= -tol;
  return (cone.halfspaces() * x).minCoeff() >= -tol;
}

/// x <=_C y.
inline bool cone_order_leq(const PolyhedralCone& cone, const Vector& x, const Vector& y, double tol = 1e-9) {
  require_dim(x.size(), y.size(), "cone_order_leq");
  return cone_contains(cone, y - x, tol);
}

/// Strict interior: <A_k, x> > margin for every k.
inline bool interior_contains(const PolyhedralCone& cone, const Vector& x, double margin = 1e-12) {
  require_dim(cone.dim(), x.size(), "interior_contains");
  return (cone.halfspaces() * x).minCoeff() > margin;
}

/// Positive dual cone C* = {f : <f, x> >= 0 on C}: its halfspaces are the
/// generators of C and its generators are the halfspaces of C.
inline PolyhedralCone dual_cone(const PolyhedralCone& cone) {
  if (cone.is_coordinate_like()) return PolyhedralCone::coordinate(cone.dim());
  if (!cone.has_generators()) {
    throw UnsupportedRepresentation("dual_cone needs generators of a general cone");
  }
  return PolyhedralCone::from_halfspaces(cone.generators(), cone.halfspaces());
}

/// f > 0 on C \ {0}, tested on the extreme generators.
inline bool is_strictly_positive(const PolyhedralCone& cone, const Vector& f, double margin = 1e-12) {
  require_dim(cone.dim(), f.size(), "is_strictly_positive");
  return (cone.generators() * f).minCoeff() > margin;
}

}  // namespace conegen
