#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "conegen/config.hpp"
#include "conegen/numkernel/lp.hpp"

namespace conegen::numkernel {

/// Componentwise clamp of x into [lower, upper].
inline Vector project_box(const Vector& x, const Vector& lower, const Vector& upper) {
  require_dim(x.size(), lower.size(), "box lower bound");
  require_dim(x.size(), upper.size(), "box upper bound");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (lower(i) > upper(i)) throw InputError("invalid box: lower > upper at index " + std::to_string(i));
  }
  return x.cwiseMax(lower).cwiseMin(upper);
}

using Objective = std::function<double(const Vector&)>;
using Gradient = std::function<Vector(const Vector&)>;
using Projector = std::function<Vector(const Vector&)>;

/// Step-size rule. kConstant uses `step`; kDiminishing uses step/(k+1);
/// kBacktracking starts from `step` and halves until sufficient decrease.
struct Schedule {
  enum class Kind { kConstant, kDiminishing, kBacktracking };
  Kind kind = Kind::kBacktracking;
  double step = 1.0;
  double stop_tol = 1e-7;
};

/// Projected gradient iteration x <- P(x - t grad f(x)).
///
/// The returned point is the best iterate seen; `value` is its objective
/// value, so the best-value sequence is monotone. `primal_residual` holds the
/// final gradient-mapping norm |x - P(x - grad f(x))|.
inline SolveReport projected_gradient(const Objective& f, const Gradient& grad, const Projector& proj,
                                      const Vector& x0, const Schedule& schedule = Schedule{},
                                      const Config& cfg = Config{}) {
  SolveReport rep;
  Vector x = proj(x0);
  double fx = f(x);
  rep.x = x;
  rep.value = fx;
  double t = schedule.step;
  auto mapping_norm = [&](const Vector& y, const Vector& gy) { return (y - proj(y - gy)).norm(); };

  for (int k = 0; k < cfg.limits.projected_gradient; ++k) {
    const Vector gx = grad(x);
    const double gm = mapping_norm(x, gx);
    rep.primal_residual = gm;
    rep.iterations = k;
    if (gm <= schedule.stop_tol) {
      rep.status = SolveStatus::kOptimal;
      return rep;
    }
    Vector next;
    switch (schedule.kind) {
      case Schedule::Kind::kConstant:
        next = proj(x - schedule.step * gx);
        break;
      case Schedule::Kind::kDiminishing:
        next = proj(x - schedule.step / (k + 1.0) * gx);
        break;
      default: {
        t = std::min(schedule.step, 2.0 * t);
        for (;;) {
          next = proj(x - t * gx);
          const Vector d = next - x;
          if (f(next) <= fx + gx.dot(d) + d.squaredNorm() / (2.0 * t) || t < 1e-16) break;
          t *= 0.5;
        }
      }
    }
    x = next;
    fx = f(x);
    if (fx < rep.value) {
      rep.value = fx;
      rep.x = x;
    }
  }
  rep.status = SolveStatus::kIterationCap;
  rep.iterations = cfg.limits.projected_gradient;
  return rep;
}

}  // namespace conegen::numkernel
