#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "conegen/types.hpp"

namespace conegen::numkernel {

/// Rectangular grid lower + k * step, inclusive of upper up to rounding.
struct GridSpec {
  Vector lower;
  Vector upper;
  Vector step;

  std::vector<Vector> points() const {
    require_dim(lower.size(), upper.size(), "grid upper");
    require_dim(lower.size(), step.size(), "grid step");
    const Eigen::Index d = lower.size();
    require(d > 0, "grid has no dimensions");
    std::vector<int> counts(static_cast<std::size_t>(d));
    std::size_t total = 1;
    for (Eigen::Index i = 0; i < d; ++i) {
      require(step(i) > 0.0, "grid step must be positive");
      require(upper(i) >= lower(i), "grid upper below lower");
      counts[static_cast<std::size_t>(i)] = static_cast<int>(std::floor((upper(i) - lower(i)) / step(i) + 1e-9)) + 1;
      total *= static_cast<std::size_t>(counts[static_cast<std::size_t>(i)]);
    }
    require(total <= 1000000, "grid too large");
    std::vector<Vector> out;
    out.reserve(total);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t n = 0; n < total; ++n) {
      Vector p(d);
      for (Eigen::Index i = 0; i < d; ++i) p(i) = lower(i) + idx[static_cast<std::size_t>(i)] * step(i);
      out.push_back(p);
      for (Eigen::Index i = 0; i < d; ++i) {
        if (++idx[static_cast<std::size_t>(i)] < counts[static_cast<std::size_t>(i)]) break;
        idx[static_cast<std::size_t>(i)] = 0;
      }
    }
    return out;
  }
};

/// Reference minimal-set computation over an explicit grid. Dominance of a
/// by b means b - a lies in -C minus a small ball, with C = {v : A v >= 0}.
/// Kept free of any dependency on the penalty module.
inline std::vector<std::size_t> brute_force_grid_min(const std::function<Vector(const Vector&)>& evaluator,
                                                     const std::vector<Vector>& grid, const Matrix& halfspaces,
                                                     double tol = 1e-9, double strict_tol = 1e-8) {
  require(!grid.empty(), "empty grid");
  std::vector<Vector> values;
  values.reserve(grid.size());
  for (const auto& p : grid) values.push_back(evaluator(p));
  std::vector<std::size_t> minimal;
  for (std::size_t a = 0; a < values.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < values.size() && !dominated; ++b) {
      if (a == b) continue;
      const Vector diff = values[a] - values[b];  // must lie in C
      bool in_cone = true;
      for (Eigen::Index k = 0; k < halfspaces.rows() && in_cone; ++k) in_cone = halfspaces.row(k).dot(diff) >= -tol;
      dominated = in_cone && diff.norm() > strict_tol;
    }
    if (!dominated) minimal.push_back(a);
  }
  return minimal;
}

inline std::vector<std::size_t> brute_force_grid_min(const std::function<Vector(const Vector&)>& evaluator,
                                                     const GridSpec& grid, const Matrix& halfspaces,
                                                     double tol = 1e-9, double strict_tol = 1e-8) {
  return brute_force_grid_min(evaluator, grid.points(), halfspaces, tol, strict_tol);
}

}  // namespace conegen::numkernel
