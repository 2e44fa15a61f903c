#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "conegen/config.hpp"
#include "conegen/types.hpp"

namespace conegen::numkernel {

enum class LCPStatus { kSolved, kRayTermination, kIterationCap };

struct LCPResult {
  LCPStatus status = LCPStatus::kIterationCap;
  Vector z;
  Vector w;
  int pivots = 0;
};

/// Lemke's complementary pivoting method for
///
///     w = M z + q,  w >= 0,  z >= 0,  w'z = 0
///
/// with covering vector (1, ..., 1) and a lexicographic ratio test, so the
/// method terminates on degenerate problems. For positive semidefinite M a
/// ray termination certifies that the LCP has no solution.
inline LCPResult solve_lcp(const Matrix& m, const Vector& q, const Config& cfg = Config{}) {
  const Eigen::Index n = q.size();
  require_dim(n, m.rows(), "LCP matrix rows");
  require_dim(n, m.cols(), "LCP matrix cols");

  LCPResult res;
  if (n == 0 || q.minCoeff() >= 0.0) {
    res.status = LCPStatus::kSolved;
    res.z = Vector::Zero(n);
    res.w = q;
    return res;
  }

  // Columns: w (0..n-1) | z (n..2n-1) | z0 (2n) | rhs (2n+1).
  const Eigen::Index z0 = 2 * n;
  Matrix t = Matrix::Zero(n, 2 * n + 2);
  t.leftCols(n).setIdentity();
  t.block(0, n, n, n) = -m;
  t.col(z0).setConstant(-1.0);
  t.col(2 * n + 1) = q;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = i;

  auto pivot = [&](Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  };
  auto complement = [&](Eigen::Index v) { return v < n ? v + n : v - n; };

  // z0 enters at the most negative q; ties go to the largest index, which keeps
  // the rows of the initial inverse lexicographically positive.
  Eigen::Index r0 = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (q(i) <= q(r0)) r0 = i;
  }
  Eigen::Index leaving = basis[static_cast<std::size_t>(r0)];
  pivot(r0, z0);
  res.pivots = 1;

  const double piv_tol = cfg.tol.pivot;
  for (;;) {
    const Eigen::Index enter = complement(leaving);
    if (res.pivots >= cfg.limits.lcp_pivots) {
      res.status = LCPStatus::kIterationCap;
      break;
    }
    // Minimum ratio, then z0 preference, then lexicographic order on the rows
    // of the current basis inverse (held in the w columns).
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (t(i, enter) > piv_tol) best = std::min(best, std::max(t(i, 2 * n + 1), 0.0) / t(i, enter));
    }
    if (!std::isfinite(best)) {
      res.status = LCPStatus::kRayTermination;
      break;
    }
    const double slack = 1e-12 * (1.0 + best);
    std::vector<Eigen::Index> ties;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (t(i, enter) > piv_tol && std::max(t(i, 2 * n + 1), 0.0) / t(i, enter) <= best + slack) ties.push_back(i);
    }
    Eigen::Index row = -1;
    for (Eigen::Index i : ties) {
      if (basis[static_cast<std::size_t>(i)] == z0) row = i;
    }
    if (row < 0) {
      row = ties.front();
      for (std::size_t k = 1; k < ties.size(); ++k) {
        const Eigen::Index i = ties[k];
        for (Eigen::Index c = 0; c < n; ++c) {
          const double a = t(i, c) / t(i, enter);
          const double b = t(row, c) / t(row, enter);
          if (a < b - 1e-14) {
            row = i;
            break;
          }
          if (a > b + 1e-14) break;
        }
      }
    }
    leaving = basis[static_cast<std::size_t>(row)];
    pivot(row, enter);
    ++res.pivots;
    if (leaving == z0) {
      res.status = LCPStatus::kSolved;
      break;
    }
  }

  res.z = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index b = basis[static_cast<std::size_t>(i)];
    if (b >= n && b < 2 * n) res.z(b - n) = std::max(t(i, 2 * n + 1), 0.0);
  }
  res.w = m * res.z + q;
  return res;
}

}  // namespace conegen::numkernel
