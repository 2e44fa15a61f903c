#pragma once

#include <functional>
#include <vector>

#include "conegen/types.hpp"

namespace conegen::numkernel {

struct PolyhedronVRep {
  std::vector<Vector> vertices;
  std::vector<Vector> rays;  // unit length
};

namespace detail {

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(s);
      return;
    }
    for (int i = start; i < n; ++i) {
      s[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

inline bool contains_close(const std::vector<Vector>& list, const Vector& v, double tol) {
  for (const auto& w : list) {
    if ((w - v).cwiseAbs().maxCoeff() <= tol) return true;
  }
  return false;
}

}  // namespace detail

/// Vertices and extreme rays of {y : A y >= b, E y = f} in dimension <= 3 by
/// exhaustive active-set enumeration. Intended for small pointed polyhedra.
inline PolyhedronVRep enumerate_polyhedron(const Matrix& a, const Vector& b, const Matrix& e, const Vector& f,
                                           double tol = 1e-9) {
  const Eigen::Index n = a.rows() > 0 ? a.cols() : e.cols();
  require(n >= 1 && n <= 3, "exact enumeration requires dimension 1..3");
  require_dim(a.rows(), b.size(), "enumeration inequality rhs");
  require_dim(e.rows(), f.size(), "enumeration equality rhs");
  const int m = static_cast<int>(a.rows());
  PolyhedronVRep out;

  auto feasible_point = [&](const Vector& y) {
    if (a.rows() > 0 && (a * y - b).minCoeff() < -tol * (1.0 + y.cwiseAbs().maxCoeff())) return false;
    if (e.rows() > 0 && (e * y - f).cwiseAbs().maxCoeff() > tol * (1.0 + y.cwiseAbs().maxCoeff())) return false;
    return true;
  };
  auto feasible_ray = [&](const Vector& d) {
    if (a.rows() > 0 && (a * d).minCoeff() < -tol) return false;
    if (e.rows() > 0 && (e * d).cwiseAbs().maxCoeff() > tol) return false;
    return true;
  };

  for (int k = 0; k <= std::min<int>(m, static_cast<int>(n)); ++k) {
    detail::for_each_subset(m, k, [&](const std::vector<int>& s) {
      Matrix sys(e.rows() + k, n);
      Vector rhs(e.rows() + k);
      if (e.rows() > 0) {
        sys.topRows(e.rows()) = e;
        rhs.head(e.rows()) = f;
      }
      for (int i = 0; i < k; ++i) {
        sys.row(e.rows() + i) = a.row(s[static_cast<std::size_t>(i)]);
        rhs(e.rows() + i) = b(s[static_cast<std::size_t>(i)]);
      }
      if (sys.rows() == 0) {
        if (n == 1) {
          for (double sgn : {1.0, -1.0}) {
            const Vector dd = Vector::Constant(1, sgn);
            if (feasible_ray(dd) && !detail::contains_close(out.rays, dd, 1e-8)) out.rays.push_back(dd);
          }
        }
        return;
      }
      Eigen::FullPivLU<Matrix> lu(sys);
      lu.setThreshold(1e-10);
      const Eigen::Index r = lu.rank();
      if (r == n) {
        const Vector y = sys.colPivHouseholderQr().solve(rhs);
        if ((sys * y - rhs).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()) && feasible_point(y) &&
            !detail::contains_close(out.vertices, y, 1e-8)) {
          out.vertices.push_back(y);
        }
      } else if (r == n - 1) {
        const Matrix ker = lu.kernel();
        if (ker.cols() != 1) return;
        const Vector d = ker.col(0).normalized();
        for (double sgn : {1.0, -1.0}) {
          const Vector dd = sgn * d;
          if (feasible_ray(dd) && !detail::contains_close(out.rays, dd, 1e-8)) out.rays.push_back(dd);
        }
      }
    });
  }
  return out;
}

/// Extreme rays of the pointed cone {x : A x >= 0} in dimension <= 3.
inline std::vector<Vector> cone_extreme_rays(const Matrix& a) {
  const auto v = enumerate_polyhedron(a, Vector::Zero(a.rows()), Matrix(0, a.cols()), Vector(0));
  return v.rays;
}

}  // namespace conegen::numkernel
