#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "conegen/numkernel/lp.hpp"
#include "conegen/numkernel/qp.hpp"
#include "conegen/types.hpp"

namespace conegen {

using VertexList = std::vector<Vector>;

namespace detail {

inline void require_polytope(const VertexList& v, const char* what) {
  if (v.empty()) throw InputError(std::string(what) + ": empty polytope");
  const Eigen::Index d = v.front().size();
  require(d >= 1, std::string(what) + ": zero-dimensional vertices");
  for (const auto& x : v) {
    require_dim(d, x.size(), what);
    require_finite(x, what);
  }
}

inline double cross(const Vector& o, const Vector& a, const Vector& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

// Dual norm of d for an unweighted ambient p-norm.
inline double dual_norm(const Vector& d, Norm::P p) {
  switch (p) {
    case Norm::P::kOne:
      return d.cwiseAbs().maxCoeff();
    case Norm::P::kInf:
      return d.cwiseAbs().sum();
    default:
      return d.norm();
  }
}

// Weighted norms |W x|_p become unweighted after mapping the vertices by W.
inline VertexList apply_weights(const VertexList& v, const Norm& norm) {
  if (norm.weights.size() == 0) return v;
  require_dim(v.front().size(), norm.weights.size(), "norm weights");
  VertexList out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.cwiseProduct(norm.weights));
  return out;
}

}  // namespace detail

/// h_P(d) = max over vertices of <d, v>.
inline double support_function(const VertexList& polytope, const Vector& d) {
  detail::require_polytope(polytope, "support_function");
  require_dim(polytope.front().size(), d.size(), "support direction");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : polytope) best = std::max(best, v.dot(d));
  return best;
}

/// Counter-clockwise convex hull of planar points (monotone chain), without
/// collinear points. A single point or a segment is returned as 1 or 2
/// vertices.
inline VertexList convex_hull_2d(VertexList pts) {
  detail::require_polytope(pts, "convex_hull_2d");
  require_dim(2, pts.front().size(), "convex_hull_2d");
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) { return a == b; }), pts.end());
  if (pts.size() <= 2) return pts;
  VertexList hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// ---------------------------------------------------------------------------
// Direction grids

/// N equally spaced unit vectors on the circle.
inline std::vector<Vector> circle_directions(int n) {
  require(n >= 1, "direction count must be positive");
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    out.push_back(vec({std::cos(t), std::sin(t)}));
  }
  return out;
}

/// Fibonacci (golden-angle) points on the unit sphere of R^3.
inline std::vector<Vector> fibonacci_sphere(int n) {
  require(n >= 2, "Fibonacci sphere needs at least two points");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.push_back(vec({r * std::cos(golden * i), r * std::sin(golden * i), z}));
  }
  return out;
}

/// Unit directions in R^dim: exact pair in 1-D, circle, Fibonacci sphere, or
/// normalized Gaussian samples (fixed seed) above dimension 3.
inline std::vector<Vector> direction_grid(Eigen::Index dim, int n) {
  require(dim >= 1, "direction dimension must be positive");
  if (dim == 1) return {vec({1.0}), vec({-1.0})};
  if (dim == 2) return circle_directions(n);
  if (dim == 3) return fibonacci_sphere(n);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  std::vector<Vector> out;
  while (static_cast<int>(out.size()) < n) {
    Vector d = Vector::NullaryExpr(dim, [&](Eigen::Index) { return g(rng); });
    if (d.norm() > 1e-12) out.push_back(d / d.norm());
  }
  return out;
}

/// Largest chordal distance from the unit sphere to the grid: exact on the
/// circle, estimated from a dense probe set otherwise.
inline double covering_radius(const std::vector<Vector>& grid) {
  require(!grid.empty(), "covering radius of an empty grid");
  const Eigen::Index dim = grid.front().size();
  if (dim == 1) return 0.0;
  if (dim == 2) {
    std::vector<double> ang;
    for (const auto& d : grid) ang.push_back(std::atan2(d(1), d(0)));
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2.0 * std::numbers::pi - ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
    return 2.0 * std::sin(gap / 4.0);
  }
  const int probes = static_cast<int>(std::min<std::size_t>(64 * grid.size(), 200000));
  std::vector<Vector> probe;
  if (dim == 3) {
    probe = fibonacci_sphere(probes);
  } else {
    std::mt19937_64 rng(0xc0fe);
    std::normal_distribution<double> g;
    for (int i = 0; i < probes; ++i) {
      Vector d = Vector::NullaryExpr(dim, [&](Eigen::Index) { return g(rng); });
      probe.push_back(d / d.norm());
    }
  }
  double worst = 0.0;
  for (const auto& p : probe) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : grid) best = std::min(best, (p - d).squaredNorm());
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

// ---------------------------------------------------------------------------
// Support samples and lattice operations

/// Values of a function on a fixed grid of unit directions. Polytope sources
/// keep their vertices, so values are exact support values.
struct SupportSample {
  enum class Source { kPolytope, kSampled, kFunctionLattice };
  Source source = Source::kSampled;
  std::string tag;
  std::vector<Vector> directions;
  Vector values;
  VertexList vertices;
};

inline std::string to_string(SupportSample::Source s) {
  switch (s) {
    case SupportSample::Source::kPolytope:
      return "polytope";
    case SupportSample::Source::kFunctionLattice:
      return "function-lattice element";
    default:
      return "sampled";
  }
}

inline SupportSample support_sample(const VertexList& polytope, const std::vector<Vector>& directions) {
  detail::require_polytope(polytope, "support_sample");
  require(!directions.empty(), "support_sample needs directions");
  SupportSample s;
  s.source = SupportSample::Source::kPolytope;
  s.tag = "support function";
  s.directions = directions;
  s.vertices = polytope;
  s.values.resize(static_cast<Eigen::Index>(directions.size()));
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double len = directions[i].norm();
    require(std::abs(len - 1.0) <= 1e-12, "support directions must be unit vectors");
    s.values(static_cast<Eigen::Index>(i)) = support_function(polytope, directions[i]);
  }
  return s;
}

namespace detail {

inline void require_same_grid(const SupportSample& a, const SupportSample& b) {
  if (a.directions.size() != b.directions.size()) throw InputError("lattice operands use different direction grids");
  for (std::size_t i = 0; i < a.directions.size(); ++i) {
    if (a.directions[i].size() != b.directions[i].size() || a.directions[i] != b.directions[i]) {
      throw InputError("lattice operands use different direction grids (index " + std::to_string(i) + ")");
    }
  }
}

}  // namespace detail

/// Pointwise max. For two polytope sources this is the support function of
/// the hull of the union, and the result keeps the joint vertex list.
inline SupportSample lattice_join(const SupportSample& a, const SupportSample& b) {
  detail::require_same_grid(a, b);
  SupportSample s;
  s.directions = a.directions;
  s.values = a.values.cwiseMax(b.values);
  if (a.source == SupportSample::Source::kPolytope && b.source == SupportSample::Source::kPolytope) {
    s.source = SupportSample::Source::kPolytope;
    s.tag = "support function of the hull of the union";
    s.vertices = a.vertices;
    s.vertices.insert(s.vertices.end(), b.vertices.begin(), b.vertices.end());
  } else {
    s.source = SupportSample::Source::kFunctionLattice;
    s.tag = to_string(s.source);
  }
  return s;
}

/// Pointwise min: an element of the function lattice, in general not a
/// support function.
inline SupportSample lattice_meet(const SupportSample& a, const SupportSample& b) {
  detail::require_same_grid(a, b);
  SupportSample s;
  s.directions = a.directions;
  s.values = a.values.cwiseMin(b.values);
  s.source = SupportSample::Source::kFunctionLattice;
  s.tag = to_string(s.source);
  return s;
}

// ---------------------------------------------------------------------------
// Hausdorff distance through support functions

struct HausdorffResult {
  double distance = 0.0;
  Vector direction;                 // maximizer of |h_A - h_B| on the dual unit sphere
  std::vector<Vector> directions;   // directions evaluated
  bool exact = false;
  double resolution_bound = 0.0;    // true value lies in [distance, distance + bound]
  double covering_radius = 0.0;
  double lipschitz = 0.0;
};

namespace detail {

inline double support_gap(const VertexList& a, const VertexList& b, const Vector& d, Norm::P p) {
  return std::abs(support_function(a, d) - support_function(b, d)) / dual_norm(d, p);
}

// Outward edge-normal angles of a counter-clockwise hull.
inline void edge_normal_angles(const VertexList& hull, std::vector<double>& out) {
  const std::size_t k = hull.size();
  if (k < 2) return;
  for (std::size_t i = 0; i < k; ++i) {
    const Vector& p = hull[i];
    const Vector& q = hull[(i + 1) % k];
    out.push_back(std::atan2(-(q(0) - p(0)), q(1) - p(1)));
    if (k == 2) break;
  }
  if (k == 2) out.push_back(std::atan2(hull[1](0) - hull[0](0), -(hull[1](1) - hull[0](1))));
}

inline Vector unit(double angle) { return vec({std::cos(angle), std::sin(angle)}); }

inline const Vector& argmax_vertex(const VertexList& v, const Vector& d) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].dot(d) > v[best].dot(d)) best = i;
  }
  return v[best];
}

// Candidate directions where the piecewise-linear difference h_A - h_B
// attains its extremes on the dual unit circle.
inline std::vector<Vector> critical_directions_2d(const VertexList& ha, const VertexList& hb, Norm::P p) {
  std::vector<double> ang;
  edge_normal_angles(ha, ang);
  edge_normal_angles(hb, ang);
  if (p == Norm::P::kInf) {
    for (double t : {0.0, 0.5, 1.0, -0.5}) ang.push_back(t * std::numbers::pi);
  } else if (p == Norm::P::kOne) {
    for (double t : {0.25, 0.75, -0.25, -0.75}) ang.push_back(t * std::numbers::pi);
  }
  std::sort(ang.begin(), ang.end());
  ang.erase(std::unique(ang.begin(), ang.end(), [](double x, double y) { return std::abs(x - y) <= 1e-15; }), ang.end());
  std::vector<Vector> dirs;
  for (double t : ang) dirs.push_back(unit(t));
  if (p != Norm::P::kTwo) return dirs;

  const double two_pi = 2.0 * std::numbers::pi;
  auto add_critical = [&](double lo, double hi, const Vector& mid) {
    const Vector w = argmax_vertex(ha, mid) - argmax_vertex(hb, mid);
    if (w.norm() == 0.0) return;
    for (double s : {1.0, -1.0}) {
      double t = std::atan2(s * w(1), s * w(0));
      while (t < lo) t += two_pi;
      while (t >= lo + two_pi) t -= two_pi;
      if (t < hi) dirs.push_back(unit(t));
    }
  };
  if (ang.empty()) {
    add_critical(-std::numbers::pi, std::numbers::pi, vec({1.0, 0.0}));
    if (dirs.empty()) dirs.push_back(vec({1.0, 0.0}));
    return dirs;
  }
  for (std::size_t i = 0; i < ang.size(); ++i) {
    const double lo = ang[i];
    const double hi = i + 1 < ang.size() ? ang[i + 1] : ang.front() + two_pi;
    add_critical(lo, hi, unit(0.5 * (lo + hi)));
  }
  return dirs;
}

}  // namespace detail

/// d_H(A, B) = sup over the dual unit sphere of |h_A - h_B|.
///
/// Exact in dimensions 1 and 2 for p in {1, 2, inf}. Elsewhere the sup is
/// taken over a grid of `samples` Euclidean unit directions and the result
/// carries the bound Lip * covering radius on the sampling error.
inline HausdorffResult hausdorff_distance(const VertexList& a_in, const VertexList& b_in, const Norm& norm = Norm::two(),
                                          int samples = 1024, bool force_sampled = false) {
  detail::require_polytope(a_in, "hausdorff_distance");
  detail::require_polytope(b_in, "hausdorff_distance");
  require_dim(a_in.front().size(), b_in.front().size(), "hausdorff_distance");
  const VertexList a = detail::apply_weights(a_in, norm);
  const VertexList b = detail::apply_weights(b_in, norm);
  const Eigen::Index dim = a.front().size();
  HausdorffResult r;
  if (dim == 1) {
    r.exact = true;
    r.directions = {vec({1.0}), vec({-1.0})};
  } else if (dim == 2 && !force_sampled) {
    r.exact = true;
    r.directions = detail::critical_directions_2d(convex_hull_2d(a), convex_hull_2d(b), norm.p);
  } else {
    if (norm.p != Norm::P::kTwo) {
      throw UnsupportedRepresentation("sampled Hausdorff distance uses the Euclidean dual sphere; got " + norm.name());
    }
    r.directions = direction_grid(dim, samples);
    r.covering_radius = covering_radius(r.directions);
    double ra = 0.0;
    double rb = 0.0;
    for (const auto& v : a) ra = std::max(ra, v.norm());
    for (const auto& v : b) rb = std::max(rb, v.norm());
    r.lipschitz = ra + rb;
    r.resolution_bound = r.lipschitz * r.covering_radius;
  }
  r.distance = -1.0;
  for (const auto& d : r.directions) {
    const double v = detail::support_gap(a, b, d, norm.p);
    if (v > r.distance) {
      r.distance = v;
      r.direction = d / detail::dual_norm(d, norm.p);
    }
  }
  if (norm.weights.size() != 0) r.direction = r.direction.cwiseProduct(norm.weights);
  return r;
}

// ---------------------------------------------------------------------------
// Definitional distance and the order isometry

/// dist(x, conv P) in the given norm: planar geometry for the Euclidean norm
/// in 2-D, a QP for the Euclidean norm elsewhere, an LP for p = 1 or inf.
inline double distance_to_polytope(const Vector& x_in, const VertexList& p_in, const Norm& norm = Norm::two(),
                                   const Config& cfg = Config{}) {
  detail::require_polytope(p_in, "distance_to_polytope");
  require_dim(p_in.front().size(), x_in.size(), "distance_to_polytope");
  const VertexList p = detail::apply_weights(p_in, norm);
  const Vector x = norm.weights.size() ? Vector(x_in.cwiseProduct(norm.weights)) : x_in;
  const Eigen::Index n = x.size();
  const auto k = static_cast<Eigen::Index>(p.size());

  if (norm.p == Norm::P::kTwo && n == 2) {
    const VertexList h = convex_hull_2d(p);
    auto seg = [&](const Vector& s, const Vector& t) {
      const Vector d = t - s;
      const double len2 = d.squaredNorm();
      const double u = len2 > 0.0 ? std::clamp((x - s).dot(d) / len2, 0.0, 1.0) : 0.0;
      return (x - (s + u * d)).norm();
    };
    if (h.size() == 1) return (x - h[0]).norm();
    if (h.size() == 2) return seg(h[0], h[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Vector& s = h[i];
      const Vector& t = h[(i + 1) % h.size()];
      if (detail::cross(s, t, x) < 0.0) inside = false;
      best = std::min(best, seg(s, t));
    }
    return inside ? 0.0 : best;
  }

  Matrix v(n, k);
  for (Eigen::Index j = 0; j < k; ++j) v.col(j) = p[static_cast<std::size_t>(j)];
  if (norm.p == Norm::P::kTwo) {
    numkernel::QPProblem qp;
    qp.q_mat = v.transpose() * v;
    qp.cost = -v.transpose() * x;
    qp.eq = Matrix::Ones(1, k);
    qp.eq_rhs = vec({1.0});
    qp.lower = Vector::Zero(k);
    const auto r = numkernel::solve_qp(qp, cfg);
    require(r.status == numkernel::QPStatus::kOptimal, "projection onto a polytope failed");
    return (x - v * r.x).norm();
  }
  // Variables (lambda, t): x - V lambda bounded by t in the chosen norm.
  numkernel::LPProblem lp;
  if (norm.p == Norm::P::kInf) {
    lp.cost = Vector::Zero(k + 1);
    lp.cost(k) = 1.0;
    lp.ineq = Matrix::Zero(2 * n, k + 1);
    lp.ineq.topLeftCorner(n, k) = v;
    lp.ineq.bottomLeftCorner(n, k) = -v;
    lp.ineq.col(k).setOnes();
    lp.ineq_rhs.resize(2 * n);
    lp.ineq_rhs << x, -x;
    lp.eq = Matrix::Zero(1, k + 1);
    lp.eq.leftCols(k).setOnes();
  } else {
    // One bound t_i per coordinate, objective sum t_i.
    lp.cost = Vector::Zero(k + n);
    lp.cost.tail(n).setOnes();
    lp.ineq = Matrix::Zero(2 * n, k + n);
    lp.ineq.topLeftCorner(n, k) = v;
    lp.ineq.bottomLeftCorner(n, k) = -v;
    lp.ineq.topRightCorner(n, n).setIdentity();
    lp.ineq.bottomRightCorner(n, n).setIdentity();
    lp.ineq_rhs.resize(2 * n);
    lp.ineq_rhs << x, -x;
    lp.eq = Matrix::Zero(1, k + n);
    lp.eq.leftCols(k).setOnes();
  }
  lp.eq_rhs = vec({1.0});
  lp.lower = Vector::Zero(lp.cost.size());
  const auto r = numkernel::solve_lp(lp, cfg);
  require(r.status == numkernel::SolveStatus::kOptimal, "polytope distance LP failed");
  return r.value;
}

/// max(max_a dist(a, B), max_b dist(b, A)); the farthest points of a
/// polytope from a convex set are among its vertices.
inline double hausdorff_by_definition(const VertexList& a, const VertexList& b, const Norm& norm = Norm::two(),
                                      const Config& cfg = Config{}) {
  double d = 0.0;
  for (const auto& x : a) d = std::max(d, distance_to_polytope(x, b, norm, cfg));
  for (const auto& x : b) d = std::max(d, distance_to_polytope(x, a, norm, cfg));
  return d;
}

struct IsometryReport {
  double hausdorff = 0.0;  // definitional value
  HausdorffResult support;  // sup-norm of h_A - h_B
  double discrepancy = 0.0;
  double allowance = 0.0;  // 1e-9, plus the sampling bound in sampled mode
  bool isometry_holds = false;
  bool a_in_b = false;
  bool b_in_a = false;
  bool ha_le_hb = false;
  bool hb_le_ha = false;
  bool order_preserved = false;
};

inline IsometryReport verify_order_isometry(const VertexList& a, const VertexList& b, const Norm& norm = Norm::two(),
                                            int samples = 1024, const Config& cfg = Config{}) {
  IsometryReport r;
  const Eigen::Index dim = a.empty() ? 0 : a.front().size();
  r.support = hausdorff_distance(a, b, norm, samples);
  r.hausdorff = hausdorff_by_definition(a, b, norm, cfg);
  r.discrepancy = std::abs(r.hausdorff - r.support.distance);
  r.allowance = 1e-9 * (1.0 + r.hausdorff) + r.support.resolution_bound;
  r.isometry_holds = r.discrepancy <= r.allowance;

  const double tol = 1e-9;
  r.a_in_b = std::all_of(a.begin(), a.end(), [&](const Vector& x) { return distance_to_polytope(x, b, norm, cfg) <= tol; });
  r.b_in_a = std::all_of(b.begin(), b.end(), [&](const Vector& x) { return distance_to_polytope(x, a, norm, cfg) <= tol; });
  // Order is compared on the evaluated directions.
  std::vector<Vector> dirs = r.support.directions;
  if (dim == 2 && !r.support.exact) dirs = circle_directions(samples);
  const VertexList aw = detail::apply_weights(a, norm);
  const VertexList bw = detail::apply_weights(b, norm);
  r.ha_le_hb = r.hb_le_ha = true;
  for (const auto& d : dirs) {
    const double ha = support_function(aw, d);
    const double hb = support_function(bw, d);
    if (ha > hb + tol) r.ha_le_hb = false;
    if (hb > ha + tol) r.hb_le_ha = false;
  }
  r.order_preserved = r.support.exact ? (r.a_in_b == r.ha_le_hb && r.b_in_a == r.hb_le_ha)
                                      : ((!r.a_in_b || r.ha_le_hb) && (!r.b_in_a || r.hb_le_ha));
  return r;
}

}  // namespace conegen
