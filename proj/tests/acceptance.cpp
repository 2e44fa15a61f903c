// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conegen/conegen.hpp"
#include "support/instances.hpp"

using namespace conegen;
using namespace conegen::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  const char* id;
  const char* name;
  double time_limit;  // seconds; 0 means none
  std::function<void(Outcome&)> body;
};

// 1. Order-interval gauge on coordinate cones.
void gauge_suite(Outcome& o) {
  std::mt19937_64 rng(1001);
  double iso_err = 0.0;
  double lp_err = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 20;
    const Vector u = random_positive(rng, n);
    const GaugeBody body(PolyhedralCone::coordinate(n), u);
    const Vector x = random_vector(rng, n);
    const double g = order_interval_gauge(body, x).value();
    iso_err = std::max(iso_err, std::abs(linfty_isometry(u, x).cwiseAbs().maxCoeff() - g));
    lp_err = std::max(lp_err, std::abs(order_interval_gauge(body, x, GaugePath::kLinearProgram).value() - g));
  }
  o.check(iso_err <= 1e-12, "isometry");
  o.check(lp_err <= 1e-9, "LP path");

  // u = (2^-1, ..., 2^-n): sign vectors of u have gauge 1, e_k has gauge 2^k.
  int exact = 0;
  for (int n = 1; n <= 20; ++n) {
    Vector u(n);
    for (int j = 0; j < n; ++j) u(j) = std::ldexp(1.0, -(j + 1));
    const GaugeBody body(PolyhedralCone::coordinate(n), u);
    for (int s = 0; s < 32; ++s) {
      Vector x = u;
      for (int j = 0; j < n; ++j) {
        if (rng() & 1U) x(j) = -x(j);
      }
      const bool ok = order_interval_gauge(body, x).value() == 1.0;
      o.check(ok, "sign vector of u at n = " + std::to_string(n));
      exact += ok ? 1 : 0;
    }
    for (int k = 1; k <= n; ++k) {
      const bool ok = order_interval_gauge(body, Vector::Unit(n, k - 1)).value() == std::ldexp(1.0, k);
      o.check(ok, "e_k at n = " + std::to_string(n));
      exact += ok ? 1 : 0;
    }
  }
  o.detail << "500 instances, max isometry error " << iso_err << ", max LP-vs-fast " << lp_err << ", " << exact
           << " exact dyadic values";
}

// 2. Equivalence constant of two generating elements.
void equivalence_suite(Outcome& o) {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  double worst_tight = 0.0;
  double worst_side = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    PolyhedralCone cone = PolyhedralCone::coordinate(1);
    Vector u;
    Vector v;
    if (trial % 2 == 0) {
      const int n = 1 + trial % 20;
      cone = PolyhedralCone::coordinate(n);
      u = random_positive(rng, n);
      v = random_positive(rng, n);
    } else {
      const int n = 2 + trial % 2;
      cone = random_general_cone(rng, n, n + static_cast<int>(rng() % 3));
      const Matrix& g = cone.generators();
      u = g.transpose() * Vector::NullaryExpr(g.rows(), [&](Eigen::Index) { return w(rng); });
      v = g.transpose() * Vector::NullaryExpr(g.rows(), [&](Eigen::Index) { return w(rng); });
    }
    const auto rep = equivalence_report(cone, u, v);
    const GaugeBody bu(cone, u);
    const GaugeBody bv(cone, v);
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_vector(rng, cone.dim());
      const double nu = order_interval_gauge(bu, x).value();
      const double nv = order_interval_gauge(bv, x).value();
      worst_side = std::max({worst_side, nu / rep.c - nv, nv - rep.c * nu});
    }
    worst_tight = std::max(worst_tight, rep.tightness_residual);
  }
  o.check(worst_side <= 1e-9, "sandwich");
  o.check(worst_tight <= 1e-9, "tightness");
  o.detail << "200 pairs x 100 points, worst sandwich violation " << worst_side << ", worst tightness residual "
           << worst_tight;
}

// 3. Gerstewitz scalarization.
void scalarization_suite(Outcome& o) {
  std::mt19937_64 rng(1003);
  std::vector<GerstewitzFn> fns;
  fns.emplace_back(PolyhedralCone::coordinate(2), vec({1.0, 0.5}));
  fns.emplace_back(PolyhedralCone::coordinate(4), vec({0.3, 1.0, 0.7, 2.0}));
  fns.emplace_back(PolyhedralCone::weighted_coordinate(vec({1.0, 2.0, 3.0})), vec({1.0, 1.0, 1.0}));
  for (int n : {2, 3, 3}) {
    const auto c = random_general_cone(rng, n, n + 1 + static_cast<int>(rng() % 2));
    Vector e = c.generators().colwise().sum().transpose();
    fns.emplace_back(c, e / e.norm());
  }
  long samples = 0;
  long subdiff = 0;
  double fd_worst = 0.0;
  for (std::size_t k = 0; k < fns.size(); ++k) {
    const auto& fn = fns[k];
    const Eigen::Index n = fn.e().size();
    const std::string tag = " (cone " + std::to_string(k) + ")";
    const auto phi = [&](const Vector& y) { return gerstewitz_value(fn, y).value(); };
    for (int i = 0; i < 1000; ++i, ++samples) {
      const Vector y = random_vector(rng, n, 2.0);
      const Vector y2 = random_vector(rng, n, 2.0);
      const double s = std::normal_distribution<double>(0.0, 3.0)(rng);
      const double a = std::abs(s);
      const double py = phi(y);
      o.check(std::abs(phi(y + s * fn.e()) - (py + s)) <= 1e-9, "translation" + tag);
      o.check(py <= phi(y + random_cone_point(rng, fn.cone())) + 1e-9, "monotonicity" + tag);
      o.check(phi(y + y2) <= py + phi(y2) + 1e-9, "subadditivity" + tag);
      o.check(std::abs(phi(a * y) - a * py) <= 1e-9 * (1.0 + a * std::abs(py)), "homogeneity" + tag);
      o.check(gerstewitz_sublevel(fn, y, py), "sublevel at phi" + tag);
      o.check(!gerstewitz_sublevel(fn, y, py - 1e-6), "sublevel below phi" + tag);
      o.check((py <= 0.0) == cone_contains(fn.cone(), -y, 0.0), "nonpositivity iff y in -C" + tag);
      o.check(phi(-random_cone_point(rng, fn.cone())) <= 1e-12, "nonpositive on -C" + tag);

      if (i % 5 == 0) {
        ++subdiff;
        const auto sd = gerstewitz_subdifferential(fn, y);
        std::vector<Vector> pts = sd.vertices;
        pts.push_back(sd.element);
        for (const auto& v : pts) {
          o.check(std::abs(v.dot(fn.e()) - 1.0) <= 1e-9, "<y*, e> = 1" + tag);
          o.check(std::abs(v.dot(y) - sd.phi) <= 1e-9, "<y*, y> = phi(y)" + tag);
          o.check((fn.cone().generators() * v).minCoeff() >= -1e-9, "y* in C*" + tag);
        }
        const Vector d = random_vector(rng, n);
        const double dd = gerstewitz_directional_derivative(fn, y, d).value();
        const double fd = symmetric_difference(fn, y, d, 1e-5);
        fd_worst = std::max(fd_worst, std::abs(dd - fd));
        o.check(std::abs(dd - fd) <= 1e-4, "finite difference" + tag);
      }
    }
  }
  o.detail << fns.size() << " cones x 1000 samples, " << subdiff << " subdifferentials, worst derivative mismatch "
           << fd_worst;
}

// 4. Exact penalization on finite instances.
void penalty_suite(Outcome& o) {
  std::mt19937_64 rng(1004);
  int equal = 0;
  int included = 0;
  std::size_t points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_penalty_instance(rng);
    points += inst.ground().size();
    const auto rep = verify_penalty_equivalence(inst, 1.1 * inst.rank());
    o.check(rep.equal, "set equality at 1.1 L_f, instance " + std::to_string(trial));
    o.check(rep.inclusion_at_rank, "inclusion at L_f, instance " + std::to_string(trial));
    equal += rep.equal ? 1 : 0;
    included += rep.inclusion_at_rank ? 1 : 0;
  }
  o.detail << "200 instances (" << points << " ground points), equality " << equal << "/200, inclusion at L_f "
           << included << "/200";
}

// 5. Lagrange duality on Slater instances.
void duality_suite(Outcome& o) {
  std::mt19937_64 rng(1005);
  double worst_gap = 0.0;
  double worst_weak = -numkernel::kInf;
  int sampled = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_slater_program(rng, trial);
    const auto rep = duality_gap_report(p, Vector::Ones(p.m()));
    o.check(rep.slater.holds, "Slater on instance " + std::to_string(trial));
    o.check(rep.gap.finite(), "finite gap on instance " + std::to_string(trial));
    if (!rep.gap.finite()) continue;
    worst_gap = std::max(worst_gap, rep.gap.value());
    const double pv = rep.primal.value();
    for (int s = 0; s < 30; ++s, ++sampled) {
      const auto dv = dual_value(p, random_multipliers(rng, p));
      if (dv.is_minus_infinity()) continue;
      worst_weak = std::max(worst_weak, dv.value() - pv);
    }
  }
  o.check(worst_gap <= 1e-5, "gap");
  o.check(worst_weak <= 1e-9, "weak duality");
  o.detail << "100 instances, worst gap " << worst_gap << "; " << sampled << " sampled multipliers, max(dual - primal) "
           << worst_weak;
}

// 6. Stationarity certificates.
void certificate_suite(Outcome& o) {
  std::mt19937_64 rng(1006);
  int certified = 0;
  int refused = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto ci = random_certificate_instance(rng, trial);
    for (const Vector& x : {ci.minimizer, ci.random_point}) {
      const auto c = stationarity_certificate(ci.f, ci.cone, ci.lower, ci.upper, x, ci.e);
      if (c.certified) {
        ++certified;
        o.check(certificate_holds(ci.f, ci.cone.halfspaces(), ci.lower, ci.upper, x, ci.e, c, 1e-8),
                "certificate re-check, instance " + std::to_string(trial));
      } else {
        ++refused;
        o.check(farkas_signs_ok(c.lp, c.farkas), "refusal Farkas check, instance " + std::to_string(trial));
      }
    }
    o.check(stationarity_certificate(ci.f, ci.cone, ci.lower, ci.upper, ci.minimizer, ci.e).certified,
            "minimizer of a positive scalarization certifies, instance " + std::to_string(trial));
  }
  int scalar = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix b = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) {
      return std::normal_distribution<double>()(rng);
    });
    BoxProgram p;
    p.Q = b.transpose() * b * (trial % 3 == 0 ? 0.0 : 1.0);
    p.q = random_vector(rng, n, 2.0);
    p.lower = -Vector::Ones(n);
    p.upper = Vector::Ones(n);
    const auto r = solve_primal(p);
    const QuadraticMap f{{p.Q}, p.q.transpose(), vec({0.0})};
    const auto c = stationarity_certificate(f, PolyhedralCone::coordinate(1), p.lower, p.upper, r.x, vec({1.0}));
    o.check(r.feasible && c.certified, "scalar minimizer certifies, instance " + std::to_string(trial));
    if (c.certified) {
      o.check(certificate_holds(f, Matrix::Identity(1, 1), p.lower, p.upper, r.x, vec({1.0}), c, 1e-8),
              "scalar certificate re-check");
      ++scalar;
    }
  }
  o.detail << "100 vector instances: " << certified << " certificates re-checked at 1e-8, " << refused
           << " refusals with verified Farkas rays; " << scalar << "/100 scalar minimizers certified";
}

// 7. Hausdorff distance and support functions.
void lattice_suite(Outcome& o) {
  std::mt19937_64 rng(1007);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_cloud(rng);
    const auto b = random_cloud(rng);
    const Norm norm = trial % 3 == 0 ? Norm::two() : (trial % 3 == 1 ? Norm::one() : Norm::inf());
    const auto r = verify_order_isometry(a, b, norm);
    o.check(r.support.exact, "exact planar path");
    o.check(r.discrepancy <= 1e-9, "Hormander identity, pair " + std::to_string(trial));
    o.check(r.order_preserved, "inclusion order, pair " + std::to_string(trial));
    worst = std::max(worst, r.discrepancy);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_cloud(rng);
    const auto b = random_cloud(rng);
    const auto c = random_cloud(rng);
    const double ab = hausdorff_distance(a, b).distance;
    o.check(ab == hausdorff_distance(b, a).distance, "symmetry");
    o.check(ab <= hausdorff_distance(a, c).distance + hausdorff_distance(c, b).distance + 1e-9, "triangle");
    o.check(hausdorff_distance(a, a).distance == 0.0, "identity");
    o.check(ab >= 0.0, "nonnegativity");
  }
  const auto grid = circle_directions(90);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_cloud(rng);
    const auto b = random_cloud(rng);
    VertexList uni = a;
    uni.insert(uni.end(), b.begin(), b.end());
    const auto hull = convex_hull_2d(uni);
    const auto j = lattice_join(support_sample(a, grid), support_sample(b, grid));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      o.check(std::abs(j.values(static_cast<Eigen::Index>(i)) - support_function(hull, grid[i])) <= 1e-12, "join");
    }
  }
  o.detail << "200 pairs, worst |d_H - sup|h_A - h_B|| " << worst << "; 200 metric triples; 100 joins";
}

// 8. Demonstrations.
void demo_suite(Outcome& o) {
  const auto t = demos::torsion_demo(12);
  o.check(t.oracle_error <= 1e-6, "torsion oracle");
  o.check(t.pass, "torsion demo");
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = demos::vi_demo(6, seed);
    const Matrix tx = demos::vi_operator(r.instance, r.x);
    const QuadraticMap f{{}, tx, -tx * r.x};
    const bool ok = r.certificate.certified &&
                    certificate_holds(f, Matrix::Identity(6, 6), r.instance.lower, r.instance.upper, r.x,
                                      r.instance.e, r.certificate, 1e-8);
    o.check(ok, "VI certificate, seed " + std::to_string(seed));
    certified += ok ? 1 : 0;
  }
  o.detail << "torsion n = 12: value " << t.primal.value << ", oracle " << t.oracle.value << ", error "
           << t.oracle_error << "; VI certificates " << certified << "/5";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "gauge/isometry", 10.0, gauge_suite},
      {"AC2", "norm equivalence", 10.0, equivalence_suite},
      {"AC3", "Gerstewitz scalarization", 20.0, scalarization_suite},
      {"AC4", "exact penalty", 60.0, penalty_suite},
      {"AC5", "duality", 120.0, duality_suite},
      {"AC6", "certificates", 0.0, certificate_suite},
      {"AC7", "lattice", 20.0, lattice_suite},
      {"AC8", "demos", 0.0, demo_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0) o.check(secs < c.time_limit, "runtime limit");
    failed += o.pass ? 0 : 1;
    char timing[64];
    if (c.time_limit > 0.0) {
      std::snprintf(timing, sizeof timing, "%.2f s / limit %.0f s", secs, c.time_limit);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::printf("%s %s  %s [%s]: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, timing, o.detail.str().c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
