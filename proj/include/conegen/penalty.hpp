#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "conegen/cones.hpp"
#include "conegen/numkernel/oracles.hpp"
#include "conegen/scalarization.hpp"

namespace conegen {

using VectorFn = std::function<Vector(const Vector&)>;

struct DistanceResult {
  double distance = 0.0;
  Vector witness;
};

/// d(x, omega) over a finite point list; the first nearest point is the witness.
inline DistanceResult distance_to_set(const Vector& x, const std::vector<Vector>& omega, const Norm& norm = Norm::two()) {
  if (omega.empty()) throw InputError("distance_to_set: empty set");
  DistanceResult best{std::numeric_limits<double>::infinity(), omega.front()};
  for (const auto& z : omega) {
    require_dim(x.size(), z.size(), "distance_to_set");
    const double d = norm(x - z);
    if (d < best.distance) best = {d, z};
  }
  return best;
}

/// d(x, [lower, upper]); the clamp is a nearest point for every weighted
/// p-norm since it minimizes each coordinate deviation at once.
inline DistanceResult distance_to_box(const Vector& x, const Vector& lower, const Vector& upper,
                                      const Norm& norm = Norm::two()) {
  require_dim(x.size(), lower.size(), "distance_to_box");
  require_dim(x.size(), upper.size(), "distance_to_box");
  if ((upper - lower).minCoeff() < 0.0) throw InputError("distance_to_box: empty box");
  const Vector w = x.cwiseMax(lower).cwiseMin(upper);
  return {norm(x - w), w};
}

/// Sampled cone-Lipschitz rank max phi(f(x) - f(y)) / |x - y| over all
/// ordered pairs. It is certified on the sample and only a lower bound for
/// the rank on a continuum, hence `heuristic`.
struct LipschitzRank {
  Extended rank = 0.0;
  std::size_t arg_x = 0;
  std::size_t arg_y = 0;
  bool heuristic = true;
};

inline LipschitzRank cone_lipschitz_rank(const std::vector<Vector>& points, const std::vector<Vector>& values,
                                         const GerstewitzFn& fn, const Norm& norm = Norm::two(),
                                         double coincidence_tol = 0.0) {
  require(points.size() == values.size(), "cone_lipschitz_rank: points and values differ in length");
  require(points.size() >= 2, "cone_lipschitz_rank needs at least one pair");
  require(fn.interior_direction(), "cone_lipschitz_rank needs e interior to the cone");
  LipschitzRank out;
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const double dist = norm(points[i] - points[j]);
      const Vector diff = values[i] - values[j];
      if (dist <= coincidence_tol) {
        if (diff.cwiseAbs().maxCoeff() > 0.0) {
          out.rank = Extended::plus_infinity();
          out.arg_x = i;
          out.arg_y = j;
          return out;
        }
        continue;
      }
      const double r = gerstewitz_value(fn, diff).value() / dist;
      if (r > best) {
        best = r;
        out.arg_x = i;
        out.arg_y = j;
      }
    }
  }
  out.rank = best;
  return out;
}

/// Indices of the C-minimal entries: i is kept unless some value v_j has
/// v_j - v_i in -C with |v_j - v_i| > strict_tol.
inline std::vector<std::size_t> cone_minimal_points(const std::vector<Vector>& values, const PolyhedralCone& cone,
                                                    double tol = 1e-9, double strict_tol = 1e-8) {
  require(!values.empty(), "cone_minimal_points: empty list");
  const Matrix& a = cone.halfspaces();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < values.size() && !dominated; ++j) {
      const Vector v = values[j] - values[i];
      dominated = v.norm() > strict_tol && (a * v).maxCoeff() <= tol;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

/// Finite exact-penalty instance: ground set S, feasible subset Omega
/// (indices into S), objective f : S -> R^m, cone C in R^m, unit direction
/// e interior to C and a declared cone-Lipschitz rank.
class PenaltyInstance {
 public:
  PenaltyInstance(std::vector<Vector> ground, std::vector<std::size_t> feasible, VectorFn objective,
                  PolyhedralCone cone, Vector e, double rank, Norm norm = Norm::two(), Norm value_norm = Norm::two(),
                  const Config& cfg = Config{})
      : ground_(std::move(ground)),
        feasible_(std::move(feasible)),
        objective_(std::move(objective)),
        fn_(std::move(cone), std::move(e)),
        rank_(rank),
        norm_(std::move(norm)),
        value_norm_(std::move(value_norm)) {
    require(!ground_.empty(), "penalty instance: empty ground set");
    require(!feasible_.empty(), "penalty instance: empty feasible set");
    std::sort(feasible_.begin(), feasible_.end());
    feasible_.erase(std::unique(feasible_.begin(), feasible_.end()), feasible_.end());
    for (auto i : feasible_) require(i < ground_.size(), "penalty instance: feasible index out of range");
    if (!fn_.interior_direction()) throw InputError("penalty instance: e must be interior to the cone");
    if (std::abs(value_norm_(fn_.e()) - 1.0) > 1e-9) throw InputError("penalty instance: e must have unit norm");
    require(rank_ >= 0.0 && std::isfinite(rank_), "penalty instance: rank must be a finite nonnegative number");
    values_.reserve(ground_.size());
    for (const auto& x : ground_) {
      require_dim(ground_.front().size(), x.size(), "ground set point");
      values_.push_back(objective_(x));
      require_dim(fn_.cone().dim(), values_.back().size(), "objective value");
      require_finite(values_.back(), "objective value");
    }
    // Declared rank must satisfy f(x) <= f(y) + L |x - y| e on every pair.
    const Matrix& a = fn_.cone().halfspaces();
    for (std::size_t i = 0; i < ground_.size(); ++i) {
      for (std::size_t j = 0; j < ground_.size(); ++j) {
        if (i == j) continue;
        const Vector slack = values_[j] + rank_ * norm_(ground_[i] - ground_[j]) * fn_.e() - values_[i];
        if ((a * slack).minCoeff() < -cfg.tol.membership * (1.0 + slack.cwiseAbs().maxCoeff())) {
          throw InputError("penalty instance: declared rank " + std::to_string(rank_) +
                           " violated on pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
      }
    }
  }

  const std::vector<Vector>& ground() const { return ground_; }
  const std::vector<std::size_t>& feasible() const { return feasible_; }
  const std::vector<Vector>& values() const { return values_; }
  const VectorFn& objective() const { return objective_; }
  const PolyhedralCone& cone() const { return fn_.cone(); }
  const GerstewitzFn& scalarization() const { return fn_; }
  const Vector& e() const { return fn_.e(); }
  double rank() const { return rank_; }
  const Norm& norm() const { return norm_; }

  std::vector<Vector> feasible_points() const {
    std::vector<Vector> out;
    for (auto i : feasible_) out.push_back(ground_[i]);
    return out;
  }

 private:
  std::vector<Vector> ground_;
  std::vector<std::size_t> feasible_;
  VectorFn objective_;
  GerstewitzFn fn_;
  double rank_;
  Norm norm_;
  Norm value_norm_;
  std::vector<Vector> values_;
};

/// x -> f(x) + L d(x, Omega) e.
inline VectorFn penalized_objective(const PenaltyInstance& inst, double lambda) {
  require(lambda >= 0.0, "penalty parameter must be nonnegative");
  const auto omega = inst.feasible_points();
  return [omega, lambda, f = inst.objective(), e = inst.e(), norm = inst.norm()](const Vector& x) -> Vector {
    return f(x) + lambda * distance_to_set(x, omega, norm).distance * e;
  };
}

struct MinimalSets {
  std::vector<std::size_t> constrained;  // indices into S, minimal for f over Omega
  std::vector<std::size_t> penalized;    // indices into S, minimal for the penalty function over S
};

inline MinimalSets penalty_minimal_sets(const PenaltyInstance& inst, double lambda, double tol = 1e-9,
                                        double strict_tol = 1e-8) {
  MinimalSets out;
  std::vector<Vector> fv;
  for (auto i : inst.feasible()) fv.push_back(inst.values()[i]);
  for (auto k : cone_minimal_points(fv, inst.cone(), tol, strict_tol)) out.constrained.push_back(inst.feasible()[k]);

  const auto omega = inst.feasible_points();
  std::vector<Vector> pv;
  pv.reserve(inst.ground().size());
  for (std::size_t i = 0; i < inst.ground().size(); ++i) {
    pv.push_back(inst.values()[i] + lambda * distance_to_set(inst.ground()[i], omega, inst.norm()).distance * inst.e());
  }
  out.penalized = cone_minimal_points(pv, inst.cone(), tol, strict_tol);
  return out;
}

struct PenaltyReport {
  double lambda = 0.0;
  double rank = 0.0;
  MinimalSets sets;
  bool equal = false;
  MinimalSets at_rank;
  bool inclusion_at_rank = false;  // constrained minimal set inside the penalized one at L = rank
  bool tolerance_sensitive = false;
};

inline bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::all_of(a.begin(), a.end(), [&](std::size_t i) { return std::find(b.begin(), b.end(), i) != b.end(); });
}

/// Checks that, for L > rank, the C-minimizers of f on Omega coincide with
/// the C-minimizers of f + L d(., Omega) e on S, and that at L = rank the
/// former are contained in the latter.
inline PenaltyReport verify_penalty_equivalence(const PenaltyInstance& inst, double lambda,
                                                const Config& cfg = Config{}) {
  if (!(lambda > inst.rank() + 1e-9)) {
    throw PreconditionViolation("penalty parameter L = " + std::to_string(lambda) +
                                " must exceed the cone-Lipschitz rank " + std::to_string(inst.rank()));
  }
  PenaltyReport rep;
  rep.lambda = lambda;
  rep.rank = inst.rank();
  const double tol = cfg.tol.membership;
  const double strict = cfg.tol.strict_norm;
  rep.sets = penalty_minimal_sets(inst, lambda, tol, strict);
  rep.equal = rep.sets.constrained == rep.sets.penalized;
  rep.at_rank = penalty_minimal_sets(inst, inst.rank(), tol, strict);
  rep.inclusion_at_rank = is_subset(rep.at_rank.constrained, rep.at_rank.penalized);
  const auto loose = penalty_minimal_sets(inst, lambda, 10.0 * tol, 10.0 * strict);
  rep.tolerance_sensitive = loose.constrained != rep.sets.constrained || loose.penalized != rep.sets.penalized;
  return rep;
}

/// Random finite instance: a grid S in R^d (d <= 3, |S| <= 400), a random
/// sub-box Omega, f(x) = A x + a bounded smooth perturbation, a coordinate or
/// random general cone in R^m (m <= 3) and e the normalized generator sum.
/// The declared rank is the measured sample rank.
inline PenaltyInstance random_penalty_instance(std::mt19937_64& rng, const Config& cfg = Config{}) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int d = 1 + static_cast<int>(rng() % 3);
  const int m = 1 + static_cast<int>(rng() % 3);
  const int per_axis = d == 1 ? 41 : (d == 2 ? 15 : 7);
  numkernel::GridSpec grid{Vector::Constant(d, -1.0), Vector::Constant(d, 1.0),
                           Vector::Constant(d, 2.0 / (per_axis - 1))};
  const auto ground = grid.points();

  // Omega = grid points inside a random sub-box (never empty: it holds a grid point).
  const std::size_t anchor = static_cast<std::size_t>(rng() % ground.size());
  Vector lo = ground[anchor];
  Vector hi = ground[anchor];
  for (int i = 0; i < d; ++i) {
    lo(i) -= 0.6 * std::abs(unit(rng));
    hi(i) += 0.6 * std::abs(unit(rng));
  }
  std::vector<std::size_t> feasible;
  for (std::size_t k = 0; k < ground.size(); ++k) {
    if ((ground[k] - lo).minCoeff() >= 0.0 && (hi - ground[k]).minCoeff() >= 0.0) feasible.push_back(k);
  }

  PolyhedralCone cone = PolyhedralCone::coordinate(m);
  if (m >= 2 && rng() % 2 == 0) {
    for (;;) {
      Matrix g(m + static_cast<int>(rng() % 2), m);
      for (Eigen::Index r = 0; r < g.rows(); ++r) {
        g(r, 0) = 1.0;
        for (int j = 1; j < m; ++j) g(r, j) = 0.8 * unit(rng);
      }
      try {
        cone = PolyhedralCone::from_generators(g, std::nullopt, cfg);
        break;
      } catch (const InputError&) {
      }
    }
  }
  Vector e = cone.generators().colwise().sum().transpose();
  e /= e.norm();

  Matrix a(m, d);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = unit(rng);
  Matrix b(m, d);
  for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = 3.0 * unit(rng);
  const double amp = 0.3 * std::abs(unit(rng));
  VectorFn f = [a, b, amp](const Vector& x) -> Vector {
    return a * x + amp * (b * x).array().sin().matrix();
  };

  std::vector<Vector> values;
  for (const auto& x : ground) values.push_back(f(x));
  const GerstewitzFn fn(cone, e);
  const double rank = cone_lipschitz_rank(ground, values, fn).rank.value();
  return PenaltyInstance(ground, feasible, f, cone, e, rank, Norm::two(), Norm::two(), cfg);
}

}  // namespace conegen
