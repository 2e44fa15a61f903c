#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "conegen/cones.hpp"
#include "conegen/duality.hpp"
#include "conegen/error.hpp"
#include "conegen/lattice.hpp"
#include "conegen/penalty.hpp"
#include "conegen/types.hpp"

namespace conegen::io {

using json = nlohmann::json;

inline constexpr int kProblemVersion = 1;

struct GaugeBlock {
  Vector u;
  std::optional<Vector> v;
};

struct ScalarizeBlock {
  Vector e;
};

struct PenaltyObjective {
  enum class Kind { kAffine, kAbsAffine, kTable };
  Kind kind = Kind::kAffine;
  Matrix a;  // m x d
  Vector b;
  std::vector<Vector> table;  // one value per ground point
};

struct PenaltyBlock {
  std::vector<Vector> ground;
  std::vector<std::size_t> feasible;
  PenaltyObjective objective;
  Vector e;                  // unit Euclidean length after parsing
  bool e_normalized = false;  // the file's e was rescaled
  std::optional<double> rank;
};

struct DualityBlock {
  BoxProgram program;
  Vector e;  // empty when the program has no cone constraint
};

struct CertifyBlock {
  QuadraticMap objective;
  Vector lower;
  Vector upper;
  Vector e;
};

struct LatticeBlock {
  VertexList a;
  VertexList b;
};

using ProblemBlock = std::variant<GaugeBlock, ScalarizeBlock, PenaltyBlock, DualityBlock, CertifyBlock, LatticeBlock>;

/// Validated problem file.
struct ProblemFile {
  int version = kProblemVersion;
  Norm norm = Norm::two();
  std::optional<PolyhedralCone> cone;  // absent means the nonnegative orthant
  std::string block_name;
  ProblemBlock block;

  /// The declared cone, or R^dim_+ when none was given.
  PolyhedralCone cone_or_orthant(Eigen::Index dim) const {
    if (!cone) return PolyhedralCone::coordinate(dim);
    require_dim(dim, cone->dim(), "cone");
    return *cone;
  }
};

namespace detail {

/// A JSON value together with its location, for diagnostics.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw InputError(path_ + ": " + what); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!j_->is_object()) fail("expected an object");
    for (const auto& [key, _] : j_->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) {
        std::string list;
        for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
        throw InputError(path_ + ": unknown key \"" + key + "\" (allowed: " + list + ")");
      }
    }
  }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Node at(const char* key) const {
    if (!has(key)) fail(std::string("missing required key \"") + key + "\"");
    return Node(j_->at(key), path_ + "." + key);
  }

  std::optional<Node> find(const char* key) const {
    if (!has(key)) return std::nullopt;
    return Node(j_->at(key), path_ + "." + key);
  }

  std::vector<Node> elements() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("number must be finite");
    return v;
  }

  long long integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long long>();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  Vector vector(bool allow_empty = false) const {
    const auto els = elements();
    if (els.empty() && !allow_empty) fail("expected a nonempty array of numbers");
    Vector v(static_cast<Eigen::Index>(els.size()));
    for (std::size_t i = 0; i < els.size(); ++i) v(static_cast<Eigen::Index>(i)) = els[i].number();
    return v;
  }

  std::vector<Vector> rows(bool allow_empty = false) const {
    const auto els = elements();
    if (els.empty() && !allow_empty) fail("expected a nonempty array of rows");
    std::vector<Vector> out;
    for (const auto& e : els) {
      out.push_back(e.vector());
      if (out.back().size() != out.front().size()) {
        e.fail("row length " + std::to_string(out.back().size()) + " differs from " +
               std::to_string(out.front().size()));
      }
    }
    return out;
  }

  /// Matrix given as an array of rows; `cols` fixes the width of an empty one.
  Matrix matrix(Eigen::Index cols = -1, bool allow_empty = false) const {
    const auto r = rows(allow_empty);
    if (r.empty()) return Matrix(0, std::max<Eigen::Index>(cols, 0));
    if (cols >= 0 && r.front().size() != cols) {
      fail("expected rows of length " + std::to_string(cols) + ", got " + std::to_string(r.front().size()));
    }
    return stack_rows(r, r.front().size());
  }

 private:
  const json* j_;
  std::string path_;
};

inline void check_length(const Node& node, const Vector& v, Eigen::Index expected) {
  if (v.size() != expected) {
    node.fail("expected length " + std::to_string(expected) + ", got " + std::to_string(v.size()));
  }
}

inline Norm parse_norm(const Node& node) {
  node.expect_object({"p", "weights"});
  Norm norm;
  const Node p = node.at("p");
  if (p.raw().is_string()) {
    const std::string s = p.string();
    if (s != "inf") p.fail("p must be 1, 2 or \"inf\"");
    norm.p = Norm::P::kInf;
  } else {
    const double v = p.number();
    if (v == 1.0) {
      norm.p = Norm::P::kOne;
    } else if (v == 2.0) {
      norm.p = Norm::P::kTwo;
    } else {
      p.fail("p must be 1, 2 or \"inf\"");
    }
  }
  if (auto w = node.find("weights")) {
    norm.weights = w->vector();
    if (norm.weights.minCoeff() <= 0.0) w->fail("norm weights must be strictly positive");
  }
  return norm;
}

inline PolyhedralCone parse_cone(const Node& node, const Config& cfg) {
  const std::string kind = node.at("kind").string();
  try {
    if (kind == "coordinate") {
      node.expect_object({"kind", "dim"});
      const long long dim = node.at("dim").integer();
      if (dim < 1) node.at("dim").fail("dimension must be positive");
      return PolyhedralCone::coordinate(static_cast<Eigen::Index>(dim));
    }
    if (kind == "weighted-coordinate") {
      node.expect_object({"kind", "weights"});
      return PolyhedralCone::weighted_coordinate(node.at("weights").vector());
    }
    if (kind == "general") {
      node.expect_object({"kind", "halfspaces", "generators"});
      const auto hs = node.find("halfspaces");
      const auto gs = node.find("generators");
      if (!hs && !gs) node.fail("a general cone needs halfspaces, generators or both");
      if (hs && gs) return PolyhedralCone::from_halfspaces(hs->matrix(), gs->matrix(), cfg);
      if (hs) return PolyhedralCone::from_halfspaces(hs->matrix(), std::nullopt, cfg);
      return PolyhedralCone::from_generators(gs->matrix(), std::nullopt, cfg);
    }
  } catch (const InputError& err) {
    const std::string msg = err.what();
    if (msg.rfind(node.path(), 0) == 0) throw;
    throw InputError(node.path() + ": " + msg);
  } catch (const UnsupportedRepresentation& err) {
    throw UnsupportedRepresentation(node.path() + ": " + err.what());
  }
  node.at("kind").fail("unknown cone kind \"" + kind + "\" (expected coordinate, weighted-coordinate or general)");
}

inline GaugeBlock parse_gauge(const Node& node) {
  node.expect_object({"u", "v"});
  GaugeBlock b;
  b.u = node.at("u").vector();
  if (auto v = node.find("v")) {
    b.v = v->vector();
    check_length(*v, *b.v, b.u.size());
  }
  return b;
}

inline ScalarizeBlock parse_scalarize(const Node& node) {
  node.expect_object({"e"});
  return {node.at("e").vector()};
}

inline std::vector<Vector> parse_grid(const Node& node) {
  node.expect_object({"lower", "upper", "step"});
  const Vector lo = node.at("lower").vector();
  const Vector hi = node.at("upper").vector();
  check_length(node.at("upper"), hi, lo.size());
  const Node step_node = node.at("step");
  Vector step = step_node.raw().is_array() ? step_node.vector() : Vector::Constant(lo.size(), step_node.number());
  check_length(step_node, step, lo.size());
  if (step.minCoeff() <= 0.0) step_node.fail("grid step must be positive");
  if ((hi - lo).minCoeff() < 0.0) node.fail("grid needs lower <= upper");
  std::vector<long long> counts;
  double total = 1.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    counts.push_back(static_cast<long long>(std::floor((hi(i) - lo(i)) / step(i) + 1e-9)) + 1);
    total *= static_cast<double>(counts.back());
  }
  constexpr double kMaxGround = 5000.0;
  if (total > kMaxGround) node.fail("grid has " + std::to_string(static_cast<long long>(total)) + " points (limit 5000)");
  std::vector<Vector> pts;
  std::vector<long long> idx(counts.size(), 0);
  for (;;) {
    Vector x(lo.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      x(k) = lo(k) + static_cast<double>(idx[i]) * step(k);
    }
    pts.push_back(x);
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == counts[d]) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return pts;
}

inline PenaltyObjective parse_objective(const Node& node, std::size_t ground_size, Eigen::Index dim) {
  const std::string kind = node.at("kind").string();
  PenaltyObjective obj;
  if (kind == "affine" || kind == "abs_affine") {
    node.expect_object({"kind", "A", "b"});
    obj.kind = kind == "affine" ? PenaltyObjective::Kind::kAffine : PenaltyObjective::Kind::kAbsAffine;
    obj.a = node.at("A").matrix(dim);
    obj.b = node.at("b").vector();
    check_length(node.at("b"), obj.b, obj.a.rows());
  } else if (kind == "table") {
    node.expect_object({"kind", "values"});
    obj.kind = PenaltyObjective::Kind::kTable;
    obj.table = node.at("values").rows();
    if (obj.table.size() != ground_size) {
      node.at("values").fail("expected one value per ground point (" + std::to_string(ground_size) + "), got " +
                             std::to_string(obj.table.size()));
    }
  } else {
    node.at("kind").fail("unknown objective kind \"" + kind + "\" (expected affine, abs_affine or table)");
  }
  return obj;
}

inline PenaltyBlock parse_penalty(const Node& node) {
  node.expect_object({"ground_set", "feasible", "objective", "e", "rank"});
  PenaltyBlock b;
  const Node gs = node.at("ground_set");
  gs.expect_object({"points", "grid"});
  if (gs.has("points") == gs.has("grid")) gs.fail("give exactly one of \"points\" or \"grid\"");
  b.ground = gs.has("points") ? gs.at("points").rows() : parse_grid(gs.at("grid"));
  const Eigen::Index d = b.ground.front().size();

  const Node fs = node.at("feasible");
  fs.expect_object({"indices", "box"});
  if (fs.has("indices") == fs.has("box")) fs.fail("give exactly one of \"indices\" or \"box\"");
  if (fs.has("indices")) {
    for (const auto& el : fs.at("indices").elements()) {
      const long long i = el.integer();
      if (i < 0 || static_cast<std::size_t>(i) >= b.ground.size()) {
        el.fail("index " + std::to_string(i) + " outside the ground set of size " + std::to_string(b.ground.size()));
      }
      b.feasible.push_back(static_cast<std::size_t>(i));
    }
  } else {
    const Node box = fs.at("box");
    box.expect_object({"lower", "upper"});
    const Vector lo = box.at("lower").vector();
    const Vector hi = box.at("upper").vector();
    check_length(box.at("lower"), lo, d);
    check_length(box.at("upper"), hi, d);
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 0; i < b.ground.size(); ++i) {
      const Vector& x = b.ground[i];
      if ((x - lo).minCoeff() >= -kSlack && (hi - x).minCoeff() >= -kSlack) b.feasible.push_back(i);
    }
  }
  if (b.feasible.empty()) fs.fail("feasible set is empty");

  b.objective = parse_objective(node.at("objective"), b.ground.size(), d);
  const Eigen::Index m =
      b.objective.kind == PenaltyObjective::Kind::kTable ? b.objective.table.front().size() : b.objective.a.rows();
  b.e = node.at("e").vector();
  check_length(node.at("e"), b.e, m);
  const double len = b.e.norm();
  if (len <= 0.0) node.at("e").fail("e must be nonzero");
  if (std::abs(len - 1.0) > 1e-12) {
    b.e /= len;
    b.e_normalized = true;
  }
  if (auto r = node.find("rank")) {
    b.rank = r->number();
    if (*b.rank < 0.0) r->fail("rank must be nonnegative");
  }
  return b;
}

inline DualityBlock parse_duality(const Node& node) {
  node.expect_object({"Q", "q", "c", "G", "g0", "H", "h0", "lower", "upper", "e"});
  DualityBlock b;
  BoxProgram& p = b.program;
  p.q = node.at("q").vector();
  const Eigen::Index n = p.q.size();
  p.Q = node.has("Q") ? node.at("Q").matrix(n) : Matrix(Matrix::Zero(n, n));
  if (p.Q.rows() != n) node.at("Q").fail("expected " + std::to_string(n) + " rows");
  if (auto c = node.find("c")) p.c = c->number();
  if (node.has("G") != node.has("g0")) node.fail("G and g0 must be given together");
  if (node.has("G")) {
    p.G = node.at("G").matrix(n, true);
    p.g0 = node.at("g0").vector(true);
    check_length(node.at("g0"), p.g0, p.G.rows());
  }
  if (node.has("H") != node.has("h0")) node.fail("H and h0 must be given together");
  if (node.has("H")) {
    p.H = node.at("H").matrix(n, true);
    p.h0 = node.at("h0").vector(true);
    check_length(node.at("h0"), p.h0, p.H.rows());
  }
  p.lower = node.at("lower").vector();
  p.upper = node.at("upper").vector();
  check_length(node.at("lower"), p.lower, n);
  check_length(node.at("upper"), p.upper, n);
  if (p.m() > 0) {
    b.e = node.at("e").vector();
    check_length(node.at("e"), b.e, p.m());
  } else if (node.has("e")) {
    node.at("e").fail("e given but the program has no cone constraint");
  }
  return b;
}

inline CertifyBlock parse_certify(const Node& node) {
  node.expect_object({"components", "lower", "upper", "e"});
  CertifyBlock b;
  const auto comps = node.at("components").elements();
  if (comps.empty()) node.at("components").fail("expected at least one component");
  b.lower = node.at("lower").vector();
  const Eigen::Index n = b.lower.size();
  b.upper = node.at("upper").vector();
  check_length(node.at("upper"), b.upper, n);
  const auto m = static_cast<Eigen::Index>(comps.size());
  QuadraticMap& f = b.objective;
  f.lin = Matrix::Zero(m, n);
  f.constant = Vector::Zero(m);
  bool any_quad = false;
  for (const auto& c : comps) any_quad = any_quad || c.has("Q");
  for (Eigen::Index i = 0; i < m; ++i) {
    const Node& c = comps[static_cast<std::size_t>(i)];
    c.expect_object({"Q", "q", "c"});
    const Vector qi = c.at("q").vector();
    check_length(c.at("q"), qi, n);
    f.lin.row(i) = qi.transpose();
    if (auto ci = c.find("c")) f.constant(i) = ci->number();
    if (any_quad) {
      Matrix qm = c.has("Q") ? c.at("Q").matrix(n) : Matrix(Matrix::Zero(n, n));
      if (qm.rows() != n) c.at("Q").fail("expected " + std::to_string(n) + " rows");
      f.quad.push_back(std::move(qm));
    }
  }
  b.e = node.at("e").vector();
  check_length(node.at("e"), b.e, m);
  return b;
}

inline LatticeBlock parse_lattice(const Node& node) {
  node.expect_object({"a", "b"});
  LatticeBlock b;
  b.a = node.at("a").rows();
  b.b = node.at("b").rows();
  if (b.a.front().size() != b.b.front().size()) node.at("b").fail("polytopes live in different dimensions");
  return b;
}

// Dimension the cone must have for the given block.
inline Eigen::Index cone_dim_for(const ProblemBlock& block) {
  struct Visitor {
    Eigen::Index operator()(const GaugeBlock& b) const { return b.u.size(); }
    Eigen::Index operator()(const ScalarizeBlock& b) const { return b.e.size(); }
    Eigen::Index operator()(const PenaltyBlock& b) const { return b.e.size(); }
    Eigen::Index operator()(const DualityBlock& b) const { return b.program.m(); }
    Eigen::Index operator()(const CertifyBlock& b) const { return b.e.size(); }
    Eigen::Index operator()(const LatticeBlock&) const { return -1; }
  };
  return std::visit(Visitor{}, block);
}

}  // namespace detail

/// Validates a parsed JSON document. Diagnostics name the offending key by
/// its path from the document root `$`.
inline ProblemFile parse_problem_json(const json& doc, const Config& cfg = Config{}) {
  const detail::Node root(doc, "$");
  root.expect_object({"version", "norm", "cone", "gauge", "scalarize", "penalty", "duality", "certify", "lattice"});
  ProblemFile pf;
  const long long version = root.at("version").integer();
  if (version != kProblemVersion) {
    root.at("version").fail("unsupported version " + std::to_string(version) + " (expected " +
                            std::to_string(kProblemVersion) + ")");
  }
  pf.version = static_cast<int>(version);
  if (auto n = root.find("norm")) pf.norm = detail::parse_norm(*n);

  int blocks = 0;
  for (const char* key : {"gauge", "scalarize", "penalty", "duality", "certify", "lattice"}) {
    if (root.has(key)) {
      ++blocks;
      pf.block_name = key;
    }
  }
  if (blocks != 1) {
    root.fail("expected exactly one program block (gauge, scalarize, penalty, duality, certify, lattice), found " +
              std::to_string(blocks));
  }
  const detail::Node body = root.at(pf.block_name.c_str());
  if (pf.block_name == "gauge") pf.block = detail::parse_gauge(body);
  if (pf.block_name == "scalarize") pf.block = detail::parse_scalarize(body);
  if (pf.block_name == "penalty") pf.block = detail::parse_penalty(body);
  if (pf.block_name == "duality") pf.block = detail::parse_duality(body);
  if (pf.block_name == "certify") pf.block = detail::parse_certify(body);
  if (pf.block_name == "lattice") pf.block = detail::parse_lattice(body);

  const Eigen::Index need = detail::cone_dim_for(pf.block);
  if (auto c = root.find("cone")) {
    if (need < 0) c->fail("a cone is not used by the " + pf.block_name + " block");
    if (need == 0) c->fail("a cone is given but the program has no cone constraint");
    pf.cone = detail::parse_cone(*c, cfg);
    if (pf.cone->dim() != need) {
      c->fail("cone dimension " + std::to_string(pf.cone->dim()) + " does not match the " + pf.block_name +
              " block dimension " + std::to_string(need));
    }
  }
  if (pf.norm.weights.size() != 0) {
    Eigen::Index ambient = -1;
    if (const auto* g = std::get_if<GaugeBlock>(&pf.block)) ambient = g->u.size();
    if (const auto* s = std::get_if<ScalarizeBlock>(&pf.block)) ambient = s->e.size();
    if (const auto* p = std::get_if<PenaltyBlock>(&pf.block)) ambient = p->ground.front().size();
    if (const auto* l = std::get_if<LatticeBlock>(&pf.block)) ambient = l->a.front().size();
    if (ambient >= 0 && pf.norm.weights.size() != ambient) {
      root.at("norm").at("weights").fail("expected " + std::to_string(ambient) + " weights, got " +
                                         std::to_string(pf.norm.weights.size()));
    }
  }
  if (auto* d = std::get_if<DualityBlock>(&pf.block)) {
    if (pf.cone) d->program.y_cone = pf.cone;
    try {
      d->program.validate(cfg);
    } catch (const InputError& err) {
      throw InputError("$.duality: " + std::string(err.what()));
    }
  }
  if (auto* c = std::get_if<CertifyBlock>(&pf.block)) {
    try {
      c->objective.validate();
    } catch (const InputError& err) {
      throw InputError("$.certify: " + std::string(err.what()));
    }
  }
  return pf;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& err) {
    throw InputError(path + ": malformed JSON: " + err.what());
  }
}

inline ProblemFile parse_problem(const std::string& path, const Config& cfg = Config{}) {
  const json doc = read_json_file(path);
  try {
    return parse_problem_json(doc, cfg);
  } catch (const InputError& err) {
    throw InputError(path + ": " + err.what());
  } catch (const UnsupportedRepresentation& err) {
    throw UnsupportedRepresentation(path + ": " + err.what());
  }
}

/// Vertex array `[[x, y], ...]` or `{"vertices": [[...], ...]}`.
inline VertexList parse_vertices(const json& doc, const std::string& where) {
  const detail::Node root(doc, "$");
  try {
    if (doc.is_object()) {
      root.expect_object({"vertices"});
      return root.at("vertices").rows();
    }
    return root.rows();
  } catch (const InputError& err) {
    throw InputError(where + ": " + err.what());
  }
}

/// Objective map of a penalty block as a callable on the ground set.
inline VectorFn penalty_objective_fn(const PenaltyBlock& b) {
  const PenaltyObjective& obj = b.objective;
  switch (obj.kind) {
    case PenaltyObjective::Kind::kAffine:
      return [a = obj.a, c = obj.b](const Vector& x) -> Vector { return a * x + c; };
    case PenaltyObjective::Kind::kAbsAffine:
      return [a = obj.a, c = obj.b](const Vector& x) -> Vector { return (a * x + c).cwiseAbs(); };
    default:
      return [ground = b.ground, table = obj.table](const Vector& x) -> Vector {
        for (std::size_t i = 0; i < ground.size(); ++i) {
          if (ground[i] == x) return table[i];
        }
        throw DomainError("table objective evaluated off the ground set");
      };
  }
}

}  // namespace conegen::io
