#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conegen/demos.hpp"
#include "conegen/duality.hpp"
#include "conegen/gauge.hpp"
#include "conegen/io/problem.hpp"
#include "conegen/io/report.hpp"
#include "conegen/lattice.hpp"
#include "conegen/penalty.hpp"
#include "conegen/scalarization.hpp"

namespace conegen::cli {

using io::json;

/// Parsed command line.
struct Invocation {
  std::string command;  // "gauge", ..., "demo torsion", "demo vi"
  std::string problem;
  std::string point;
  std::optional<double> lambda;
  int grid = 12;
  std::uint64_t seed = 0;
  std::string a_path;
  std::string b_path;
  std::optional<double> tol_override;
};

struct Outcome {
  io::ReportStatus status = io::ReportStatus::kOk;
  json result = json::object();
  std::string summary;
};

/// Comma-separated coordinates, optionally wrapped in brackets.
inline Vector parse_point(std::string text) {
  if (!text.empty() && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("--point: empty coordinate in \"" + text + "\"");
    const std::string tok = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
      throw InputError("--point: \"" + tok + "\" is not a finite number");
    }
    vals.push_back(v);
  }
  if (vals.empty()) throw InputError("--point: no coordinates given");
  return vec(vals);
}

namespace detail {

inline const io::ProblemFile& need_block(const io::ProblemFile& pf, const char* block, const std::string& command) {
  if (pf.block_name != block) {
    throw InputError(command + " needs a \"" + block + "\" block, the problem file has \"" + pf.block_name + "\"");
  }
  return pf;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

inline std::string fmt(const Extended& v) { return v.finite() ? fmt(v.value()) : v.to_string(); }

inline json indices_json(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(i);
  return a;
}

inline json points_json(const std::vector<std::size_t>& idx, const std::vector<Vector>& pts) {
  json a = json::array();
  for (auto i : idx) a.push_back(io::to_json(pts[i]));
  return a;
}

inline json farkas_json(const numkernel::FarkasCertificate& f) {
  return json{{"ineq", io::to_json(f.ineq)},
              {"eq", io::to_json(f.eq)},
              {"lower", io::to_json(f.lower)},
              {"upper", io::to_json(f.upper)}};
}

inline json multipliers_json(const Multipliers& m) {
  return json{{"y", io::to_json(m.y)}, {"x1", io::to_json(m.x1)}, {"x2", io::to_json(m.x2)}, {"z", io::to_json(m.z)}};
}

inline json certificate_json(const StationarityCertificate& c) {
  json active = json::array();
  for (int a : c.active) active.push_back(a);
  json out{{"certified", c.certified},
           {"reason", c.reason},
           {"active", active},
           {"slack", c.slack},
           {"jacobian", io::to_json(c.jacobian)}};
  if (c.certified) {
    out["y"] = io::to_json(c.y);
    out["cone_coefficients"] = io::to_json(c.cone_coefficients);
    out["normal"] = io::to_json(c.normal);
  } else {
    out["farkas"] = farkas_json(c.farkas);
    out["farkas_verified"] = c.farkas_verified;
  }
  return out;
}

inline Outcome run_gauge(const Invocation& inv, const Config& cfg) {
  const auto pf = io::parse_problem(inv.problem, cfg);
  const auto& blk = std::get<io::GaugeBlock>(need_block(pf, "gauge", inv.command).block);
  if (inv.point.empty()) throw InputError("gauge needs --point");
  const Vector x = parse_point(inv.point);
  const PolyhedralCone cone = pf.cone_or_orthant(blk.u.size());
  const GaugeBody body(cone, blk.u);
  const Extended value = order_interval_gauge(body, x, GaugePath::kAuto, cfg);
  const Extended lp_value = order_interval_gauge(body, x, GaugePath::kLinearProgram, cfg);
  Outcome o;
  o.result = json{{"point", io::to_json(x)},
                  {"u", io::to_json(blk.u)},
                  {"cone", to_string(cone.kind())},
                  {"value", io::to_json(value)},
                  {"path", body.closed_form() ? "closed-form" : "linear-program"},
                  {"lp_value", io::to_json(lp_value)}};
  o.summary = "|x|_u = " + fmt(value);
  if (cone.is_coordinate_like()) {
    const Vector img = linfty_isometry(blk.u, x);
    o.result["isometry_image"] = io::to_json(img);
    o.result["isometry_sup_norm"] = img.cwiseAbs().maxCoeff();
    o.summary += ", isometry image sup-norm " + fmt(img.cwiseAbs().maxCoeff());
  }
  if (blk.v) {
    const EquivalenceReport eq = equivalence_report(cone, blk.u, *blk.v, cfg);
    o.result["equivalence"] = json{{"c", eq.c},
                                   {"v_in_u", eq.v_in_u},
                                   {"u_in_v", eq.u_in_v},
                                   {"witness", io::to_json(eq.witness)},
                                   {"tightness_residual", eq.tightness_residual}};
    o.summary += ", equivalence constant " + fmt(eq.c);
  }
  return o;
}

inline Outcome run_scalarize(const Invocation& inv, const Config& cfg, bool subdiff) {
  const auto pf = io::parse_problem(inv.problem, cfg);
  const auto& blk = std::get<io::ScalarizeBlock>(need_block(pf, "scalarize", inv.command).block);
  if (inv.point.empty()) throw InputError(inv.command + " needs --point");
  const Vector y = parse_point(inv.point);
  const GerstewitzFn fn(pf.cone_or_orthant(blk.e.size()), blk.e);
  Outcome o;
  if (!subdiff) {
    const Extended phi = gerstewitz_value(fn, y, ScalarizationPath::kAuto, cfg);
    o.result = json{{"point", io::to_json(y)},
                    {"e", io::to_json(blk.e)},
                    {"interior_direction", fn.interior_direction()},
                    {"phi", io::to_json(phi)}};
    o.summary = "phi(y) = " + fmt(phi);
    return o;
  }
  const Subdifferential sd = gerstewitz_subdifferential(fn, y, cfg);
  bool verified = subdifferential_contains(fn, y, sd.element, cfg.tol.membership, cfg);
  for (const auto& v : sd.vertices) verified = verified && subdifferential_contains(fn, y, v, cfg.tol.membership, cfg);
  o.result = json{{"point", io::to_json(y)},
                  {"phi", sd.phi},
                  {"exact", sd.exact},
                  {"vertices", io::to_json(sd.vertices)},
                  {"rays", io::to_json(sd.rays)},
                  {"element", io::to_json(sd.element)},
                  {"verified", verified}};
  o.summary = sd.exact ? "subdifferential: " + std::to_string(sd.vertices.size()) + " vertices, " +
                             std::to_string(sd.rays.size()) + " rays"
                       : "subdifferential element found (membership oracle certificate)";
  if (!verified) {
    o.status = io::ReportStatus::kVerificationFailure;
    o.summary += "; membership re-check FAILED";
  }
  return o;
}

struct PenaltySetup {
  io::PenaltyBlock block;
  PolyhedralCone cone;
  std::vector<Vector> values;
  double rank = 0.0;
  bool measured = false;
};

inline PenaltySetup penalty_setup(const io::ProblemFile& pf, const std::string& command) {
  const auto& blk = std::get<io::PenaltyBlock>(need_block(pf, "penalty", command).block);
  PenaltySetup s{blk, pf.cone_or_orthant(blk.e.size()), {}, 0.0, false};
  const VectorFn f = io::penalty_objective_fn(blk);
  for (const auto& x : blk.ground) s.values.push_back(f(x));
  if (blk.rank) {
    s.rank = *blk.rank;
  } else {
    const GerstewitzFn fn(s.cone, blk.e);
    require(fn.interior_direction(), "penalty: e must be interior to the cone");
    const LipschitzRank r = cone_lipschitz_rank(blk.ground, s.values, fn, pf.norm);
    if (!r.rank.finite()) {
      throw InputError("penalty: objective takes different values at coincident ground points " +
                       std::to_string(r.arg_x) + " and " + std::to_string(r.arg_y));
    }
    s.rank = r.rank.value();
    s.measured = true;
  }
  return s;
}

inline Outcome run_penalize(const Invocation& inv, const Config& cfg) {
  const auto pf = io::parse_problem(inv.problem, cfg);
  PenaltySetup s = penalty_setup(pf, inv.command);
  if (!inv.lambda) throw InputError("penalize needs --L");
  const PenaltyInstance inst(s.block.ground, s.block.feasible, io::penalty_objective_fn(s.block), s.cone, s.block.e,
                             s.rank, pf.norm, Norm::two(), cfg);
  const PenaltyReport rep = verify_penalty_equivalence(inst, *inv.lambda, cfg);
  Outcome o;
  o.result = json{{"L", rep.lambda},
                  {"rank", rep.rank},
                  {"rank_source", s.measured ? "measured on the ground set" : "declared"},
                  {"e", io::to_json(s.block.e)},
                  {"e_normalized", s.block.e_normalized},
                  {"minimal_constrained", indices_json(rep.sets.constrained)},
                  {"minimal_penalized", indices_json(rep.sets.penalized)},
                  {"minimal_constrained_points", points_json(rep.sets.constrained, s.block.ground)},
                  {"minimal_penalized_points", points_json(rep.sets.penalized, s.block.ground)},
                  {"equal", rep.equal},
                  {"minimal_penalized_at_rank", indices_json(rep.at_rank.penalized)},
                  {"inclusion_at_rank", rep.inclusion_at_rank},
                  {"tolerance_sensitive", rep.tolerance_sensitive}};
  o.summary = "L = " + fmt(rep.lambda) + " > rank " + fmt(rep.rank) + ": " +
              std::to_string(rep.sets.constrained.size()) + " constrained / " +
              std::to_string(rep.sets.penalized.size()) + " penalized minimizers, sets " +
              (rep.equal ? "equal" : "DIFFER");
  if (s.block.e_normalized) o.summary += " (e normalized)";
  if (rep.tolerance_sensitive) o.summary += " (tolerance-sensitive)";
  if (!rep.equal || !rep.inclusion_at_rank) o.status = io::ReportStatus::kVerificationFailure;
  return o;
}

inline Outcome run_minimal(const Invocation& inv, const Config& cfg) {
  const auto pf = io::parse_problem(inv.problem, cfg);
  const auto& blk = std::get<io::PenaltyBlock>(need_block(pf, "penalty", inv.command).block);
  const PolyhedralCone cone = pf.cone_or_orthant(blk.e.size());
  const VectorFn f = io::penalty_objective_fn(blk);
  std::vector<Vector> fv;
  for (auto i : blk.feasible) fv.push_back(f(blk.ground[i]));
  std::vector<std::size_t> idx;
  json values = json::array();
  for (auto k : cone_minimal_points(fv, cone, cfg.tol.membership, cfg.tol.strict_norm)) {
    idx.push_back(blk.feasible[k]);
    values.push_back(io::to_json(fv[k]));
  }
  Outcome o;
  o.result = json{{"minimal", indices_json(idx)}, {"points", points_json(idx, blk.ground)}, {"values", values}};
  o.summary = std::to_string(idx.size()) + " cone-minimal points among " + std::to_string(blk.feasible.size()) +
              " feasible";
  return o;
}

inline json slater_json(const SlaterResult& s) {
  json out{{"holds", s.holds},
           {"margin", s.margin},
           {"lambda", s.lambda},
           {"neighborhood", s.neighborhood},
           {"h_rank", s.h_rank},
           {"interior_slack", s.interior_slack},
           {"diagnosis", s.diagnosis}};
  if (s.witness.size() > 0) out["witness"] = io::to_json(s.witness);
  return out;
}

inline json gap_json(const GapReport& g) {
  json out{{"primal", io::to_json(g.primal)},
           {"dual", io::to_json(g.dual)},
           {"gap", io::to_json(g.gap)},
           {"asserted", g.asserted},
           {"verified", g.verified},
           {"tolerance", g.tolerance},
           {"slater", slater_json(g.slater)},
           {"dual_status", to_string(g.dual_solution.status)}};
  if (g.primal_solution.feasible) {
    out["primal_solution"] = json{{"x", io::to_json(g.primal_solution.x)},
                                  {"multipliers", multipliers_json(g.primal_solution.multipliers)},
                                  {"kkt_residual", g.primal_solution.kkt_residual}};
  } else {
    out["primal_infeasibility"] = farkas_json(g.primal_solution.farkas);
  }
  if (g.dual_solution.status == DualStatus::kOptimal) {
    out["dual_multipliers"] = multipliers_json(g.dual_solution.multipliers);
  }
  if (g.slater.holds) {
    out["lift"] = json{{"pi", io::to_json(g.lift.pi)},
                       {"e_prime", io::to_json(g.lift.e_prime)},
                       {"e_prime_interior", g.lift.e_prime_interior}};
  }
  return out;
}

inline Outcome run_duality(const Invocation& inv, const Config& cfg) {
  const auto pf = io::parse_problem(inv.problem, cfg);
  const auto& blk = std::get<io::DualityBlock>(need_block(pf, "duality", inv.command).block);
  const GapReport g = duality_gap_report(blk.program, blk.e, cfg);
  Outcome o;
  o.result = gap_json(g);
  o.summary = "primal " + fmt(g.primal) + ", dual " + fmt(g.dual) + ", gap " + fmt(g.gap) + "; modified Slater " +
              (g.slater.holds ? "holds" : "fails") + (g.asserted ? ", zero gap asserted" : ", no assertion");
  if (!g.verified) {
    o.status = io::ReportStatus::kVerificationFailure;
    o.summary += "; gap EXCEEDS tolerance";
  }
  return o;
}

inline Outcome run_certify(const Invocation& inv, const Config& cfg) {
  const auto pf = io::parse_problem(inv.problem, cfg);
  const auto& blk = std::get<io::CertifyBlock>(need_block(pf, "certify", inv.command).block);
  if (inv.point.empty()) throw InputError("certify needs --point");
  const Vector x = parse_point(inv.point);
  const StationarityCertificate c =
      stationarity_certificate(blk.objective, pf.cone_or_orthant(blk.e.size()), blk.lower, blk.upper, x, blk.e, cfg);
  Outcome o;
  o.result = certificate_json(c);
  o.result["point"] = io::to_json(x);
  o.summary = c.certified ? "necessary condition certified" : "certificate refused: " + c.reason;
  if (!c.certified && !c.farkas_verified) {
    o.status = io::ReportStatus::kVerificationFailure;
    o.summary += "; Farkas certificate does not verify";
  }
  return o;
}

inline Outcome run_hausdorff(const Invocation& inv, const Config& cfg) {
  VertexList a;
  VertexList b;
  Norm norm = Norm::two();
  if (!inv.problem.empty()) {
    if (!inv.a_path.empty() || !inv.b_path.empty()) throw InputError("hausdorff takes --problem or --a/--b, not both");
    const auto pf = io::parse_problem(inv.problem, cfg);
    const auto& blk = std::get<io::LatticeBlock>(need_block(pf, "lattice", inv.command).block);
    a = blk.a;
    b = blk.b;
    norm = pf.norm;
  } else {
    if (inv.a_path.empty() || inv.b_path.empty()) throw InputError("hausdorff needs --a and --b (or --problem)");
    a = io::parse_vertices(io::read_json_file(inv.a_path), inv.a_path);
    b = io::parse_vertices(io::read_json_file(inv.b_path), inv.b_path);
  }
  const HausdorffResult h = hausdorff_distance(a, b, norm);
  const IsometryReport iso = verify_order_isometry(a, b, norm, 1024, cfg);
  Outcome o;
  o.result = json{{"norm", norm.name()},
                  {"distance", h.distance},
                  {"exact", h.exact},
                  {"direction", io::to_json(h.direction)},
                  {"certificate_directions", io::to_json(h.directions)},
                  {"resolution_bound", h.resolution_bound},
                  {"isometry",
                   json{{"definitional_distance", iso.hausdorff},
                        {"discrepancy", iso.discrepancy},
                        {"allowance", iso.allowance},
                        {"holds", iso.isometry_holds},
                        {"a_in_b", iso.a_in_b},
                        {"b_in_a", iso.b_in_a},
                        {"order_preserved", iso.order_preserved}}}};
  if (!h.exact) o.result["covering_radius"] = h.covering_radius;
  o.summary = "d_H = " + fmt(h.distance) + (h.exact ? " (exact)" : " (sampled, +" + fmt(h.resolution_bound) + ")");
  if (!iso.isometry_holds || !iso.order_preserved) {
    o.status = io::ReportStatus::kVerificationFailure;
    o.summary += "; isometry check FAILED";
  }
  return o;
}

inline Outcome run_torsion(const Invocation& inv, const Config& cfg) {
  const demos::TorsionReport r = demos::torsion_demo(inv.grid, 4.0, cfg);
  Outcome o;
  o.result = json{{"grid", r.grid},
                  {"h", r.h},
                  {"load", r.load},
                  {"value", r.primal.value},
                  {"u", io::to_json(r.primal.x)},
                  {"oracle_value", r.oracle.value},
                  {"oracle_tau", r.oracle.tau},
                  {"oracle_error", r.oracle_error},
                  {"kkt_residual", r.primal.kkt_residual},
                  {"linear_gap", gap_json(r.linear_gap)},
                  {"kkt_multipliers", io::to_json(r.kkt_multipliers)},
                  {"kkt_dual_value", r.kkt_dual_value},
                  {"ascent_dual_value", r.ascent_dual_value},
                  {"ascent_iterations", r.ascent_iterations},
                  {"ascent_converged", r.ascent_converged},
                  {"displayed_gap", r.displayed_gap},
                  {"bump_height", r.bump_height},
                  {"bump_max_constraint", r.bump_max_constraint},
                  {"bump_strictly_feasible", r.bump_strictly_feasible},
                  {"pass", r.pass}};
  o.summary = "torsion n = " + std::to_string(r.grid) + ": value " + fmt(r.primal.value) + ", oracle error " +
              fmt(r.oracle_error) + ", dual gap " + fmt(r.displayed_gap) + (r.pass ? ", PASS" : ", FAIL");
  if (!r.pass) o.status = io::ReportStatus::kVerificationFailure;
  return o;
}

inline Outcome run_vi(const Invocation& inv, const Config& cfg) {
  const demos::VIReport r = demos::vi_demo(6, inv.seed, 2000, cfg);
  Outcome o;
  o.result = json{{"seed", inv.seed},
                  {"x", io::to_json(r.x)},
                  {"vi_residual", r.vi_residual},
                  {"certificate", certificate_json(r.certificate)},
                  {"samples", r.samples},
                  {"violations", r.violations},
                  {"pass", r.pass}};
  o.summary = "VI seed " + std::to_string(inv.seed) + ": certificate " +
              (r.certificate.certified ? "found" : "refused") + ", " + std::to_string(r.violations) +
              " sampled violations" + (r.pass ? ", PASS" : ", FAIL");
  if (!r.pass) o.status = io::ReportStatus::kVerificationFailure;
  return o;
}

inline Outcome dispatch(const Invocation& inv, const Config& cfg) {
  const std::string& c = inv.command;
  if (c == "gauge") return run_gauge(inv, cfg);
  if (c == "scalarize") return run_scalarize(inv, cfg, false);
  if (c == "subdiff") return run_scalarize(inv, cfg, true);
  if (c == "penalize") return run_penalize(inv, cfg);
  if (c == "minimal") return run_minimal(inv, cfg);
  if (c == "duality") return run_duality(inv, cfg);
  if (c == "certify") return run_certify(inv, cfg);
  if (c == "hausdorff") return run_hausdorff(inv, cfg);
  if (c == "demo torsion") return run_torsion(inv, cfg);
  if (c == "demo vi") return run_vi(inv, cfg);
  throw InputError("unknown command \"" + c + "\"");
}

}  // namespace detail

/// Runs one command. Writes the JSON report to `out` and a one-line summary
/// to `err`; returns 0 (success), 1 (verification failure) or 2 (input error).
inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"Cone-ordered optimization toolkit", "conegen"};
  app.require_subcommand(1, 1);
  Invocation inv;

  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol-override", inv.tol_override, "Absolute membership tolerance (overrides CONEGEN_TOL)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_problem = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--problem", inv.problem, "Problem file (JSON)");
    if (required) opt->required();
  };
  auto add_point = [&](CLI::App* sub) { sub->add_option("--point", inv.point, "Point as \"x1,x2,...\"")->required(); };

  auto* gauge = app.add_subcommand("gauge", "Order-interval gauge of a point");
  add_problem(gauge, true);
  add_point(gauge);
  auto* scal = app.add_subcommand("scalarize", "Gerstewitz scalarization of a point");
  add_problem(scal, true);
  add_point(scal);
  auto* sub = app.add_subcommand("subdiff", "Subdifferential of the scalarization");
  add_problem(sub, true);
  add_point(sub);
  auto* pen = app.add_subcommand("penalize", "Exact-penalty equivalence check");
  add_problem(pen, true);
  pen->add_option("--L", inv.lambda, "Penalty parameter")->required();
  auto* mini = app.add_subcommand("minimal", "Cone-minimal points over the feasible set");
  add_problem(mini, true);
  auto* dual = app.add_subcommand("duality", "Lagrange duality gap report");
  add_problem(dual, true);
  auto* cert = app.add_subcommand("certify", "Stationarity certificate at a point");
  add_problem(cert, true);
  add_point(cert);
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance of two polytopes");
  add_problem(haus, false);
  haus->add_option("--a", inv.a_path, "First polytope (JSON vertex array)");
  haus->add_option("--b", inv.b_path, "Second polytope (JSON vertex array)");
  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  demo->require_subcommand(1, 1);
  auto* torsion = demo->add_subcommand("torsion", "Elastoplastic torsion duality demo");
  torsion->add_option("--grid", inv.grid, "Interior grid points")->check(CLI::Range(2, 400));
  auto* vi = demo->add_subcommand("vi", "Vector variational inequality demo");
  vi->add_option("--seed", inv.seed, "Instance seed");
  for (auto* s : {gauge, scal, sub, pen, mini, dual, cert, haus, torsion, vi}) add_tol(s);

  Config cfg;
  auto emit = [&](io::ReportStatus status, json result, const std::string& summary) {
    const std::string name = inv.command.empty() ? "conegen" : inv.command;
    out << io::dump_report(io::make_report(name, status, std::move(result), summary, cfg));
    err << (inv.command.empty() ? "conegen" : "conegen " + inv.command) << ": " << summary << "\n";
    return io::exit_code(status);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return emit(io::ReportStatus::kInputError, json{{"error", e.what()}}, std::string("usage error: ") + e.what());
  }
  for (auto* s : app.get_subcommands()) {
    inv.command = s->get_name();
    for (auto* t : s->get_subcommands()) inv.command += " " + t->get_name();
  }

  try {
    cfg = default_config();
    if (inv.tol_override) cfg.tol.membership = *inv.tol_override;
    const Outcome o = detail::dispatch(inv, cfg);
    return emit(o.status, o.result, o.summary);
  } catch (const PreconditionViolation& e) {
    return emit(io::ReportStatus::kInputError, json{{"error", e.what()}, {"kind", "precondition"}},
                std::string("precondition violated: ") + e.what());
  } catch (const InputError& e) {
    return emit(io::ReportStatus::kInputError, json{{"error", e.what()}, {"kind", "input"}},
                std::string("input error: ") + e.what());
  } catch (const UnsupportedRepresentation& e) {
    return emit(io::ReportStatus::kInputError, json{{"error", e.what()}, {"kind", "unsupported"}},
                std::string("unsupported input: ") + e.what());
  } catch (const DomainError& e) {
    return emit(io::ReportStatus::kInputError, json{{"error", e.what()}, {"kind", "domain"}},
                std::string("outside the domain: ") + e.what());
  } catch (const Error& e) {
    return emit(io::ReportStatus::kVerificationFailure, json{{"error", e.what()}, {"kind", "verification"}},
                std::string("verification failure: ") + e.what());
  }
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"conegen"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace conegen::cli
