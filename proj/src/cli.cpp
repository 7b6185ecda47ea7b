#include "polycomp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "polycomp/barycentric.hpp"
#include "polycomp/compression.hpp"
#include "polycomp/io.hpp"
#include "polycomp/lifting.hpp"
#include "polycomp/shape_metric.hpp"

namespace polycomp::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchemas = R"(File formats (JSON):
  shape          {"dimension": d, "vertex_count": N, "facets": [[int,...],...],
                  "vertices": [[float,...],...], "mode": "strict"|"weak", "name": "..."}
  triangulation  {"simplices": [[int,...],...]}
  matrix         {"rows": r, "cols": c, "data": [row-major floats]}
  sequence       [shape, shape, ...]  (a single shape object is also accepted)
  embedding      {"ambient_dimension": D, "vertices": [[float,...],...],
                  "simplices": [[int,...],...], "stages": optional}

Exit codes: 0 success, 1 validation failure, 2 numerical failure, 3 malformed input.)";

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Compression: return "Compression";
    case Verdict::WeakCompressionNotStrict: return "WeakCompressionNotStrict";
    case Verdict::NotWeakCompression: return "NotWeakCompression";
  }
  return "?";
}

std::string convexity_name(Convexity c) {
  switch (c) {
    case Convexity::Strict: return "strict";
    case Convexity::Weak: return "weak";
    case Convexity::Invalid: return "invalid";
  }
  return "?";
}

std::string order_name(Order o) {
  switch (o) {
    case Order::SourceBelow: return "source_below";
    case Order::TargetBelow: return "target_below";
    case Order::Isometric: return "isometric";
    case Order::Incomparable: return "incomparable";
  }
  return "?";
}

std::string subdivision_name(Subdivision s) {
  switch (s) {
    case Subdivision::Automatic: return "automatic";
    case Subdivision::Barycentric: return "barycentric";
    case Subdivision::Triangulation: return "triangulation";
  }
  return "?";
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

json pair_to_json(const ExtremalPair& p) {
  return {{"simplex", p.simplex},
          {"x", io::vector_to_json(p.x)},
          {"y", io::vector_to_json(p.y)},
          {"fx", io::vector_to_json(p.fx)},
          {"fy", io::vector_to_json(p.fy)},
          {"ratio", p.ratio},
          {"anchor", p.anchor ? json(*p.anchor) : json(nullptr)},
          {"vertex_anchored", p.vertex_anchored()}};
}

json edges_to_json(const EdgeReport& r) {
  json edges = json::array();
  for (const EdgeRatio& e : r.edges)
    edges.push_back({{"i", e.i},
                     {"j", e.j},
                     {"source_length", e.source_length},
                     {"target_length", e.target_length},
                     {"ratio", e.ratio}});
  return edges;
}

json classification_to_json(const Classification& c, const InducedMap& map) {
  json alphas = json::array();
  for (const Eigen::VectorXd& a : c.spectrum.alphas) alphas.push_back(io::vector_to_json(a));
  return {{"verdict", verdict_name(c.verdict)},
          {"edge_contracting", c.edge_contracting},
          {"alpha_max", c.spectrum.alpha_max},
          {"alpha_min", c.spectrum.alpha_min},
          {"argmax", c.spectrum.argmax},
          {"argmin", c.spectrum.argmin},
          {"alphas", std::move(alphas)},
          {"simplex_count", map.simplex_count()},
          {"subdivision", subdivision_name(map.subdivision)},
          {"witness", pair_to_json(c.witness)},
          {"edges", edges_to_json(c.edges)}};
}

Shape load_valid(const std::string& path) {
  Shape s = io::load_shape(path);
  try {
    require_valid(s);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
  return s;
}

Triangulation triangulation_argument(const std::string& argument, const Shape& shape) {
  if (argument.rfind("fan:", 0) == 0) {
    const std::string digits = argument.substr(4);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw Error(ErrorKind::MalformedInput, "--triangulation: expected fan:<vertex index>, got '" + argument + "'");
    const Index apex = std::stoul(digits);
    if (apex >= shape.vertex_count())
      throw Error(ErrorKind::MalformedInput, "--triangulation: apex " + digits + " out of range");
    return fan_triangulation(shape.polytope, apex);
  }
  return io::load_triangulation(argument, shape.polytope);
}

struct Options {
  std::string shape, p, q, v, m, embedding, triangulation, limit;
  std::vector<std::string> files;
  std::vector<Index> pair;
  bool weak = false;
  double tol = kDefaultTol;
  double eps = 0.05;
  double limit_eps = 1e-3;
  int base_dim = 0;
  long window = -1;
};

CommandResult cmd_validate(const Options& o) {
  const Shape s = io::load_shape(o.shape);
  const ShapeMode mode = o.weak ? ShapeMode::Weak : s.mode;
  const ValidationReport r = validate_shape(s);
  json facets = json::array();
  for (const FacetCheck& f : r.facets)
    facets.push_back({{"facet", f.facet},
                      {"vertices", f.vertices},
                      {"normal", io::vector_to_json(f.normal)},
                      {"offset", f.offset},
                      {"residual", f.residual},
                      {"margin", f.margin},
                      {"spans_hyperplane", f.spans_hyperplane}});
  json non_extreme = json::array();
  for (Index i = 0; i < r.extreme.size(); ++i)
    if (!r.extreme[i]) non_extreme.push_back(i);
  json flat = json::array();
  for (const FlatFacetPair& p : r.flat_pairs)
    flat.push_back({{"first", p.first}, {"second", p.second}, {"dihedral_angle", p.dihedral_angle}});
  const bool ok = r.accepts(mode);
  CommandResult out;
  out.payload = {{"verdict", convexity_name(r.verdict)},
                 {"mode", mode == ShapeMode::Strict ? "strict" : "weak"},
                 {"accepted", ok},
                 {"facets", std::move(facets)},
                 {"non_extreme_vertices", std::move(non_extreme)},
                 {"flat_facet_pairs", std::move(flat)}};
  out.summary = o.shape + ": " + convexity_name(r.verdict) + " realization, " +
                (ok ? "accepted" : "rejected") + " in " + (mode == ShapeMode::Strict ? "strict" : "weak") + " mode";
  out.exit_code = ok ? 0 : 1;
  return out;
}

CommandResult cmd_subdivide(const Options& o) {
  const Shape s = load_valid(o.shape);
  const BarycentricComplex bc = barycentric_complex(s.polytope);
  json faces = json::array();
  for (Index i = 0; i < s.polytope->faces().size(); ++i) {
    const Face& f = s.polytope->face(i);
    faces.push_back({{"index", i},
                     {"vertices", f.vertices},
                     {"dimension", f.dimension},
                     {"barycentre", io::vector_to_json(barycentre(i, s))}});
  }
  json simplices = json::array();
  for (const auto& chain : bc.chains)
    simplices.push_back({{"chain", chain}, {"vertices", io::rows_to_json(chain_simplex(chain, s))}});
  CommandResult out;
  out.payload = {{"faces", std::move(faces)},
                 {"chains", std::move(simplices)},
                 {"adjacency", bc.adjacency},
                 {"simplex_count", bc.chains.size()}};
  if (s.polytope->is_simplex()) {
    VertexSet all(s.vertex_count());
    for (Index i = 0; i < all.size(); ++i) all[i] = i;
    out.payload["simplices"] = json::array({all});
  }
  out.summary = o.shape + ": " + std::to_string(bc.chains.size()) + " barycentric simplices";
  return out;
}

CommandResult cmd_classify(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  const InducedMap map = induced_map(p, q);
  const Classification c = classify(map, o.tol);
  CommandResult out;
  out.payload = classification_to_json(c, map);
  out.payload["tol"] = o.tol;
  out.summary = verdict_name(c.verdict) + " (alpha_max " + fmt(c.spectrum.alpha_max) + ", edges " +
                (c.edge_contracting ? "all contract" : "do not all contract") + ")";
  return out;
}

CommandResult cmd_edges(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  const EdgeReport r = edge_contraction_check(p, q, o.tol);
  CommandResult out;
  out.payload = {{"edges", edges_to_json(r)}, {"contracting", r.contracting}, {"tol", o.tol}};
  out.summary = std::to_string(r.edges.size()) + " edges, " + (r.contracting ? "all contract" : "not all contract");
  return out;
}

CommandResult cmd_distance(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  const PolytopeDistance d = polytope_distance(p, q);
  CommandResult out;
  out.payload = {{"delta", d.delta}, {"argmax", d.argmax}, {"simplex_count", d.simplex_count}};
  out.summary = "delta = " + fmt(d.delta);
  return out;
}

CommandResult cmd_order(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  const OrderReport r = compare_order(p, q, o.tol);
  CommandResult out;
  out.payload = {{"relation", order_name(r.relation)},
                 {"forward", verdict_name(r.forward)},
                 {"backward", verdict_name(r.backward)},
                 {"forward_alpha_max", r.forward_alpha_max},
                 {"backward_alpha_max", r.backward_alpha_max}};
  out.summary = "relation: " + order_name(r.relation);
  return out;
}

CommandResult cmd_scale(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  const CriticalScaling s = scale_critical(p, q, o.tol);
  const InducedMap map = induced_map(p, s.scaled_target);
  CommandResult out;
  out.payload = {{"lambda", s.lambda},
                 {"scaled_target", io::shape_to_json(s.scaled_target)},
                 {"classification", classification_to_json(s.classification, map)}};
  out.summary = "lambda = " + fmt(s.lambda) + ", rescaled map is " + verdict_name(s.classification.verdict);
  return out;
}

CommandResult cmd_perturb(const Options& o) {
  const Shape p = load_valid(o.p);
  const Eigen::MatrixXd v = io::load_matrix(o.v);
  const auto n = static_cast<Eigen::Index>(p.vertex_count());
  if (v.cols() != n || v.rows() < p.dimension() || v.rows() > p.dimension() + 1)
    throw Error(ErrorKind::MalformedInput,
                o.v + ": field 'data': expected a " + std::to_string(p.dimension()) + " (or " +
                    std::to_string(p.dimension() + 1) + ") by " + std::to_string(n) + " matrix");
  CommandResult out;
  json edges = json::array();
  double worst = 0.0;
  for (auto [i, j] : p.polytope->edges()) {
    const double dd = distance_derivative(p, v, TrackedPoint::vertex(i), TrackedPoint::vertex(j));
    worst = std::max(worst, std::abs(dd));
    edges.push_back({{"i", i}, {"j", j}, {"derivative", dd}});
  }
  out.payload["edge_derivatives"] = std::move(edges);
  out.payload["max_edge_derivative"] = worst;
  out.summary = "max |edge derivative| " + fmt(worst);
  if (p.polytope->is_simplex()) {
    const Perturbation pert = perturbation_classify(p.vertices, v, o.tol);
    out.payload["classification"] = {
        {"verdict", pert.weak_compression ? "InfinitesimalWeakCompression" : "NotInfinitesimalWeakCompression"},
        {"symmetric", io::rows_to_json(pert.symmetric)},
        {"eigenvalues", io::vector_to_json(pert.eigenvalues)}};
    out.summary += pert.weak_compression ? "; infinitesimal weak compression" : "; not an infinitesimal weak compression";
  } else {
    out.payload["classification"] = nullptr;
  }
  if (!o.pair.empty()) {
    const Index faces = p.polytope->faces().size();
    for (Index f : o.pair)
      if (f >= faces)
        throw Error(ErrorKind::MalformedInput, "--pair: face index " + std::to_string(f) + " out of range");
    const VertexSet& a = p.polytope->face(o.pair[0]).vertices;
    const VertexSet& b = p.polytope->face(o.pair[1]).vertices;
    const double dd = distance_derivative(p, v, TrackedPoint::face_barycentre(a), TrackedPoint::face_barycentre(b));
    out.payload["pair"] = {{"faces", o.pair}, {"first", a}, {"second", b}, {"derivative", dd}};
    out.summary += "; pair derivative " + fmt(dd);
  }
  return out;
}

CommandResult cmd_complete(const Options& o) {
  const Eigen::MatrixXd m = io::load_matrix(o.m);
  const OrthogonalCompletion c = orthogonal_completion(m);
  CommandResult out;
  out.payload = {{"U", io::rows_to_json(c.u)},
                 {"A", io::rows_to_json(c.a)},
                 {"B", io::rows_to_json(c.b)},
                 {"C", io::rows_to_json(c.c)},
                 {"determinant", c.u.determinant()},
                 {"orthogonality_residual", c.orthogonality_residual()}};
  out.summary = std::to_string(c.u.rows()) + "x" + std::to_string(c.u.cols()) +
                " orthogonal completion, residual " + fmt(c.orthogonality_residual());
  return out;
}

CommandResult cmd_lift(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  if (!p.polytope->is_simplex() || !same_polytope(p, q))
    throw Error(ErrorKind::PolytopeMismatch, "lift needs two realizations of one simplex");
  const SimplexLift lift = lift_simplex(p.vertices, q.vertices);
  const Eigen::VectorXd sv = projection_singular_values(lift.vertices, p.dimension());
  CommandResult out;
  out.payload = {{"ambient_dimension", lift.vertices.cols()},
                 {"vertices", io::rows_to_json(lift.vertices)},
                                  {"U", io::rows_to_json(lift.completion.u)},
                 {"isometry_residual", lift.isometry_residual},
                 {"projection_residual", lift.projection_residual},
                 {"projection_singular_values", io::vector_to_json(sv)},
                 {"projection_is_compression", projection_is_compression(lift.vertices, p.dimension())}};
  out.summary = "lifted to R^" + std::to_string(lift.vertices.cols()) + ", isometry residual " +
                fmt(lift.isometry_residual);
  return out;
}

CommandResult cmd_pleat(const Options& o) {
  const Shape p = load_valid(o.p), q = load_valid(o.q);
  if (!same_polytope(p, q))
    throw Error(ErrorKind::PolytopeMismatch, "shapes realize different combinatorial polytopes");
  const Triangulation t = triangulation_argument(o.triangulation, p);
  const PleatedEmbedding pleated = pleated_embedding(p, q, t);
  const PleatReport report = pleat_validity(pleated);
  const ProjectionChain chain = projection_chain(pleated);

  json folds = json::array();
  for (const FoldAngle& f : report.folds)
    folds.push_back({{"first", f.first}, {"second", f.second}, {"shared", f.shared},
                     {"angle", f.angle}, {"flat", f.flat}});
  json ridges = json::array();
  for (const RidgeAngleSum& r : report.ridges)
    ridges.push_back({{"face", r.face}, {"simplices", r.simplices},
                      {"angle_sum", r.angle_sum}, {"below_pi", r.below_pi}});

  CommandResult out;
  out.payload = io::embedding_to_json(pleated, chain);
  out.payload["order"] = pleated.order;
  out.payload["validity"] = {{"folds", std::move(folds)},
                             {"ridges", std::move(ridges)},
                             {"isometry_residuals", report.isometry_residuals},
                             {"max_isometry_residual", report.max_isometry_residual},
                             {"projection_residual", report.projection_residual},
                             {"zero_pleat", report.zero_pleat},
                             {"ridge_condition", report.ridge_condition}};
  out.payload["chain_all_weak"] = chain.all_weak;
  out.summary = "pleated embedding in R^" + std::to_string(pleated.ambient_dimension()) + " over " +
                std::to_string(t.simplices.size()) + " simplices, max isometry residual " +
                fmt(report.max_isometry_residual) + (report.zero_pleat ? " (zero pleat)" : "");
  return out;
}

CommandResult cmd_chain(const Options& o) {
  const io::EmbeddingFile e = io::load_embedding(o.embedding);
  if (o.base_dim < 1)
    throw Error(ErrorKind::MalformedInput, "--base-dim: must be at least 1");
  const ProjectionChain chain = projection_chain(e.vertices, e.simplices, o.base_dim);
  json stages = json::array();
  for (const ChainStage& s : chain.stages)
    stages.push_back({{"ambient_dimension", s.ambient_dimension},
                      {"vertices", io::rows_to_json(s.vertices)},
                      {"alpha_max_from_previous", s.alpha_max_from_previous}});
  CommandResult out;
  out.payload = {{"stages", std::move(stages)},
                 {"alpha_max_onto_base", chain.alpha_max_onto_base},
                 {"all_weak", chain.all_weak}};
  out.summary = std::to_string(chain.stages.size()) + " stages, " +
                (chain.all_weak ? "every step a weak compression" : "some step expands");
  return out;
}

CommandResult cmd_sequence(const Options& o) {
  std::vector<Shape> seq;
  for (const std::string& f : o.files)
    for (Shape& s : io::load_sequence(f)) seq.push_back(std::move(s));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      require_valid(seq[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "sequence element " + std::to_string(i) + ": " + e.what());
    }
  }
  std::optional<Shape> limit;
  if (!o.limit.empty()) limit = io::load_shape(o.limit);
  const Index window = o.window >= 0 ? static_cast<Index>(o.window) : seq.size() / 2;
  const SequenceReport r = sequence_report(seq, window, o.eps, limit, o.limit_eps);

  CommandResult out;
  out.payload = {{"count", seq.size()},
                 {"distances", io::rows_to_json(r.distances)},
                 {"window", r.window},
                 {"eps", r.eps},
                 {"cauchy", {{"cauchy", r.cauchy.cauchy},
                             {"max_tail_delta", r.cauchy.max_tail_delta},
                             {"violation", r.cauchy.violation ? json::array({r.cauchy.violation->first,
                                                                             r.cauchy.violation->second})
                                                              : json(nullptr)}}}};
  out.summary = std::to_string(seq.size()) + " shapes, " + (r.cauchy.cauchy ? "Cauchy" : "not Cauchy") +
                " beyond index " + std::to_string(window) + " at eps " + fmt(o.eps);
  if (limit) {
    const ValidationReport v = validate_shape(*limit);
    out.payload["limit"] = {{"converges", r.limit->converges},
                            {"deltas", r.limit->deltas},
                            {"eps", o.limit_eps},
                            {"verdict", convexity_name(v.verdict)},
                            {"accepted_strict", v.accepts(ShapeMode::Strict)},
                            {"accepted_weak", v.accepts(ShapeMode::Weak)}};
    out.summary += std::string("; ") + (r.limit->converges ? "converges to" : "does not converge to") +
                   " the " + convexity_name(v.verdict) + " limit";
  }
  return out;
}

std::vector<std::string> reversed(std::vector<std::string> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput:
      return 3;
    case ErrorKind::SingularSimplex:
    case ErrorKind::DegenerateSimplex:
    case ErrorKind::NotPSD:
    case ErrorKind::NotContraction:
    case ErrorKind::InfeasibleApex:
      return 2;
    default:
      return 1;
  }
}

CommandResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Compression maps between convex polytopes", "polycomp"};
  app.footer(kSchemas);
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a shape file against its combinatorial type");
  validate->add_option("shape", o.shape, "shape file")->required();
  validate->add_flag("--weak", o.weak, "accept weakly convex realizations");

  auto* subdivide = app.add_subcommand("subdivide", "Barycentric subdivision of a shape");
  subdivide->add_option("shape", o.shape, "shape file")->required();

  auto add_pair = [&](const char* name, const char* help, bool tol) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("P", o.p, "source shape file")->required();
    sub->add_option("Q", o.q, "target shape file")->required();
    if (tol) sub->add_option("--tol", o.tol, "strictness band")->check(CLI::NonNegativeNumber);
    return sub;
  };
  add_pair("classify", "Classify the induced map P -> Q", true);
  add_pair("edges", "Edge length ratios of P -> Q", true);
  add_pair("distance", "Compression metric between P and Q", false);
  add_pair("order", "Compare P and Q in the compression order", true);
  add_pair("scale", "Rescale Q so that P -> Q is critical", true);
  add_pair("lift", "Isometric lift of simplex P into R^2d projecting onto Q", false);
  auto* pleat = add_pair("pleat", "Pleated embedding of P projecting onto Q", false);
  pleat->add_option("--triangulation", o.triangulation, "triangulation file or fan:APEX")->required();

  auto* perturb = app.add_subcommand("perturb", "First-order analysis of a vertex velocity field");
  perturb->add_option("P", o.p, "shape file")->required();
  perturb->add_option("V", o.v, "velocity matrix file, one column per vertex")->required();
  perturb->add_option("--pair", o.pair, "two face indices whose barycentres are tracked")->expected(2);
  perturb->add_option("--tol", o.tol, "strictness band")->check(CLI::NonNegativeNumber);

  auto* complete = app.add_subcommand("complete", "Orthogonal completion of a contraction matrix");
  complete->add_option("M", o.m, "matrix file")->required();

  auto* chain = app.add_subcommand("chain", "Projection chain of an embedding down to R^d");
  chain->add_option("embedding", o.embedding, "embedding file")->required();
  chain->add_option("--base-dim", o.base_dim, "base dimension d")->required();

  auto* sequence = app.add_subcommand("sequence", "Cauchy and convergence checks for a shape sequence");
  sequence->add_option("shapes", o.files, "sequence or shape files")->required();
  sequence->add_option("--limit", o.limit, "candidate limit shape file");
  sequence->add_option("--eps", o.eps, "Cauchy threshold")->check(CLI::PositiveNumber);
  sequence->add_option("--limit-eps", o.limit_eps, "convergence threshold")->check(CLI::PositiveNumber);
  sequence->add_option("--window", o.window, "first index of the Cauchy tail (default: half the length)")
      ->check(CLI::NonNegativeNumber);

  CommandResult result;
  try {
    app.parse(reversed(args));
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    result.command = subs.empty() ? "" : subs.front()->get_name();
    if (e.get_exit_code() == 0) {
      const std::string text = subs.empty() ? app.help() : subs.front()->help();
      result.payload = {{"help", text}};
      return result;
    }
    result.payload = error_json("MalformedInput", e.what());
    result.summary = std::string("error: ") + e.what();
    result.exit_code = 3;
    result.payload["command"] = result.command;
    return result;
  }

  CLI::App* sub = app.get_subcommands().front();
  result.command = sub->get_name();
  try {
    const std::string& c = result.command;
    CommandResult r = c == "validate"    ? cmd_validate(o)
                      : c == "subdivide" ? cmd_subdivide(o)
                      : c == "classify"  ? cmd_classify(o)
                      : c == "edges"     ? cmd_edges(o)
                      : c == "distance"  ? cmd_distance(o)
                      : c == "order"     ? cmd_order(o)
                      : c == "scale"     ? cmd_scale(o)
                      : c == "perturb"   ? cmd_perturb(o)
                      : c == "complete"  ? cmd_complete(o)
                      : c == "lift"      ? cmd_lift(o)
                      : c == "pleat"     ? cmd_pleat(o)
                      : c == "chain"     ? cmd_chain(o)
                                         : cmd_sequence(o);
    r.command = c;
    result = std::move(r);
  } catch (const Error& e) {
    result.payload = error_json(std::string(to_string(e.kind())), e.what());
    result.summary = "error (" + std::string(to_string(e.kind())) + "): " + e.what();
    result.exit_code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    result.payload = error_json("Internal", e.what());
    result.summary = std::string("error: ") + e.what();
    result.exit_code = 2;
  }
  result.payload["command"] = result.command;
  return result;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const CommandResult r = run(args);
  if (r.payload.contains("help")) {
    std::cout << r.payload["help"].get<std::string>();
    return r.exit_code;
  }
  std::cout << r.payload.dump(2) << '\n';
  if (!r.summary.empty()) std::cerr << r.summary << '\n';
  return r.exit_code;
}

}  // namespace polycomp::cli
