#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polycomp/barycentric.hpp"
#include "polycomp/compression.hpp"
#include "polycomp/error.hpp"
#include "polycomp/io.hpp"
#include "polycomp/lifting.hpp"
#include "polycomp/shape_metric.hpp"

using namespace polycomp;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string data(const std::string& name) { return std::string(POLYCOMP_TEST_DATA) + "/" + name; }

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream s;
  s.precision(4);
  (s << ... << parts);
  return s.str();
}

Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = n(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

Eigen::MatrixXd with_singular_values(const Eigen::VectorXd& sigma, std::mt19937_64& rng) {
  const int d = static_cast<int>(sigma.size());
  return random_orthogonal(d, rng) * sigma.asDiagonal() * random_orthogonal(d, rng).transpose();
}

Eigen::MatrixXd random_simplex(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  while (true) {
    Eigen::MatrixXd p(d + 1, d);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j < d; ++j) p(i, j) = 2.0 * n(rng);
    const Eigen::MatrixXd e = p.bottomRows(d).rowwise() - p.row(0);
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
    if (s(d - 1) > 0.2 * s(0)) return p;
  }
}

Eigen::MatrixXd apply_linear(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& linear, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Eigen::RowVectorXd t(rows.cols());
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = u(rng);
  return (rows * linear.transpose()).rowwise() + t;
}

Shape simplex_shape(const Eigen::MatrixXd& rows) {
  static std::vector<PolytopePtr> cache(8);
  const auto d = static_cast<std::size_t>(rows.cols());
  if (!cache[d]) cache[d] = std::make_shared<const CombinatorialPolytope>(simplex_polytope(static_cast<int>(d)));
  return make_shape(cache[d], rows);
}

void criterion1() {
  const Shape p = io::load_shape(data("triangle_P.json"));
  const Shape q = io::load_shape(data("triangle_Q.json"));
  struct Expect {
    std::string label;
    double got, want;
  };
  std::vector<Expect> checks;
  auto dist = [](const Shape& s, Index i, Index j) { return (s.vertex(i) - s.vertex(j)).norm(); };
  checks.push_back({"|p1-p2|", dist(p, 0, 1), 3.64329});
  checks.push_back({"|p1-p3|", dist(p, 0, 2), 2.54493});
  checks.push_back({"|p2-p3|", dist(p, 1, 2), 1.63809});
  checks.push_back({"|q1-q2|", dist(q, 0, 1), 1.90369});
  checks.push_back({"|q1-q3|", dist(q, 0, 2), 2.05509});
  checks.push_back({"|q2-q3|", dist(q, 1, 2), 0.490719});

  const InducedMap map = induced_map(p, q);
  Eigen::VectorXd wx(3), wy(3);
  wx << 0.34, 0.464, 0.196;
  wy << 0.149, 0.316, 0.535;
  const Eigen::VectorXd px = oracle::at_weights(p.vertices, wx), py = oracle::at_weights(p.vertices, wy);
  const Eigen::VectorXd qx = evaluate_map(map, px), qy = evaluate_map(map, py);
  checks.push_back({"Px.x", px(0), 1.97432});
  checks.push_back({"Px.y", px(1), 0.819808});
  checks.push_back({"Py.x", py(0), 2.10787});
  checks.push_back({"Py.y", py(1), 0.41864});
  checks.push_back({"Qx.x", qx(0), 4.21365});
  checks.push_back({"Qx.y", qx(1), 2.49228});
  checks.push_back({"Qy.x", qy(0), 4.34854});
  checks.push_back({"Qy.y", qy(1), 2.0862});
  checks.push_back({"|Px-Py|", (px - py).norm(), 0.422811});
  checks.push_back({"|Qx-Qy|", (qx - qy).norm(), 0.427901});

  double worst = 0.0;
  std::string worst_label;
  for (const Expect& e : checks)
    if (std::abs(e.got - e.want) >= worst) {
      worst = std::abs(e.got - e.want);
      worst_label = e.label;
    }
  const Classification c = classify(map);
  const bool ok = worst <= 1e-4 && c.verdict == Verdict::NotWeakCompression && c.edge_contracting;
  report(1, ok, "counterexample triangles",
         cat(checks.size(), " values, worst error ", worst, " at ", worst_label, ", verdict ",
             c.verdict == Verdict::NotWeakCompression ? "NotWeakCompression" : "other",
             ", edge_contracting ", c.edge_contracting ? "true" : "false"));
}

void criterion2() {
  std::mt19937_64 rng(20240202);
  std::uniform_real_distribution<double> unit(0.2, 0.95), wide(0.3, 1.8);
  int disagreements = 0, in_band = 0, compared = 0;
  int by_verdict[3] = {0, 0, 0};
  double worst_gap = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 4;
    const Eigen::MatrixXd p = random_simplex(d, rng);
    Eigen::MatrixXd q;
    Eigen::VectorXd sigma(d);
    for (int k = 0; k < d; ++k) sigma(k) = unit(rng);
    switch ((i / 4) % 5) {
      case 0:
        q = random_simplex(d, rng);
        break;
      case 1:
        for (int k = 0; k < d; ++k) sigma(k) = wide(rng);
        q = apply_linear(p, with_singular_values(sigma, rng), rng);
        break;
      case 2:
        sigma(0) = 1.0;
        q = apply_linear(p, with_singular_values(sigma, rng), rng);
        break;
      case 3:
        sigma(0) = 1.0 + 1e-4;
        q = apply_linear(p, with_singular_values(sigma, rng), rng);
        break;
      default:
        sigma(0) = 1.0 - 1e-4;
        q = apply_linear(p, with_singular_values(sigma, rng), rng);
        break;
    }
    const InducedMap map = induced_map(simplex_shape(p), simplex_shape(q));
    const Classification c = classify(map);
    const double r2 = oracle::pair_sampling_max_ratio2(p, q, 10000, rng);
    worst_gap = std::max(worst_gap, std::abs(r2 - c.spectrum.alpha_max) / std::max(1.0, c.spectrum.alpha_max));
    ++by_verdict[static_cast<int>(c.verdict)];
    if (std::abs(c.spectrum.alpha_max - 1.0) <= 1e-7) {
      ++in_band;
      continue;
    }
    ++compared;
    const std::string spectral = c.verdict == Verdict::Compression ? "Compression"
                                 : c.verdict == Verdict::NotWeakCompression ? "NotWeakCompression"
                                                                            : "WeakCompressionNotStrict";
    if (spectral != oracle::band_verdict(r2, 1e-7)) ++disagreements;
  }
  report(2, disagreements == 0, "spectral verdicts match the pair-sampling oracle",
         cat(compared, " compared, ", in_band, " inside the band, ", disagreements,
             " disagreements; verdict counts C/W/N = ", by_verdict[0], "/", by_verdict[1], "/", by_verdict[2],
             "; max relative alpha gap ", worst_gap));
}

void criterion3() {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_orth = 0.0, worst_iso = 0.0, worst_proj = 0.0;
  bool block_exact = true;
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 6;
    Eigen::VectorXd sigma(d);
    for (int k = 0; k < d; ++k) sigma(k) = unit(rng);
    if (i % 5 == 0) sigma(0) = 1.0;
    if (i % 7 == 0) sigma(d - 1) = 0.0;
    const Eigen::MatrixXd m = with_singular_values(sigma, rng);
    const OrthogonalCompletion c = orthogonal_completion(m);
    worst_orth = std::max(worst_orth, c.orthogonality_residual());
    block_exact = block_exact && (c.u.topLeftCorner(d, d).array() == m.array()).all();

    const Eigen::MatrixXd p = random_simplex(d, rng);
    const Eigen::MatrixXd q = apply_linear(p, m, rng);
    if (!is_nondegenerate_simplex(q)) continue;
    const SimplexLift lift = lift_simplex(p, q);
    worst_iso = std::max(worst_iso, lift.isometry_residual);
    worst_proj = std::max(worst_proj, lift.projection_residual);
  }
  const bool ok = worst_orth <= 1e-10 && block_exact && worst_iso <= 1e-9 && worst_proj <= 1e-10;
  report(3, ok, "orthogonal completion and simplex lift",
         cat("max |U^T U - I| ", worst_orth, ", top-left block exact ", block_exact ? "yes" : "no",
             ", isometry residual ", worst_iso, ", projection residual ", worst_proj));
}

void criterion4() {
  std::mt19937_64 rng(44);
  double asym = 0.0, invariance = 0.0, excess = -1.0, consistency = 0.0, oracle_gap = 0.0;
  std::size_t violations = 0, pairs = 0;
  std::uint64_t seed = 1;
  for (int d : {2, 3}) {
    const int triples = d == 2 ? 50 : 20;
    for (int t = 0; t < triples; ++t) {
      std::vector<Shape> shapes;
      for (int k = 0; k < 3; ++k) shapes.push_back(simplex_shape(random_simplex(d, rng)));
      const MetricAxiomReport r = metric_axiom_suite(shapes, seed++);
      asym = std::max(asym, r.max_asymmetry);
      invariance = std::max(invariance, r.max_similarity_delta);
      excess = std::max(excess, r.max_triangle_excess);
      violations += r.violations.size();
      pairs += r.pairs_checked;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (a == b) continue;
          const double dp = delta_polytope(shapes[a], shapes[b]);
          const double ds = delta_simplex(shapes[a].vertices, shapes[b].vertices);
          consistency = std::max(consistency, std::abs(dp - ds));
          const Eigen::VectorXd s = oracle::edge_route_singular_values(shapes[a].vertices, shapes[b].vertices);
          oracle_gap = std::max(oracle_gap, std::abs(ds - 2.0 * std::log(s(0) / s(s.size() - 1))));
        }
    }
  }
  const bool ok = violations == 0 && asym <= 1e-12 && invariance <= 1e-10 && excess <= 1e-9 &&
                  consistency <= 1e-12 && oracle_gap <= 1e-9;
  report(4, ok, "metric axioms on triangles and tetrahedra",
         cat(pairs, " pairs, ", violations, " violations, asymmetry ", asym, ", similarity delta ", invariance,
             ", triangle excess ", excess, ", polytope/simplex gap ", consistency, ", edge-route gap ", oracle_gap));
}

Eigen::MatrixXd random_polygon(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> gaps(n);
  double total = 0.0;
  for (double& g : gaps) total += (g = 0.3 + u(rng));
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(n), 2);
  double angle = 2.0 * M_PI * u(rng);
  for (Index i = 0; i < n; ++i) {
    rows(static_cast<Eigen::Index>(i), 0) = std::cos(angle);
    rows(static_cast<Eigen::Index>(i), 1) = std::sin(angle);
    angle += 2.0 * M_PI * gaps[i] / total;
  }
  Eigen::Vector2d sigma(0.5 + 2.0 * u(rng), 0.5 + 2.0 * u(rng));
  return apply_linear(rows, with_singular_values(sigma, rng), rng);
}

void criterion5() {
  std::mt19937_64 rng(55);
  double worst_alpha = 0.0, worst_ratio = 0.0;
  int anchored = 0, total = 0;
  for (int i = 0; i < 50; ++i) {
    const Index n = 3 + static_cast<Index>(i % 6);
    const auto poly = std::make_shared<const CombinatorialPolytope>(ngon_polytope(n));
    const Shape p = make_shape(poly, random_polygon(n, rng));
    const Shape q = make_shape(poly, random_polygon(n, rng));
    require_valid(p);
    require_valid(q);
    const CriticalScaling s = scale_critical(p, q);
    const Classification& c = s.classification;
    worst_alpha = std::max(worst_alpha, std::abs(c.spectrum.alpha_max - 1.0));
    worst_ratio = std::max(worst_ratio, std::abs(c.witness.ratio - 1.0));
    anchored += c.witness.vertex_anchored() ? 1 : 0;
    ++total;
  }
  const bool ok = worst_alpha <= 1e-9 && worst_ratio <= 1e-9 && anchored == total;
  report(5, ok, "critical rescaling of polygon pairs",
         cat(total, " pairs, max |alpha_max - 1| ", worst_alpha, ", max |ratio - 1| ", worst_ratio, ", ", anchored,
             "/", total, " witnesses vertex-anchored"));
}

void criterion6() {
  const Shape p = io::load_shape(data("square.json"));
  const Shape q = io::load_shape(data("square_small.json"));
  const Triangulation t = fan_triangulation(p.polytope, 0);
  const PleatedEmbedding e = pleated_embedding(p, q, t);
  const PleatReport r = pleat_validity(e);
  const ProjectionChain chain = projection_chain(e);

  const SimplexLift root = lift_simplex(p.vertices({0, 1, 2}, Eigen::all), q.vertices({0, 1, 2}, Eigen::all));
  bool diagonal_identical = true;
  for (Index k : {Index{0}, Index{2}}) {
    Eigen::RowVectorXd padded = Eigen::RowVectorXd::Zero(e.vertices.cols());
    padded.head(root.vertices.cols()) = root.vertices.row(static_cast<Eigen::Index>(k));
    diagonal_identical = diagonal_identical && (e.vertices.row(static_cast<Eigen::Index>(k)).array() == padded.array()).all();
  }
  const double diagonal = (e.vertices.row(0) - e.vertices.row(2)).norm();
  diagonal_identical = diagonal_identical && std::abs(diagonal - std::sqrt(2.0)) <= 1e-12;

  double worst_step = 0.0;
  for (const ChainStage& s : chain.stages)
    for (double a : s.alpha_max_from_previous) worst_step = std::max(worst_step, a);
  for (double a : chain.alpha_max_onto_base) worst_step = std::max(worst_step, a);

  const bool ok = e.ambient_dimension() == 6 && r.max_isometry_residual <= 1e-9 && r.projection_residual <= 1e-10 &&
                  diagonal_identical && chain.stages.size() == 4 && chain.all_weak && worst_step <= 1.0 + 1e-9;
  report(6, ok, "pleated embedding of the unit square onto its 0.8 copy",
         cat("D = ", e.ambient_dimension(), ", edge residual ", r.max_isometry_residual, ", projection residual ",
             r.projection_residual, ", shared diagonal identical ", diagonal_identical ? "yes" : "no", ", ",
             chain.stages.size(), " stages, largest step alpha ", worst_step));
}

void criterion7() {
  const Shape rhombus = io::load_shape(data("rhombus.json"));
  const Eigen::MatrixXd flex = io::load_matrix(data("rhombus_flex.json"));
  double worst_edge = 0.0;
  for (auto [i, j] : rhombus.polytope->edges())
    worst_edge = std::max(worst_edge, std::abs(distance_derivative(rhombus, flex, TrackedPoint::vertex(i),
                                                                     TrackedPoint::vertex(j))));
  const double pair = distance_derivative(rhombus, flex, TrackedPoint::vertex(0), TrackedPoint::face_barycentre({2, 3}));
  const double expected = -4.0 / std::sqrt(9.25);
  const bool ok = worst_edge <= 1e-8 && std::abs(pair - expected) <= 1e-5 && pair < 0.0;
  report(7, ok, "rhombus four-bar flex",
         cat("max |edge derivative| ", worst_edge, ", vertex-to-midpoint derivative ", pair, " vs ", expected));
}

Shape hexagon(double t, const PolytopePtr& poly, ShapeMode mode = ShapeMode::Strict) {
  Eigen::MatrixXd rows(6, 2);
  for (int k = 0; k < 6; ++k) {
    rows(k, 0) = std::cos(k * M_PI / 3.0);
    rows(k, 1) = std::sin(k * M_PI / 3.0);
  }
  rows.row(1) *= 0.5 + 0.5 * t;
  return make_shape(poly, rows, mode);
}

void criterion8() {
  const auto poly = std::make_shared<const CombinatorialPolytope>(ngon_polytope(6));
  std::vector<Shape> seq;
  bool all_strict = true;
  for (int n = 1; n <= 20; ++n) {
    seq.push_back(hexagon(std::pow(0.5, n), poly));
    all_strict = all_strict && validate_shape(seq.back()).accepts(ShapeMode::Strict);
  }
  const Shape limit = hexagon(0.0, poly, ShapeMode::Weak);
  const CauchyResult cauchy = is_cauchy(seq, 10, 0.05);
  const ConvergenceResult conv = converges_to(seq, limit, 1e-3);
  const ValidationReport v = validate_shape(limit);
  const bool ok = all_strict && cauchy.cauchy && conv.converges && !v.accepts(ShapeMode::Strict) &&
                  v.accepts(ShapeMode::Weak);
  report(8, ok, "hexagon sequence flattening one angle",
         cat("members strictly convex ", all_strict ? "yes" : "no", ", Cauchy tail max delta ", cauchy.max_tail_delta,
             ", last delta to limit ", conv.deltas.back(), ", limit strict ", v.accepts(ShapeMode::Strict) ? "accepted" : "rejected",
             ", weak ", v.accepts(ShapeMode::Weak) ? "accepted" : "rejected"));
}

}  // namespace

int main() {
  void (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                          criterion5, criterion6, criterion7, criterion8};
  for (int i = 0; i < 8; ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(i + 1, false, "threw", e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
