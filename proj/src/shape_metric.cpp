#include "polycomp/shape_metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polycomp/compression.hpp"
#include "polycomp/error.hpp"

namespace polycomp {

namespace {

// ln(alpha_max / alpha_min) from singular values, which keep relative
// accuracy in the small end better than Gram eigenvalues do.
double log_ratio(const Eigen::MatrixXd& linear) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(linear).singularValues();
  return 2.0 * std::log(s(0) / s(s.size() - 1));
}

Eigen::MatrixXd random_rotation(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

}  // namespace

double delta_simplex(const Eigen::MatrixXd& source_vertices, const Eigen::MatrixXd& target_vertices) {
  return log_ratio(affine_correspondence(source_vertices, target_vertices).linear);
}

double delta_simplex(const Shape& source, const Shape& target) {
  if (!source.polytope->is_simplex() || !same_polytope(source, target))
    throw Error(ErrorKind::PolytopeMismatch, "delta_simplex needs two shapes of one simplex");
  return delta_simplex(source.vertices, target.vertices);
}

PolytopeDistance polytope_distance(const Shape& source, const Shape& target,
                                   Subdivision subdivision) {
  const InducedMap map = induced_map(source, target, subdivision);
  PolytopeDistance out;
  out.simplex_count = map.simplex_count();
  out.delta = -1.0;
  for (Index k = 0; k < map.pieces.size(); ++k) {
    const double dk = log_ratio(map.pieces[k].affine.linear);
    if (dk > out.delta) {
      out.delta = dk;
      out.argmax = k;
    }
  }
  return out;
}

double delta_polytope(const Shape& source, const Shape& target, Subdivision subdivision) {
  return polytope_distance(source, target, subdivision).delta;
}

Eigen::MatrixXd distance_matrix(const std::vector<Shape>& shapes) {
  const auto n = static_cast<Eigen::Index>(shapes.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) m(i, j) = delta_polytope(shapes[i], shapes[j]);
  return m;
}

bool homothetic(const Shape& a, const Shape& b, double rel_tol) {
  if (!same_polytope(a, b)) return false;
  const auto n = a.vertices.rows();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double la = (a.vertices.row(i) - a.vertices.row(j)).norm();
      const double lb = (b.vertices.row(i) - b.vertices.row(j)).norm();
      if (scale == 0.0) scale = lb / la;
      if (std::abs(lb - scale * la) > rel_tol * lb) return false;
    }
  return true;
}

MetricAxiomReport metric_axiom_suite(const std::vector<Shape>& shapes, std::uint64_t seed) {
  MetricAxiomReport r;
  r.distances = distance_matrix(shapes);
  const Index n = shapes.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> shift(-5.0, 5.0);

  for (Index i = 0; i < n; ++i) {
    const int d = shapes[i].dimension();
    Eigen::VectorXd t(d);
    for (int k = 0; k < d; ++k) t(k) = shift(rng);
    const Shape image =
        similarity_image(shapes[i], std::exp(log_scale(rng)), random_rotation(d, rng), t);
    const double di = delta_polytope(shapes[i], image);
    r.max_similarity_delta = std::max(r.max_similarity_delta, std::abs(di));
    if (std::abs(di) > kInvarianceTol) r.violations.push_back({"identity", {i}, di});
  }

  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      ++r.pairs_checked;
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      const double asym = std::abs(r.distances(ii, jj) - r.distances(jj, ii));
      r.max_asymmetry = std::max(r.max_asymmetry, asym);
      if (asym > kSymmetryTol) r.violations.push_back({"symmetry", {i, j}, asym});
      if (!homothetic(shapes[i], shapes[j]) && !(r.distances(ii, jj) > 0.0))
        r.violations.push_back({"positivity", {i, j}, r.distances(ii, jj)});
    }

  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        ++r.triples_checked;
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j),
                   kk = static_cast<Eigen::Index>(k);
        const double excess = r.distances(ii, kk) - r.distances(ii, jj) - r.distances(jj, kk);
        r.max_triangle_excess = std::max(r.max_triangle_excess, excess);
        if (excess > kTriangleSlack) r.violations.push_back({"triangle", {i, j, k}, excess});
      }
  return r;
}

CauchyResult is_cauchy(const std::vector<Shape>& sequence, Index window, double eps) {
  CauchyResult r;
  for (Index m = window; m < sequence.size(); ++m)
    for (Index n = m + 1; n < sequence.size(); ++n) {
      const double d = delta_polytope(sequence[m], sequence[n]);
      r.max_tail_delta = std::max(r.max_tail_delta, d);
      if (!(d < eps) && r.cauchy) {
        r.cauchy = false;
        r.violation = std::make_pair(m, n);
      }
    }
  return r;
}

ConvergenceResult converges_to(const std::vector<Shape>& sequence, const Shape& limit, double eps) {
  ConvergenceResult r;
  if (sequence.empty()) return r;
  for (const Shape& s : sequence) r.deltas.push_back(delta_polytope(s, limit));
  const std::size_t n = r.deltas.size();
  const std::size_t quarter = std::min(n, std::max<std::size_t>(2, n / 4));
  bool trending_down = true;
  for (std::size_t i = n - quarter + 1; i < n; ++i)
    if (r.deltas[i] > r.deltas[i - 1] + 1e-12) trending_down = false;
  r.converges = r.deltas.back() < eps && trending_down;
  return r;
}

SequenceReport sequence_report(const std::vector<Shape>& sequence, Index window, double eps,
                               const std::optional<Shape>& limit, double limit_eps) {
  SequenceReport r;
  r.distances = distance_matrix(sequence);
  r.window = window;
  r.eps = eps;
  r.cauchy = is_cauchy(sequence, window, eps);
  if (limit) r.limit = converges_to(sequence, *limit, limit_eps);
  return r;
}

}  // namespace polycomp
