#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "oracles.hpp"
#include "polycomp/compression.hpp"
#include "polycomp/error.hpp"
#include "polycomp/shape_metric.hpp"

using namespace polycomp;

namespace {

PolytopePtr share(CombinatorialPolytope p) { return std::make_shared<const CombinatorialPolytope>(std::move(p)); }

Eigen::MatrixXd random_simplex(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  while (true) {
    Eigen::MatrixXd p(d + 1, d);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j < d; ++j) p(i, j) = n(rng);
    if (std::abs((p.bottomRows(d).rowwise() - p.row(0)).determinant()) > 0.1) return p;
  }
}

Shape rectangle(double w, double h) {
  static const PolytopePtr square = share(ngon_polytope(4));
  Eigen::MatrixXd v(4, 2);
  v << 0, 0, w, 0, w, h, 0, h;
  return make_shape(square, v);
}

// Brute force: flags from the power-set lattice, barycentres by averaging, SVD per chain.
double delta_by_flags(const Shape& p, const Shape& q) {
  const auto faces = oracle::lattice_by_power_set(p.vertex_count(), p.polytope->facets());
  double best = 0.0;
  for (const auto& flag : oracle::flags(faces)) {
    Eigen::MatrixXd sp(static_cast<Eigen::Index>(flag.size()), p.dimension());
    Eigen::MatrixXd sq(sp.rows(), sp.cols());
    for (std::size_t k = 0; k < flag.size(); ++k) {
      Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(sp.cols()), b = a;
      for (Index v : flag[k]) {
        a += p.vertices.row(static_cast<Eigen::Index>(v));
        b += q.vertices.row(static_cast<Eigen::Index>(v));
      }
      sp.row(static_cast<Eigen::Index>(k)) = a / static_cast<double>(flag[k].size());
      sq.row(static_cast<Eigen::Index>(k)) = b / static_cast<double>(flag[k].size());
    }
    const Eigen::VectorXd s = oracle::edge_route_singular_values(sp, sq);
    best = std::max(best, 2.0 * std::log(s(0) / s(s.size() - 1)));
  }
  return best;
}

Eigen::MatrixXd stretch(double x, double y) {
  Eigen::Matrix2d m;
  m << x, 0, 0, y;
  return m;
}

}  // namespace

TEST_CASE("simplex distance examples") {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd p = random_simplex(2, rng);
  CHECK(delta_simplex(p, p) == doctest::Approx(0.0));
  Eigen::Matrix2d rot;
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  CHECK(std::abs(delta_simplex(p, 3.0 * p * rot.transpose())) < 1e-12);
  CHECK(delta_simplex(p, p * stretch(2, 1)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  Eigen::MatrixXd flat(3, 2);
  flat << 0, 0, 1, 1, 2, 2;
  CHECK_THROWS_AS(delta_simplex(p, flat), Error);
}

TEST_CASE("simplex distance matches the edge-route oracle and its inverse") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 4;
    const Eigen::MatrixXd p = random_simplex(d, rng), q = random_simplex(d, rng);
    const Eigen::VectorXd s = oracle::edge_route_singular_values(p, q);
    const double delta = delta_simplex(p, q);
    CHECK(delta == doctest::Approx(2.0 * std::log(s(0) / s(d - 1))).epsilon(1e-10));
    CHECK(std::abs(delta - delta_simplex(q, p)) <= 1e-10);
  }
}

TEST_CASE("square versus rectangle against the eight-chain oracle") {
  const Shape sq = rectangle(1, 1), rect = rectangle(2, 1);
  const PolytopeDistance d = polytope_distance(sq, rect);
  CHECK(d.simplex_count == 8);
  CHECK(d.delta == doctest::Approx(delta_by_flags(sq, rect)).epsilon(1e-12));
  CHECK(d.delta == doctest::Approx(delta_polytope(rect, sq)).epsilon(1e-12));
  CHECK(d.delta > 0.0);
}

TEST_CASE("polygon distances against the flag oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  for (Index n = 4; n <= 7; ++n) {
    const PolytopePtr poly = share(ngon_polytope(n));
    auto jittered = [&] {
      Eigen::MatrixXd v(static_cast<Eigen::Index>(n), 2);
      for (Index k = 0; k < n; ++k) {
        const double a = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + u(rng);
        v.row(static_cast<Eigen::Index>(k)) << std::cos(a) * (1 + u(rng)), std::sin(a) * (1 + u(rng));
      }
      return make_shape(poly, v);
    };
    const Shape p = jittered(), q = jittered();
    CHECK(delta_polytope(p, q) == doctest::Approx(delta_by_flags(p, q)).epsilon(1e-10));
  }
}

TEST_CASE("homothetic copies are at distance zero and the suite is clean") {
  std::mt19937_64 rng(4);
  const Shape base = rectangle(1.0, 0.5);
  std::vector<Shape> copies{base, scaled(base, 2.0), scaled(base, 0.3)};
  const MetricAxiomReport r = metric_axiom_suite(copies, 9);
  CHECK(r.ok());
  CHECK(r.distances.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(homothetic(base, scaled(base, 4.0)));
  CHECK_FALSE(homothetic(base, rectangle(1.0, 0.6)));

  std::vector<Shape> mixed{rectangle(1, 1), rectangle(2, 1), rectangle(1, 3), rectangle(1.5, 1.2)};
  const MetricAxiomReport m = metric_axiom_suite(mixed, 10);
  CHECK(m.ok());
  CHECK(m.triples_checked == 24);
  CHECK(m.pairs_checked == 6);
}

TEST_CASE("counterexample triangles with the unit triangle satisfy the triangle inequality") {
  const PolytopePtr tri = share(simplex_polytope(2));
  Eigen::MatrixXd p(3, 2), q(3, 2), e(3, 2);
  p << 0, 1.692, 3.452, 0.527, 1.901, 0;
  q << 3.452, 3.519, 4.696, 2.078, 4.393, 1.692;
  e << 0, 0, 1, 0, 0, 1;
  const MetricAxiomReport r = metric_axiom_suite({make_shape(tri, p), make_shape(tri, q), make_shape(tri, e)});
  CHECK(r.ok());
  CHECK(r.max_triangle_excess <= 1e-9);
}

TEST_CASE("extreme singular values compose sub-multiplicatively") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 3;
    const Eigen::MatrixXd p = random_simplex(d, rng), q = random_simplex(d, rng), r = random_simplex(d, rng);
    const Eigen::VectorXd a = gram_eigenvalues(affine_correspondence(p, q).linear);
    const Eigen::VectorXd b = gram_eigenvalues(affine_correspondence(q, r).linear);
    const Eigen::VectorXd c = gram_eigenvalues(affine_correspondence(p, r).linear);
    CHECK(c(d - 1) <= a(d - 1) * b(d - 1) * (1 + 1e-9));
    CHECK(c(0) >= a(0) * b(0) * (1 - 1e-9));
  }
}

TEST_CASE("Cauchy sequences") {
  const Shape p0 = rectangle(1, 1);
  auto member = [&](double x) { return make_shape(p0.polytope, p0.vertices * stretch(x, 1)); };

  std::vector<Shape> constant(8, p0);
  CHECK(is_cauchy(constant, 0, 1e-12).cauchy);

  std::vector<Shape> shrinking, growing;
  for (int n = 1; n <= 60; ++n) {
    shrinking.push_back(member(1.0 + 1.0 / n));
    growing.push_back(member(static_cast<double>(n)));
  }
  const CauchyResult c = is_cauchy(shrinking, 30, 0.05);
  CHECK(c.cauchy);
  CHECK(c.max_tail_delta == doctest::Approx(2.0 * std::log((1 + 1.0 / 31) / (1 + 1.0 / 60))).epsilon(1e-9));
  const CauchyResult g = is_cauchy(growing, 30, 0.05);
  CHECK_FALSE(g.cauchy);
  REQUIRE(g.violation.has_value());
  CHECK(g.violation->first == 30);
  CHECK(delta_polytope(growing[9], growing[19]) == doctest::Approx(std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("convergence to a limit") {
  const Shape p0 = rectangle(1, 1);
  std::vector<Shape> constant(6, p0);
  CHECK(converges_to(constant, p0, 1e-9).converges);

  std::vector<Shape> growing;
  for (int n = 1; n <= 20; ++n) growing.push_back(make_shape(p0.polytope, p0.vertices * stretch(n, 1)));
  CHECK_FALSE(converges_to(growing, p0, 1e-3).converges);
  CHECK_FALSE(converges_to(growing, growing[5], 1e-3).converges);

  const PolytopePtr hex = share(ngon_polytope(6));
  auto hexagon = [&](double t, ShapeMode mode) {
    Eigen::MatrixXd v(6, 2);
    for (int k = 0; k < 6; ++k) v.row(k) << std::cos(k * M_PI / 3), std::sin(k * M_PI / 3);
    v.row(1) *= 0.5 + 0.5 * t;
    return make_shape(hex, v, mode);
  };
  std::vector<Shape> seq;
  for (int n = 1; n <= 20; ++n) seq.push_back(hexagon(std::pow(0.5, n), ShapeMode::Strict));
  const Shape limit = hexagon(0.0, ShapeMode::Weak);
  const ConvergenceResult r = converges_to(seq, limit, 1e-3);
  CHECK(r.converges);
  for (std::size_t i = 1; i < r.deltas.size(); ++i) CHECK(r.deltas[i] <= r.deltas[i - 1]);
  CHECK(validate_shape(limit).accepts(ShapeMode::Weak));
  CHECK_FALSE(validate_shape(limit).accepts(ShapeMode::Strict));

  const SequenceReport report = sequence_report(seq, 10, 0.05, limit);
  CHECK(report.cauchy.cauchy);
  REQUIRE(report.limit.has_value());
  CHECK(report.limit->converges);
  CHECK((report.distances - report.distances.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(report.distances.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(report.distances.minCoeff() >= 0.0);
}

TEST_CASE("collapsed limits are rejected") {
  const PolytopePtr square = share(ngon_polytope(4));
  Eigen::MatrixXd v(4, 2);
  v << 0, 0, 1, 0, 1, 0, 0, 1;  // two vertices coincide
  const Shape bad = make_shape(square, v, ShapeMode::Weak);
  CHECK_THROWS_AS(delta_polytope(rectangle(1, 1), bad), Error);
}
