#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polycomp/barycentric.hpp"
#include "polycomp/polytope.hpp"

namespace polycomp {

/// ln(alpha_max / alpha_min) for the affine map between two d-simplices
/// given as vertex rows. Throws SingularSimplex.
double delta_simplex(const Eigen::MatrixXd& source_vertices, const Eigen::MatrixXd& target_vertices);
double delta_simplex(const Shape& source, const Shape& target);

struct PolytopeDistance {
  double delta = 0.0;
  Index argmax = 0;
  Index simplex_count = 0;
};

/// Largest simplex distance over the pieces of the induced map.
PolytopeDistance polytope_distance(const Shape& source, const Shape& target,
                                   Subdivision subdivision = Subdivision::Automatic);
double delta_polytope(const Shape& source, const Shape& target,
                      Subdivision subdivision = Subdivision::Automatic);

/// Symmetric matrix of pairwise distances.
Eigen::MatrixXd distance_matrix(const std::vector<Shape>& shapes);

/// True when all pairwise vertex distances of `a` are one common multiple of
/// those of `b` (equality up to isometry and homothety).
bool homothetic(const Shape& a, const Shape& b, double rel_tol = 1e-6);

struct AxiomViolation {
  std::string axiom;
  std::vector<Index> shapes;
  double amount = 0.0;
};

struct MetricAxiomReport {
  Eigen::MatrixXd distances;
  Index pairs_checked = 0;
  Index triples_checked = 0;
  double max_asymmetry = 0.0;
  double max_similarity_delta = 0.0;
  double max_triangle_excess = 0.0;
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
};

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kInvarianceTol = 1e-10;
inline constexpr double kTriangleSlack = 1e-9;

/// Checks symmetry, similarity invariance, positivity on non-homothetic
/// pairs and the triangle inequality over all pairs and ordered triples.
/// Similarity images use a generator seeded with `seed`.
MetricAxiomReport metric_axiom_suite(const std::vector<Shape>& shapes, std::uint64_t seed = 1);

struct CauchyResult {
  bool cauchy = true;
  std::optional<std::pair<Index, Index>> violation;
  double max_tail_delta = 0.0;
};

/// True iff every pair with both indices >= window is closer than eps.
CauchyResult is_cauchy(const std::vector<Shape>& sequence, Index window, double eps);

struct ConvergenceResult {
  bool converges = false;
  std::vector<double> deltas;
};

/// True iff the last distance to `limit` is below eps and the distances are
/// non-increasing over the last quarter of the sequence.
ConvergenceResult converges_to(const std::vector<Shape>& sequence, const Shape& limit, double eps);

struct SequenceReport {
  Eigen::MatrixXd distances;
  Index window = 0;
  double eps = 0.0;
  CauchyResult cauchy;
  std::optional<ConvergenceResult> limit;
};

SequenceReport sequence_report(const std::vector<Shape>& sequence, Index window, double eps,
                               const std::optional<Shape>& limit = std::nullopt,
                               double limit_eps = 1e-3);

}  // namespace polycomp
