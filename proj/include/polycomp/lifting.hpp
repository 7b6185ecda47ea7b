#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polycomp/polytope.hpp"

namespace polycomp {

/// Symmetric PSD square root through an eigendecomposition. Eigenvalues down
/// to -1e-8 are clamped to zero; anything lower throws NotPSD.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& s);

/// U = [[M, B], [A, C]] orthogonal, with A = sqrt(I - M^T M).
struct OrthogonalCompletion {
  Eigen::MatrixXd m;
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Eigen::MatrixXd c;
  Eigen::MatrixXd u;

  /// max |U^T U - I|
  double orthogonality_residual() const;
};

/// B and C come from Gram-Schmidt on the standard basis of R^{2d}; the last
/// column is negated if needed so that det U = +1. Throws NotContraction when
/// the largest squared singular value of M exceeds 1 + 1e-9.
OrthogonalCompletion orthogonal_completion(const Eigen::MatrixXd& m);

struct SimplexLift {
  /// (d+1) x 2d; row i is source vertex i lifted.
  Eigen::MatrixXd vertices;
  OrthogonalCompletion completion;
  double isometry_residual = 0.0;
  double projection_residual = 0.0;
};

/// Isometric copy of the source simplex in R^{2d} whose first d coordinates
/// are the target simplex. Throws NotContraction.
SimplexLift lift_simplex(const Eigen::MatrixXd& source_vertices,
                         const Eigen::MatrixXd& target_vertices);

/// Singular values of the projection onto the first d coordinates, restricted
/// to the linear span of the point set's difference vectors.
Eigen::VectorXd projection_singular_values(const Eigen::MatrixXd& points, int d);

/// True when no direction inside the point set's span keeps its length under
/// projection to the first d coordinates.
bool projection_is_compression(const Eigen::MatrixXd& points, int d);

/// Squared singular values (ascending) of the affine map between two
/// d-simplices embedded in any ambient dimensions, from their edge Gram
/// matrices.
Eigen::VectorXd embedded_alphas(const Eigen::MatrixXd& source_vertices,
                                const Eigen::MatrixXd& target_vertices);

/// Piecewise-isometric realization of the source shape in R^{d(t+1)} that
/// projects onto the target.
struct PleatedEmbedding {
  Triangulation triangulation;
  Shape source;
  Shape target;
  /// N x D; the first d columns reproduce the target.
  Eigen::MatrixXd vertices;
  /// Simplices in placement order (root first).
  std::vector<Index> order;

  int base_dimension() const { return source.dimension(); }
  Index ambient_dimension() const { return static_cast<Index>(vertices.cols()); }
};

/// Throws NotTree, NotContraction or InfeasibleApex.
PleatedEmbedding pleated_embedding(const Shape& source, const Shape& target,
                                   const Triangulation& triangulation);

struct FoldAngle {
  Index first = 0;
  Index second = 0;
  VertexSet shared;
  double angle = 0.0;
  bool flat = false;
};

struct RidgeAngleSum {
  VertexSet face;
  std::vector<Index> simplices;
  double angle_sum = 0.0;
  bool below_pi = false;
};

struct PleatReport {
  std::vector<FoldAngle> folds;
  std::vector<RidgeAngleSum> ridges;
  std::vector<double> isometry_residuals;
  double max_isometry_residual = 0.0;
  double projection_residual = 0.0;
  /// Every fold is flat: the embedding is the target padded with zeros.
  bool zero_pleat = false;
  bool ridge_condition = false;
};

PleatReport pleat_validity(const PleatedEmbedding& pleated);

struct ChainStage {
  Index ambient_dimension = 0;
  Eigen::MatrixXd vertices;
  /// Per simplex, largest alpha of the projection from the previous stage
  /// (empty for the first stage).
  std::vector<double> alpha_max_from_previous;
  /// Per simplex, largest alpha of the map from the source shape (if known).
  std::vector<double> alpha_max_from_source;
};

struct ProjectionChain {
  std::vector<ChainStage> stages;
  /// Per simplex, largest alpha of the projection from the last stage onto R^d.
  std::vector<double> alpha_max_onto_base;
  /// Every step is a weak compression within 1e-9.
  bool all_weak = false;
};

/// Stages in R^{D}, R^{D-1}, ..., R^{d+1}, each the coordinate projection of
/// the previous one.
ProjectionChain projection_chain(const Eigen::MatrixXd& vertices,
                                 const std::vector<VertexSet>& simplices, int base_dimension,
                                 const std::optional<Eigen::MatrixXd>& source_vertices = std::nullopt);
ProjectionChain projection_chain(const PleatedEmbedding& pleated);

}  // namespace polycomp
