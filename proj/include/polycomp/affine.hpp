#pragma once

#include <Eigen/Dense>

namespace polycomp {

/// Affine map between two d-simplices in homogeneous form.
///
/// Vertices are embedded in the hyperplane x_{d+1} = 1 and stored as the
/// columns of `source` and `target`; `homogeneous` = target * source^{-1}
/// and `linear` is its top-left d x d block.
struct AffineCorrespondence {
  Eigen::MatrixXd source;
  Eigen::MatrixXd target;
  Eigen::MatrixXd homogeneous;
  Eigen::MatrixXd linear;

  int dimension() const { return static_cast<int>(linear.rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

/// Columns are the simplex vertices (given as rows of `vertices`) with a
/// trailing coordinate 1.
Eigen::MatrixXd homogeneous_vertices(const Eigen::MatrixXd& vertices);

/// True when the simplex with the given vertex rows has
/// |det| > 1e-12 * diameter^d in homogeneous form.
bool is_nondegenerate_simplex(const Eigen::MatrixXd& vertices);

/// Both arguments hold d+1 vertex rows of width d. Throws SingularSimplex if
/// either simplex is affinely degenerate.
AffineCorrespondence affine_correspondence(const Eigen::MatrixXd& source_vertices,
                                           const Eigen::MatrixXd& target_vertices);

}  // namespace polycomp
