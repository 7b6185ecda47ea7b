#include "polycomp/affine.hpp"

#include <algorithm>
#include <cmath>

#include "polycomp/error.hpp"

namespace polycomp {

Eigen::MatrixXd homogeneous_vertices(const Eigen::MatrixXd& vertices) {
  const Eigen::Index n = vertices.rows();
  const Eigen::Index d = vertices.cols();
  Eigen::MatrixXd h(d + 1, n);
  h.topRows(d) = vertices.transpose();
  h.row(d).setOnes();
  return h;
}

bool is_nondegenerate_simplex(const Eigen::MatrixXd& vertices) {
  const Eigen::Index d = vertices.cols();
  if (vertices.rows() != d + 1) return false;
  double diameter = 0.0;
  for (Eigen::Index i = 0; i < vertices.rows(); ++i)
    for (Eigen::Index j = i + 1; j < vertices.rows(); ++j)
      diameter = std::max(diameter, (vertices.row(i) - vertices.row(j)).norm());
  if (diameter == 0.0) return false;
  const double det = homogeneous_vertices(vertices).determinant();
  return std::abs(det) > 1e-12 * std::pow(diameter, static_cast<double>(d));
}

Eigen::VectorXd AffineCorrespondence::apply(const Eigen::VectorXd& x) const {
  const Eigen::Index d = linear.rows();
  return linear * x + homogeneous.topRightCorner(d, 1);
}

AffineCorrespondence affine_correspondence(const Eigen::MatrixXd& source_vertices,
                                           const Eigen::MatrixXd& target_vertices) {
  const Eigen::Index d = source_vertices.cols();
  if (source_vertices.rows() != d + 1 || target_vertices.rows() != d + 1 ||
      target_vertices.cols() != d)
    throw Error(ErrorKind::MalformedInput, "a d-simplex needs d+1 vertex rows of width d");
  if (!is_nondegenerate_simplex(source_vertices))
    throw Error(ErrorKind::SingularSimplex, "source simplex is affinely degenerate");
  if (!is_nondegenerate_simplex(target_vertices))
    throw Error(ErrorKind::SingularSimplex, "target simplex is affinely degenerate");

  AffineCorrespondence a;
  a.source = homogeneous_vertices(source_vertices);
  a.target = homogeneous_vertices(target_vertices);
  // A = Q P^{-1}  <=>  P^T A^T = Q^T
  a.homogeneous = a.source.transpose().partialPivLu().solve(a.target.transpose()).transpose();
  a.linear = a.homogeneous.topLeftCorner(d, d);
  return a;
}

}  // namespace polycomp
