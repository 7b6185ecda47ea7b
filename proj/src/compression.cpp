#include "polycomp/compression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polycomp/error.hpp"

namespace polycomp {

Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXd& linear) {
  const Eigen::MatrixXd gram = linear.transpose() * linear;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseMax(0.0);
}

SpectralSummary spectral_summary(const InducedMap& map) {
  SpectralSummary s;
  s.alpha_min = std::numeric_limits<double>::infinity();
  s.alpha_max = -std::numeric_limits<double>::infinity();
  s.alphas.reserve(map.pieces.size());
  for (Index k = 0; k < map.pieces.size(); ++k) {
    Eigen::VectorXd a = gram_eigenvalues(map.pieces[k].affine.linear);
    if (a(0) < s.alpha_min) {
      s.alpha_min = a(0);
      s.argmin = k;
    }
    if (a(a.size() - 1) > s.alpha_max) {
      s.alpha_max = a(a.size() - 1);
      s.argmax = k;
    }
    s.alphas.push_back(std::move(a));
  }
  return s;
}

Verdict classify_alpha(double alpha_max, double tol) {
  if (alpha_max < 1.0 - tol) return Verdict::Compression;
  if (alpha_max <= 1.0 + tol) return Verdict::WeakCompressionNotStrict;
  return Verdict::NotWeakCompression;
}

EdgeReport edge_contraction_check(const Shape& source, const Shape& target, double tol) {
  if (!same_polytope(source, target))
    throw Error(ErrorKind::PolytopeMismatch, "shapes realize different combinatorial polytopes");
  EdgeReport report;
  report.contracting = true;
  for (auto [i, j] : source.polytope->edges()) {
    EdgeRatio e;
    e.i = i;
    e.j = j;
    e.source_length = (source.vertex(i) - source.vertex(j)).norm();
    e.target_length = (target.vertex(i) - target.vertex(j)).norm();
    e.ratio = e.target_length / e.source_length;
    if (!(e.ratio < 1.0 - tol)) report.contracting = false;
    report.edges.push_back(e);
  }
  return report;
}

namespace {

ExtremalPair finish_pair(const MapPiece& piece, Index simplex, Eigen::VectorXd x,
                         Eigen::VectorXd y, std::optional<Index> anchor) {
  ExtremalPair pair;
  pair.simplex = simplex;
  pair.fx = piece.affine.apply(x);
  pair.fy = piece.affine.apply(y);
  pair.ratio = (piece.affine.linear * (y - x)).norm() / (y - x).norm();
  pair.x = std::move(x);
  pair.y = std::move(y);
  pair.anchor = anchor;
  return pair;
}

}  // namespace

ExtremalPair extremal_pair(const InducedMap& map) {
  return extremal_pair(map, spectral_summary(map));
}

ExtremalPair extremal_pair(const InducedMap& map, const SpectralSummary& summary) {
  const Index k = summary.argmax;
  const MapPiece& piece = map.pieces.at(k);
  const Eigen::MatrixXd& linear = piece.affine.linear;
  const Eigen::Index d = linear.rows();
  const Eigen::MatrixXd verts = piece.source_vertices();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(linear, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::Index multiplicity = 1;
  while (multiplicity < d &&
         sigma(0) - sigma(multiplicity) <= 1e-12 * std::max(1.0, sigma(0)))
    ++multiplicity;
  const Eigen::MatrixXd top = svd.matrixV().leftCols(multiplicity);

  // An edge inside the top singular subspace is a vertex-anchored maximiser.
  for (Eigen::Index a = 0; a <= d; ++a)
    for (Eigen::Index b = a + 1; b <= d; ++b) {
      const Eigen::VectorXd e = (verts.row(b) - verts.row(a)).transpose();
      const Eigen::VectorXd unit = e.normalized();
      if ((unit - top * (top.transpose() * unit)).norm() <= 1e-9)
        return finish_pair(piece, k, verts.row(a).transpose(), verts.row(b).transpose(),
                           static_cast<Index>(a));
    }

  // Otherwise move from the lowest-index vertex whose tangent cone contains +u or -u.
  const Eigen::VectorXd u = svd.matrixV().col(0);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  rhs.head(d) = u;
  const Eigen::VectorXd delta = piece.affine.source.partialPivLu().solve(rhs);
  const double slack = 1e-12 * delta.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j <= d; ++j)
    for (double sign : {1.0, -1.0}) {
      const Eigen::VectorXd dl = sign * delta;
      if (dl(j) >= -slack) continue;
      bool admissible = true;
      for (Eigen::Index i = 0; i <= d && admissible; ++i)
        if (i != j && dl(i) < -slack) admissible = false;
      if (!admissible) continue;
      const double s = 1.0 / -dl(j);
      const Eigen::VectorXd x = verts.row(j).transpose();
      return finish_pair(piece, k, x, x + s * sign * u, static_cast<Index>(j));
    }

  // No vertex cone contains the direction (possible for d >= 3): use the
  // longest chord through the simplex's centroid.
  const Eigen::VectorXd centroid = verts.colwise().mean().transpose();
  const double share = 1.0 / static_cast<double>(d + 1);
  double forward = std::numeric_limits<double>::infinity();
  double backward = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i <= d; ++i) {
    if (delta(i) < 0) forward = std::min(forward, share / -delta(i));
    if (delta(i) > 0) backward = std::min(backward, share / delta(i));
  }
  return finish_pair(piece, k, centroid - backward * u, centroid + forward * u, std::nullopt);
}

Classification classify(const InducedMap& map, double tol) {
  Classification c;
  c.spectrum = spectral_summary(map);
  c.verdict = classify_alpha(c.spectrum.alpha_max, tol);
  c.edges = edge_contraction_check(map.source, map.target, tol);
  c.edge_contracting = c.edges.contracting;
  c.witness = extremal_pair(map, c.spectrum);
  return c;
}

CriticalScaling scale_critical(const Shape& source, const Shape& target, double tol) {
  const SpectralSummary s = spectral_summary(induced_map(source, target));
  CriticalScaling out;
  out.lambda = 1.0 / std::sqrt(s.alpha_max);
  out.scaled_target = scaled(target, out.lambda);
  out.classification = classify(induced_map(source, out.scaled_target), tol);
  return out;
}

OrderReport compare_order(const Shape& source, const Shape& target, double tol) {
  const SpectralSummary fwd = spectral_summary(induced_map(source, target));
  const SpectralSummary bwd = spectral_summary(induced_map(target, source));
  OrderReport r;
  r.forward = classify_alpha(fwd.alpha_max, tol);
  r.backward = classify_alpha(bwd.alpha_max, tol);
  r.forward_alpha_max = fwd.alpha_max;
  r.backward_alpha_max = bwd.alpha_max;

  const bool unit_singular_values =
      std::sqrt(fwd.alpha_min) >= 1.0 - tol && std::sqrt(fwd.alpha_max) <= 1.0 + tol;
  if (is_weak(r.forward) && is_weak(r.backward) && unit_singular_values)
    r.relation = Order::Isometric;
  else if (is_weak(r.forward))
    r.relation = Order::SourceBelow;
  else if (is_weak(r.backward))
    r.relation = Order::TargetBelow;
  else
    r.relation = Order::Incomparable;
  return r;
}

Perturbation perturbation_classify(const Eigen::MatrixXd& simplex_vertices,
                                   const Eigen::MatrixXd& direction, double tol) {
  const Eigen::Index d = simplex_vertices.cols();
  if (simplex_vertices.rows() != d + 1)
    throw Error(ErrorKind::MalformedInput, "perturbation base must be a d-simplex");
  if (direction.cols() != d + 1 || (direction.rows() != d && direction.rows() != d + 1))
    throw Error(ErrorKind::MalformedInput,
                "direction must have d or d+1 rows and one column per simplex vertex");
  if (!is_nondegenerate_simplex(simplex_vertices))
    throw Error(ErrorKind::SingularSimplex, "perturbation base simplex is degenerate");

  Perturbation p;
  p.base = homogeneous_vertices(simplex_vertices);
  p.direction = Eigen::MatrixXd::Zero(d + 1, d + 1);
  p.direction.topRows(d) = direction.topRows(d);
  if (direction.rows() == d + 1 && direction.row(d).cwiseAbs().maxCoeff() > 0.0)
    throw Error(ErrorKind::MalformedInput, "last row of the direction matrix must be zero");

  // W = V P^{-1}
  const Eigen::MatrixXd w =
      p.base.transpose().partialPivLu().solve(p.direction.transpose()).transpose();
  const Eigen::MatrixXd reduced = w.topLeftCorner(d, d);
  p.symmetric = reduced + reduced.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.symmetric, Eigen::EigenvaluesOnly);
  p.eigenvalues = eig.eigenvalues();
  p.weak_compression = p.eigenvalues.maxCoeff() <= tol;
  return p;
}

TrackedPoint TrackedPoint::face_barycentre(const VertexSet& face) {
  TrackedPoint p;
  for (Index v : face) p.weights.emplace_back(v, 1.0 / static_cast<double>(face.size()));
  return p;
}

Eigen::VectorXd TrackedPoint::at(const Eigen::MatrixXd& vertex_rows) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(vertex_rows.cols());
  for (auto [v, w] : weights) {
    if (v >= static_cast<Index>(vertex_rows.rows()))
      throw Error(ErrorKind::MalformedInput, "tracked point references a missing vertex");
    out += w * vertex_rows.row(static_cast<Eigen::Index>(v)).transpose();
  }
  return out;
}

double distance_derivative(const Shape& shape, const Eigen::MatrixXd& velocities,
                           const TrackedPoint& x, const TrackedPoint& y, double h) {
  const Eigen::Index d = shape.dimension();
  const auto n = static_cast<Eigen::Index>(shape.vertex_count());
  if (velocities.cols() != n || velocities.rows() < d || velocities.rows() > d + 1)
    throw Error(ErrorKind::MalformedInput,
                "velocities need d (or d+1) rows and one column per vertex");
  const Eigen::MatrixXd v = velocities.topRows(d).transpose();
  auto dist = [&](double t) {
    const Eigen::MatrixXd moved = shape.vertices + t * v;
    return (x.at(moved) - y.at(moved)).norm();
  };
  return (dist(h) - dist(-h)) / (2.0 * h);
}

}  // namespace polycomp
