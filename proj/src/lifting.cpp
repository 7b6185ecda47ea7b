#include "polycomp/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "polycomp/affine.hpp"
#include "polycomp/barycentric.hpp"
#include "polycomp/compression.hpp"
#include "polycomp/error.hpp"

namespace polycomp {

namespace {

constexpr double kContractionTol = 1e-9;

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& m, const VertexSet& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (Eigen::Index k = 0; k < out.rows(); ++k)
    out.row(k) = m.row(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]));
  return out;
}

double max_distance_mismatch(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.rows(); ++j)
      worst = std::max(worst, std::abs((a.row(i) - a.row(j)).norm() - (b.row(i) - b.row(j)).norm()));
  return worst;
}

// Angle at the origin between the components of u and v orthogonal to span(basis).
double angle_outside(const Eigen::MatrixXd& basis, Eigen::VectorXd u, Eigen::VectorXd v) {
  if (basis.cols() > 0) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    const Eigen::MatrixXd q =
        qr.householderQ() * Eigen::MatrixXd::Identity(basis.rows(), basis.cols());
    u -= q * (q.transpose() * u);
    v -= q * (q.transpose() * v);
  }
  const double c = u.dot(v) / (u.norm() * v.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) throw Error(ErrorKind::MalformedInput, "matrix is not square");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::NotPSD, "matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const Eigen::VectorXd& values = eig.eigenvalues();
  if (values.size() > 0 && values.minCoeff() < -1e-8)
    throw Error(ErrorKind::NotPSD, "matrix has eigenvalue " + std::to_string(values.minCoeff()));
  const Eigen::VectorXd roots = values.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

double OrthogonalCompletion::orthogonality_residual() const {
  const auto n = u.cols();
  return (u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

OrthogonalCompletion orthogonal_completion(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::MalformedInput, "completion needs a non-empty square matrix");
  const Eigen::Index d = m.rows();
  const Eigen::VectorXd alphas = gram_eigenvalues(m);
  if (alphas(d - 1) > 1.0 + kContractionTol)
    throw Error(ErrorKind::NotContraction,
                "largest squared singular value " + std::to_string(alphas(d - 1)) + " exceeds 1");

  OrthogonalCompletion out;
  out.m = m;
  out.a = symmetric_sqrt(Eigen::MatrixXd::Identity(d, d) - m.transpose() * m);

  Eigen::MatrixXd u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = m;
  u.bottomLeftCorner(d, d) = out.a;

  // Pivoted Gram-Schmidt over the standard basis, orthogonalising twice.
  std::vector<bool> used(static_cast<std::size_t>(2 * d), false);
  for (Eigen::Index col = d; col < 2 * d; ++col) {
    const auto basis = u.leftCols(col);
    Eigen::Index best = -1;
    double best_norm = 0.0;
    Eigen::VectorXd best_vec;
    for (Eigen::Index k = 0; k < 2 * d; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Unit(2 * d, k);
      for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.transpose() * v);
      if (v.norm() > best_norm) {
        best_norm = v.norm();
        best = k;
        best_vec = v;
      }
    }
    if (best < 0 || best_norm < 1e-8)
      throw Error(ErrorKind::NotContraction, "could not extend the columns to an orthonormal basis");
    used[static_cast<std::size_t>(best)] = true;
    best_vec /= best_norm;
    best_vec -= basis * (basis.transpose() * best_vec);
    u.col(col) = best_vec.normalized();
  }
  if (u.determinant() < 0) u.col(2 * d - 1) = -u.col(2 * d - 1);

  out.b = u.topRightCorner(d, d);
  out.c = u.bottomRightCorner(d, d);
  out.u = std::move(u);
  return out;
}

SimplexLift lift_simplex(const Eigen::MatrixXd& source_vertices,
                         const Eigen::MatrixXd& target_vertices) {
  const AffineCorrespondence affine = affine_correspondence(source_vertices, target_vertices);
  const Eigen::Index d = affine.dimension();
  SimplexLift lift;
  lift.completion = orthogonal_completion(affine.linear);
  lift.vertices.resize(d + 1, 2 * d);
  for (Eigen::Index i = 0; i <= d; ++i) {
    const Eigen::VectorXd edge = (source_vertices.row(i) - source_vertices.row(0)).transpose();
    lift.vertices.row(i).head(d) = target_vertices.row(0) + (lift.completion.m * edge).transpose();
    lift.vertices.row(i).tail(d) = (lift.completion.a * edge).transpose();
  }
  lift.isometry_residual = max_distance_mismatch(lift.vertices, source_vertices);
  lift.projection_residual = (lift.vertices.leftCols(d) - target_vertices).cwiseAbs().maxCoeff();
  return lift;
}

Eigen::VectorXd projection_singular_values(const Eigen::MatrixXd& points, int d) {
  if (points.rows() < 2 || points.cols() < d)
    throw Error(ErrorKind::MalformedInput, "need at least two points of width >= d");
  const Eigen::MatrixXd diffs = points.bottomRows(points.rows() - 1).rowwise() - points.row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-9 * std::max(1.0, s(0))) ++rank;
  const Eigen::MatrixXd restricted = svd.matrixV().leftCols(rank).topRows(d);
  return Eigen::JacobiSVD<Eigen::MatrixXd>(restricted).singularValues();
}

bool projection_is_compression(const Eigen::MatrixXd& points, int d) {
  const Eigen::VectorXd s = projection_singular_values(points, d);
  return s.size() == 0 || s.maxCoeff() < 1.0 - 1e-9;
}

Eigen::VectorXd embedded_alphas(const Eigen::MatrixXd& source_vertices,
                                const Eigen::MatrixXd& target_vertices) {
  const Eigen::Index d = source_vertices.rows() - 1;
  if (d < 1 || target_vertices.rows() != d + 1)
    throw Error(ErrorKind::MalformedInput, "simplices need matching vertex counts");
  const Eigen::MatrixXd es = source_vertices.bottomRows(d).rowwise() - source_vertices.row(0);
  const Eigen::MatrixXd et = target_vertices.bottomRows(d).rowwise() - target_vertices.row(0);
  const Eigen::MatrixXd gs = es * es.transpose();
  const Eigen::MatrixXd gt = et * et.transpose();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(gt, gs, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success)
    throw Error(ErrorKind::SingularSimplex, "source simplex is degenerate");
  return ges.eigenvalues().cwiseMax(0.0);
}

PleatedEmbedding pleated_embedding(const Shape& source, const Shape& target,
                                   const Triangulation& triangulation) {
  if (!same_polytope(source, target) || !(*triangulation.polytope == *source.polytope))
    throw Error(ErrorKind::PolytopeMismatch, "shapes and triangulation disagree on the polytope");
  if (!triangulation.graph.is_tree)
    throw Error(ErrorKind::NotTree, "face-pairing graph of the triangulation is not a tree");
  check_triangulation_covers(source, triangulation);
  check_triangulation_covers(target, triangulation);

  const InducedMap map = triangulated_map(source, target, triangulation);
  const SpectralSummary spectrum = spectral_summary(map);
  if (spectrum.alpha_max > 1.0 + kContractionTol)
    throw Error(ErrorKind::NotContraction,
                "simplex " + std::to_string(spectrum.argmax) + " has alpha_max " +
                    std::to_string(spectrum.alpha_max));

  const Eigen::Index d = source.dimension();
  const auto& simplices = triangulation.simplices;
  const Index t = simplices.size();
  const Eigen::Index ambient = d * static_cast<Eigen::Index>(t + 1);

  PleatedEmbedding out{triangulation, source, target,
                       Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(source.vertex_count()), ambient),
                       {}};
  std::vector<bool> placed(source.vertex_count(), false);

  const SimplexLift root = lift_simplex(rows_of(source.vertices, simplices[0]),
                                        rows_of(target.vertices, simplices[0]));
  for (std::size_t k = 0; k < simplices[0].size(); ++k) {
    out.vertices.row(static_cast<Eigen::Index>(simplices[0][k])).head(2 * d) =
        root.vertices.row(static_cast<Eigen::Index>(k));
    placed[simplices[0][k]] = true;
  }
  Eigen::Index used = 2 * d;

  std::vector<std::vector<Index>> adjacent(t);
  for (auto [a, b] : triangulation.graph.edges) {
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  std::vector<bool> visited(t, false);
  std::deque<Index> queue{0};
  visited[0] = true;
  while (!queue.empty()) {
    const Index parent = queue.front();
    queue.pop_front();
    out.order.push_back(parent);
    for (Index child : adjacent[parent]) {
      if (visited[child]) continue;
      visited[child] = true;
      queue.push_back(child);

      const VertexSet& cs = simplices[child];
      const VertexSet& ps = simplices[parent];
      Index apex = cs[0];
      VertexSet shared;
      for (Index v : cs) {
        if (std::binary_search(ps.begin(), ps.end(), v))
          shared.push_back(v);
        else
          apex = v;
      }
      const Eigen::Index fresh = used;
      used += d;

      const Eigen::VectorXd q = target.vertex(apex);
      std::vector<double> lengths(shared.size());
      for (std::size_t j = 0; j < shared.size(); ++j)
        lengths[j] = (source.vertex(apex) - source.vertex(shared[j])).norm();

      if (!placed[apex]) {
        const Eigen::Index old_width = fresh - d;
        Eigen::VectorXd r(static_cast<Eigen::Index>(shared.size()));
        Eigen::MatrixXd w(old_width, r.size());
        for (Eigen::Index j = 0; j < r.size(); ++j) {
          const Index v = shared[static_cast<std::size_t>(j)];
          r(j) = lengths[static_cast<std::size_t>(j)] * lengths[static_cast<std::size_t>(j)] -
                 (q - target.vertex(v)).squaredNorm();
          w.col(j) = out.vertices.row(static_cast<Eigen::Index>(v)).segment(d, old_width).transpose();
        }
        // Pairwise differences of |w - w_j|^2 = r_j - s are linear in w;
        // s = r_0 - |w - w_0|^2 is largest at the point of the solution set
        // closest to w_0.
        Eigen::VectorXd offset = Eigen::VectorXd::Zero(old_width);
        if (r.size() > 1) {
          Eigen::MatrixXd g(r.size() - 1, old_width);
          Eigen::VectorXd h(r.size() - 1);
          for (Eigen::Index j = 1; j < r.size(); ++j) {
            g.row(j - 1) = (w.col(j) - w.col(0)).transpose();
            h(j - 1) = 0.5 * (w.col(j).squaredNorm() - w.col(0).squaredNorm() - r(j) + r(0));
          }
          Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
          svd.setThreshold(1e-10);
          offset = svd.solve(h - g * w.col(0));
        }
        double s = r(0) - offset.squaredNorm();
        if (s < -1e-9)
          throw Error(ErrorKind::InfeasibleApex,
                      "no room for vertex " + std::to_string(apex) + " (budget " +
                          std::to_string(s) + ")");
        s = std::max(s, 0.0);
        auto row = out.vertices.row(static_cast<Eigen::Index>(apex));
        row.head(d) = q.transpose();
        row.segment(d, old_width) = (w.col(0) + offset).transpose();
        row(fresh) = std::sqrt(s);
        placed[apex] = true;
      }

      for (std::size_t j = 0; j < shared.size(); ++j) {
        const double got = (out.vertices.row(static_cast<Eigen::Index>(apex)) -
                            out.vertices.row(static_cast<Eigen::Index>(shared[j])))
                               .norm();
        if (std::abs(got - lengths[j]) > 1e-9 * std::max(1.0, lengths[j]))
          throw Error(ErrorKind::InfeasibleApex,
                      "vertex " + std::to_string(apex) + " misses its edge length to vertex " +
                          std::to_string(shared[j]) + " by " +
                          std::to_string(std::abs(got - lengths[j])));
      }
    }
  }
  return out;
}

PleatReport pleat_validity(const PleatedEmbedding& pleated) {
  PleatReport report;
  const auto& simplices = pleated.triangulation.simplices;
  const Eigen::Index d = pleated.base_dimension();
  const Eigen::MatrixXd& x = pleated.vertices;

  for (const VertexSet& simplex : simplices) {
    const double r = max_distance_mismatch(rows_of(x, simplex), rows_of(pleated.source.vertices, simplex));
    report.isometry_residuals.push_back(r);
    report.max_isometry_residual = std::max(report.max_isometry_residual, r);
  }
  report.projection_residual = (x.leftCols(d) - pleated.target.vertices).cwiseAbs().maxCoeff();

  auto basis_from = [&](const VertexSet& face) {
    Eigen::MatrixXd basis(x.cols(), static_cast<Eigen::Index>(face.size()) - 1);
    for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(face.size()); ++k)
      basis.col(k - 1) = (x.row(static_cast<Eigen::Index>(face[static_cast<std::size_t>(k)])) -
                          x.row(static_cast<Eigen::Index>(face[0])))
                             .transpose();
    return basis;
  };

  report.zero_pleat = true;
  for (auto [a, b] : pleated.triangulation.graph.edges) {
    FoldAngle fold;
    fold.first = a;
    fold.second = b;
    std::set_intersection(simplices[a].begin(), simplices[a].end(), simplices[b].begin(),
                          simplices[b].end(), std::back_inserter(fold.shared));
    Index apex_a = 0, apex_b = 0;
    for (Index v : simplices[a])
      if (!std::binary_search(fold.shared.begin(), fold.shared.end(), v)) apex_a = v;
    for (Index v : simplices[b])
      if (!std::binary_search(fold.shared.begin(), fold.shared.end(), v)) apex_b = v;
    const Eigen::VectorXd origin = x.row(static_cast<Eigen::Index>(fold.shared[0])).transpose();
    fold.angle = angle_outside(basis_from(fold.shared),
                               x.row(static_cast<Eigen::Index>(apex_a)).transpose() - origin,
                               x.row(static_cast<Eigen::Index>(apex_b)).transpose() - origin);
    fold.flat = std::abs(M_PI - fold.angle) <= kFlatAngleTol;
    report.zero_pleat = report.zero_pleat && fold.flat;
    report.folds.push_back(std::move(fold));
  }

  std::map<VertexSet, std::vector<Index>> by_ridge;
  for (Index s = 0; s < simplices.size(); ++s) {
    const VertexSet& simplex = simplices[s];
    for (std::size_t i = 0; i < simplex.size(); ++i)
      for (std::size_t j = i + 1; j < simplex.size(); ++j) {
        VertexSet ridge;
        for (std::size_t k = 0; k < simplex.size(); ++k)
          if (k != i && k != j) ridge.push_back(simplex[k]);
        by_ridge[ridge].push_back(s);
      }
  }
  report.ridge_condition = true;
  for (const auto& [face, members] : by_ridge) {
    if (members.size() < 2) continue;
    RidgeAngleSum sum;
    sum.face = face;
    sum.simplices = members;
    for (Index s : members) {
      VertexSet others;
      for (Index v : simplices[s])
        if (!std::binary_search(face.begin(), face.end(), v)) others.push_back(v);
      Eigen::VectorXd origin = face.empty() ? Eigen::VectorXd(x.row(static_cast<Eigen::Index>(others[0])).transpose())
                                            : Eigen::VectorXd(x.row(static_cast<Eigen::Index>(face[0])).transpose());
      Eigen::MatrixXd basis = face.empty() ? Eigen::MatrixXd(x.cols(), 0) : basis_from(face);
      sum.angle_sum += angle_outside(basis, x.row(static_cast<Eigen::Index>(others[0])).transpose() - origin,
                                     x.row(static_cast<Eigen::Index>(others[1])).transpose() - origin);
    }
    sum.below_pi = sum.angle_sum < M_PI - kFlatAngleTol;
    report.ridge_condition = report.ridge_condition && sum.below_pi;
    report.ridges.push_back(std::move(sum));
  }
  return report;
}

ProjectionChain projection_chain(const Eigen::MatrixXd& vertices,
                                 const std::vector<VertexSet>& simplices, int base_dimension,
                                 const std::optional<Eigen::MatrixXd>& source_vertices) {
  const Eigen::Index d = base_dimension;
  if (d < 1 || vertices.cols() <= d)
    throw Error(ErrorKind::MalformedInput, "embedding must live above the base dimension");
  for (const VertexSet& s : simplices)
    if (s.size() != static_cast<std::size_t>(d + 1) ||
        std::any_of(s.begin(), s.end(), [&](Index v) { return v >= static_cast<Index>(vertices.rows()); }))
      throw Error(ErrorKind::MalformedInput, "simplex does not match the base dimension");

  ProjectionChain chain;
  chain.all_weak = true;
  auto step = [&](const Eigen::MatrixXd& from, const Eigen::MatrixXd& to) {
    std::vector<double> out;
    for (const VertexSet& s : simplices) {
      const double a = embedded_alphas(rows_of(from, s), rows_of(to, s)).maxCoeff();
      chain.all_weak = chain.all_weak && a <= 1.0 + kContractionTol;
      out.push_back(a);
    }
    return out;
  };

  for (Eigen::Index k = vertices.cols() - d; k >= 1; --k) {
    ChainStage stage;
    stage.ambient_dimension = static_cast<Index>(d + k);
    stage.vertices = vertices.leftCols(d + k);
    if (!chain.stages.empty()) stage.alpha_max_from_previous = step(chain.stages.back().vertices, stage.vertices);
    if (source_vertices)
      for (const VertexSet& s : simplices)
        stage.alpha_max_from_source.push_back(
            embedded_alphas(rows_of(*source_vertices, s), rows_of(stage.vertices, s)).maxCoeff());
    chain.stages.push_back(std::move(stage));
  }
  chain.alpha_max_onto_base = step(chain.stages.back().vertices, vertices.leftCols(d));
  return chain;
}

ProjectionChain projection_chain(const PleatedEmbedding& pleated) {
  return projection_chain(pleated.vertices, pleated.triangulation.simplices,
                          pleated.base_dimension(), pleated.source.vertices);
}

}  // namespace polycomp
