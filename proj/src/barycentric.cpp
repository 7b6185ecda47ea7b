#include "polycomp/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polycomp/error.hpp"

namespace polycomp {

Eigen::VectorXd barycentre(const VertexSet& face, const Shape& shape) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(shape.dimension());
  for (Index v : face) sum += shape.vertex(v);
  return sum / static_cast<double>(face.size());
}

Eigen::VectorXd barycentre(Index face, const Shape& shape) {
  return barycentre(shape.polytope->face(face).vertices, shape);
}

namespace {

void descend(const CombinatorialPolytope& p, std::vector<Index>& path,
             std::vector<std::vector<Index>>& out) {
  const Index top = path.back();
  if (p.face(top).dimension == 0) {
    out.emplace_back(path.rbegin(), path.rend());
    return;
  }
  for (Index sub : p.subfaces(top)) {
    path.push_back(sub);
    descend(p, path, out);
    path.pop_back();
  }
}

}  // namespace

BarycentricComplex barycentric_complex(PolytopePtr polytope) {
  BarycentricComplex complex;
  std::vector<Index> path{polytope->body()};
  descend(*polytope, path, complex.chains);

  std::map<std::vector<Index>, std::vector<Index>> by_ridge;
  for (Index c = 0; c < complex.chains.size(); ++c) {
    const auto& chain = complex.chains[c];
    for (std::size_t skip = 0; skip < chain.size(); ++skip) {
      std::vector<Index> ridge;
      for (std::size_t k = 0; k < chain.size(); ++k)
        if (k != skip) ridge.push_back(chain[k]);
      by_ridge[ridge].push_back(c);
    }
  }
  for (const auto& [ridge, members] : by_ridge)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        complex.adjacency.emplace_back(members[i], members[j]);
  std::sort(complex.adjacency.begin(), complex.adjacency.end());
  complex.polytope = std::move(polytope);
  return complex;
}

Eigen::MatrixXd chain_simplex(const std::vector<Index>& chain, const Shape& shape) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(chain.size()), shape.dimension());
  for (Eigen::Index k = 0; k < rows.rows(); ++k)
    rows.row(k) = barycentre(chain[static_cast<std::size_t>(k)], shape).transpose();
  return rows;
}

Eigen::MatrixXd MapPiece::source_vertices() const {
  const Eigen::Index d = affine.source.rows() - 1;
  return affine.source.topRows(d).transpose();
}

Eigen::MatrixXd MapPiece::target_vertices() const {
  const Eigen::Index d = affine.target.rows() - 1;
  return affine.target.topRows(d).transpose();
}

namespace {

void require_same_polytope(const Shape& source, const Shape& target) {
  if (!same_polytope(source, target))
    throw Error(ErrorKind::PolytopeMismatch, "shapes realize different combinatorial polytopes");
}

std::string describe(const std::vector<Index>& labels) {
  std::string s = "(";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + std::to_string(labels[i]);
  return s + ")";
}

MapPiece make_piece(std::vector<Index> labels, const Eigen::MatrixXd& src, const Eigen::MatrixXd& dst,
                    const char* what) {
  try {
    return MapPiece{labels, affine_correspondence(src, dst)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularSimplex) throw;
    throw Error(ErrorKind::DegenerateSimplex,
                std::string(what) + " " + describe(labels) + ": " + e.what());
  }
}

}  // namespace

InducedMap induced_map(const Shape& source, const Shape& target, Subdivision subdivision) {
  require_same_polytope(source, target);
  InducedMap map{source, target, subdivision, {}};
  const CombinatorialPolytope& p = *source.polytope;

  if (subdivision == Subdivision::Triangulation ||
      (subdivision == Subdivision::Automatic && p.is_simplex())) {
    if (!p.is_simplex())
      throw Error(ErrorKind::InvalidTriangulation,
                  "a triangulation must be supplied for a non-simplex polytope");
    std::vector<Index> labels(p.vertex_count());
    for (Index i = 0; i < labels.size(); ++i) labels[i] = i;
    map.subdivision = Subdivision::Triangulation;
    map.pieces.push_back(make_piece(labels, source.vertices, target.vertices, "simplex"));
    return map;
  }

  map.subdivision = Subdivision::Barycentric;
  const BarycentricComplex complex = barycentric_complex(source.polytope);
  map.pieces.reserve(complex.chains.size());
  for (const auto& chain : complex.chains)
    map.pieces.push_back(make_piece(chain, chain_simplex(chain, source),
                                    chain_simplex(chain, target), "chain"));
  return map;
}

InducedMap triangulated_map(const Shape& source, const Shape& target,
                            const Triangulation& triangulation) {
  require_same_polytope(source, target);
  if (!(*triangulation.polytope == *source.polytope))
    throw Error(ErrorKind::PolytopeMismatch, "triangulation belongs to a different polytope");
  InducedMap map{source, target, Subdivision::Triangulation, {}};
  for (const VertexSet& simplex : triangulation.simplices) {
    Eigen::MatrixXd src(static_cast<Eigen::Index>(simplex.size()), source.dimension());
    Eigen::MatrixXd dst(src.rows(), src.cols());
    for (Eigen::Index k = 0; k < src.rows(); ++k) {
      src.row(k) = source.vertices.row(static_cast<Eigen::Index>(simplex[k]));
      dst.row(k) = target.vertices.row(static_cast<Eigen::Index>(simplex[k]));
    }
    map.pieces.push_back(make_piece(simplex, src, dst, "simplex"));
  }
  return map;
}

Eigen::VectorXd barycentric_coordinates(const MapPiece& piece, const Eigen::VectorXd& x) {
  Eigen::VectorXd rhs(x.size() + 1);
  rhs << x, 1.0;
  return piece.affine.source.partialPivLu().solve(rhs);
}

std::optional<Index> locate(const InducedMap& map, const Eigen::VectorXd& x) {
  for (Index i = 0; i < map.pieces.size(); ++i)
    if (barycentric_coordinates(map.pieces[i], x).minCoeff() >= -kLocateTol) return i;
  return std::nullopt;
}

Eigen::VectorXd evaluate_map(const InducedMap& map, const Eigen::VectorXd& x) {
  if (x.size() != map.source.dimension())
    throw Error(ErrorKind::MalformedInput, "point has the wrong dimension");
  const auto hit = locate(map, x);
  if (!hit) throw Error(ErrorKind::PointOutside, "point lies outside the source shape");
  const MapPiece& piece = map.pieces[*hit];
  Eigen::VectorXd lambda = barycentric_coordinates(piece, x).cwiseMax(0.0);
  lambda /= lambda.sum();
  const Eigen::Index d = piece.affine.target.rows() - 1;
  return piece.affine.target.topRows(d) * lambda;
}

double simplex_volume(const Eigen::MatrixXd& vertices) {
  const Eigen::Index d = vertices.cols();
  const Eigen::MatrixXd edges = (vertices.bottomRows(d).rowwise() - vertices.row(0));
  return std::abs(edges.determinant()) / std::tgamma(static_cast<double>(d) + 1.0);
}

double shape_volume(const Shape& shape) {
  double total = 0.0;
  for (const auto& chain : barycentric_complex(shape.polytope).chains)
    total += simplex_volume(chain_simplex(chain, shape));
  return total;
}

void check_triangulation_covers(const Shape& shape, const Triangulation& triangulation) {
  double total = 0.0;
  for (const VertexSet& simplex : triangulation.simplices) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(simplex.size()), shape.dimension());
    for (Eigen::Index k = 0; k < rows.rows(); ++k)
      rows.row(k) = shape.vertices.row(static_cast<Eigen::Index>(simplex[k]));
    if (!is_nondegenerate_simplex(rows))
      throw Error(ErrorKind::InvalidTriangulation,
                  "simplex " + describe(simplex) + " is degenerate in this shape");
    total += simplex_volume(rows);
  }
  const double volume = shape_volume(shape);
  if (std::abs(total - volume) > 1e-9 * std::max(1.0, volume))
    throw Error(ErrorKind::InvalidTriangulation,
                "simplices overlap or leave gaps: volume " + std::to_string(total) +
                    " versus shape volume " + std::to_string(volume));
}

}  // namespace polycomp
