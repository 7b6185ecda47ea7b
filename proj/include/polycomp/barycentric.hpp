#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polycomp/affine.hpp"
#include "polycomp/polytope.hpp"

namespace polycomp {

/// Tolerance on barycentric coordinates for point location.
inline constexpr double kLocateTol = 1e-9;

/// Mean of the face's vertex coordinates.
Eigen::VectorXd barycentre(const VertexSet& face, const Shape& shape);
Eigen::VectorXd barycentre(Index face, const Shape& shape);

/// Simplices of the barycentric subdivision: one maximal chain of faces
/// F0 c F1 c ... c Fd per simplex, stored as face indices (vertex first).
struct BarycentricComplex {
  PolytopePtr polytope;
  std::vector<std::vector<Index>> chains;
  /// Pairs of chains that differ in exactly one face.
  std::vector<std::pair<Index, Index>> adjacency;
};

BarycentricComplex barycentric_complex(PolytopePtr polytope);

/// Vertex rows of the simplex spanned by a chain's barycentres.
Eigen::MatrixXd chain_simplex(const std::vector<Index>& chain, const Shape& shape);

enum class Subdivision {
  /// A simplex polytope is its own triangulation; anything else is subdivided.
  Automatic,
  Barycentric,
  Triangulation,
};

struct MapPiece {
  /// Face indices of the chain (barycentric) or vertex indices (triangulation).
  std::vector<Index> labels;
  AffineCorrespondence affine;

  Eigen::MatrixXd source_vertices() const;
  Eigen::MatrixXd target_vertices() const;
};

/// Piecewise-affine map between two shapes of one polytope.
struct InducedMap {
  Shape source;
  Shape target;
  Subdivision subdivision = Subdivision::Automatic;
  std::vector<MapPiece> pieces;

  Index simplex_count() const { return pieces.size(); }
};

/// Throws PolytopeMismatch if the shapes realize different polytopes and
/// DegenerateSimplex if a piece is affinely degenerate in either shape.
InducedMap induced_map(const Shape& source, const Shape& target,
                       Subdivision subdivision = Subdivision::Automatic);

/// The map that is affine on each simplex of a vertex triangulation.
InducedMap triangulated_map(const Shape& source, const Shape& target,
                            const Triangulation& triangulation);

/// Barycentric coordinates of `x` with respect to a piece's source simplex.
Eigen::VectorXd barycentric_coordinates(const MapPiece& piece, const Eigen::VectorXd& x);

/// Index of the first piece whose source simplex contains x, if any.
std::optional<Index> locate(const InducedMap& map, const Eigen::VectorXd& x);

/// Throws PointOutside if no piece contains x within kLocateTol.
Eigen::VectorXd evaluate_map(const InducedMap& map, const Eigen::VectorXd& x);

/// Unsigned volume of the simplex with the given vertex rows.
double simplex_volume(const Eigen::MatrixXd& vertices);
/// Volume of a shape, summed over its barycentric simplices.
double shape_volume(const Shape& shape);

/// Throws InvalidTriangulation unless the simplices are nondegenerate in the
/// shape and their volumes add up to the shape's volume.
void check_triangulation_covers(const Shape& shape, const Triangulation& triangulation);

}  // namespace polycomp
