#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace polycomp {

using Index = std::size_t;

/// Sorted list of vertex indices.
using VertexSet = std::vector<Index>;

/// Absolute tolerance for coordinate-level geometric tests (coordinates are
/// assumed to be O(1)).
inline constexpr double kGeometryTol = 1e-9;
/// Two adjacent facets count as coplanar when their dihedral angle is within
/// this of pi.
inline constexpr double kFlatAngleTol = 1e-7;

struct Face {
  VertexSet vertices;
  int dimension = 0;
};

/// Face lattice of a simple polytope, built from its vertex-facet incidences.
///
/// Faces are stored without the empty face, ordered by dimension and then
/// lexicographically by vertex set; the last face is the whole polytope.
class CombinatorialPolytope {
 public:
  int dimension() const noexcept { return dimension_; }
  Index vertex_count() const noexcept { return vertex_count_; }
  const std::vector<VertexSet>& facets() const noexcept { return facets_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Face& face(Index i) const { return faces_.at(i); }
  Index body() const noexcept { return faces_.size() - 1; }

  /// Faces of dimension one less than `face` that are contained in it.
  const std::vector<Index>& subfaces(Index face) const { return subfaces_.at(face); }

  std::optional<Index> find_face(const VertexSet& vertices) const;
  std::vector<Index> faces_of_dimension(int k) const;
  /// The 1-faces, as (i, j) vertex pairs with i < j.
  std::vector<std::pair<Index, Index>> edges() const;

  bool is_simplex() const noexcept {
    return vertex_count_ == static_cast<Index>(dimension_) + 1;
  }

  friend bool operator==(const CombinatorialPolytope& a, const CombinatorialPolytope& b) {
    return a.dimension_ == b.dimension_ && a.vertex_count_ == b.vertex_count_ &&
           a.facets_ == b.facets_;
  }

 private:
  friend CombinatorialPolytope build_polytope(int, Index, std::vector<VertexSet>);

  int dimension_ = 0;
  Index vertex_count_ = 0;
  std::vector<VertexSet> facets_;
  std::vector<Face> faces_;
  std::vector<std::vector<Index>> subfaces_;
  std::map<VertexSet, Index> lookup_;
};

using PolytopePtr = std::shared_ptr<const CombinatorialPolytope>;

/// Builds the face lattice as the intersection closure of the facets.
/// Throws NotSimple when a vertex does not lie in exactly `dimension` facets
/// and InconsistentLattice when the facets do not describe a graded lattice.
CombinatorialPolytope build_polytope(int dimension, Index vertex_count,
                                     std::vector<VertexSet> facets);

/// Standard d-simplex on vertices 0..d; facet i omits vertex i.
CombinatorialPolytope simplex_polytope(int dimension);
/// Cyclic n-gon with edges {i, i+1 mod n}.
CombinatorialPolytope ngon_polytope(Index n);

/// Cyclic vertex order of a polygon, starting at `start`, following the
/// neighbour with the smaller index first.
std::vector<Index> polygon_cycle(const CombinatorialPolytope& polygon, Index start = 0);

enum class ShapeMode { Strict, Weak };

/// A concrete realization of a combinatorial polytope. Row i of `vertices`
/// is vertex i.
struct Shape {
  PolytopePtr polytope;
  Eigen::MatrixXd vertices;
  ShapeMode mode = ShapeMode::Strict;
  std::string name;

  int dimension() const { return polytope->dimension(); }
  Index vertex_count() const { return polytope->vertex_count(); }
  Eigen::VectorXd vertex(Index i) const { return vertices.row(static_cast<Eigen::Index>(i)).transpose(); }
};

/// Checks only that the coordinate block has N rows of width d.
Shape make_shape(PolytopePtr polytope, Eigen::MatrixXd vertices,
                 ShapeMode mode = ShapeMode::Strict, std::string name = {});

/// Returns scale * R * p + t applied to every vertex.
Shape similarity_image(const Shape& shape, double scale, const Eigen::MatrixXd& rotation,
                       const Eigen::VectorXd& translation);
Shape scaled(const Shape& shape, double scale);

bool same_polytope(const Shape& a, const Shape& b);

enum class Convexity { Strict, Weak, Invalid };

struct FacetCheck {
  Index facet = 0;
  VertexSet vertices;
  /// Outward unit normal and offset: normal . x = offset on the facet.
  Eigen::VectorXd normal;
  double offset = 0.0;
  /// Largest distance of a facet vertex from the fitted hyperplane.
  double residual = 0.0;
  /// Smallest distance of a non-facet vertex below the hyperplane.
  double margin = 0.0;
  /// False when the facet's vertices do not span a hyperplane.
  bool spans_hyperplane = true;
};

struct FlatFacetPair {
  Index first = 0;
  Index second = 0;
  double dihedral_angle = 0.0;
};

struct ValidationReport {
  std::vector<FacetCheck> facets;
  std::vector<bool> extreme;
  std::vector<FlatFacetPair> flat_pairs;
  Convexity verdict = Convexity::Invalid;

  bool accepts(ShapeMode mode) const {
    return mode == ShapeMode::Strict ? verdict == Convexity::Strict
                                     : verdict != Convexity::Invalid;
  }
};

/// Throws DegenerateSpan or DuplicateVertex; every other defect is reported.
ValidationReport validate_shape(const CombinatorialPolytope& polytope,
                                const Eigen::MatrixXd& vertices);
ValidationReport validate_shape(const Shape& shape);

/// Throws InvalidShape unless the shape is accepted in its own mode.
void require_valid(const Shape& shape);

struct FacePairingGraph {
  Index nodes = 0;
  std::vector<std::pair<Index, Index>> edges;
  bool is_tree = false;
};

/// A triangulation of a polytope that uses only the polytope's vertices.
struct Triangulation {
  PolytopePtr polytope;
  std::vector<VertexSet> simplices;
  FacePairingGraph graph;
};

/// Validates the simplices combinatorially: each (d-1)-face lying in a facet
/// of the polytope belongs to exactly one simplex, every other one to exactly
/// two. Throws InvalidTriangulation otherwise.
Triangulation make_triangulation(PolytopePtr polytope, std::vector<VertexSet> simplices);

/// Fan of a polygon from `apex`: triangles {apex, c[k], c[k+1]} along the cycle.
Triangulation fan_triangulation(PolytopePtr polygon, Index apex);

FacePairingGraph face_pairing_graph(const std::vector<VertexSet>& simplices);
inline FacePairingGraph face_pairing_graph(const Triangulation& t) {
  return face_pairing_graph(t.simplices);
}

}  // namespace polycomp
