#include "polycomp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "polycomp/error.hpp"

namespace polycomp {

namespace {

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string format_set(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace

std::optional<Index> CombinatorialPolytope::find_face(const VertexSet& vertices) const {
  auto it = lookup_.find(vertices);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<Index> CombinatorialPolytope::faces_of_dimension(int k) const {
  std::vector<Index> out;
  for (Index i = 0; i < faces_.size(); ++i)
    if (faces_[i].dimension == k) out.push_back(i);
  return out;
}

std::vector<std::pair<Index, Index>> CombinatorialPolytope::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (const Face& f : faces_)
    if (f.dimension == 1) out.emplace_back(f.vertices[0], f.vertices[1]);
  return out;
}

CombinatorialPolytope build_polytope(int dimension, Index vertex_count,
                                     std::vector<VertexSet> facets) {
  if (dimension < 1) throw Error(ErrorKind::MalformedInput, "dimension must be positive");
  if (vertex_count < 1) throw Error(ErrorKind::MalformedInput, "vertex_count must be positive");
  if (facets.empty()) throw Error(ErrorKind::MalformedInput, "facet list is empty");

  for (std::size_t f = 0; f < facets.size(); ++f) {
    VertexSet& facet = facets[f];
    if (facet.empty())
      throw Error(ErrorKind::MalformedInput, "facet " + std::to_string(f) + " is empty");
    for (Index v : facet)
      if (v >= vertex_count)
        throw Error(ErrorKind::MalformedInput, "facet " + std::to_string(f) +
                                                   " references vertex " + std::to_string(v) +
                                                   " out of range");
    std::sort(facet.begin(), facet.end());
    facet.erase(std::unique(facet.begin(), facet.end()), facet.end());
  }
  std::sort(facets.begin(), facets.end());

  for (std::size_t a = 0; a < facets.size(); ++a)
    for (std::size_t b = 0; b < facets.size(); ++b)
      if (a != b && is_subset(facets[a], facets[b]))
        throw Error(ErrorKind::InconsistentLattice,
                    "facet " + format_set(facets[a]) + " is contained in facet " +
                        format_set(facets[b]));

  std::vector<int> incidence(vertex_count, 0);
  for (const VertexSet& facet : facets)
    for (Index v : facet) ++incidence[v];
  for (Index v = 0; v < vertex_count; ++v)
    if (incidence[v] != dimension)
      throw Error(ErrorKind::NotSimple, "vertex " + std::to_string(v) + " lies in " +
                                            std::to_string(incidence[v]) + " facets, expected " +
                                            std::to_string(dimension));

  // Every face is an intersection of facets, so closing under intersection
  // with single facets reaches all of them.
  std::set<VertexSet> closure(facets.begin(), facets.end());
  std::vector<VertexSet> frontier(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (const VertexSet& face : frontier)
      for (const VertexSet& facet : facets) {
        VertexSet meet = intersect(face, facet);
        if (!meet.empty() && closure.insert(meet).second) next.push_back(std::move(meet));
      }
    frontier = std::move(next);
  }
  VertexSet all(vertex_count);
  std::iota(all.begin(), all.end(), Index{0});
  if (!closure.insert(all).second)
    throw Error(ErrorKind::InconsistentLattice, "a facet contains every vertex");

  std::vector<VertexSet> sets(closure.begin(), closure.end());
  std::stable_sort(sets.begin(), sets.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
  std::vector<int> rank(sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (sets[j].size() < sets[i].size() && is_subset(sets[j], sets[i]))
        rank[i] = std::max(rank[i], rank[j] + 1);

  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (rank[i] == 0 && sets[i].size() != 1)
      throw Error(ErrorKind::InconsistentLattice,
                  "minimal face " + format_set(sets[i]) + " is not a vertex");
    // Graded: every maximal proper subface sits exactly one level below.
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[j].size() >= sets[i].size() || !is_subset(sets[j], sets[i])) continue;
      bool maximal = true;
      for (std::size_t k = 0; k < sets.size() && maximal; ++k)
        if (k != i && k != j && sets[k].size() > sets[j].size() &&
            sets[k].size() < sets[i].size() && is_subset(sets[j], sets[k]) &&
            is_subset(sets[k], sets[i]))
          maximal = false;
      if (maximal && rank[j] != rank[i] - 1)
        throw Error(ErrorKind::InconsistentLattice,
                    "face lattice is not graded at " + format_set(sets[i]));
    }
  }
  if (std::count(rank.begin(), rank.end(), 0) != static_cast<long>(vertex_count))
    throw Error(ErrorKind::InconsistentLattice, "not every vertex is a face");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool is_facet = std::binary_search(facets.begin(), facets.end(), sets[i]);
    if (is_facet && rank[i] != dimension - 1)
      throw Error(ErrorKind::InconsistentLattice,
                  "facet " + format_set(sets[i]) + " has dimension " + std::to_string(rank[i]));
    if (sets[i] == all && rank[i] != dimension)
      throw Error(ErrorKind::InconsistentLattice,
                  "face lattice has rank " + std::to_string(rank[i]) + ", expected " +
                      std::to_string(dimension));
  }

  CombinatorialPolytope p;
  p.dimension_ = dimension;
  p.vertex_count_ = vertex_count;
  p.facets_ = std::move(facets);
  for (std::size_t i = 0; i < sets.size(); ++i) p.faces_.push_back(Face{sets[i], rank[i]});
  std::sort(p.faces_.begin(), p.faces_.end(), [](const Face& a, const Face& b) {
    return a.dimension != b.dimension ? a.dimension < b.dimension : a.vertices < b.vertices;
  });
  for (Index i = 0; i < p.faces_.size(); ++i) p.lookup_.emplace(p.faces_[i].vertices, i);
  p.subfaces_.resize(p.faces_.size());
  for (Index i = 0; i < p.faces_.size(); ++i)
    for (Index j = 0; j < i; ++j)
      if (p.faces_[j].dimension == p.faces_[i].dimension - 1 &&
          is_subset(p.faces_[j].vertices, p.faces_[i].vertices))
        p.subfaces_[i].push_back(j);
  return p;
}

CombinatorialPolytope simplex_polytope(int dimension) {
  if (dimension < 1) throw Error(ErrorKind::MalformedInput, "simplex dimension must be >= 1");
  const Index n = static_cast<Index>(dimension) + 1;
  std::vector<VertexSet> facets;
  for (Index skip = 0; skip < n; ++skip) {
    VertexSet facet;
    for (Index v = 0; v < n; ++v)
      if (v != skip) facet.push_back(v);
    facets.push_back(std::move(facet));
  }
  return build_polytope(dimension, n, std::move(facets));
}

CombinatorialPolytope ngon_polytope(Index n) {
  if (n < 3) throw Error(ErrorKind::MalformedInput, "an n-gon needs n >= 3");
  std::vector<VertexSet> facets;
  for (Index i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
  return build_polytope(2, n, std::move(facets));
}

std::vector<Index> polygon_cycle(const CombinatorialPolytope& polygon, Index start) {
  if (polygon.dimension() != 2)
    throw Error(ErrorKind::InvalidTriangulation, "polygon cycle requires a 2-dimensional polytope");
  const Index n = polygon.vertex_count();
  if (start >= n) throw Error(ErrorKind::MalformedInput, "start vertex out of range");
  std::vector<std::vector<Index>> nbr(n);
  for (auto [i, j] : polygon.edges()) {
    nbr[i].push_back(j);
    nbr[j].push_back(i);
  }
  for (auto& list : nbr) std::sort(list.begin(), list.end());
  std::vector<Index> cycle{start};
  Index prev = start;
  Index cur = nbr[start].front();
  while (cur != start) {
    cycle.push_back(cur);
    Index next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
    prev = cur;
    cur = next;
  }
  return cycle;
}

Shape make_shape(PolytopePtr polytope, Eigen::MatrixXd vertices, ShapeMode mode,
                 std::string name) {
  if (!polytope) throw Error(ErrorKind::MalformedInput, "shape has no polytope");
  if (vertices.rows() != static_cast<Eigen::Index>(polytope->vertex_count()) ||
      vertices.cols() != polytope->dimension())
    throw Error(ErrorKind::MalformedInput,
                "expected " + std::to_string(polytope->vertex_count()) + " vertices of width " +
                    std::to_string(polytope->dimension()) + ", got " +
                    std::to_string(vertices.rows()) + "x" + std::to_string(vertices.cols()));
  return Shape{std::move(polytope), std::move(vertices), mode, std::move(name)};
}

Shape similarity_image(const Shape& shape, double scale, const Eigen::MatrixXd& rotation,
                       const Eigen::VectorXd& translation) {
  Shape out = shape;
  out.vertices = (scale * shape.vertices * rotation.transpose()).rowwise() + translation.transpose();
  return out;
}

Shape scaled(const Shape& shape, double scale) {
  Shape out = shape;
  out.vertices *= scale;
  return out;
}

bool same_polytope(const Shape& a, const Shape& b) {
  return a.polytope == b.polytope || *a.polytope == *b.polytope;
}

ValidationReport validate_shape(const CombinatorialPolytope& polytope,
                                const Eigen::MatrixXd& vertices) {
  const int d = polytope.dimension();
  const auto n = static_cast<Eigen::Index>(polytope.vertex_count());
  if (vertices.rows() != n || vertices.cols() != d)
    throw Error(ErrorKind::MalformedInput, "coordinate block does not match the polytope");

  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if ((vertices.row(i) - vertices.row(j)).norm() <= kGeometryTol)
        throw Error(ErrorKind::DuplicateVertex, "vertices " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " coincide");

  const Eigen::RowVectorXd centroid = vertices.colwise().mean();
  const Eigen::MatrixXd centered = vertices.rowwise() - centroid;
  Eigen::JacobiSVD<Eigen::MatrixXd> span_svd(centered);
  const auto& sv = span_svd.singularValues();
  const double span_tol = kGeometryTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  if (sv.size() < d || sv(d - 1) <= span_tol)
    throw Error(ErrorKind::DegenerateSpan,
                "vertices do not span " + std::to_string(d) + " dimensions");

  ValidationReport report;
  bool valid = true;
  bool strict_margins = true;
  for (Index f = 0; f < polytope.facets().size(); ++f) {
    FacetCheck check;
    check.facet = f;
    check.vertices = polytope.facets()[f];
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(check.vertices.size()), d);
    for (Eigen::Index r = 0; r < pts.rows(); ++r)
      pts.row(r) = vertices.row(static_cast<Eigen::Index>(check.vertices[r]));
    const Eigen::RowVectorXd c = pts.colwise().mean();
    if (d == 1) {
      check.normal = Eigen::VectorXd::Ones(1);
    } else {
      const Eigen::MatrixXd local = pts.rowwise() - c;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(local, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      check.spans_hyperplane = pts.rows() >= d && s.size() >= d - 1 && s(d - 2) > span_tol;
      check.normal = svd.matrixV().col(d - 1);
    }
    check.offset = check.normal.dot(c.transpose());
    if (check.normal.dot(centroid.transpose()) > check.offset) {
      check.normal = -check.normal;
      check.offset = -check.offset;
    }
    check.residual = 0.0;
    for (Eigen::Index r = 0; r < pts.rows(); ++r)
      check.residual =
          std::max(check.residual, std::abs(check.normal.dot(pts.row(r).transpose()) - check.offset));
    check.margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index v = 0; v < n; ++v) {
      if (std::binary_search(check.vertices.begin(), check.vertices.end(), static_cast<Index>(v)))
        continue;
      check.margin = std::min(check.margin,
                              check.offset - check.normal.dot(vertices.row(v).transpose()));
    }
    if (!check.spans_hyperplane || check.residual > kGeometryTol || check.margin < -kGeometryTol)
      valid = false;
    if (check.margin <= kGeometryTol) strict_margins = false;
    report.facets.push_back(std::move(check));
  }

  // A vertex of a simple polytope is extreme iff the outward normals of its d
  // facets are linearly independent.
  report.extreme.assign(polytope.vertex_count(), true);
  for (Index v = 0; v < polytope.vertex_count(); ++v) {
    Eigen::MatrixXd normals(d, d);
    Eigen::Index row = 0;
    for (const FacetCheck& fc : report.facets)
      if (std::binary_search(fc.vertices.begin(), fc.vertices.end(), v) && row < d)
        normals.row(row++) = fc.normal.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(normals);
    report.extreme[v] = svd.singularValues()(d - 1) > kFlatAngleTol;
  }

  if (d >= 2) {
    const auto& facets = polytope.facets();
    for (Index a = 0; a < facets.size(); ++a)
      for (Index b = a + 1; b < facets.size(); ++b) {
        auto ridge = polytope.find_face(intersect(facets[a], facets[b]));
        if (!ridge || polytope.face(*ridge).dimension != d - 2) continue;
        const double gap = (report.facets[a].normal - report.facets[b].normal).norm();
        const double normal_angle = 2.0 * std::asin(std::min(1.0, gap / 2.0));
        if (normal_angle <= kFlatAngleTol)
          report.flat_pairs.push_back(FlatFacetPair{a, b, M_PI - normal_angle});
      }
  }

  const bool all_extreme =
      std::all_of(report.extreme.begin(), report.extreme.end(), [](bool e) { return e; });
  if (!valid)
    report.verdict = Convexity::Invalid;
  else if (all_extreme && strict_margins)
    report.verdict = Convexity::Strict;
  else
    report.verdict = Convexity::Weak;
  return report;
}

ValidationReport validate_shape(const Shape& shape) {
  return validate_shape(*shape.polytope, shape.vertices);
}

void require_valid(const Shape& shape) {
  const ValidationReport report = validate_shape(shape);
  if (!report.accepts(shape.mode)) {
    std::string label = shape.name.empty() ? std::string("shape") : "shape '" + shape.name + "'";
    throw Error(ErrorKind::InvalidShape,
                label + (shape.mode == ShapeMode::Strict ? " is not strictly convex"
                                                         : " is not weakly convex"));
  }
}

FacePairingGraph face_pairing_graph(const std::vector<VertexSet>& simplices) {
  FacePairingGraph g;
  g.nodes = simplices.size();
  for (Index i = 0; i < simplices.size(); ++i)
    for (Index j = i + 1; j < simplices.size(); ++j)
      if (!simplices[i].empty() &&
          intersect(simplices[i], simplices[j]).size() + 1 == simplices[i].size())
        g.edges.emplace_back(i, j);

  std::vector<Index> parent(g.nodes);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto root = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool acyclic = true;
  Index components = g.nodes;
  for (auto [a, b] : g.edges) {
    Index ra = root(a), rb = root(b);
    if (ra == rb) {
      acyclic = false;
    } else {
      parent[ra] = rb;
      --components;
    }
  }
  g.is_tree = g.nodes > 0 && acyclic && components == 1;
  return g;
}

Triangulation make_triangulation(PolytopePtr polytope, std::vector<VertexSet> simplices) {
  if (!polytope) throw Error(ErrorKind::MalformedInput, "triangulation has no polytope");
  const Index d = static_cast<Index>(polytope->dimension());
  const Index n = polytope->vertex_count();
  if (simplices.empty()) throw Error(ErrorKind::InvalidTriangulation, "no simplices given");

  std::vector<bool> covered(n, false);
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    VertexSet& simplex = simplices[s];
    std::sort(simplex.begin(), simplex.end());
    if (std::unique(simplex.begin(), simplex.end()) != simplex.end() || simplex.size() != d + 1)
      throw Error(ErrorKind::InvalidTriangulation,
                  "simplex " + std::to_string(s) + " must have " + std::to_string(d + 1) +
                      " distinct vertices");
    for (Index v : simplex) {
      if (v >= n)
        throw Error(ErrorKind::InvalidTriangulation,
                    "simplex " + std::to_string(s) + " references vertex " + std::to_string(v));
      covered[v] = true;
    }
  }
  for (Index v = 0; v < n; ++v)
    if (!covered[v])
      throw Error(ErrorKind::InvalidTriangulation,
                  "vertex " + std::to_string(v) + " is not used by any simplex");
  {
    std::vector<VertexSet> sorted = simplices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::InvalidTriangulation, "repeated simplex");
  }

  std::map<VertexSet, int> ridge_count;
  for (const VertexSet& simplex : simplices)
    for (Index skip = 0; skip <= d; ++skip) {
      VertexSet ridge;
      for (Index k = 0; k <= d; ++k)
        if (k != skip) ridge.push_back(simplex[k]);
      ++ridge_count[ridge];
    }
  for (const auto& [ridge, count] : ridge_count) {
    const bool on_boundary =
        std::any_of(polytope->facets().begin(), polytope->facets().end(),
                    [&](const VertexSet& facet) { return is_subset(ridge, facet); });
    const int expected = on_boundary ? 1 : 2;
    if (count != expected)
      throw Error(ErrorKind::InvalidTriangulation,
                  std::string(on_boundary ? "boundary" : "interior") + " face " +
                      format_set(ridge) + " is shared by " + std::to_string(count) +
                      " simplices, expected " + std::to_string(expected));
  }

  Triangulation t{std::move(polytope), std::move(simplices), {}};
  t.graph = face_pairing_graph(t.simplices);
  return t;
}

Triangulation fan_triangulation(PolytopePtr polygon, Index apex) {
  if (!polygon || polygon->dimension() != 2)
    throw Error(ErrorKind::InvalidTriangulation, "fan triangulation requires a polygon");
  const std::vector<Index> cycle = polygon_cycle(*polygon, apex);
  std::vector<VertexSet> simplices;
  for (std::size_t k = 1; k + 1 < cycle.size(); ++k) {
    VertexSet tri{apex, cycle[k], cycle[k + 1]};
    std::sort(tri.begin(), tri.end());
    simplices.push_back(std::move(tri));
  }
  return make_triangulation(std::move(polygon), std::move(simplices));
}

}  // namespace polycomp
