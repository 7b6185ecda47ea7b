#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polycomp/barycentric.hpp"
#include "polycomp/polytope.hpp"

namespace polycomp {

/// Width of the band around 1 in which a squared singular value counts as
/// norm-preserving.
inline constexpr double kDefaultTol = 1e-9;

/// Eigenvalues of L^T L in ascending order (squared singular values of L).
Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXd& linear);

struct SpectralSummary {
  /// Per piece, ascending.
  std::vector<Eigen::VectorXd> alphas;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  Index argmin = 0;
  Index argmax = 0;
};

SpectralSummary spectral_summary(const InducedMap& map);

enum class Verdict { Compression, WeakCompressionNotStrict, NotWeakCompression };

Verdict classify_alpha(double alpha_max, double tol = kDefaultTol);
inline bool is_weak(Verdict v) { return v != Verdict::NotWeakCompression; }

struct EdgeRatio {
  Index i = 0;
  Index j = 0;
  double source_length = 0.0;
  double target_length = 0.0;
  double ratio = 0.0;
};

struct EdgeReport {
  std::vector<EdgeRatio> edges;
  /// Every edge strictly shorter in the target (ratio < 1 - tol).
  bool contracting = false;
};

EdgeReport edge_contraction_check(const Shape& source, const Shape& target,
                                  double tol = kDefaultTol);

/// A pair of points of the source attaining the largest distance ratio.
struct ExtremalPair {
  Index simplex = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd fx;
  Eigen::VectorXd fy;
  double ratio = 0.0;
  /// Position of x within the simplex's vertex list when x is a vertex.
  std::optional<Index> anchor;
  bool vertex_anchored() const { return anchor.has_value(); }
};

ExtremalPair extremal_pair(const InducedMap& map);
ExtremalPair extremal_pair(const InducedMap& map, const SpectralSummary& summary);

struct Classification {
  Verdict verdict = Verdict::NotWeakCompression;
  bool edge_contracting = false;
  SpectralSummary spectrum;
  ExtremalPair witness;
  EdgeReport edges;
};

/// Compression iff every piece has alpha_max < 1 - tol; weak iff every piece
/// has alpha_max <= 1 + tol.
Classification classify(const InducedMap& map, double tol = kDefaultTol);

struct CriticalScaling {
  double lambda = 1.0;
  Shape scaled_target;
  Classification classification;
};

/// Rescales the target by 1/sqrt(alpha_max) so that the map becomes a weak
/// compression with a norm-preserved direction.
CriticalScaling scale_critical(const Shape& source, const Shape& target, double tol = kDefaultTol);

enum class Order { SourceBelow, TargetBelow, Isometric, Incomparable };

struct OrderReport {
  Order relation = Order::Incomparable;
  Verdict forward = Verdict::NotWeakCompression;
  Verdict backward = Verdict::NotWeakCompression;
  double forward_alpha_max = 0.0;
  double backward_alpha_max = 0.0;
};

/// SourceBelow means source <= target, i.e. a weak compression source -> target.
OrderReport compare_order(const Shape& source, const Shape& target, double tol = kDefaultTol);

struct Perturbation {
  Eigen::MatrixXd base;       ///< homogeneous (d+1)x(d+1) vertex matrix
  Eigen::MatrixXd direction;  ///< (d+1)x(d+1), last row zero
  Eigen::MatrixXd symmetric;  ///< reduced(V P^-1) + reduced(V P^-1)^T
  Eigen::VectorXd eigenvalues;
  bool weak_compression = false;
};

/// `direction` holds one velocity column per simplex vertex: either d rows
/// or d+1 rows with a zero last row.
Perturbation perturbation_classify(const Eigen::MatrixXd& simplex_vertices,
                                   const Eigen::MatrixXd& direction, double tol = kDefaultTol);

/// A point given as fixed weights on vertices, so it moves with them.
struct TrackedPoint {
  std::vector<std::pair<Index, double>> weights;

  static TrackedPoint vertex(Index v) { return {{{v, 1.0}}}; }
  static TrackedPoint face_barycentre(const VertexSet& face);
  Eigen::VectorXd at(const Eigen::MatrixXd& vertex_rows) const;
};

/// Central difference of t -> |x(t) - y(t)| at t = 0, where vertex i moves as
/// p_i + t * velocities.col(i).
double distance_derivative(const Shape& shape, const Eigen::MatrixXd& velocities,
                           const TrackedPoint& x, const TrackedPoint& y, double h = 1e-6);

}  // namespace polycomp
