#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "polycomp/lifting.hpp"
#include "polycomp/polytope.hpp"

namespace polycomp::io {

using json = nlohmann::json;

/// Parses a file as JSON; failures become MalformedInput naming the file.
json read_json_file(const std::string& path);

/// `where` prefixes error messages, e.g. "P.json" or "seq.json[3]".
Shape shape_from_json(const json& j, const std::string& where);
json shape_to_json(const Shape& shape);
Shape load_shape(const std::string& path);

/// Accepts either a JSON array of shapes or a single shape object.
std::vector<Shape> load_sequence(const std::string& path);

Triangulation triangulation_from_json(const json& j, PolytopePtr polytope, const std::string& where);
json triangulation_to_json(const std::vector<VertexSet>& simplices);
Triangulation load_triangulation(const std::string& path, PolytopePtr polytope);

/// {"rows": r, "cols": c, "data": [row-major]}
Eigen::MatrixXd matrix_from_json(const json& j, const std::string& where);
json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::string& path);

/// Nested row arrays, [[...], ...].
json rows_to_json(const Eigen::MatrixXd& m);
json vector_to_json(const Eigen::VectorXd& v);

struct EmbeddingFile {
  Index ambient_dimension = 0;
  Eigen::MatrixXd vertices;
  std::vector<VertexSet> simplices;
};

EmbeddingFile embedding_from_json(const json& j, const std::string& where);
EmbeddingFile load_embedding(const std::string& path);
json embedding_to_json(const PleatedEmbedding& pleated,
                       const std::optional<ProjectionChain>& chain = std::nullopt);

}  // namespace polycomp::io
