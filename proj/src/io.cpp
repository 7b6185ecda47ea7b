#include "polycomp/io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "polycomp/error.hpp"

namespace polycomp::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& field, const std::string& what) {
  throw Error(ErrorKind::MalformedInput, where + ": field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, key, "document is not a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, key, "missing");
  return *it;
}

long long read_int(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_number_integer()) fail(where, field, "expected an integer");
  return j.get<long long>();
}

Index read_count(const json& j, const std::string& where, const std::string& field) {
  const long long v = read_int(j, where, field);
  if (v < 0) fail(where, field, "expected a non-negative integer");
  return static_cast<Index>(v);
}

double read_number(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_number()) fail(where, field, "expected a number");
  return j.get<double>();
}

std::vector<VertexSet> read_index_lists(const json& j, const std::string& where,
                                        const std::string& field) {
  if (!j.is_array()) fail(where, field, "expected an array of index arrays");
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) fail(where, f, "expected an array of indices");
    VertexSet s;
    for (std::size_t k = 0; k < j[i].size(); ++k)
      s.push_back(read_count(j[i][k], where, f + "[" + std::to_string(k) + "]"));
    out.push_back(std::move(s));
  }
  return out;
}

Eigen::MatrixXd read_rows(const json& j, const std::string& where, const std::string& field,
                          std::optional<Eigen::Index> expected_rows,
                          std::optional<Eigen::Index> expected_cols) {
  if (!j.is_array()) fail(where, field, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (expected_rows && rows != *expected_rows)
    fail(where, field, "expected " + std::to_string(*expected_rows) + " rows, got " + std::to_string(rows));
  Eigen::Index cols = expected_cols.value_or(rows > 0 && j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string f = field + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) fail(where, f, "expected an array of numbers");
    if (static_cast<Eigen::Index>(row.size()) != cols)
      fail(where, f, "expected " + std::to_string(cols) + " coordinates, got " + std::to_string(row.size()));
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = read_number(row[static_cast<std::size_t>(c)], where, f + "[" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, path + ": invalid JSON: " + e.what());
  }
}

Shape shape_from_json(const json& j, const std::string& where) {
  const long long d = read_int(require(j, "dimension", where), where, "dimension");
  if (d < 1) fail(where, "dimension", "must be at least 1");
  const Index n = read_count(require(j, "vertex_count", where), where, "vertex_count");
  std::vector<VertexSet> facets = read_index_lists(require(j, "facets", where), where, "facets");
  const Eigen::MatrixXd vertices = read_rows(require(j, "vertices", where), where, "vertices",
                                             static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  ShapeMode mode = ShapeMode::Strict;
  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m == "strict")
      mode = ShapeMode::Strict;
    else if (m == "weak")
      mode = ShapeMode::Weak;
    else
      fail(where, "mode", "expected \"strict\" or \"weak\"");
  }
  std::string name;
  if (j.contains("name") && !j["name"].is_null()) {
    if (!j["name"].is_string()) fail(where, "name", "expected a string");
    name = j["name"].get<std::string>();
  }
  PolytopePtr polytope;
  try {
    polytope = std::make_shared<const CombinatorialPolytope>(
        build_polytope(static_cast<int>(d), n, std::move(facets)));
  } catch (const Error& e) {
    throw Error(e.kind(), where + ": field 'facets': " + e.what());
  }
  return make_shape(std::move(polytope), vertices, mode, std::move(name));
}

json shape_to_json(const Shape& shape) {
  json facets = json::array();
  for (const VertexSet& f : shape.polytope->facets()) facets.push_back(f);
  json out = {{"dimension", shape.dimension()},
              {"vertex_count", shape.vertex_count()},
              {"facets", std::move(facets)},
              {"vertices", rows_to_json(shape.vertices)},
              {"mode", shape.mode == ShapeMode::Strict ? "strict" : "weak"}};
  if (!shape.name.empty()) out["name"] = shape.name;
  return out;
}

Shape load_shape(const std::string& path) { return shape_from_json(read_json_file(path), path); }

std::vector<Shape> load_sequence(const std::string& path) {
  const json j = read_json_file(path);
  std::vector<Shape> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(shape_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(shape_from_json(j, path));
  }
  return out;
}

Triangulation triangulation_from_json(const json& j, PolytopePtr polytope, const std::string& where) {
  std::vector<VertexSet> simplices = read_index_lists(require(j, "simplices", where), where, "simplices");
  try {
    return make_triangulation(std::move(polytope), std::move(simplices));
  } catch (const Error& e) {
    throw Error(e.kind(), where + ": field 'simplices': " + e.what());
  }
}

json triangulation_to_json(const std::vector<VertexSet>& simplices) {
  json s = json::array();
  for (const VertexSet& v : simplices) s.push_back(v);
  return {{"simplices", std::move(s)}};
}

Triangulation load_triangulation(const std::string& path, PolytopePtr polytope) {
  return triangulation_from_json(read_json_file(path), std::move(polytope), path);
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& where) {
  const Index rows = read_count(require(j, "rows", where), where, "rows");
  const Index cols = read_count(require(j, "cols", where), where, "cols");
  const json& data = require(j, "data", where);
  if (!data.is_array()) fail(where, "data", "expected a flat array of numbers");
  if (data.size() != rows * cols)
    fail(where, "data", "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(data.size()));
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Index k = 0; k < data.size(); ++k)
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
        read_number(data[k], where, "data[" + std::to_string(k) + "]");
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path), path); }

json rows_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

EmbeddingFile embedding_from_json(const json& j, const std::string& where) {
  EmbeddingFile e;
  e.ambient_dimension = read_count(require(j, "ambient_dimension", where), where, "ambient_dimension");
  e.vertices = read_rows(require(j, "vertices", where), where, "vertices", std::nullopt,
                         static_cast<Eigen::Index>(e.ambient_dimension));
  e.simplices = read_index_lists(require(j, "simplices", where), where, "simplices");
  for (std::size_t s = 0; s < e.simplices.size(); ++s)
    for (Index v : e.simplices[s])
      if (v >= static_cast<Index>(e.vertices.rows()))
        fail(where, "simplices[" + std::to_string(s) + "]",
             "vertex " + std::to_string(v) + " out of range");
  return e;
}

EmbeddingFile load_embedding(const std::string& path) {
  return embedding_from_json(read_json_file(path), path);
}

json embedding_to_json(const PleatedEmbedding& pleated, const std::optional<ProjectionChain>& chain) {
  json out = {{"ambient_dimension", pleated.ambient_dimension()},
              {"vertices", rows_to_json(pleated.vertices)},
              {"simplices", triangulation_to_json(pleated.triangulation.simplices)["simplices"]}};
  if (chain) {
    json stages = json::array();
    for (const ChainStage& s : chain->stages)
      stages.push_back({{"ambient_dimension", s.ambient_dimension}, {"vertices", rows_to_json(s.vertices)}});
    out["stages"] = std::move(stages);
  }
  return out;
}

}  // namespace polycomp::io
