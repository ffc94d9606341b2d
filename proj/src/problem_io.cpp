#include "iqp/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iqp/errors.hpp"

namespace iqp {

using Json = nlohmann::ordered_json;

namespace {

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

const Json& field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("problem file: missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError("problem file: " + where + " is not a number");
  return j.get<double>();
}

Vector read_vector(const Json& doc, const char* key, Eigen::Index expected) {
  const Json& j = field(doc, key);
  if (!j.is_array()) throw ParseError(std::string("problem file: field '") + key + "' is not an array");
  if (static_cast<Eigen::Index>(j.size()) != expected) {
    throw DimensionMismatch(std::string("problem file: field '") + key + "' has " +
                            std::to_string(j.size()) + " entries, expected " + std::to_string(expected));
  }
  Vector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    v(i) = number(j[static_cast<std::size_t>(i)], std::string(key) + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix read_matrix(const Json& doc, const char* key, Eigen::Index rows, Eigen::Index cols) {
  const Json& j = field(doc, key);
  if (!j.is_array()) throw ParseError(std::string("problem file: field '") + key + "' is not an array");
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    throw DimensionMismatch(std::string("problem file: field '") + key + "' has " +
                            std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionMismatch(std::string("problem file: field '") + key + "' row " + std::to_string(i) +
                              " does not have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = number(row[static_cast<std::size_t>(k)],
                       std::string(key) + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Eigen::Index read_count(const Json& doc, const char* key, Eigen::Index min) {
  const Json& j = field(doc, key);
  if (!j.is_number_integer()) throw ParseError(std::string("problem file: field '") + key + "' is not an integer");
  const auto v = j.get<long long>();
  if (v < min) {
    throw ParseError(std::string("problem file: field '") + key + "' must be >= " + std::to_string(min));
  }
  return static_cast<Eigen::Index>(v);
}

}  // namespace

std::string problem_to_json(const Instance& inst) {
  const auto& p = inst.problem;
  Json doc;
  doc["n"] = p.dim();
  doc["m"] = p.C.rows();
  doc["Q"] = matrix_json(p.Q.dense());
  doc["q"] = vector_json(p.q);
  doc["A"] = matrix_json(p.C.a());
  doc["b"] = vector_json(p.C.b());
  doc["x0"] = vector_json(inst.x0);
  return doc.dump() + "\n";
}

Instance problem_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("problem file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("problem file: top level is not a JSON object");

  const auto n = read_count(doc, "n", 1);
  const auto m = read_count(doc, "m", 0);
  Matrix q_mat = read_matrix(doc, "Q", n, n);
  Vector q = read_vector(doc, "q", n);
  Matrix a = read_matrix(doc, "A", m, n);
  Vector b = read_vector(doc, "b", m);
  Vector x0 = read_vector(doc, "x0", n);
  return {IqProblem(SymMatrix(std::move(q_mat)), std::move(q), Polyhedron(std::move(a), std::move(b))),
          std::move(x0)};
}

void save_problem(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << problem_to_json(inst);
  if (!out) throw Error("write failed for " + path.string());
}

Instance load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return problem_from_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace iqp
