#include "chsoliton/document.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace chs {

SubalgebraDocument parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DocumentError("document must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw DocumentError("missing integer field 'n'");
  if (!j.contains("basis") || !j["basis"].is_array()) throw DocumentError("missing array field 'basis'");

  SubalgebraDocument doc;
  doc.n = j["n"].get<int>();
  if (doc.n < 2) throw DocumentError("n must be at least 2");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw DocumentError("'label' must be a string");
    doc.label = j["label"].get<std::string>();
  }
  const std::size_t width = 2 * static_cast<std::size_t>(doc.n);
  for (const auto& row : j["basis"]) {
    if (!row.is_array() || row.size() != width) {
      throw DocumentError("each basis row must be an array of " + std::to_string(width) + " numbers");
    }
    std::vector<double> v;
    v.reserve(width);
    for (const auto& x : row) {
      if (!x.is_number()) throw DocumentError("basis entries must be numbers");
      v.push_back(x.get<double>());
    }
    doc.basis.push_back(std::move(v));
  }
  if (doc.basis.empty()) throw DocumentError("basis is empty");
  return doc;
}

SubalgebraDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

SubalgebraDocument document_from(const Subalgebra& sub) {
  SubalgebraDocument doc;
  doc.n = sub.ambient().n();
  doc.label = sub.label();
  const Matrix& b = sub.basis();
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    std::vector<double> row(static_cast<std::size_t>(b.rows()));
    for (Eigen::Index r = 0; r < b.rows(); ++r) row[static_cast<std::size_t>(r)] = b(r, c);
    doc.basis.push_back(std::move(row));
  }
  return doc;
}

Matrix spanning_matrix(const SubalgebraDocument& doc) {
  const Eigen::Index d = 2 * doc.n;
  Matrix m(d, static_cast<Eigen::Index>(doc.basis.size()));
  for (std::size_t c = 0; c < doc.basis.size(); ++c) {
    if (doc.basis[c].size() != static_cast<std::size_t>(d)) throw DocumentError("basis row has the wrong length");
    for (Eigen::Index r = 0; r < d; ++r) m(r, static_cast<Eigen::Index>(c)) = doc.basis[c][static_cast<std::size_t>(r)];
  }
  return m;
}

Subalgebra load_subalgebra(const SubalgebraDocument& doc) {
  try {
    return Subalgebra(make_ambient(doc.n), spanning_matrix(doc), kClosureTolerance, doc.label);
  } catch (const ClosureError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
}

}  // namespace chs
