// serialize.cpp: JSON round trips for tuples, matrices, scalar points and
// free polynomial maps.
#include "ncball/serialize.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ncball/errors.hpp"

namespace ncball {
namespace {

using nlohmann::json;

json pair_of(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw MalformedInput("cannot serialize a non-finite entry");
  }
  return json::array({v.real(), v.imag()});
}

Complex pair_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw MalformedInput(std::string(what) + ": entries must be [re, im]");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw MalformedInput(std::string(what) + ": entries must be finite");
  }
  return Complex(re, im);
}

json matrix_rows(const ComplexMatrix& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      row.push_back(pair_of(M(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from(const json& rows, Eigen::Index nrows,
                          Eigen::Index ncols, const char* what) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != nrows) {
    throw MalformedInput(std::string(what) + ": wrong number of rows");
  }
  ComplexMatrix M(nrows, ncols);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != ncols) {
      throw MalformedInput(std::string(what) + ": wrong number of columns");
    }
    for (Eigen::Index c = 0; c < ncols; ++c) {
      M(r, c) = pair_from(row[static_cast<std::size_t>(c)], what);
    }
  }
  return M;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw MalformedInput("input is not valid JSON");
  }
  if (!j.is_object()) {
    throw MalformedInput("document must be a JSON object");
  }
  return j;
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw MalformedInput(std::string("missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

json document_frame(int n, int dim, const std::string& label) {
  json doc;
  doc["n"] = n;
  doc["dim"] = dim;
  if (!label.empty()) {
    doc["label"] = label;
  }
  doc["matrices"] = json::array();
  return doc;
}

}  // namespace

std::string serialize_tuple(const OperatorTuple& X, const std::string& label) {
  json doc = document_frame(X.n, X.d, label);
  for (const ComplexMatrix& M : X.X) {
    doc["matrices"].push_back(matrix_rows(M));
  }
  return doc.dump(2);
}

OperatorTuple parse_tuple(const std::string& text) {
  const json doc = parse_text(text);
  const int n = int_field(doc, "n");
  const int dim = int_field(doc, "dim");
  if (n < 1 || dim < 1) {
    throw MalformedInput("tuple document needs n >= 1 and dim >= 1");
  }
  if (!doc.contains("matrices") || !doc["matrices"].is_array() ||
      static_cast<int>(doc["matrices"].size()) != n) {
    throw MalformedInput("tuple document needs n matrices");
  }
  std::vector<ComplexMatrix> mats;
  mats.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mats.push_back(matrix_from(doc["matrices"][static_cast<std::size_t>(i)],
                               dim, dim, "matrix"));
  }
  return OperatorTuple(n, dim, std::move(mats));
}

std::string serialize_matrix(const ComplexMatrix& M,
                             const std::string& label) {
  if (M.rows() != M.cols() || M.rows() < 1) {
    throw MalformedInput("matrix document needs a square matrix");
  }
  json doc = document_frame(1, static_cast<int>(M.rows()), label);
  doc["matrices"].push_back(matrix_rows(M));
  return doc.dump(2);
}

ComplexMatrix parse_matrix(const std::string& text) {
  const OperatorTuple X = parse_tuple(text);
  if (X.n != 1) {
    throw MalformedInput("matrix document must hold exactly one matrix");
  }
  return X.X[0];
}

std::string serialize_vector(const ComplexVector& z, const std::string& label) {
  if (z.size() < 1) {
    throw MalformedInput("scalar point document needs at least one entry");
  }
  json doc = document_frame(1, static_cast<int>(z.size()), label);
  doc["matrices"].push_back(matrix_rows(z.transpose()));
  return doc.dump(2);
}

ComplexVector parse_vector(const std::string& text) {
  const json doc = parse_text(text);
  const int n = int_field(doc, "n");
  const int dim = int_field(doc, "dim");
  if (n != 1 || dim < 1) {
    throw MalformedInput("scalar point document needs n = 1 and dim >= 1");
  }
  if (!doc.contains("matrices") || !doc["matrices"].is_array() ||
      doc["matrices"].size() != 1) {
    throw MalformedInput("scalar point document needs one row");
  }
  const ComplexMatrix row = matrix_from(doc["matrices"][0], 1, dim, "row");
  return row.transpose().col(0);
}

std::string serialize_free_map(const FreePolyMap& F) {
  json doc;
  doc["n_in"] = F.n_in;
  doc["q_out"] = F.q_out;
  doc["e"] = F.e;
  doc["terms"] = json::array();
  for (const auto& [key, A] : F.coeffs) {
    json term;
    term["component"] = key.first;
    term["word"] = key.second.letters;
    term["coeff"] = matrix_rows(A);
    doc["terms"].push_back(std::move(term));
  }
  return doc.dump(2);
}

FreePolyMap parse_free_map(const std::string& text) {
  const json doc = parse_text(text);
  FreePolyMap F;
  F.n_in = int_field(doc, "n_in");
  F.q_out = int_field(doc, "q_out");
  F.e = int_field(doc, "e");
  if (F.n_in < 1 || F.q_out < 1 || F.e < 1) {
    throw MalformedInput("free map document needs n_in, q_out, e >= 1");
  }
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw MalformedInput("free map document needs a terms array");
  }
  for (const json& term : doc["terms"]) {
    if (!term.is_object()) {
      throw MalformedInput("term: must be an object");
    }
    const int component = int_field(term, "component");
    if (component < 0 || component >= F.q_out) {
      throw MalformedInput("term: component outside 0..q_out-1");
    }
    if (!term.contains("word") || !term["word"].is_array()) {
      throw MalformedInput("term: needs a word array");
    }
    Word word;
    for (const json& letter : term["word"]) {
      if (!letter.is_number_integer()) {
        throw MalformedInput("term: word letters must be integers");
      }
      const int value = letter.get<int>();
      if (value < 1 || value > F.n_in) {
        throw MalformedInput("term: word letters must lie in 1..n_in");
      }
      word.letters.push_back(value);
    }
    if (!term.contains("coeff")) {
      throw MalformedInput("term: needs a coeff matrix");
    }
    const ComplexMatrix A = matrix_from(term["coeff"], F.e, F.e, "coeff");
    auto [it, inserted] = F.coeffs.emplace(std::make_pair(component, word), A);
    if (!inserted) {
      it->second += A;
    }
  }
  return F;
}

}  // namespace ncball
