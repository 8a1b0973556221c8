#pragma once

// JSON formats.
//
//   field:    "Q" or {"Fp": q}
//   system:   {"field", "m", "n", "p", "A", "B", "C"}; matrices are arrays of
//             rows (or flat row-major arrays), entries are strings such as
//             "3", "-1/2" (integers are accepted too)
//   markov:   {"field", "m", "p", "blocks": [matrix, …]}, or a bare list of
//             scalars for a single-input single-output sequence over Q
//   kalman:   {"m", "n", "j": [...], "p": [...]} with 1-based columns
//   point:    {"k", "N", "pivots": [...], "rep": matrix} with 1-based pivots

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "moduli/grassmann.hpp"
#include "moduli/kalman.hpp"
#include "moduli/realization.hpp"

namespace moduli {

using json = nlohmann::ordered_json;

using AnySystem = std::variant<LinearSystem<Rational>, LinearSystem<Fp>>;
using AnyMarkov = std::variant<MarkovSequence<Rational>, MarkovSequence<Fp>>;

Field field_from_json(const json& j);
json field_to_json(const Field& f);

template <class S>
Mat<S> matrix_from_json(const Field& f, const json& j, Index rows, Index cols) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be a JSON array");
  auto entry = [&](const json& e) -> S {
    if (e.is_string()) return ScalarTraits<S>::parse(f, e.get<std::string>());
    if (e.is_number_integer()) return ScalarTraits<S>::parse(f, e.dump());
    throw Error(ErrorCode::ParseError, "matrix entries must be strings or integers, got " + e.dump());
  };
  Mat<S> out = zeros<S>(f, rows, cols);
  const bool nested = !j.empty() && j.front().is_array();
  if (nested) {
    if (static_cast<Index>(j.size()) != rows) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    }
    for (Index i = 0; i < rows; ++i) {
      const auto& row = j[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
        throw Error(ErrorCode::DimensionMismatch, "expected rows of length " + std::to_string(cols));
      }
      for (Index c = 0; c < cols; ++c) out(i, c) = entry(row[static_cast<std::size_t>(c)]);
    }
    return out;
  }
  if (static_cast<Index>(j.size()) != rows * cols) {
    // an empty matrix may be written as [] or as rows of []
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                                  std::to_string(j.size()));
  }
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) out(i, c) = entry(j[static_cast<std::size_t>(i * cols + c)]);
  }
  return out;
}

template <class S>
json matrix_to_json(const Mat<S>& mat) {
  json rows = json::array();
  for (Index i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (Index c = 0; c < mat.cols(); ++c) row.push_back(ScalarTraits<S>::to_string(mat(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
json system_to_json(const LinearSystem<S>& sys) {
  json j;
  j["field"] = field_to_json(sys.field());
  j["m"] = sys.m();
  j["n"] = sys.n();
  j["p"] = sys.p();
  j["A"] = matrix_to_json(sys.A());
  j["B"] = matrix_to_json(sys.B());
  j["C"] = matrix_to_json(sys.C());
  return j;
}

AnySystem system_from_json(const json& j);

template <class S>
json markov_to_json(const MarkovSequence<S>& seq) {
  json j;
  j["field"] = field_to_json(seq.field);
  j["m"] = seq.m;
  j["p"] = seq.p;
  json blocks = json::array();
  for (const auto& b : seq.blocks) blocks.push_back(matrix_to_json(b));
  j["blocks"] = std::move(blocks);
  return j;
}

AnyMarkov markov_from_json(const json& j);

json kalman_code_to_json(const KalmanCode& code);
KalmanCode kalman_code_from_json(const json& j);

template <class S>
json point_to_json(const GrassmannPoint<S>& pt) {
  json j;
  j["k"] = pt.k();
  j["N"] = pt.ambient();
  j["pivots"] = pt.pivots().one_based();
  j["rep"] = matrix_to_json(pt.rep());
  return j;
}

// Reads a whole file as JSON; throws ParseError.
json read_json_file(const std::string& path);

// Human-readable matrix, one bracketed row per line, each line prefixed by `indent`.
template <class S>
std::string format_matrix(const Mat<S>& mat, const std::string& indent = "  ") {
  if (mat.size() == 0) return indent + "(" + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) + ")\n";
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (Index i = 0; i < mat.rows(); ++i) {
    for (Index c = 0; c < mat.cols(); ++c) {
      cells.push_back(ScalarTraits<S>::to_string(mat(i, c)));
      width = std::max(width, cells.back().size());
    }
  }
  std::string out;
  for (Index i = 0; i < mat.rows(); ++i) {
    out += indent + "[";
    for (Index c = 0; c < mat.cols(); ++c) {
      const std::string& cell = cells[static_cast<std::size_t>(i * mat.cols() + c)];
      out += (c ? " " : "") + std::string(width - cell.size(), ' ') + cell;
    }
    out += "]\n";
  }
  return out;
}

}  // namespace moduli
