#include "moduli/io.hpp"

#include <fstream>
#include <sstream>

namespace moduli {

namespace {

Index get_dim(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<Index>();
}

const json& get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class S>
LinearSystem<S> system_as(const Field& f, const json& j) {
  const Index m = get_dim(j, "m"), n = get_dim(j, "n"), p = get_dim(j, "p");
  return LinearSystem<S>(f, matrix_from_json<S>(f, get(j, "A"), n, n), matrix_from_json<S>(f, get(j, "B"), n, m),
                         matrix_from_json<S>(f, get(j, "C"), p, n));
}

template <class S>
MarkovSequence<S> markov_as(const Field& f, const json& j) {
  MarkovSequence<S> seq{f, get_dim(j, "m"), get_dim(j, "p"), {}};
  const json& blocks = get(j, "blocks");
  if (!blocks.is_array()) throw Error(ErrorCode::ParseError, "\"blocks\" must be an array");
  for (const auto& b : blocks) seq.blocks.push_back(matrix_from_json<S>(f, b, seq.p, seq.m));
  return seq;
}

}  // namespace

Field field_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Q") return Field::rationals();
    if (s.rfind("F_", 0) == 0) {
      try {
        return Field::prime(std::stoull(s.substr(2)));
      } catch (const std::logic_error&) {
      }
    }
    throw Error(ErrorCode::InvalidField, "unknown field \"" + s + "\"");
  }
  if (j.is_object() && j.contains("Fp")) {
    const auto& q = j.at("Fp");
    if (!q.is_number_integer() || q.get<long long>() < 2) throw Error(ErrorCode::InvalidField, "Fp modulus must be an integer >= 2");
    return Field::prime(q.get<std::uint64_t>());
  }
  throw Error(ErrorCode::InvalidField, "field must be \"Q\" or {\"Fp\": q}");
}

json field_to_json(const Field& f) {
  if (f.is_prime_field()) return json{{"Fp", f.characteristic()}};
  return "Q";
}

AnySystem system_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "system must be a JSON object");
  const Field f = field_from_json(get(j, "field"));
  if (f.is_prime_field()) return system_as<Fp>(f, j);
  return system_as<Rational>(f, j);
}

AnyMarkov markov_from_json(const json& j) {
  if (j.is_array()) {
    MarkovSequence<Rational> seq{Field::rationals(), 1, 1, {}};
    for (const auto& e : j) seq.blocks.push_back(matrix_from_json<Rational>(seq.field, json::array({e}), 1, 1));
    return seq;
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "Markov sequence must be an object or a list of scalars");
  const Field f = field_from_json(get(j, "field"));
  if (f.is_prime_field()) return markov_as<Fp>(f, j);
  return markov_as<Rational>(f, j);
}

json kalman_code_to_json(const KalmanCode& code) {
  json j;
  j["m"] = code.m();
  j["n"] = code.n();
  std::vector<Index> cols = code.columns();
  for (auto& c : cols) ++c;
  j["j"] = cols;
  j["p"] = code.column_heights();
  return j;
}

KalmanCode kalman_code_from_json(const json& j) {
  const Index m = get_dim(j, "m"), n = get_dim(j, "n");
  const auto cols = get(j, "j").get<std::vector<Index>>();
  const auto heights = get(j, "p").get<std::vector<Index>>();
  if (cols.size() != heights.size()) throw Error(ErrorCode::InvalidMultiIndex, "\"j\" and \"p\" differ in length");
  std::vector<Index> full(static_cast<std::size_t>(m), 0);
  for (std::size_t t = 0; t < cols.size(); ++t) {
    if (cols[t] < 1 || cols[t] > m || (t > 0 && cols[t] <= cols[t - 1]) || heights[t] < 1) {
      throw Error(ErrorCode::InvalidMultiIndex, "Kalman code columns must be increasing in 1..m with positive heights");
    }
    full[static_cast<std::size_t>(cols[t] - 1)] = heights[t];
  }
  return KalmanCode(n, std::move(full));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace moduli
