#include "wfock/io.hpp"

#include <fstream>
#include <iostream>

#include "wfock/words.hpp"

namespace wfock {

Json matrix_to_json(const CMat& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.cols(); ++j)
      row.push_back(Json::array({a(i, j).real(), a(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix: expected non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  CMat a(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw InputError("matrix: ragged rows");
    for (Index c = 0; c < cols; ++c) {
      const Json& entry = row.at(static_cast<std::size_t>(c));
      if (!entry.is_array() || entry.size() != 2)
        throw InputError("matrix: entries must be [re, im] pairs");
      a(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return a;
}

Json weights_to_json(const WeightSequence& x) {
  Json j;
  j["d"] = x.d;
  j["Kmax"] = x.kmax;
  Json list = Json::array();
  for (int k = 1; k <= x.kmax; ++k) list.push_back(matrix_to_json(x.weight(k)));
  j["X"] = std::move(list);
  return j;
}

WeightSequence weights_from_json(const Json& j) {
  WeightSequence x;
  try {
    x.d = j.at("d").get<int>();
    x.kmax = j.at("Kmax").get<int>();
    const Json& list = j.at("X");
    if (!list.is_array() || static_cast<int>(list.size()) != x.kmax)
      throw InputError("weights: X must list Kmax matrices");
    x.X.resize(static_cast<std::size_t>(x.kmax) + 1);
    for (int k = 1; k <= x.kmax; ++k) {
      x.X[static_cast<std::size_t>(k)] = matrix_from_json(list.at(static_cast<std::size_t>(k - 1)));
      const Index dim = static_cast<Index>(tensor_dim(x.d, k));
      const CMat& xk = x.X[static_cast<std::size_t>(k)];
      if (xk.rows() != dim || xk.cols() != dim)
        throw InputError("weights: X_" + std::to_string(k) + " must be " +
                         std::to_string(dim) + "x" + std::to_string(dim));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("weights: ") + e.what());
  }
  return x;
}

namespace {

Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(what + ": JSON parse error: " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

WeightSequence load_weights(const std::string& path) {
  return weights_from_json(parse_text(read_file(path), path));
}

void save_weights(const WeightSequence& x, const std::string& path) {
  write_text(weights_to_json(x).dump(2) + "\n", path);
}

Json tuple_to_json(const OperatorTuple& t) {
  Json j;
  j["d"] = t.d;
  j["m"] = t.m;
  Json list = Json::array();
  for (int i = 0; i < t.d; ++i) list.push_back(matrix_to_json(t.op(i)));
  j["T"] = std::move(list);
  return j;
}

OperatorTuple tuple_from_json(const Json& j) {
  OperatorTuple t;
  try {
    t.d = j.at("d").get<int>();
    t.m = j.at("m").get<int>();
    const Json& list = j.at("T");
    if (!list.is_array() || static_cast<int>(list.size()) != t.d)
      throw InputError("tuple: T must list d matrices");
    for (const auto& entry : list) {
      CMat op = matrix_from_json(entry);
      if (op.rows() != t.m || op.cols() != t.m)
        throw InputError("tuple: operators must be m x m");
      t.T.push_back(std::move(op));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("tuple: ") + e.what());
  }
  return t;
}

OperatorTuple load_tuple(const std::string& path) {
  return tuple_from_json(parse_text(read_file(path), path));
}

void save_tuple(const OperatorTuple& t, const std::string& path) {
  write_text(tuple_to_json(t).dump(2) + "\n", path);
}

Json subspace_to_json(const CMat& s) {
  Json j;
  j["m"] = static_cast<int>(s.rows());
  j["S"] = matrix_to_json(s);
  return j;
}

CMat subspace_from_json(const Json& j) {
  try {
    const CMat s = matrix_from_json(j.at("S"));
    if (s.rows() != j.at("m").get<Index>())
      throw InputError("subspace: S row count != m");
    return s;
  } catch (const Json::exception& e) {
    throw InputError(std::string("subspace: ") + e.what());
  }
}

CMat load_subspace(const std::string& path) {
  return subspace_from_json(parse_text(read_file(path), path));
}

void save_subspace(const CMat& s, const std::string& path) {
  write_text(subspace_to_json(s).dump(2) + "\n", path);
}

Json load_json(const std::string& path) { return parse_text(read_file(path), path); }

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace wfock
