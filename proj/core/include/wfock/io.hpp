#pragma once

#include <json.hpp>

#include "wfock/tuples.hpp"

namespace wfock {

using Json = nlohmann::ordered_json;

// Matrices are row-major lists of rows; complex entries are [re, im] pairs.
Json matrix_to_json(const CMat& a);
CMat matrix_from_json(const Json& j);

// Weight sequence file: { "d": int, "Kmax": int, "X": [matrix, ...] } with
// X listing X_1 .. X_Kmax. Round-trips bit-exactly.
Json weights_to_json(const WeightSequence& x);
WeightSequence weights_from_json(const Json& j);
WeightSequence load_weights(const std::string& path);
void save_weights(const WeightSequence& x, const std::string& path);

// Tuple file: { "d": int, "m": int, "T": [matrix, ...] }.
Json tuple_to_json(const OperatorTuple& t);
OperatorTuple tuple_from_json(const Json& j);
OperatorTuple load_tuple(const std::string& path);
void save_tuple(const OperatorTuple& t, const std::string& path);

// Subspace file: { "m": int, "S": matrix } — isometry or projection.
Json subspace_to_json(const CMat& s);
CMat subspace_from_json(const Json& j);
CMat load_subspace(const std::string& path);
void save_subspace(const CMat& s, const std::string& path);

Json load_json(const std::string& path);
void write_text(const std::string& text, const std::string& path);  // path "-": stdout

}  // namespace wfock
