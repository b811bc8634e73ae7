#pragma once

#include <json.hpp>

#include "freepot/tuple.hpp"

namespace freepot {

// Matrix wire format: { "n": int, "re": [row-major], "im": [row-major] }
// Tuple wire format:  { "g": int, "components": [matrix...] }

nlohmann::json to_json(const CMatrix& m);
nlohmann::json to_json(const MatrixTuple& t);

CMatrix matrix_from_json(const nlohmann::json& j);
MatrixTuple tuple_from_json(const nlohmann::json& j);

}  // namespace freepot
