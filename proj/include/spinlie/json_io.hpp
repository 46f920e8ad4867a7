#pragma once

#include <nlohmann/json.hpp>

#include "spinlie/operator_core.hpp"

namespace spinlie {

/// Matrix JSON: array of rows, each entry a two-element array [re, im].
nlohmann::json matrix_to_json(const ComplexMatrix& x);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace spinlie
