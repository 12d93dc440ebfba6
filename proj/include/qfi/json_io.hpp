#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qfi/channel.hpp"
#include "qfi/measurement.hpp"
#include "qfi/metrics.hpp"

namespace qfi {

nlohmann::json load_json_file(const std::string& path);

// {"dim": n, "entries": [[[re, im], ...], ...]} row-major; NaN/Inf rejected.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

// {"n_in": n, "n_out": m, "kraus": [matrix, ...]} with rectangular matrices
// encoded as {"rows": m, "cols": n, "entries": ...} or square ones as above.
KrausChannel channel_from_json(const nlohmann::json& j);

// {"effects": [matrix, ...]}
Povm povm_from_json(const nlohmann::json& j);

// {"base": matrix, "derivatives": [matrix, ...]}
ParamFamily family_from_json(const nlohmann::json& j);

// {"h": step, "base": matrix, "plus": [matrix, ...], "minus": [matrix, ...]}:
// states sampled at theta = +-h e_i, turned into central-difference tangents.
struct FdFamily {
  ParamFamily family;
  double h;
};
FdFamily fd_family_from_json(const nlohmann::json& j);

}  // namespace qfi
