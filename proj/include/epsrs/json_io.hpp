#pragma once

#include <string>

#include "json.hpp"

#include "epsrs/matrix.hpp"

namespace epsrs {

using json = nlohmann::json;

/// [re, im]
json complex_to_json(cplx z);

/// Accepts [re, im] or a bare real number.
cplx complex_from_json(const json& j);

/// {"rows": m, "cols": n, "entries": [[re, im], ...]} in row-major order.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// Reads a matrix JSON file; InputError on I/O or format problems.
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace epsrs
