#include "epsrs/json_io.hpp"

#include <fstream>

#include "epsrs/errors.hpp"

namespace epsrs {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw InputError("expected a complex number as [re, im] or a real number, got " + j.dump());
}

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (const auto& z : m.entries()) entries.push_back(complex_to_json(z));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw InputError("matrix JSON must be an object");
    for (const char* key : {"rows", "cols", "entries"}) {
        if (!j.contains(key)) throw InputError(std::string("matrix JSON is missing \"") + key + "\"");
    }
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
        throw InputError("matrix JSON \"rows\" and \"cols\" must be positive integers");
    }
    const auto& e = j["entries"];
    if (!e.is_array()) throw InputError("matrix JSON \"entries\" must be an array");
    std::vector<cplx> entries;
    entries.reserve(e.size());
    for (const auto& z : e) entries.push_back(complex_from_json(z));
    return ComplexMatrix(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>(), std::move(entries));
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw InputError("malformed JSON in " + path + ": " + ex.what());
    }
    return matrix_from_json(j);
}

}  // namespace epsrs
