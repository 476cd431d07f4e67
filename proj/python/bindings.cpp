#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flp/cli_io.hpp"

namespace py = pybind11;

namespace {

using Names = std::vector<std::string>;
using TextMatrix = std::vector<std::vector<std::string>>;

const char* kind_name(flp::ErrorKind k) {
    switch (k) {
        case flp::ErrorKind::invalid_argument: return "invalid_argument";
        case flp::ErrorKind::precondition: return "precondition";
        case flp::ErrorKind::extraction_exhausted: return "extraction_exhausted";
        case flp::ErrorKind::factorization_incomplete: return "factorization_incomplete";
        case flp::ErrorKind::parse: return "parse";
        case flp::ErrorKind::not_member: return "not_member";
    }
    return "unknown";
}

flp::PolyMatrix to_matrix(const TextMatrix& rows, const Names& vars) {
    if (rows.empty()) flp::fail(flp::ErrorKind::parse, "empty matrix");
    std::vector<std::vector<flp::Polynomial>> out;
    for (const auto& row : rows) {
        if (row.size() != rows.front().size()) flp::fail(flp::ErrorKind::parse, "matrix is not rectangular");
        std::vector<flp::Polynomial> r;
        for (const auto& s : row) r.push_back(flp::parse_polynomial(s, vars));
        out.push_back(std::move(r));
    }
    return flp::PolyMatrix::from_rows(out, vars.size());
}

TextMatrix to_text(const flp::PolyMatrix& m, const Names& vars) {
    TextMatrix out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(flp::to_string(m.at(i, j), vars));
    return out;
}

std::vector<std::string> to_text(const std::vector<flp::Polynomial>& ps, const Names& vars) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(flp::to_string(p, vars));
    return out;
}

}  // namespace

PYBIND11_MODULE(_flpfact, m) {
    m.doc() = "FLP factorization of multivariate polynomial matrices over the rationals";

    static py::exception<flp::Error> error(m, "FlpError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const flp::Error& e) {
            // args = (message, kind)
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), kind_name(e.kind())).ptr());
        }
    });

    m.def(
        "factorize",
        [](const std::string& job_json) { return flp::to_json(flp::run_factorize(flp::parse_job(job_json))); },
        py::arg("job_json"), "Run a JSON job and return the JSON result document.");

    m.def(
        "verify", [](const std::string& result_json) { return flp::run_verify(flp::parse_result(result_json)); },
        py::arg("result_json"), "Independently re-check a JSON result document.");

    m.def(
        "rank", [](const TextMatrix& rows, const Names& vars) { return flp::rank(to_matrix(rows, vars)); },
        py::arg("matrix"), py::arg("variables"));

    m.def(
        "d_r",
        [](const TextMatrix& rows, const Names& vars) {
            const auto F = to_matrix(rows, vars);
            return flp::to_string(flp::d_i(F, flp::rank(F)), vars);
        },
        py::arg("matrix"), py::arg("variables"), "Monic gcd of the maximal nonzero minors.");

    m.def(
        "column_reduced_minors",
        [](const TextMatrix& rows, const Names& vars) {
            const auto F = to_matrix(rows, vars);
            return to_text(flp::column_reduced_minors(F, flp::rank(F)).values, vars);
        },
        py::arg("matrix"), py::arg("variables"));

    m.def(
        "gcd",
        [](const std::vector<std::string>& polys, const Names& vars) {
            std::vector<flp::Polynomial> ps;
            for (const auto& s : polys) ps.push_back(flp::parse_polynomial(s, vars));
            return flp::to_string(flp::gcd(ps), vars);
        },
        py::arg("polys"), py::arg("variables"));

    m.def(
        "irreducible_factors",
        [](const std::string& poly, const Names& vars) {
            return to_text(flp::irreducible_factors(flp::parse_polynomial(poly, vars)), vars);
        },
        py::arg("poly"), py::arg("variables"));

    m.def(
        "flp_factorize",
        [](const TextMatrix& rows, const Names& vars, bool all_factorizations) {
            flp::FlpOptions opts;
            opts.all_factorizations = all_factorizations;
            py::list out;
            for (const auto& w : flp::flp_factorize(to_matrix(rows, vars), opts)) {
                py::dict d;
                d["G"] = to_text(w.G, vars);
                d["F1"] = to_text(w.F1, vars);
                d["f"] = flp::to_string(w.f, vars);
                d["verified"] = w.verified;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("matrix"), py::arg("variables"), py::arg("all_factorizations") = false,
        "List of dicts with keys G, F1, f, verified; F = G F1.");
}
