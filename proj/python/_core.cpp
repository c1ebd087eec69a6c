#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hmt/arrangement.hpp"
#include "hmt/cli.hpp"
#include "hmt/errors.hpp"
#include "hmt/lattice.hpp"

namespace py = pybind11;

namespace {

py::object big(const hmt::Integer& v) { return py::module_::import("builtins").attr("int")(v.get_str()); }

py::list bigs(const std::vector<hmt::Integer>& vs) {
    py::list out;
    for (const auto& v : vs) out.append(big(v));
    return out;
}

hmt::TorusDatum torus(std::size_t n, const std::vector<std::vector<long>>& columns) {
    return hmt::TorusDatum::create(n, columns);
}

hmt::ParameterLift lift(const std::vector<std::string>& gamma, const std::vector<int>& signs) {
    hmt::ParameterLift p;
    for (const auto& g : gamma) {
        hmt::Rational r(g);
        r.canonicalize();
        p.gamma_tilde.push_back(r);
    }
    p.signs = signs;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the hmt library";

    py::register_exception<hmt::InvalidDatum>(m, "InvalidDatum", PyExc_ValueError);

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = hmt::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line driver; returns (exit_code, stdout, stderr).");

    m.def(
        "corpus",
        [] {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& d : hmt::corpus()) j.push_back(hmt::to_json(d));
            return j.dump();
        },
        "Built-in datasets as a JSON array string.");

    m.def(
        "validate_dataset",
        [](const std::string& text) { return hmt::to_json(hmt::dataset_from_json(nlohmann::json::parse(text))).dump(); },
        py::arg("text"), "Validate a dataset/1 document; returns its normalized JSON.");

    m.def(
        "circuits",
        [](std::size_t n, const std::vector<std::vector<long>>& columns) {
            py::list out;
            for (const auto& c : hmt::circuits(torus(n, columns))) {
                py::list coeffs;
                for (const auto& q : c.coefficients) coeffs.append(hmt::to_string(q));
                py::dict e;
                e["vector"] = bigs(c.vector);
                e["support"] = c.support;
                e["coefficients"] = coeffs;
                out.append(e);
            }
            return out;
        },
        py::arg("n"), py::arg("columns"), "Circuits of the embedded torus given by its embedding columns.");

    m.def(
        "is_generic",
        [](std::size_t n, const std::vector<std::vector<long>>& columns, const std::vector<std::string>& gamma,
           const std::vector<int>& signs) {
            auto g = hmt::is_generic(torus(n, columns), lift(gamma, signs));
            py::dict e;
            e["generic"] = g.generic;
            if (g.witness) {
                e["circuit"] = bigs(g.witness->circuit);
                e["level"] = big(g.witness->level);
            }
            return e;
        },
        py::arg("n"), py::arg("columns"), py::arg("gamma_tilde"), py::arg("signs") = std::vector<int>{},
        "Genericity of a rational parameter lift; gamma_tilde entries are strings like \"1/2\".");
}
