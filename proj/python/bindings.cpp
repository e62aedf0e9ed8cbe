#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plonka/error.hpp"
#include "plonka/io.hpp"

namespace py = pybind11;
using namespace plonka;

namespace {

std::vector<std::vector<std::string>> family_names(const IsolatedFamily& fam) {
    std::vector<std::vector<std::string>> out;
    for (ElementSet s : fam.members()) {
        std::vector<std::string> names;
        for (ElementId e : s.elements()) names.push_back(fam.algebra().element_name(e));
        out.push_back(std::move(names));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_plonka, m) {
    m.doc() = "Decomposition of finite algebras into direct systems";

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<ResourceError> resource_error(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            input_error(e.what());
        } catch (const ResourceError& e) {
            resource_error(e.what());
        }
    });

    py::class_<Algebra>(m, "Algebra")
        .def_property_readonly("name", &Algebra::name)
        .def_property_readonly("elements", &Algebra::element_names)
        .def_property_readonly("signature", &Algebra::signature)
        .def("__len__", &Algebra::size)
        .def("__eq__", [](const Algebra& a, const Algebra& b) { return a == b; })
        .def("same_tables", &Algebra::same_tables)
        .def("table", [](const Algebra& a, const std::string& op) {
            for (const auto& o : a.operations())
                if (o.name == op) {
                    std::vector<std::string> out;
                    for (ElementId v : o.table) out.push_back(a.element_name(v));
                    return out;
                }
            throw InputError("no operation named '" + op + "'");
        })
        .def("render", &render_algebra)
        .def("__repr__", [](const Algebra& a) {
            return "<Algebra " + a.name() + " with " + std::to_string(a.size()) + " elements>";
        });

    py::class_<DirectSystem>(m, "DirectSystem")
        .def_property_readonly("name", &DirectSystem::name)
        .def_property_readonly("indices", &DirectSystem::index_names)
        .def("__len__", &DirectSystem::size)
        .def("render", &render_system);

    m.def("parse_algebra", [](const std::string& text) { return parse_algebra(text); }, py::arg("text"));
    m.def("parse_system", [](const std::string& text) { return parse_system(text); }, py::arg("text"));

    m.def(
        "isolated",
        [](const Algebra& a, std::size_t max_universe) { return family_names(all_isolated(a, max_universe)); },
        py::arg("algebra"), py::arg("max_universe") = kDefaultMaxUniverse);

    m.def(
        "decompose_report",
        [](const Algebra& a, const std::string& format, std::size_t max_universe, bool timing) {
            DecomposeOptions opts;
            opts.max_universe = max_universe;
            RenderOptions ro;
            ro.include_timing = timing;
            return render_report(decompose(a, opts), parse_report_format(format), ro);
        },
        py::arg("algebra"), py::arg("format") = "json", py::arg("max_universe") = kDefaultMaxUniverse,
        py::arg("timing") = true);

    m.def(
        "is_plonka_sum",
        [](const Algebra& a, std::size_t max_universe) {
            DecomposeOptions opts;
            opts.max_universe = max_universe;
            return decompose(a, opts).is_plonka_sum;
        },
        py::arg("algebra"), py::arg("max_universe") = kDefaultMaxUniverse);

    m.def(
        "systems",
        [](const Algebra& a, std::size_t max_universe) {
            DecomposeOptions opts;
            opts.max_universe = max_universe;
            std::vector<DirectSystem> out;
            for (auto& rec : decompose(a, opts).systems) out.push_back(std::move(rec.system));
            return out;
        },
        py::arg("algebra"), py::arg("max_universe") = kDefaultMaxUniverse);

    m.def("plonka_sum", &plonka_sum, py::arg("system"));
    m.def("verify_reconstruction", &verify_reconstruction, py::arg("algebra"), py::arg("system"));

    m.def(
        "partition_function",
        [](const Algebra& a, const DirectSystem& s) {
            const PartitionFunction f = from_system_on(a, s);
            std::vector<std::string> out;
            for (ElementId v : f.table()) out.push_back(a.element_name(v));
            return out;
        },
        py::arg("algebra"), py::arg("system"));

    m.def(
        "search_partition",
        [](const Algebra& a, std::size_t budget, bool nontrivial) {
            const SearchOutcome r = brute_force_search(a, budget, nontrivial);
            py::dict d;
            if (r.found) {
                std::vector<std::string> table;
                for (ElementId v : r.found->table()) table.push_back(a.element_name(v));
                d["table"] = table;
            } else {
                d["table"] = py::none();
            }
            d["exhausted"] = r.exhausted;
            d["nodes"] = r.nodes;
            return d;
        },
        py::arg("algebra"), py::arg("budget") = kDefaultSearchBudget, py::arg("nontrivial") = true);
}
