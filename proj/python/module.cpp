// pybind11 bindings for the banachlab core: spaces, moduli, classification,
// sums, inequality checks and the counterexample replays.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "banachlab/catalog.hpp"
#include "banachlab/classify.hpp"
#include "banachlab/moduli.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/report_json.hpp"
#include "banachlab/specparse.hpp"
#include "banachlab/sums.hpp"
#include "banachlab/verify.hpp"

namespace py = pybind11;
using namespace banachlab;

namespace {

py::object json_to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

Resolution make_res(int angles, int tuple_angles, int radial, int refine_iters, int dual_points) {
    Resolution r;
    r.angles = angles;
    r.tuple_angles = tuple_angles;
    r.radial = radial;
    r.refine_iters = refine_iters;
    r.dual_points = dual_points;
    return r;
}

}  // namespace

PYBIND11_MODULE(_banachlab, m) {
    m.doc() = "Moduli of convexity/smoothness, classification and inequality checks "
              "for finite-dimensional real normed spaces.";

    py::class_<Resolution>(m, "Resolution")
        .def(py::init(&make_res), py::arg("angles") = 4096, py::arg("tuple_angles") = 512,
             py::arg("radial") = 17, py::arg("refine_iters") = 50, py::arg("dual_points") = 16384)
        .def_readwrite("angles", &Resolution::angles)
        .def_readwrite("tuple_angles", &Resolution::tuple_angles)
        .def_readwrite("radial", &Resolution::radial)
        .def_readwrite("refine_iters", &Resolution::refine_iters)
        .def_readwrite("dual_points", &Resolution::dual_points);

    py::class_<Functional>(m, "Functional")
        .def(py::init<Vec>())
        .def_readonly("coords", &Functional::coords)
        .def("__call__", &Functional::operator());

    py::class_<NormedSpace>(m, "NormedSpace")
        .def_property_readonly("dim", &NormedSpace::dim)
        .def_property_readonly("label", &NormedSpace::label)
        .def_property_readonly("equiv_lo", &NormedSpace::equiv_lo)
        .def_property_readonly("equiv_hi", &NormedSpace::equiv_hi)
        .def("norm", &NormedSpace::norm)
        .def("__call__", &NormedSpace::norm)
        .def("__repr__",
             [](const NormedSpace& s) { return "<NormedSpace " + s.label() + ">"; });

    // catalog
    m.def("build_lp", &build_lp, py::arg("n"), py::arg("p"));
    m.def("build_euclid", &build_euclid, py::arg("n"));
    m.def("build_example_62", &build_example_62, py::arg("m"));
    m.def("build_example_63", &build_example_63, py::arg("m"),
          py::arg("alpha") = std::vector<double>{});
    m.def("build_example_64", &build_example_64, py::arg("m"));
    m.def("build_example_65", &build_example_65, py::arg("m"));
    m.def("build_arc2d_preset",
          [](const std::string& name) { return build_arc2d(arc2d_preset(name)); });
    m.def("parse_space", [](const std::string& spec) { return parse_space_spec(spec); });
    m.def("catalog_listing", &catalog_listing);

    // normcore
    m.def("norm_eval", &norm_eval);
    m.def(
        "dual_norm",
        [](const NormedSpace& s, const Vec& f, const Resolution& res) {
            return json_to_py(to_json(dual_norm(s, Functional(f), res)));
        },
        py::arg("space"), py::arg("f"), py::arg("res") = Resolution{});
    m.def(
        "norming_functional",
        [](const NormedSpace& s, const Vec& x) { return norming_functional(s, x).coords; },
        py::arg("space"), py::arg("x"));
    m.def(
        "subdifferential",
        [](const NormedSpace& s, const Vec& x) {
            auto sd = subdifferential(s, x);
            std::vector<Vec> members;
            for (const auto& f : sd.members) members.push_back(f.coords);
            return py::make_tuple(members, sd.exact);
        },
        py::arg("space"), py::arg("x"));
    m.def("smoothness_gap",
          [](const NormedSpace& s, const Vec& x, const Vec& y) { return smoothness_gap(s, x, y); });
    m.def("dual_space", &dual_space, py::arg("space"), py::arg("res") = Resolution{});
    m.def("quotient_space", &quotient_space, py::arg("space"), py::arg("basis"),
          py::arg("res") = Resolution{});

    // moduli
    m.def(
        "modulus",
        [](const NormedSpace& s, const std::string& kind, double arg, const Resolution& res) {
            auto k = modulus_kind_from_string(kind);
            if (!k) throw std::invalid_argument("unknown modulus kind " + kind);
            return json_to_py(to_json(estimate_modulus(s, *k, arg, res)));
        },
        py::arg("space"), py::arg("kind"), py::arg("argument"), py::arg("res") = Resolution{});
    m.def(
        "delta_uacsed",
        [](const NormedSpace& s, const Vec& z, double eps, const Resolution& res) {
            return json_to_py(to_json(delta_uacsed(s, z, eps, res)));
        },
        py::arg("space"), py::arg("z"), py::arg("eps"), py::arg("res") = Resolution{});
    m.def(
        "grid_oracle_2d",
        [](const NormedSpace& s, const std::string& kind, double arg, int angles) {
            auto k = modulus_kind_from_string(kind);
            if (!k) throw std::invalid_argument("unknown modulus kind " + kind);
            return json_to_py(to_json(grid_oracle_2d(s, *k, arg, angles)));
        },
        py::arg("space"), py::arg("kind"), py::arg("argument"), py::arg("angles") = 4096);

    // classify
    m.def(
        "classify",
        [](const NormedSpace& s, double tol, const Resolution& res) {
            ClassificationOptions opt;
            opt.tol = tol;
            opt.res = res;
            return json_to_py(to_json(classify_space(s, opt)));
        },
        py::arg("space"), py::arg("tol") = 1e-4, py::arg("res") = Resolution{});

    // sums
    py::class_<AbsoluteNorm>(m, "AbsoluteNorm")
        .def_property_readonly("dim", &AbsoluteNorm::dim)
        .def_property_readonly("label", &AbsoluteNorm::label)
        .def_property_readonly("certified_absolute", &AbsoluteNorm::certified_absolute)
        .def_property_readonly("certified_normalized", &AbsoluteNorm::certified_normalized)
        .def("__call__", &AbsoluteNorm::operator())
        .def("as_space", &AbsoluteNorm::as_space);
    m.def("build_absolute_lp", &build_absolute_lp, py::arg("m"), py::arg("p"));
    m.def("build_absolute_weighted_lp", &build_absolute_weighted_lp, py::arg("m"), py::arg("p"),
          py::arg("weights"));
    py::class_<SumSpace>(m, "SumSpace")
        .def_property_readonly("space", &SumSpace::space)
        .def_property_readonly("total_dim", &SumSpace::total_dim);
    m.def("build_sum", &build_sum, py::arg("components"), py::arg("E"));
    m.def("e_prime", &e_prime, py::arg("E"), py::arg("res") = Resolution{});
    m.def(
        "u_plus_violation",
        [](const AbsoluteNorm& E, double delta, double eps, const Resolution& res) {
            auto v = u_plus_violation(E, delta, eps, res);
            return py::make_tuple(v.value, v.feasible);
        },
        py::arg("E"), py::arg("delta"), py::arg("eps"), py::arg("res") = Resolution{});

    // verify / replay
    m.def(
        "replay_example",
        [](int id, int n_max) { return json_to_py(to_json(replay_example(id, n_max))); },
        py::arg("example"), py::arg("n_max") = 8);
    m.def(
        "check_inequality",
        [](const std::string& id, const NormedSpace& s, const std::vector<double>& eps,
           const std::vector<double>& tau, const Resolution& res) {
            py::list out;
            if (id == "delta_rho") {
                out.append(json_to_py(to_json(check_delta_rho(s, eps, tau, res))));
            } else if (id == "delta_tilde_rho") {
                out.append(json_to_py(to_json(check_delta_tilde_rho(s, eps, res))));
            } else if (id == "lipschitz") {
                out.append(json_to_py(to_json(check_lipschitz_delta_uacs(s, eps, res))));
            } else if (id == "dual") {
                for (auto& r : check_dual_inequalities(s, eps, tau, res)) {
                    out.append(json_to_py(to_json(r)));
                }
            } else if (id == "superreflexivity") {
                out.append(json_to_py(to_json(check_superreflexivity_criterion(s, tau, res))));
            } else if (id == "acs_chars") {
                out.append(json_to_py(to_json(check_acs_characterizations(s, 6, res))));
            } else {
                throw std::invalid_argument("unknown inequality id " + id);
            }
            return out;
        },
        py::arg("inequality"), py::arg("space"), py::arg("eps"), py::arg("tau"),
        py::arg("res") = Resolution{});

    m.attr("__version__") = "0.1.0";
}
