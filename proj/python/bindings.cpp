#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unruhent/sweep.hpp"

namespace py = pybind11;
using namespace unruh;

namespace {

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["aL_over_c2"] = r.aL_over_c2;
    d["s"] = r.s;
    d["n_char"] = r.n_char;
    d["detector_model"] = model_name(r.detector_model);
    d["abs_alpha"] = r.abs_alpha;
    d["abs_beta"] = r.abs_beta;
    d["abs_beta_prime"] = r.abs_beta_prime;
    d["n_unruh"] = r.n_unruh;
    d["beta_estimate"] = r.beta_estimate;
    d["e_n"] = r.e_n;
    d["min_physicality_eig"] = r.min_physicality_eig;
    return d;
}

// Same keys as the CLI config files; values are stringified.
RunConfig config_from_kwargs(const py::dict& kw) {
    KeyValues kv;
    for (auto item : kw) {
        py::handle v = item.second;
        std::string text;
        if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
            for (auto x : v) text += (text.empty() ? "" : ",") + py::str(x).cast<std::string>();
        } else {
            text = py::str(v).cast<std::string>();
        }
        kv[py::str(item.first).cast<std::string>()] = text;
    }
    return config_from(kv);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Entanglement degradation seen by a uniformly accelerated detector";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_readwrite("c", &PhysicalParams::c)
        .def_readwrite("a", &PhysicalParams::a)
        .def_readwrite("L", &PhysicalParams::L)
        .def_readwrite("n_char", &PhysicalParams::n_char)
        .def_readwrite("s", &PhysicalParams::s)
        .def_readwrite("k_min_state", &PhysicalParams::k_min_state)
        .def_readwrite("k_min_detector", &PhysicalParams::k_min_detector)
        .def("validate", &PhysicalParams::validate)
        .def("__repr__", [](const PhysicalParams& p) {
            return "PhysicalParams(c=" + std::to_string(p.c) + ", a=" + std::to_string(p.a) +
                   ", L=" + std::to_string(p.L) + ", n_char=" + std::to_string(p.n_char) + ")";
        });
    m.def("with_aL", &with_aL, py::arg("params"), py::arg("aL_over_c2"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("x_extent", &GridSpec::x_extent)
        .def_readwrite("x_points", &GridSpec::x_points)
        .def_readwrite("k_max", &GridSpec::k_max)
        .def_readwrite("k_points", &GridSpec::k_points)
        .def_property_readonly("dk", &GridSpec::dk)
        .def_property_readonly("dx", &GridSpec::dx);
    m.def("default_grid", &default_grid);
    m.def("refined", &refined);

    m.def("conformal_length", &conformal_length);
    m.def("beta_estimate", &beta_estimate);
    m.def("bose_einstein_occupation", &bose_einstein_occupation, py::arg("k"), py::arg("params"));

    m.def(
        "build_covariance",
        [](cplx alpha, cplx beta, cplx beta_prime, double n_mean, double s) {
            OverlapSet o;
            o.alpha = alpha;
            o.beta = beta;
            o.beta_prime = beta_prime;
            return build_covariance(o, {n_mean}, s);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("beta_prime"), py::arg("n_mean"), py::arg("s"));
    m.def("ideal_covariance", &ideal_covariance);
    m.def("log_negativity", py::overload_cast<const CovarianceMatrix4&>(&log_negativity));
    m.def(
        "physicality_check",
        [](const CovarianceMatrix4& S, double tol) {
            auto r = physicality_check(S, tol);
            return py::make_tuple(r.pass, r.min_eigenvalue);
        },
        py::arg("sigma"), py::arg("tol") = 1e-9);

    m.def(
        "evaluate_point",
        [](const PhysicalParams& p, const std::string& model, std::optional<GridSpec> g) {
            SweepRow r;
            {
                py::gil_scoped_release release;
                r = evaluate_point(p, parse_model(model), g ? *g : default_grid(p));
            }
            return row_dict(r);
        },
        py::arg("params"), py::arg("model") = "gaussian", py::arg("grid") = py::none());

    m.def(
        "sweep",
        [](py::kwargs kw) {
            RunConfig cfg = config_from_kwargs(kw);
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = sweep(cfg).rows;
            }
            py::list out;
            for (auto& r : rows) out.append(row_dict(r));
            return out;
        },
        "Sweep with the same keys as the config files, e.g. sweep(n_char=6, aL_values=[0.1, 1], s_values=[1]).");

    m.def(
        "run_checks",
        [](py::kwargs kw) {
            RunConfig cfg = config_from_kwargs(kw);
            std::vector<CheckResult> res;
            {
                py::gil_scoped_release release;
                res = run_checks(cfg);
            }
            py::list out;
            for (auto& r : res) {
                py::dict d;
                d["suite"] = r.suite;
                d["status"] = r.status;
                d["worst"] = r.worst;
                d["tolerance"] = r.tolerance;
                out.append(d);
            }
            return out;
        });
    m.attr("csv_header") = csv_header();
}
