#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>
#include <pybind11/pybind11.h>

#include "eisheat/experiments.hpp"

namespace py = pybind11;
using namespace eis;

namespace {

template <typename T>
py::array_t<T> to_array(std::span<const T> v) {
    py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

template <typename T>
py::array_t<T> apply_op(const StencilOperator& op, py::array_t<T, py::array::c_style | py::array::forcecast> v) {
    if (v.ndim() != 1) throw PreconditionError("expected a one-dimensional array");
    std::span<const T> in(v.data(), static_cast<std::size_t>(v.size()));
    py::array_t<T> out(v.size());
    op.apply<T>(in, std::span<T>(out.mutable_data(), static_cast<std::size_t>(v.size())));
    return out;
}

py::dict report_dict(const ConvergenceReport& r) {
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict d;
        d["N"] = row.resolution;
        d["M"] = row.points;
        d["dt"] = row.dt;
        d["steps"] = row.steps;
        d["error"] = row.error;
        d["used_in_fit"] = row.used_in_fit;
        rows.append(d);
    }
    py::dict out;
    out["scheme"] = std::string(scheme_name(r.scheme));
    out["c"] = r.c;
    out["problem"] = r.problem;
    out["integrator"] = std::string(method_name(r.integrator));
    out["t_final"] = r.t_final;
    out["filter"] = r.filter;
    out["rows"] = rows;
    out["fitted_order"] = r.fitted_order;
    out["ok"] = r.ok;
    out["failure"] = r.failure;
    return out;
}

}  // namespace

PYBIND11_MODULE(_eisheat, m) {
    m.doc() = "Block finite-difference schemes for the periodic heat equation";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);

    py::class_<BlockGrid>(m, "BlockGrid")
        .def(py::init(&BlockGrid::make), py::arg("n"), py::arg("block_size"))
        .def_property_readonly("n", &BlockGrid::resolution)
        .def_property_readonly("n_blocks", &BlockGrid::n_blocks)
        .def_property_readonly("block_size", &BlockGrid::block_size)
        .def_property_readonly("h", &BlockGrid::h)
        .def_property_readonly("sub_spacing", &BlockGrid::sub_spacing)
        .def("__len__", &BlockGrid::size)
        .def("coordinates", [](const BlockGrid& g) {
            const auto xs = g.coordinates();
            return to_array<double>(xs);
        });

    py::class_<StencilOperator>(m, "StencilOperator")
        .def_property_readonly("grid", &StencilOperator::grid)
        .def_property_readonly("scheme", [](const StencilOperator& op) { return std::string(scheme_name(op.scheme())); })
        .def_property_readonly("c", &StencilOperator::c)
        .def_property_readonly("period", &StencilOperator::period)
        .def("coefficient", &StencilOperator::coefficient, py::arg("row"), py::arg("offset"))
        .def(
            "apply",
            [](const StencilOperator& op, const py::array& v) -> py::array {
                if (v.dtype().kind() == 'c') return apply_op<cplx>(op, v);
                return apply_op<double>(op, v);
            },
            py::arg("v"))
        .def("dense", &StencilOperator::dense)
        .def("__str__", &StencilOperator::stencil_table);

    m.def("scheme_names", [] {
        std::vector<std::string> out;
        for (auto id : all_schemes()) out.emplace_back(scheme_name(id));
        return out;
    });
    m.def(
        "build_operator",
        [](const std::string& scheme, int n, double c) { return build_operator(scheme_from_name(scheme), n, c); },
        py::arg("scheme"), py::arg("n"), py::arg("c") = 0.0);
    m.def(
        "stencil_cost",
        [](const StencilOperator& op) {
            const auto cost = stencil_cost(op);
            return py::make_tuple(cost.points_outside_block, cost.adds.mixed(), cost.mults.mixed());
        },
        py::arg("op"), "(points outside the block per side, adds, mults) per grid point");

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("max_real_part", &StabilityReport::max_real_part)
        .def_readonly("max_abs_imag_part", &StabilityReport::max_abs_imag_part)
        .def_readonly("tolerance", &StabilityReport::tolerance)
        .def_readonly("min_cos_angle", &StabilityReport::min_cos_angle)
        .def_readonly("max_cos_angle", &StabilityReport::max_cos_angle)
        .def_readonly("max_eigenvector_condition", &StabilityReport::max_eigenvector_condition)
        .def_readonly("stable", &StabilityReport::stable);
    m.def("stability_scan", py::overload_cast<const StencilOperator&>(&stability_scan), py::arg("op"));

    m.def(
        "symbol_eigenvalues",
        [](const StencilOperator& op, int omega) {
            const auto sym = numeric_block_symbol(op, omega);
            return std::vector<cplx>(sym.eigenvalues.data(), sym.eigenvalues.data() + sym.eigenvalues.size());
        },
        py::arg("op"), py::arg("omega"));
    m.def(
        "closed_form_block2_eigs",
        [](double c, int omega, int n) {
            const auto e = closed_form_block2_eigs(c, omega, make_grid(n, 2));
            py::dict d;
            d["q1"] = e.q1;
            d["q2"] = e.q2;
            d["alpha1"] = e.alpha1;
            d["beta1"] = e.beta1;
            d["alpha2"] = e.alpha2;
            d["beta2"] = e.beta2;
            return d;
        },
        py::arg("c"), py::arg("omega"), py::arg("n"));
    m.def("alias_wavenumber", &alias_wavenumber, py::arg("omega"), py::arg("n"));
    m.def(
        "truncation_order",
        [](const std::string& scheme, double c, const std::vector<int>& ladder) {
            return truncation_order(scheme_from_name(scheme), c, ladder).observed_order;
        },
        py::arg("scheme"), py::arg("c"), py::arg("ladder") = std::vector<int>{32, 64, 128, 256});

    m.def(
        "solve",
        [](const std::string& scheme, double c, const std::string& problem, int n, double t, const std::string& method,
           double safety, const std::string& filter) {
            const auto res = solve(scheme_from_name(scheme), c, problem_from_name(problem),
                                   IntegratorSpec{method_from_name(method), safety, std::nullopt}, t, n,
                                   parse_filter(filter));
            py::dict d;
            d["x"] = to_array<double>(res.grid.coordinates());
            d["numerical"] = to_array<cplx>(res.numerical);
            d["exact"] = to_array<cplx>(res.exact);
            d["error"] = res.error;
            d["steps"] = res.steps;
            d["dt"] = res.dt;
            return d;
        },
        py::arg("scheme"), py::arg("c"), py::arg("problem") = "exp-cos", py::arg("n") = 64, py::arg("t") = 1.0,
        py::arg("method") = "rk4", py::arg("safety") = 0.5, py::arg("filter") = "none");

    m.def(
        "run_convergence",
        [](const std::string& scheme, double c, const std::string& problem, const std::vector<int>& ladder, double t,
           const std::string& method, const std::string& filter) {
            ConvergenceSpec spec;
            spec.scheme = scheme_from_name(scheme);
            spec.c = c;
            spec.problem = problem_from_name(problem);
            spec.integrator = IntegratorSpec{method_from_name(method), 0.5, std::nullopt};
            spec.t_final = t;
            spec.ladder = ladder;
            spec.filter = parse_filter(filter);
            ConvergenceReport report;
            {
                py::gil_scoped_release release;
                report = run_convergence(spec);
            }
            return report_dict(report);
        },
        py::arg("scheme"), py::arg("c"), py::arg("problem") = "exp-cos",
        py::arg("ladder") = std::vector<int>{32, 64, 128, 256}, py::arg("t") = 1.0, py::arg("method") = "rk4",
        py::arg("filter") = "none");

    m.def(
        "reproduce_figure",
        [](const std::string& id, const std::vector<int>& ladder) {
            FigureOptions opts;
            opts.ladder = ladder;
            std::vector<FigureCurve> curves;
            {
                py::gil_scoped_release release;
                curves = reproduce_figure(id, opts);
            }
            py::dict out;
            for (const auto& c : curves) out[py::str(c.file_name)] = report_dict(c.report);
            return out;
        },
        py::arg("figure_id"), py::arg("ladder") = std::vector<int>{32, 64, 128, 256});

    m.def(
        "spectral_filter",
        [](py::array_t<cplx, py::array::c_style | py::array::forcecast> v, double cutoff) {
            const auto out = spectral_filter(std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size())), cutoff);
            return to_array<cplx>(out);
        },
        py::arg("v"), py::arg("cutoff") = 0.5);
    m.def(
        "local_kernel_weights",
        [](int order, int support) { return build_local_kernel(order, support).weights; },
        py::arg("order") = 4, py::arg("support") = 0);
    m.def("ode_order_selftest", [](const std::string& m) { return ode_order_selftest(method_from_name(m)); },
          py::arg("method"));
}
