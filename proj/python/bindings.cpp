#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qgsw/cli.hpp"
#include "qgsw/config.hpp"
#include "qgsw/diagnostics.hpp"
#include "qgsw/error.hpp"
#include "qgsw/kernel.hpp"
#include "qgsw/parallel.hpp"
#include "qgsw/solver.hpp"
#include "qgsw/specfun.hpp"
#include "qgsw/spectral.hpp"
#include "qgsw/symbols.hpp"
#include "qgsw/verify.hpp"

namespace py = pybind11;
using namespace qgsw;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const RealArray& a) {
    if (a.ndim() != 1) throw ShapeError("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return py::array_t<T>(py::ssize_t(v.size()), v.data());
}

FrontState make_state(const Grid& grid, const RealArray& values, double time, Frame frame, double jump) {
    FrontState s{grid, to_vector(values), time, frame, jump};
    s.validate();
    return s;
}

config::ExperimentConfig config_from(const py::object& doc) {
    if (doc.is_none()) return config::load("", {});
    const std::string text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
    return config::from_json(config::parse_document(text, "<dict>"));
}

}  // namespace

PYBIND11_MODULE(_qgsw, m) {
    m.doc() = "Numerical core for quasi-geostrophic shear-front dynamics";
    m.attr("__version__") = QGSW_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_ValueError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_RuntimeError);
    py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);

    m.def("set_threads", &set_thread_count, py::arg("n"));

    // special functions
    m.def("k0", py::vectorize(&specfun::k0), py::arg("x"));
    m.def("k1", py::vectorize(&specfun::k1), py::arg("x"));
    m.def("k0_derivative", &specfun::k0_derivative, py::arg("n"), py::arg("x"));
    m.def("a_coeff", &specfun::a_coeff, py::arg("mu"), py::arg("zeta"), py::arg("mu_max") = specfun::default_mu_max);
    m.def("b_coeff", &specfun::b_coeff, py::arg("mu"), py::arg("zeta"), py::arg("mu_max") = specfun::default_mu_max);
    m.def("k0_increment", &specfun::k0_increment, py::arg("zeta"), py::arg("delta"));

    py::enum_<Frame>(m, "Frame").value("lab", Frame::lab).value("moving", Frame::moving);

    py::class_<Grid>(m, "Grid")
        .def(py::init([](int n, double half_length) {
                 Grid g{n, half_length};
                 g.validate();
                 return g;
             }),
             py::arg("n") = 256, py::arg("half_length") = 16.0 * std::numbers::pi)
        .def_readonly("n", &Grid::n)
        .def_readonly("half_length", &Grid::half_length)
        .def_property_readonly("dx", &Grid::dx)
        .def_property_readonly("dxi", &Grid::dxi)
        .def("points", [](const Grid& g) { return to_array(g.points()); })
        .def("frequencies", [](const Grid& g) {
            std::vector<double> xi(g.n);
            for (int m = 0; m < g.n; ++m) xi[m] = g.xi(m);
            return to_array(xi);
        })
        .def("__repr__", [](const Grid& g) {
            std::ostringstream s;
            s << "Grid(n=" << g.n << ", half_length=" << g.half_length << ")";
            return s.str();
        });

    py::class_<FrontState>(m, "FrontState")
        .def(py::init(&make_state), py::arg("grid"), py::arg("values"), py::arg("time") = 0.0,
             py::arg("frame") = Frame::moving, py::arg("jump") = 1.0 / std::numbers::pi)
        .def_readonly("grid", &FrontState::grid)
        .def_readonly("time", &FrontState::time)
        .def_readonly("frame", &FrontState::frame)
        .def_readonly("jump", &FrontState::jump)
        .def_property_readonly("values", [](const FrontState& s) { return to_array(s.values); });

    // spectral
    m.def(
        "transform",
        [](const Grid& g, const RealArray& v) { return to_array(transform(g, to_vector(v)).coeffs); },
        py::arg("grid"), py::arg("values"));
    m.def(
        "inverse",
        [](const Grid& g, const std::vector<cplx>& c) { return to_array(inverse(SpectralField{g, c})); },
        py::arg("grid"), py::arg("coeffs"));
    m.def(
        "sobolev_norm",
        [](const Grid& g, const RealArray& v, double s) { return norm(transform(g, to_vector(v)), NormSpec::sobolev(s)); },
        py::arg("grid"), py::arg("values"), py::arg("s"));
    m.def("dispersion", py::vectorize([](double xi, int order) { return dispersion(xi, order); }), py::arg("xi"),
          py::arg("order") = 0);
    m.def("dyadic_cutoff", py::vectorize(&dyadic_cutoff), py::arg("k"), py::arg("xi"));

    // kernel
    m.def("rhs_full", [](const FrontState& s) { return to_array(kernel::rhs_full(s)); }, py::arg("state"));
    m.def("rhs_nonlinear", [](const FrontState& s) { return to_array(kernel::rhs_nonlinear(s)); }, py::arg("state"));
    m.def(
        "rhs_series", [](const FrontState& s, int mu_max) { return to_array(kernel::rhs_series(s, mu_max)); },
        py::arg("state"), py::arg("mu_max") = 1);
    m.def(
        "velocity_field",
        [](const FrontState& s, const std::vector<std::array<double, 2>>& pts) { return kernel::velocity_field(s, pts); },
        py::arg("state"), py::arg("points"));

    // symbols
    m.def(
        "t_symbol", [](int mu, const std::vector<double>& etas) { return symbols::t_symbol(mu, etas); }, py::arg("mu"),
        py::arg("etas"));
    m.def(
        "t_symbol_closed", [](int mu, const std::vector<double>& etas) { return symbols::t_symbol_closed(mu, etas); },
        py::arg("mu"), py::arg("etas"));
    m.def(
        "phase_phi",
        [](double e1, double e2, double xi) {
            const auto p = symbols::phase_phi(e1, e2, xi);
            return py::make_tuple(p.phi, p.d_eta1, p.d_eta2);
        },
        py::arg("eta1"), py::arg("eta2"), py::arg("xi"));
    m.def("frak_a", &symbols::frak_a, py::arg("xi"));
    m.def("phi_expansion_error", &symbols::phi_expansion_error, py::arg("xi"), py::arg("zeta1"), py::arg("zeta2"));
    m.def("t1_block_bound", &symbols::t1_block_bound, py::arg("j1"), py::arg("j2"), py::arg("j3"));

    // solver and diagnostics
    m.def(
        "simulate",
        [](const py::object& doc) {
            const auto cfg = config_from(doc);
            Trajectory tr;
            {
                py::gil_scoped_release release;
                tr = run(cfg.run);
            }
            std::vector<double> times;
            py::array_t<double> values({py::ssize_t(tr.states.size()), py::ssize_t(cfg.run.grid.n)});
            auto v = values.mutable_unchecked<2>();
            for (size_t i = 0; i < tr.states.size(); ++i) {
                times.push_back(tr.states[i].time);
                for (int j = 0; j < cfg.run.grid.n; ++j) v(i, j) = tr.states[i].values[j];
            }
            return py::make_tuple(to_array(times), values);
        },
        py::arg("config") = py::none(),
        "Run from a config dict (same schema as the JSON file); returns (times, values[checkpoint, x]).");
    m.def(
        "config_hash", [](const py::object& doc) { return config::config_hash(config_from(doc)); },
        py::arg("config") = py::none());
    m.def(
        "decay_fit",
        [](const RealArray& t, const RealArray& v, double t_min, double t_max) {
            const auto f = diagnostics::decay_fit(to_vector(t), to_vector(v), t_min, t_max);
            return py::dict(py::arg("exponent") = f.exponent, py::arg("half_width") = f.half_width,
                            py::arg("intercept") = f.intercept, py::arg("samples") = f.samples);
        },
        py::arg("times"), py::arg("values"), py::arg("t_min"), py::arg("t_max"));
    m.def("resonance_integral", &diagnostics::resonance_integral, py::arg("frak_b"));
    m.def("resonance_integral_check", &diagnostics::resonance_integral_check, py::arg("xi"), py::arg("t"),
          py::arg("rho"));

    m.def(
        "verify",
        [](const std::vector<std::string>& only) {
            std::ostringstream sink;
            std::vector<verify::CriterionResult> res;
            {
                py::gil_scoped_release release;
                res = verify::run(only, sink);
            }
            py::list out;
            for (const auto& r : res)
                out.append(py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("passed") = r.passed,
                                    py::arg("detail") = r.detail, py::arg("seconds") = r.seconds));
            return out;
        },
        py::arg("only") = std::vector<std::string>{});
    m.def("criteria", [] {
        std::vector<std::string> names;
        for (const auto& c : verify::criteria()) names.push_back(c.name);
        return names;
    });

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"qgsw"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::main(int(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");
}
