#include "cli.hpp"
#include "qneclab/asymptotics.hpp"
#include "qneclab/cocycles.hpp"
#include "qneclab/entropy.hpp"
#include "qneclab/error.hpp"
#include "qneclab/field_spec.hpp"
#include "qneclab/flows.hpp"
#include "qneclab/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qneclab;

namespace {

py::tuple jet_tuple(const Jet3& j) { return py::make_tuple(j.value, j.d1, j.d2, j.d3); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Relative entropies of diffeomorphism-induced states, flows and cocycles.";

    static py::exception<Error> base(m, "Error");
    static py::exception<DomainError> domain(m, "DomainError", base.ptr());
    static py::exception<SpecError> spec(m, "SpecError", base.ptr());
    static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            domain(e.what());
        } catch (const SpecError& e) {
            spec(e.what());
        } catch (const NumericalError& e) {
            numerical(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    py::class_<VectorField>(m, "VectorField")
        .def("__call__", &VectorField::operator())
        .def("jet", [](const VectorField& f, double u) {
            const FieldJet j = f.jet(u);
            return py::make_tuple(j.f, j.d1, j.d2, j.d3);
        })
        .def_property_readonly("support", [](const VectorField& f) -> py::object {
            const Support s = f.support();
            if (s.empty) return py::none();
            return py::make_tuple(s.lo, s.hi);
        })
        .def_property_readonly("kind", &VectorField::kind)
        .def_property_readonly("picture", [](const VectorField& f) { return to_string(f.picture()); });

    m.def("bump", &make_bump, py::arg("center"), py::arg("halfwidth"), py::arg("amplitude"));
    m.def("cos2", &make_cos2);
    m.def("trigpoly", &make_trigpoly, py::arg("cos"), py::arg("sin"));
    m.def("field_from_json", &parse_field_spec, py::arg("text"));
    m.def("load_field", &load_field_spec, py::arg("path"));

    py::class_<Diffeomorphism>(m, "Diffeomorphism")
        .def("__call__", &Diffeomorphism::operator())
        .def("jet", [](const Diffeomorphism& r, double u) { return jet_tuple(r.jet(u)); })
        .def("inverse", [](const Diffeomorphism& r) { return r.inverse(); })
        .def("schwarzian", [](const Diffeomorphism& r, double u) { return schwarzian(r, u); })
        .def("describe", &Diffeomorphism::describe);

    m.def("exponentiate", [](const VectorField& f, double t) { return exponentiate(f, t); }, py::arg("field"),
          py::arg("t") = 1.0);
    m.def("flow_point", [](const VectorField& f, double t, double u) { return flow_point(f, t, u); },
          py::arg("field"), py::arg("t"), py::arg("u"));
    m.def("flow_jet", [](const VectorField& f, double t, double u) { return jet_tuple(flow_jet(f, t, u)); },
          py::arg("field"), py::arg("t"), py::arg("u"));

    m.def(
        "entropy_half_line",
        [](const Diffeomorphism& r, double t, double c, const std::string& d) {
            return entropy_half_line(r, t, c, parse_direction(d)).value;
        },
        py::arg("rho"), py::arg("t"), py::arg("c") = 1.0, py::arg("direction") = "state_vs_vacuum");
    m.def(
        "entropy_derivatives",
        [](const Diffeomorphism& r, double t, double c, const std::string& d) {
            const EntropyDerivatives e = entropy_half_line_derivatives(r, t, c, parse_direction(d));
            return py::make_tuple(e.first, e.second);
        },
        py::arg("rho"), py::arg("t"), py::arg("c") = 1.0, py::arg("direction") = "state_vs_vacuum");
    m.def(
        "entropy_interval",
        [](const Diffeomorphism& r, double a, double b, double c, const std::string& d) {
            return entropy_interval(r, a, b, c, parse_direction(d)).value;
        },
        py::arg("rho"), py::arg("a"), py::arg("b"), py::arg("c") = 1.0, py::arg("direction") = "vacuum_vs_state");
    m.def(
        "vacuum_energy",
        [](const Diffeomorphism& r, double c, const std::string& d) {
            return vacuum_energy(r, c, parse_direction(d)).value;
        },
        py::arg("rho"), py::arg("c") = 1.0, py::arg("direction") = "vacuum_vs_state");
    m.def(
        "bekenstein_check",
        [](const Diffeomorphism& rho, double r, double c, const std::string& d) {
            const BekensteinRecord b = bekenstein_check(rho, r, c, parse_direction(d));
            return py::dict(py::arg("r") = b.r, py::arg("entropy") = b.entropy, py::arg("energy") = b.energy,
                            py::arg("bound") = b.bound, py::arg("margin") = b.margin, py::arg("pass") = b.pass);
        },
        py::arg("rho"), py::arg("r"), py::arg("c") = 1.0, py::arg("direction") = "vacuum_vs_state");

    m.def(
        "bott_cocycle", [](const Diffeomorphism& a, const Diffeomorphism& b) { return bott_cocycle(a, b).value; },
        py::arg("rho1"), py::arg("rho2"));
    m.def(
        "coboundary_check",
        [](const Diffeomorphism& g1, const Diffeomorphism& g2, const Diffeomorphism& g3) {
            const CoboundaryRecord r = coboundary_check(g1, g2, g3);
            return py::dict(py::arg("b12") = r.b12, py::arg("b12_3") = r.b12_3, py::arg("b1_23") = r.b1_23,
                            py::arg("b23") = r.b23, py::arg("residual") = r.residual,
                            py::arg("swapped_combination") = r.swapped_combination);
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"));
    m.def(
        "central_term", [](const VectorField& f, const VectorField& g) { return central_term_omega(f, g).value; },
        py::arg("f"), py::arg("g"));

    m.def(
        "h_seq_integral", [](double r, int n) { return h_seq_integral(r, n).value; }, py::arg("r"), py::arg("n"));

    m.def(
        "counterexample_report",
        [](double c) {
            py::list out;
            for (const auto& r : cli::counterexample_report(c)) {
                out.append(py::dict(py::arg("quantity") = r.quantity, py::arg("value") = r.value,
                                    py::arg("target") = r.target, py::arg("tolerance") = r.tolerance,
                                    py::arg("within") = r.within));
            }
            return out;
        },
        py::arg("c") = 1.0);

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed, int samples) {
            VerifyOptions o;
            o.seed = seed;
            o.samples = samples;
            py::list out;
            for (const PropertyResult& r : run_suite(suite, o)) {
                out.append(py::dict(py::arg("suite") = r.suite, py::arg("name") = r.name,
                                    py::arg("max_residual") = r.max_residual, py::arg("tolerance") = r.tolerance,
                                    py::arg("cases") = r.cases, py::arg("pass") = r.pass,
                                    py::arg("error") = r.error));
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 42, py::arg("samples") = 6);
}
