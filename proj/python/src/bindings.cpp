#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "bell/enumerate.hpp"
#include "bell/errors.hpp"
#include "bell/lhv.hpp"
#include "bell/lp.hpp"
#include "bell/quantum.hpp"
#include "bell/rational.hpp"
#include "bell/scenario.hpp"

namespace py = pybind11;

namespace {

py::object fraction_class() {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls;
}

py::object to_fraction(const bell::Rational& value) {
    return fraction_class()(bell::to_string(value));
}

py::list to_fraction_list(const bell::RatVec& values) {
    py::list out;
    for (const bell::Rational& value : values) out.append(to_fraction(value));
    return out;
}

// Accepts int, str ("p/q"), float-free Fraction, or anything exposing
// numerator/denominator integers.
bell::Rational to_rational(py::handle obj) {
    if (py::isinstance<py::int_>(obj)) {
        return bell::parse_rational(py::str(obj).cast<std::string>());
    }
    if (py::isinstance<py::str>(obj)) {
        return bell::parse_rational(obj.cast<std::string>());
    }
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
        const std::string num = py::str(obj.attr("numerator")).cast<std::string>();
        const std::string den = py::str(obj.attr("denominator")).cast<std::string>();
        return bell::parse_rational(num + "/" + den);
    }
    throw py::type_error("expected an int, a 'p/q' string, or a Fraction");
}

bell::RatVec to_rational_vector(py::handle sequence) {
    bell::RatVec out;
    for (py::handle item : py::iter(sequence)) out.push_back(to_rational(item));
    return out;
}

bell::Scenario make_scenario(const py::object& parties) {
    std::vector<bell::Scenario::PartySpec> specs;
    for (py::handle party : py::iter(parties)) {
        bell::Scenario::PartySpec spec;
        for (py::handle measurement : py::iter(party)) {
            spec.push_back(to_rational_vector(measurement));
        }
        specs.push_back(std::move(spec));
    }
    return bell::Scenario::create(std::move(specs));
}

bell::CorrelationVector make_correlations(py::handle entries) {
    return bell::CorrelationVector{to_rational_vector(entries)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact LP test for local realism: reproducing distributions, violated "
              "Bell inequalities, and complete inequality sets";

    py::register_exception<bell::Error>(m, "BellError");

    py::class_<bell::Scenario>(m, "Scenario")
        .def(py::init(&make_scenario), py::arg("parties"),
             "parties: per party, a list of measurements, each a list of exact "
             "outcome values (int, 'p/q' string, or Fraction)")
        .def_property_readonly("party_count", &bell::Scenario::party_count)
        .def("measurement_count", &bell::Scenario::measurement_count, py::arg("party"))
        .def("outcomes",
             [](const bell::Scenario& s, std::size_t party, std::size_t measurement) {
                 return to_fraction_list(s.outcomes(party, measurement));
             },
             py::arg("party"), py::arg("measurement"))
        .def_property_readonly("setting_count", &bell::Scenario::setting_count)
        .def_property_readonly("strategy_count", &bell::Scenario::strategy_count)
        .def("__eq__", [](const bell::Scenario& a, const bell::Scenario& b) { return a == b; })
        .def("__repr__", [](const bell::Scenario& s) {
            return "<Scenario with " + std::to_string(s.party_count()) + " parties, " +
                   std::to_string(s.setting_count()) + " settings>";
        });

    py::class_<bell::ModelMatrix>(m, "ModelMatrix")
        .def_static("build", &bell::ModelMatrix::build, py::arg("scenario"),
                    py::arg("column_cap") = bell::default_column_cap)
        .def_property_readonly("rows", &bell::ModelMatrix::rows)
        .def_property_readonly("cols", &bell::ModelMatrix::cols)
        .def("entry",
             [](const bell::ModelMatrix& m_, std::size_t r, std::size_t c) {
                 if (r >= m_.rows() || c >= m_.cols()) throw py::index_error();
                 return to_fraction(m_.at(r, c));
             },
             py::arg("row"), py::arg("col"))
        .def("row",
             [](const bell::ModelMatrix& m_, std::size_t r) {
                 if (r >= m_.rows()) throw py::index_error();
                 return to_fraction_list(m_.row(r));
             },
             py::arg("row"))
        .def("column",
             [](const bell::ModelMatrix& m_, std::size_t c) {
                 if (c >= m_.cols()) throw py::index_error();
                 return to_fraction_list(m_.column(c));
             },
             py::arg("col"))
        .def_property_readonly("scenario", &bell::ModelMatrix::scenario)
        .def("setting_labels",
             [](const bell::ModelMatrix& m_) {
                 std::vector<std::string> labels;
                 for (const auto& setting : m_.settings()) {
                     labels.push_back(bell::setting_label(m_.scenario(), setting));
                 }
                 return labels;
             })
        .def("strategy_labels", [](const bell::ModelMatrix& m_) {
            std::vector<std::string> labels;
            for (const auto& strategy : m_.strategies()) {
                labels.push_back(bell::strategy_label(m_.scenario(), strategy));
            }
            return labels;
        });

    py::class_<bell::BellInequality>(m, "BellInequality")
        .def_property_readonly(
            "coefficients",
            [](const bell::BellInequality& q) { return to_fraction_list(q.coefficients); })
        .def_property_readonly("bound",
                               [](const bell::BellInequality& q) { return to_fraction(q.bound); })
        .def("__repr__", [](const bell::BellInequality& q) {
            return "<BellInequality bound " + bell::to_string(q.bound) + ", " +
                   std::to_string(q.coefficients.size()) + " coefficients>";
        });

    py::enum_<bell::VerdictKind>(m, "VerdictKind")
        .value("LOCAL", bell::VerdictKind::Local)
        .value("NONLOCAL", bell::VerdictKind::Nonlocal)
        .value("NONLOCAL_UNBOUNDED", bell::VerdictKind::NonlocalUnbounded);

    py::class_<bell::Verdict>(m, "Verdict")
        .def_property_readonly("kind", [](const bell::Verdict& v) { return v.kind; })
        .def_property_readonly("local", &bell::Verdict::local)
        .def_property_readonly("distribution",
                               [](const bell::Verdict& v) -> py::object {
                                   if (!v.distribution) return py::none();
                                   return to_fraction_list(v.distribution->probabilities);
                               })
        .def_property_readonly("inequality",
                               [](const bell::Verdict& v) -> py::object {
                                   if (!v.inequality) return py::none();
                                   return py::cast(*v.inequality);
                               })
        .def_property_readonly("margin", [](const bell::Verdict& v) { return to_fraction(v.margin); })
        .def_property_readonly("lp_iterations",
                               [](const bell::Verdict& v) { return v.lp_iterations; })
        .def("__repr__", [](const bell::Verdict& v) {
            const char* kind = v.kind == bell::VerdictKind::Local ? "LOCAL"
                               : v.kind == bell::VerdictKind::Nonlocal ? "NONLOCAL"
                                                                       : "NONLOCAL_UNBOUNDED";
            return std::string("<Verdict ") + kind + ">";
        });

    py::class_<bell::CompleteBellMember>(m, "CompleteBellMember")
        .def_readonly("inequality", &bell::CompleteBellMember::inequality)
        .def_readonly("facet", &bell::CompleteBellMember::facet)
        .def_readonly("from_ray", &bell::CompleteBellMember::from_ray);

    py::class_<bell::CompleteBellSet>(m, "CompleteBellSet")
        .def_readonly("scenario", &bell::CompleteBellSet::scenario)
        .def_readonly("members", &bell::CompleteBellSet::members)
        .def_readonly("raw_vertex_count", &bell::CompleteBellSet::raw_vertex_count)
        .def("__len__", [](const bell::CompleteBellSet& s) { return s.members.size(); });

    m.def(
        "check_local_realism",
        [](const bell::Scenario& scenario, py::handle correlations, std::size_t column_cap) {
            return bell::check_local_realism(scenario, make_correlations(correlations),
                                             column_cap);
        },
        py::arg("scenario"), py::arg("correlations"),
        py::arg("column_cap") = bell::default_column_cap,
        "Decide whether the correlation entries (one per setting tuple, entry 0 the "
        "normalization 1) admit a local hidden-variable model.");

    m.def(
        "classical_bound",
        [](py::handle coefficients, const bell::ModelMatrix& matrix) {
            return to_fraction(bell::classical_bound(to_rational_vector(coefficients), matrix));
        },
        py::arg("coefficients"), py::arg("matrix"),
        "Exact maximum of the Bell expression over deterministic strategies.");

    m.def(
        "evaluate_inequality",
        [](const bell::BellInequality& inequality, py::handle correlations) {
            return to_fraction(
                bell::evaluate_inequality(inequality, make_correlations(correlations)));
        },
        py::arg("inequality"), py::arg("correlations"),
        "Violation margin c.q - bound; positive means violated.");

    m.def(
        "reconstruct_correlations",
        [](py::handle probabilities, const bell::ModelMatrix& matrix) {
            const bell::JointDistribution distribution{to_rational_vector(probabilities)};
            return to_fraction_list(bell::reconstruct_correlations(distribution, matrix).entries);
        },
        py::arg("probabilities"), py::arg("matrix"),
        "Exact M @ p for a strategy distribution.");

    m.def(
        "enumerate_complete_set",
        [](const bell::Scenario& scenario, std::size_t ray_cap, std::size_t column_cap) {
            bell::EnumerationOptions options;
            options.ray_cap = ray_cap;
            return bell::enumerate_complete_set(scenario, options, column_cap);
        },
        py::arg("scenario"), py::arg("ray_cap") = bell::EnumerationOptions{}.ray_cap,
        py::arg("column_cap") = bell::default_column_cap,
        "Every Bell inequality of the scenario, from the dual polytope's extreme points.");

    m.def(
        "is_complete_against",
        [](const bell::CompleteBellSet& set, py::handle correlations) {
            return bell::is_complete_against(set, make_correlations(correlations));
        },
        py::arg("bell_set"), py::arg("correlations"),
        "True iff no member is violated; matches check_local_realism exactly.");

    m.def("singlet_state", &bell::singlet_state);
    m.def("werner_state", &bell::werner_state, py::arg("visibility"));
    m.def("pauli_x", &bell::pauli_x);
    m.def("pauli_y", &bell::pauli_y);
    m.def("pauli_z", &bell::pauli_z);

    m.def(
        "correlations_from_quantum",
        [](const Eigen::MatrixXcd& state, const std::vector<std::vector<Eigen::MatrixXcd>>& observables,
           const std::vector<std::size_t>& local_dimensions, const bell::Scenario& scenario) {
            const bell::QuantumSetup setup{state, observables, local_dimensions};
            return bell::correlations_from_quantum(setup, scenario);
        },
        py::arg("state"), py::arg("observables"), py::arg("local_dimensions"),
        py::arg("scenario"),
        "Expectation values Re Tr(rho O_s) for every setting tuple.");

    m.def(
        "rationalize",
        [](double x, unsigned long max_denominator) {
            return to_fraction(bell::rationalize(x, max_denominator));
        },
        py::arg("x"), py::arg("max_denominator") = 1'000'000UL,
        "Best rational approximation with a capped denominator.");

    m.def(
        "rationalize_correlations",
        [](const std::vector<double>& values, unsigned long max_denominator,
           const bell::Scenario& scenario) {
            return to_fraction_list(bell::rationalize(values, max_denominator, scenario).entries);
        },
        py::arg("values"), py::arg("max_denominator"), py::arg("scenario"),
        "Entrywise rationalization with the normalization pinned to 1.");

    m.attr("__version__") = "1.0.0";
}
