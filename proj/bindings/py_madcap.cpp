#include "madcap/capacity.hpp"
#include "madcap/sweep.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using namespace madcap;

RateVector3 rates(double g1, double g2, double g3) {
    RateVector3 g{g1, g2, g3};
    require_valid(g);
    return g;
}

py::dict estimate_to_dict(const CapacityEstimate& est) {
    py::dict d;
    d["lower"] = est.lower;
    d["upper"] = est.upper;
    d["value"] = est.value();
    d["status"] = to_string(est.status);
    d["method"] = est.method;
    if (est.argmax) {
        d["argmax"] = py::make_tuple(est.argmax->p0, est.argmax->p1, est.argmax->p2);
    }
    if (!est.note.empty()) d["note"] = est.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_madcap, m) {
    m.doc() = "multi-level amplitude damping channels: actions, degradability, capacities";

    m.def(
        "validate",
        [](double g1, double g2, double g3) {
            auto rep = validate_rates(RateVector3{g1, g2, g3});
            return py::make_tuple(rep.ok, rep.to_string());
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"),
        "check the CPTP constraints; returns (ok, report)");

    m.def(
        "kraus",
        [](double g1, double g2, double g3, bool minimal) {
            KrausSet ks = kraus_set(rates(g1, g2, g3), minimal);
            return ks.ops;
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("minimal") = false,
        "ordered Kraus operators (K0 first, then 1->0, 2->1, 2->0)");

    m.def(
        "apply",
        [](double g1, double g2, double g3, const Matrix& rho) {
            return apply_to(rates(g1, g2, g3), rho);
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("rho"),
        "channel action on a 3x3 operator");

    m.def(
        "complement",
        [](double g1, double g2, double g3, const Matrix& rho, bool minimal) {
            return complement_to(rates(g1, g2, g3), rho, minimal);
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("rho"), py::arg("minimal") = false,
        "environment output of the complementary channel");

    m.def(
        "compose",
        [](py::tuple first, py::tuple second) {
            RateVector3 a{first[0].cast<double>(), first[1].cast<double>(),
                          first[2].cast<double>()};
            RateVector3 b{second[0].cast<double>(), second[1].cast<double>(),
                          second[2].cast<double>()};
            RateVector3 c = compose_rates(a, b);
            return py::make_tuple(c.g1, c.g2, c.g3);
        },
        py::arg("first"), py::arg("second"),
        "rates of the concatenated channel (second applied first)");

    m.def(
        "entropy", [](const Matrix& rho) { return entropy(rho); }, py::arg("rho"),
        "von Neumann entropy in bits");

    m.def(
        "coherent_info",
        [](double g1, double g2, double g3, const Matrix& rho) {
            return coherent_info(rates(g1, g2, g3), DensityMatrix(rho));
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("rho"));

    m.def(
        "mutual_info",
        [](double g1, double g2, double g3, const Matrix& rho) {
            return mutual_info(rates(g1, g2, g3), DensityMatrix(rho));
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("rho"));

    m.def(
        "classify",
        [](double g1, double g2, double g3, double tol) {
            Classification c = classify(rates(g1, g2, g3), tol);
            py::dict d;
            d["degradable"] = c.degradable ? "yes" : "no";
            d["antidegradable"] = to_string(c.antidegradable);
            py::dict w;
            w["degradable"] = c.degradable_witness;
            w["antidegradable"] = c.antidegradable_witness;
            if (c.degrading_connector) {
                w["connector_rates"] = py::make_tuple(c.degrading_connector->g1,
                                                      c.degrading_connector->g2,
                                                      c.degrading_connector->g3);
            }
            d["witness"] = w;
            d["tol"] = c.tol;
            return d;
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("tol") = kDefaultTol);

    m.def(
        "capacity",
        [](double g1, double g2, double g3, const std::string& quantity) {
            RateVector3 g = rates(g1, g2, g3);
            Quantity q = parse_quantity(quantity);
            if (q == Quantity::Classify) {
                throw std::invalid_argument("capacity expects q|cp|qe");
            }
            CapacityEstimate est =
                q == Quantity::Q ? q_bounds(g) : q == Quantity::Cp ? cp(g) : qe(g);
            return estimate_to_dict(est);
        },
        py::arg("g1"), py::arg("g2"), py::arg("g3"), py::arg("quantity") = "q",
        "capacity estimate: quantity is q, cp or qe");

    m.def(
        "q_single_decay", [](double g1) { return estimate_to_dict(q_single_decay(g1)); },
        py::arg("g1"));
    m.def("qubit_adc_capacity", &qubit_adc_capacity, py::arg("g"));
}
