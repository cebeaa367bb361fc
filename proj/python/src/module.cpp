// Python bindings: a thin JSON-string API over the core library. Every
// function takes and returns JSON text in the same schema the CLI uses.

#include <pybind11/pybind11.h>

#include "nilpencil/algebra.hpp"
#include "nilpencil/canonical.hpp"
#include "nilpencil/classifier.hpp"
#include "nilpencil/errors.hpp"
#include "nilpencil/json_io.hpp"
#include "nilpencil/nilsoliton.hpp"
#include "nilpencil/pencil.hpp"
#include "nilpencil/pre_einstein.hpp"

namespace py = pybind11;
using namespace nilpencil;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SpecInvalidError(std::string("malformed JSON: ") + e.what());
    }
}

Mode mode_of(const std::string& mode) {
    if (mode == "exact") return Mode::Exact;
    if (mode == "numeric") return Mode::Numeric;
    throw SpecInvalidError("mode must be 'exact' or 'numeric'");
}

/// Accepts either a pencil ({"J1", "J2"}) or an invariants object.
PencilInvariants invariants_arg(const std::string& text) {
    json j = parse(text);
    if (j.contains("J1")) return compute_invariants(pencil_from_json(j));
    return invariants_from_json(j);
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Einstein-nilradical decision procedures for two-step nilpotent "
              "Lie algebras of type (2, q); all values travel as JSON text";

    // translators run newest-first, so the base class goes first
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SpecInvalidError>(m, "SpecInvalidError",
                                             PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError",
                                             PyExc_NotImplementedError);

    m.def(
        "invariants",
        [](const std::string& pencil, const std::string& mode, double tol) {
            return dump(to_json(
                compute_invariants(pencil_from_json(parse(pencil)), mode_of(mode), tol)));
        },
        py::arg("pencil"), py::arg("mode") = "exact", py::arg("tol") = 1e-9,
        "Kronecker invariants of a skew-symmetric pencil");

    m.def(
        "synthesize",
        [](const std::string& spec) {
            return dump(to_json(synthesize(spec_from_json(parse(spec)))));
        },
        py::arg("spec"), "Canonical pencil with the given invariants");

    m.def(
        "classify",
        [](const std::string& input) {
            return dump(to_json(classify(invariants_arg(input))));
        },
        py::arg("invariants"),
        "Einstein-nilradical verdict from invariants or a pencil");

    m.def(
        "pre_einstein",
        [](const std::string& algebra) {
            return dump(to_json(solve_pre_einstein(algebra_from_json(parse(algebra)))));
        },
        py::arg("algebra"), "Pre-Einstein derivation of a two-step algebra");

    m.def(
        "sl2_minimize",
        [](const std::string& invariants, double tol, int max_iter) {
            return dump(to_json(sl2_minimize(invariants_arg(invariants), tol, max_iter)));
        },
        py::arg("invariants"), py::arg("tol") = 1e-12, py::arg("max_iter") = 20000,
        "Convex minimization over unimodular positive-definite 2x2 matrices");

    m.def(
        "generic_metric",
        [](const std::string& invariants) {
            PencilInvariants inv = invariants_arg(invariants);
            return dump(to_json(assemble_case1_metric(inv, sl2_minimize(inv))));
        },
        py::arg("invariants"), "Certified nilsoliton metric, generic case");

    m.def(
        "subsingular_metric",
        [](const std::string& invariants) {
            return dump(to_json(case2_metric(invariants_arg(invariants))));
        },
        py::arg("invariants"), "Certified nilsoliton metric, subsingular case");

    m.def(
        "verify",
        [](const std::string& algebra, const std::string& metric) {
            return dump(to_json(nilsoliton_residual(algebra_from_json(parse(algebra)),
                                                    metric_from_json(parse(metric)))));
        },
        py::arg("algebra"), py::arg("metric"),
        "Nilsoliton residual of a metric on a two-step algebra");

    m.def(
        "dualize",
        [](const std::string& algebra) {
            return dump(to_json(dualize(algebra_from_json(parse(algebra)))));
        },
        py::arg("algebra"), "Trace-orthogonal complement algebra");

    m.def(
        "dual_heisenberg",
        [](int q, int d) { return dump(to_json(construct_dual_heisenberg(q, d))); },
        py::arg("q"), py::arg("d") = 1,
        "The maximal-type algebra dual to sk(I_d) (+) 0, with exact soliton data");

    m.def(
        "degeneration_witness",
        [](const std::string& invariants) {
            return dump(to_json(degeneration_witness(invariants_arg(invariants))));
        },
        py::arg("invariants"),
        "Degenerating curve to a non-isomorphic limit when the repetition "
        "bound fails");
}
