// nilpencil: decide whether a two-step nilpotent Lie algebra with
// two-dimensional center is an Einstein nilradical, and construct the
// supporting certificates. All input and output is JSON (see docs/schema.md).
//
// Exit codes: 0 success, 2 malformed input, 3 unsupported exact computation
// (retry with --mode numeric), 4 internal invariant violation.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "nilpencil/canonical.hpp"
#include "nilpencil/classifier.hpp"
#include "nilpencil/errors.hpp"
#include "nilpencil/json_io.hpp"
#include "nilpencil/nilsoliton.hpp"
#include "nilpencil/pre_einstein.hpp"

using namespace nilpencil;

namespace {

struct Options {
    std::string input;   // path, inline JSON, or "-" for stdin
    std::string output;  // path; empty = stdout
    std::string mode = "exact";
    double tol = 1e-12;
    int max_iter = 20000;
    std::uint64_t seed = 0;
    // sample-only
    int q = 7;
    int count = 100;
};

Mode parse_mode(const Options& opt) {
    if (opt.mode == "exact") return Mode::Exact;
    if (opt.mode == "numeric") return Mode::Numeric;
    throw SpecInvalidError("--mode must be exact or numeric");
}

json load_input(const std::string& spec) {
    std::string text;
    if (spec.empty() || spec == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) {
        text = spec;
    } else {
        std::ifstream in(spec);
        if (!in) throw SpecInvalidError("cannot open input file: " + spec);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecInvalidError(std::string("invalid JSON: ") + e.what());
    }
}

void emit(const json& report, const Options& opt) {
    if (opt.output.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(opt.output);
        if (!out) throw SpecInvalidError("cannot open output file: " + opt.output);
        out << report.dump(2) << "\n";
    }
}

/// Accepts either a pencil {"J1","J2"} (invariants are computed) or a
/// precomputed invariants object.
PencilInvariants invariants_of(const json& j, const Options& opt) {
    if (j.contains("J1")) return compute_invariants(pencil_from_json(j), parse_mode(opt), opt.tol > 0 ? opt.tol : 1e-9);
    return invariants_from_json(j);
}

CanonicalSpec spec_of_invariants(const PencilInvariants& inv) {
    return CanonicalSpec{inv.real_divisors, inv.complex_divisors, inv.minimal_indices,
                         inv.common_kernel_dim};
}

/// Canonical presentation of the algebra behind the invariants, with the
/// subsingular case relabeled per the classifier's group order.
TwoStepAlgebra canonical_algebra(const PencilInvariants& inv) {
    if (inv.case_tag == CaseTag::Case2) {
        Verdict lab = classify(inv);
        return from_pencil(synthesize_subsingular(lab.group1, lab.group2,
                                                  inv.minimal_indices,
                                                  inv.common_kernel_dim));
    }
    return from_pencil(synthesize(spec_of_invariants(inv)));
}

/// The subsingular invariants of the complexification-equivalent algebra:
/// each conjugate divisor pair of power n contributes one power-n divisor
/// to each group.
PencilInvariants complex_to_subsingular(const PencilInvariants& inv) {
    PencilInvariants red;
    for (const auto& d : inv.complex_divisors) {
        red.real_divisors.push_back({Rat(0), d.power});
        red.real_divisors.push_back({Rat(1), d.power});
    }
    red.minimal_indices = inv.minimal_indices;
    red.common_kernel_dim = inv.common_kernel_dim;
    red.variable_change = RatMatrix::identity(2);
    red.case_tag = CaseTag::Case2;
    return red;
}

json run_invariants(const Options& opt) {
    return to_json(invariants_of(load_input(opt.input), opt));
}

json run_classify(const Options& opt) {
    PencilInvariants inv = invariants_of(load_input(opt.input), opt);
    if (inv.case_tag == CaseTag::Case3) {
        Verdict v = classify(complex_to_subsingular(inv));
        json out = to_json(v);
        out["case"] = "Case3";
        return out;
    }
    return to_json(classify(inv));
}

json run_preeinstein(const Options& opt) {
    json j = load_input(opt.input);
    if (j.contains("J")) {
        // algebra given directly; the basis must already be adapted
        return to_json(solve_pre_einstein(algebra_from_json(j)));
    }
    PencilInvariants inv = invariants_of(j, opt);
    PreEinsteinDerivation sol = solve_pre_einstein(canonical_algebra(inv));
    if (inv.case_tag == CaseTag::Case1) {
        PreEinsteinDerivation closed = case1_pre_einstein(inv);
        if (closed.eigenvalues != sol.eigenvalues)
            throw InternalError("pre-Einstein closed form disagrees with the solver");
        sol.sigma = closed.sigma;
    }
    return to_json(sol);
}

json certificate_for(const PencilInvariants& inv, const Options& opt, json& extras) {
    if (inv.case_tag == CaseTag::Case2) {
        extras["solution"] = to_json(solve_alpha(build_nice_Y(canonical_algebra(inv))));
        return to_json(case2_metric(inv));
    }
    SL2State st = sl2_minimize(inv, opt.tol, opt.max_iter);
    extras["sl2"] = to_json(st);
    if (st.outcome != SL2Outcome::Converged)
        throw InternalError("classifier says Einstein but the minimizer did not converge");
    return to_json(assemble_case1_metric(inv, st));
}

json run_nilsoliton(const Options& opt) {
    PencilInvariants inv = invariants_of(load_input(opt.input), opt);
    Verdict v = inv.case_tag == CaseTag::Case3 ? classify(complex_to_subsingular(inv))
                                               : classify(inv);
    json out;
    out["invariants"] = to_json(inv);
    out["verdict"] = to_json(v);
    if (v.is_einstein) {
        out["certificate"] = certificate_for(inv, opt, out);
    } else if (inv.case_tag != CaseTag::Case2 &&
               v.failed == FailedCondition::A_ii) {
        out["witness"] = to_json(degeneration_witness(inv));
        SL2State st = sl2_minimize(inv, opt.tol, opt.max_iter);
        out["sl2"] = to_json(st);
    }
    return out;
}

json run_verify(const Options& opt) {
    json j = load_input(opt.input);
    if (!j.contains("algebra") || !j.contains("metric"))
        throw SpecInvalidError("verify needs {\"algebra\": ..., \"metric\": ...}");
    TwoStepAlgebra n = algebra_from_json(j["algebra"]);
    MetricData g = metric_from_json(j["metric"]);
    return to_json(nilsoliton_residual(n, g));
}

json run_dual(const Options& opt) {
    json j = load_input(opt.input);
    TwoStepAlgebra n = j.contains("J1") ? from_pencil(pencil_from_json(j))
                                        : algebra_from_json(j);
    return to_json(dualize(n));
}

json run_synth(const Options& opt) {
    return to_json(synthesize(spec_from_json(load_input(opt.input))));
}

json run_witness(const Options& opt) {
    return to_json(degeneration_witness(invariants_of(load_input(opt.input), opt)));
}

SkewPencil random_pencil(int q, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{seed, index};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> entry(-5, 5);
    auto draw = [&]() {
        RatMatrix m(q, q);
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) {
                int e = entry(rng);
                m.at(i, j) = Rat(e);
                m.at(j, i) = Rat(-e);
            }
        return m;
    };
    for (;;) {
        RatMatrix a = draw(), b = draw();
        bool azero = true, bzero = true, prop = true;
        for (int i = 0; i < q * q; ++i) {
            if (a.entries[i] != 0) azero = false;
            if (b.entries[i] != 0) bzero = false;
        }
        if (azero || bzero) continue;
        // reject proportional pairs (they define no pencil)
        Rat ratio;
        bool have = false;
        for (int i = 0; i < q * q && prop; ++i) {
            if (b.entries[i] == 0) {
                if (a.entries[i] != 0) prop = false;
            } else if (!have) {
                ratio = a.entries[i] / b.entries[i];
                have = true;
            } else if (a.entries[i] != ratio * b.entries[i]) {
                prop = false;
            }
        }
        if (prop) continue;
        return SkewPencil(std::move(a), std::move(b));
    }
}

json run_sample(const Options& opt) {
    if (opt.q < 3) throw SpecInvalidError("--q must be at least 3");
    if (opt.count < 1) throw SpecInvalidError("--count must be positive");
    int einstein = 0, type12 = 0, unsupported = 0;
    std::map<std::string, int> cases;
    for (int t = 0; t < opt.count; ++t) {
        SkewPencil p = random_pencil(opt.q, opt.seed, static_cast<std::uint64_t>(t));
        PencilInvariants inv;
        try {
            inv = compute_invariants(p, parse_mode(opt), opt.tol > 0 ? opt.tol : 1e-9);
        } catch (const UnsupportedError&) {
            inv = compute_invariants(p, Mode::Numeric, 1e-9);
            ++unsupported;
        }
        ++cases[inv.case_tag == CaseTag::Case1   ? "Case1"
                : inv.case_tag == CaseTag::Case2 ? "Case2"
                                                 : "Case3"];
        Verdict v = inv.case_tag == CaseTag::Case3 ? classify(complex_to_subsingular(inv))
                                                   : classify(inv);
        if (!v.is_einstein) continue;
        ++einstein;
        try {
            json extras;
            json cert = certificate_for(inv, opt, extras);
            const json& ty = cert["eigenvalue_type"];
            if (ty["lambdas"] == json::array({1, 2}) &&
                ty["dims"] == json::array({opt.q, 2}))
                ++type12;
        } catch (const Error&) {
            // certificate construction failed; counted as non-(1,2) type
        }
    }
    return {{"q", opt.q},
            {"count", opt.count},
            {"seed", opt.seed},
            {"einstein_fraction", double(einstein) / opt.count},
            {"type_1_2_fraction", double(type12) / opt.count},
            {"exact_factorization_fallbacks", unsupported},
            {"case_counts", cases}};
}

int dispatch(const std::string& verb, const Options& opt) {
    json report;
    try {
        if (verb == "invariants") report = run_invariants(opt);
        else if (verb == "classify") report = run_classify(opt);
        else if (verb == "preeinstein") report = run_preeinstein(opt);
        else if (verb == "nilsoliton") report = run_nilsoliton(opt);
        else if (verb == "verify") report = run_verify(opt);
        else if (verb == "dual") report = run_dual(opt);
        else if (verb == "synth") report = run_synth(opt);
        else if (verb == "witness") report = run_witness(opt);
        else if (verb == "sample") report = run_sample(opt);
        else throw SpecInvalidError("unknown verb: " + verb);
    } catch (const SpecInvalidError& e) {
        emit({{"error", "malformed_input"}, {"message", e.what()}}, opt);
        return 2;
    } catch (const DegenerateError& e) {
        emit({{"error", "degenerate_input"}, {"message", e.what()}}, opt);
        return 2;
    } catch (const BadDimensionsError& e) {
        emit({{"error", "bad_dimensions"}, {"message", e.what()}}, opt);
        return 2;
    } catch (const WrongCaseError& e) {
        emit({{"error", "wrong_case"}, {"message", e.what()}}, opt);
        return 2;
    } catch (const ConditionHoldsError& e) {
        emit({{"error", "condition_holds"}, {"message", e.what()}}, opt);
        return 2;
    } catch (const MetricInvalidError& e) {
        emit({{"error", "invalid_metric"}, {"message", e.what()}}, opt);
        return 2;
    } catch (const UnsupportedError& e) {
        emit({{"error", "unsupported"},
              {"message", e.what()},
              {"hint", "retry with --mode numeric"}},
             opt);
        return 3;
    } catch (const std::exception& e) {
        emit({{"error", "internal"}, {"message", e.what()}}, opt);
        return 4;
    }
    emit(report, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Einstein nilradical decision and nilsoliton certificates "
                 "for two-step nilpotent Lie algebras with two-dimensional "
                 "center"};
    app.require_subcommand(1);

    Options opt;
    std::string verb;

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input)
            sub->add_option("input", opt.input,
                            "input file, inline JSON, or - for stdin");
        sub->add_option("--mode", opt.mode, "exact|numeric")->capture_default_str();
        sub->add_option("--tol", opt.tol, "numeric tolerance")->capture_default_str();
        sub->add_option("--max-iter", opt.max_iter, "iteration cap")->capture_default_str();
        sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
        sub->add_option("--output,-o", opt.output, "write the report to a file");
        sub->callback([&, name = sub->get_name()]() { verb = name; });
    };

    add_common(app.add_subcommand("invariants",
                                  "pencil -> reduced elementary divisors, "
                                  "minimal indices, case tag"),
               true);
    add_common(app.add_subcommand("classify",
                                  "pencil or invariants -> Einstein nilradical verdict"),
               true);
    add_common(app.add_subcommand("preeinstein",
                                  "algebra or pencil -> pre-Einstein derivation"),
               true);
    add_common(app.add_subcommand("nilsoliton",
                                  "pencil or invariants -> verdict plus "
                                  "certificate or witness"),
               true);
    add_common(app.add_subcommand("verify",
                                  "{algebra, metric} -> nilsoliton residual"),
               true);
    add_common(app.add_subcommand("dual", "algebra -> dual algebra"), true);
    add_common(app.add_subcommand("synth", "invariant data -> canonical pencil"), true);
    add_common(app.add_subcommand("witness",
                                  "pencil or invariants -> degeneration witness"),
               true);
    CLI::App* sample = app.add_subcommand(
        "sample", "classify random integer pencils in bulk");
    add_common(sample, false);
    sample->add_option("--q", opt.q, "pencil size")->capture_default_str();
    sample->add_option("--count", opt.count, "number of trials")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return dispatch(verb, opt);
}
