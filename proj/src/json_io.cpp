#include "nilpencil/json_io.hpp"

#include "nilpencil/errors.hpp"

namespace nilpencil {

namespace {

const char* case_name(CaseTag t) {
    switch (t) {
        case CaseTag::Case1: return "Case1";
        case CaseTag::Case2: return "Case2";
        case CaseTag::Case3: return "Case3";
    }
    return "?";
}

CaseTag case_from_name(const std::string& s) {
    if (s == "Case1") return CaseTag::Case1;
    if (s == "Case2") return CaseTag::Case2;
    if (s == "Case3") return CaseTag::Case3;
    throw SpecInvalidError("unknown case tag: " + s);
}

const char* failed_name(FailedCondition f) {
    switch (f) {
        case FailedCondition::None: return "none";
        case FailedCondition::A_i: return "A_i";
        case FailedCondition::A_ii: return "A_ii";
        case FailedCondition::B_nilpotent_l: return "B_nilpotent_l";
        case FailedCondition::B_a: return "B_a";
        case FailedCondition::B_b_k: return "B_b_k";
        case FailedCondition::B_b_l: return "B_b_l";
    }
    return "?";
}

json rat_vec(const std::vector<Rat>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(rat_str(r));
    return out;
}

}  // namespace

json to_json(const Rat& r) { return rat_str(r); }

json to_json(const RatMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const SkewPencil& p) {
    return {{"J1", to_json(p.J1)}, {"J2", to_json(p.J2)}};
}

json to_json(const CanonicalSpec& spec) {
    json rd = json::array(), cd = json::array();
    for (const auto& d : spec.real_divisors)
        rd.push_back({{"root", rat_str(d.root)}, {"power", d.power}});
    for (const auto& d : spec.complex_divisors)
        cd.push_back({{"mu", rat_str(d.mu)}, {"nu", rat_str(d.nu)}, {"power", d.power}});
    return {{"real_divisors", rd},
            {"complex_divisors", cd},
            {"minimal_indices", spec.minimal_indices},
            {"padding", spec.padding}};
}

json to_json(const PencilInvariants& inv) {
    CanonicalSpec spec{inv.real_divisors, inv.complex_divisors, inv.minimal_indices,
                       inv.common_kernel_dim};
    json out = to_json(spec);
    out.erase("padding");
    out["common_kernel_dim"] = inv.common_kernel_dim;
    out["variable_change"] = to_json(inv.variable_change);
    out["case"] = case_name(inv.case_tag);
    return out;
}

json to_json(const TwoStepAlgebra& n) {
    json mats = json::array();
    for (const auto& J : n.J) mats.push_back(to_json(J));
    return {{"q", n.q}, {"p", n.p}, {"J", mats}};
}

json to_json(const MetricData& g) {
    if (g.is_diagonal()) return {{"diag", rat_vec(g.diag)}};
    return {{"full", to_json(g.full)}};
}

json to_json(const Verdict& v) {
    json out = {{"is_einstein", v.is_einstein},
                {"case", v.verdict_case == VerdictCase::Generic ? "Generic" : "Subsingular"},
                {"failed_condition", failed_name(v.failed)}};
    if (v.verdict_case == VerdictCase::Subsingular) {
        out["u1"] = v.u1;
        out["u2"] = v.u2;
        out["group1"] = v.group1;
        out["group2"] = v.group2;
        if (v.root1) out["root1"] = rat_str(*v.root1);
        if (v.root2) out["root2"] = rat_str(*v.root2);
        out["S1"] = rat_str(v.S1);
        out["S2"] = rat_str(v.S2);
    }
    if (v.witness_root) out["witness_root"] = rat_str(*v.witness_root);
    return out;
}

json to_json(const PreEinsteinDerivation& d) {
    json eig = json::array();
    for (const auto& [value, mult] : d.eigenvalues)
        eig.push_back({{"value", rat_str(value)}, {"multiplicity", mult}});
    std::vector<Rat> diag;
    for (int i = 0; i < d.phi.rows; ++i) diag.push_back(d.phi.at(i, i));
    json out = {{"phi_diagonal", rat_vec(diag)}, {"eigenvalues", eig}};
    if (d.sigma) out["sigma"] = rat_str(*d.sigma);
    return out;
}

json to_json(const EigenvalueType& t) {
    return {{"lambdas", t.lambdas}, {"dims", t.dims}};
}

json to_json(const NiceBasisSolution& sol) {
    json out = {{"alpha", rat_vec(sol.alpha)},
                {"positive", sol.positive},
                {"unique", sol.unique}};
    if (sol.Y.rows > 0) out["Y"] = to_json(sol.Y);
    if (!sol.s.empty()) out["s"] = sol.s;
    if (sol.nu1) out["nu1"] = rat_str(*sol.nu1);
    if (sol.nu2) out["nu2"] = rat_str(*sol.nu2);
    if (sol.delta) out["delta"] = rat_str(*sol.delta);
    return out;
}

json to_json(const SL2State& st) {
    const char* outcome = st.outcome == SL2Outcome::Converged    ? "converged"
                          : st.outcome == SL2Outcome::NoMinimum ? "no_minimum"
                                                                : "iteration_limit";
    return {{"S", to_json(Eigen::MatrixXd(st.S))},
            {"logF", st.logF},
            {"grad", to_json(Eigen::MatrixXd(st.grad))},
            {"grad_norm", st.grad.norm()},
            {"outcome", outcome},
            {"iterations", st.iterations}};
}

json to_json(const NilsolitonCertificate& cert) {
    return {{"algebra", to_json(cert.algebra)},
            {"metric", to_json(cert.metric)},
            {"C", cert.C},
            {"Phi", to_json(cert.Phi)},
            {"ricci_residual", cert.ricci_residual},
            {"derivation_residual", cert.derivation_residual},
            {"eigenvalue_type", to_json(cert.type)}};
}

json to_json(const DegenerationWitness& w) {
    return {{"xi", rat_str(w.xi)},
            {"multiplicity", w.multiplicity},
            {"J1_limit", to_json(w.limit.J1)},
            {"J2_limit", to_json(w.limit.J2)},
            {"limit_invariants", to_json(w.limit_invariants)},
            {"x_rate", w.x_rate},
            {"y_rate", w.y_rate}};
}

json to_json(const DualHeisenberg& dh) {
    return {{"algebra", to_json(dh.algebra)},
            {"certificate", to_json(dh.certificate)},
            {"r1_sq", rat_str(dh.r1_sq)},
            {"r2_sq", rat_str(dh.r2_sq)},
            {"r3_sq", rat_str(dh.r3_sq)},
            {"c", rat_str(dh.c)},
            {"lambdas", rat_vec(dh.lambdas)},
            {"lambda_dims", dh.lambda_dims}};
}

json to_json(const SolitonFit& fit) {
    json out = {{"C", fit.C}, {"Phi", to_json(fit.Phi)}, {"residual", fit.residual}};
    if (fit.exact) {
        out["C_exact"] = rat_str(fit.C_exact);
        out["Phi_exact"] = to_json(fit.Phi_exact);
    }
    return out;
}

Rat rat_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long long>());
        if (j.is_string()) return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SpecInvalidError(std::string("bad rational: ") + e.what());
    }
    throw SpecInvalidError("expected a rational as \"p/q\" string or integer");
}

RatMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw SpecInvalidError("expected a matrix as an array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw SpecInvalidError("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.at(i, c) = rat_from_json(j[i][c]);
    }
    return m;
}

SkewPencil pencil_from_json(const json& j) {
    if (!j.contains("J1") || !j.contains("J2"))
        throw SpecInvalidError("pencil needs J1 and J2");
    return SkewPencil(matrix_from_json(j["J1"]), matrix_from_json(j["J2"]));
}

CanonicalSpec spec_from_json(const json& j) {
    CanonicalSpec spec;
    for (const auto& d : j.value("real_divisors", json::array()))
        spec.real_divisors.push_back({rat_from_json(d.at("root")), d.value("power", 1)});
    for (const auto& d : j.value("complex_divisors", json::array()))
        spec.complex_divisors.push_back(
            {rat_from_json(d.at("mu")), rat_from_json(d.at("nu")), d.value("power", 1)});
    if (j.contains("minimal_indices"))
        spec.minimal_indices = j["minimal_indices"].get<std::vector<int>>();
    spec.padding = j.value("padding", j.value("common_kernel_dim", 0));
    return spec;
}

PencilInvariants invariants_from_json(const json& j) {
    CanonicalSpec spec = spec_from_json(j);
    PencilInvariants inv;
    inv.real_divisors = std::move(spec.real_divisors);
    inv.complex_divisors = std::move(spec.complex_divisors);
    inv.minimal_indices = std::move(spec.minimal_indices);
    inv.common_kernel_dim = spec.padding;
    inv.variable_change = j.contains("variable_change")
                              ? matrix_from_json(j["variable_change"])
                              : RatMatrix::identity(2);
    inv.case_tag = j.contains("case")
                       ? case_from_name(j["case"].get<std::string>())
                       : case_tag_of(inv.real_divisors, inv.complex_divisors);
    return inv;
}

TwoStepAlgebra algebra_from_json(const json& j) {
    if (!j.contains("J") || !j["J"].is_array() || j["J"].empty())
        throw SpecInvalidError("algebra needs a nonempty list J of matrices");
    std::vector<RatMatrix> mats;
    for (const auto& m : j["J"]) mats.push_back(matrix_from_json(m));
    return from_tuple(std::move(mats));
}

MetricData metric_from_json(const json& j) {
    MetricData g;
    if (j.contains("diag")) {
        for (const auto& d : j["diag"]) g.diag.push_back(rat_from_json(d));
        for (const auto& d : g.diag)
            if (d <= 0) throw SpecInvalidError("metric entries must be positive");
    } else if (j.contains("full")) {
        g.full = matrix_from_json(j["full"]);
    } else if (j.contains("s")) {
        std::vector<double> s = j["s"].get<std::vector<double>>();
        g = MetricData::diagonal_from_s(s);
    } else {
        throw SpecInvalidError("metric needs diag, full, or s");
    }
    return g;
}

}  // namespace nilpencil
