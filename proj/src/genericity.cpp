#include "sp4gen/genericity.hpp"

#include "sp4gen/errors.hpp"

namespace sp4gen {

namespace {

json step(const std::string& key, json value) { return json{{"step", key}, {"value", std::move(value)}}; }

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw SchemaError("beta must be a 4x4 array");
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_array() || j[i].size() != 4) throw SchemaError("beta must be a 4x4 array");
        for (int k = 0; k < 4; ++k) {
            const json& x = j[i][k];
            if (x.is_number_integer()) m(i, k) = Q(x.get<long>());
            else if (x.is_string()) m(i, k) = parse_rational(x.get<std::string>());
            else throw SchemaError("beta entries must be integers or rational strings");
        }
    }
    return m;
}

}  // namespace

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json flag_to_json(const IsotropicFlag& f) {
    json v3 = json::array();
    for (const auto& w : f.v3) v3.push_back(vec_to_json(w));
    return {{"v1", vec_to_json(f.v1)}, {"v2", vec_to_json(f.v2)}, {"v3", v3}, {"completed", f.completed}};
}

json cross_check_to_json(const CrossCheckReport& r) {
    json j = {{"agree", r.ok()},
              {"class_exists", r.class_exists},
              {"isotropic", r.isotropic},
              {"hensel_decided", r.hensel_decided},
              {"hensel_found", r.hensel_found}};
    if (r.flag_type) j["flag_type"] = to_string(*r.flag_type);
    if (r.expected_type) j["expected_type"] = to_string(*r.expected_type);
    if (r.uder_samples) {
        j["uder_samples"] = r.uder_samples;
        j["psi_vanishes_on_uder"] = r.psi_vanishes_on_uder;
        j["psi_character_on_u"] = r.psi_character_on_u;
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

GenericityInput input_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("input must be a JSON object");
    if (!j.contains("case") || !j["case"].is_string()) throw SchemaError("input needs a string \"case\"");
    GenericityInput in;
    json rest = j;
    rest.erase("case");
    if (j["case"] == "level0") {
        in.data = parahoric_from_json(rest);
        return in;
    }
    std::optional<Mat> beta;
    if (j.contains("beta")) {
        beta = matrix_from_json(j["beta"]);
        rest.erase("beta");
    }
    json stratum_json = rest;
    stratum_json["case"] = j["case"];
    Stratum s = stratum_from_json(stratum_json);
    if (beta) {
        if (!s.F.is_concrete()) throw PreconditionError("a matrix beta needs a concrete prime \"p\"");
        if (!is_skew(*beta, symplectic_J(4))) throw SchemaError("beta is not skew for the standard form");
        MatrixStratum ms;
        ms.stratum = s;
        ms.p = *s.F.p;
        ms.beta = *beta;
        in.realization = ms;
    }
    in.data = s;
    return in;
}

json GenericityVerdict::to_json() const {
    json j = {{"verdict", generic ? "generic" : "non_generic"},
              {"case", case_id},
              {"trace", trace},
              {"witness", witness}};
    if (cross_check) j["cross_check"] = *cross_check;
    return j;
}

GenericityVerdict decide(const GenericityInput& in) {
    GenericityVerdict v;
    if (const auto* pt = std::get_if<ParahoricType>(&in.data)) {
        v.case_id = "level0";
        bool special = pt->kind == ParahoricKind::special_Sp4;
        v.trace.push_back(step("parahoric", special ? "special_Sp4" : "product_Sp2xSp2"));
        v.trace.push_back(step("sigma_regular", pt->sigma_regular));
        v.trace.push_back(step("sigma_is_theta10", pt->sigma_is_theta10));
        v.generic = level_zero_decide(*pt);
        if (!special) v.witness = {{"condition", "reductive quotient is Sp2 x Sp2"}};
        else if (!pt->sigma_regular) v.witness = {{"condition", "cuspidal sigma is not regular"}};
        else v.witness = {{"condition", "special parahoric with regular cuspidal sigma"}};
        v.trace.push_back(step("generic", v.generic));
        return v;
    }
    const Stratum& s = std::get<Stratum>(in.data);
    v.case_id = to_string(s.kind);
    FlagDecision d = decide_flag_existence(s);
    v.trace = d.trace;
    if (s.kind == StratumCase::IV) {
        v.generic = false;
        v.witness = {{"condition", "simple piece plus a null piece"}, {"flag_exists", d.exists}};
    } else {
        v.generic = d.exists;
        v.witness = {{"condition", d.rule}, {"flag_exists", d.exists}};
        if (d.exists) v.witness["character"] = to_string(classify_character(s));
    }
    v.trace.push_back(step("generic", v.generic));
    return v;
}

GenericityVerdict decide_with_cross_check(const MatrixStratum& ms, int uder_samples, Rng& rng) {
    GenericityInput in;
    in.data = ms.stratum;
    GenericityVerdict v = decide(in);
    CrossCheckReport r = cross_check_matrix(ms, uder_samples, rng);
    json report = cross_check_to_json(r);
    v.cross_check = report;
    if (!r.ok()) {
        json dump = {{"stratum", stratum_to_json(ms.stratum)}, {"p", ms.p}, {"report", report}};
        json beta = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int k = 0; k < 4; ++k) row.push_back(to_string(ms.beta(i, k)));
            beta.push_back(row);
        }
        dump["beta"] = beta;
        throw InvariantViolation("class arithmetic and isotropy paths disagree: " + dump.dump());
    }
    if (r.flag) {
        v.witness["flag"] = flag_to_json(*r.flag);
    } else {
        v.witness["anisotropy"] = {{"is_isotropic", r.isotropic}, {"hensel_found", r.hensel_found}};
    }
    return v;
}

}  // namespace sp4gen
