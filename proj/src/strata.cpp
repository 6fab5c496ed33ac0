#include "sp4gen/strata.hpp"

#include "sp4gen/errors.hpp"

#include <set>

namespace sp4gen {

std::string to_string(StratumCase c) {
    switch (c) {
        case StratumCase::I:
            return "I";
        case StratumCase::II:
            return "II";
        case StratumCase::III:
            return "III";
        default:
            return "IV";
    }
}

StratumCase parse_case(const std::string& s) {
    if (s == "I") return StratumCase::I;
    if (s == "II") return StratumCase::II;
    if (s == "III") return StratumCase::III;
    if (s == "IV") return StratumCase::IV;
    throw SchemaError("unknown stratum case: " + s);
}

namespace {

const json& field(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field: ") + key);
    return j.at(key);
}

long int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field must be an integer: ") + key);
    return v.get<long>();
}

long positive_field(const json& j, const char* key) {
    long v = int_field(j, key);
    if (v < 1) throw SchemaError(std::string("field must be positive: ") + key);
    return v;
}

std::string string_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) throw SchemaError(std::string("field must be a string: ") + key);
    return v.get<std::string>();
}

bool bool_field(const json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) throw SchemaError(std::string("field must be a boolean: ") + key);
    return j.at(key).get<bool>();
}

QuadExt ext_field(const json& j, const char* key, const LocalField& F) {
    const json& e = field(j, key);
    if (!e.is_object()) throw SchemaError(std::string("field must be an object: ") + key);
    for (auto it = e.begin(); it != e.end(); ++it)
        if (it.key() != "disc") throw SchemaError("unknown field in extension: " + it.key());
    SquareClass d = SquareClass::parse(string_field(e, "disc"));
    if (d.is_identity()) throw SchemaError(std::string(key) + ".disc must be u, p or up");
    return QuadExt(F, d);
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw SchemaError("unexpected field: " + it.key());
}

json ext_json(const QuadExt& E) { return json{{"disc", E.disc.str()}}; }

json step(const std::string& name, const json& value) { return json{{"step", name}, {"value", value}}; }

}  // namespace

Stratum stratum_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("stratum must be a JSON object");
    Stratum s;
    s.kind = parse_case(string_field(j, "case"));
    long q = int_field(j, "q");
    if (j.contains("p")) {
        long p = int_field(j, "p");
        if (p != q) throw SchemaError("concrete mode needs q = p");
        s.F = LocalField::concrete(p);
    } else {
        s.F = LocalField::abstract(q);
    }
    switch (s.kind) {
        case StratumCase::I: {
            check_keys(j, {"case", "q", "p", "E0", "beta_detdelta_E0", "n", "biquadratic", "E_over_E0_ramified"});
            s.E0 = ext_field(j, "E0", s.F);
            s.beta_detdelta = E0SquareClass::parse(string_field(j, "beta_detdelta_E0"));
            s.n = positive_field(j, "n");
            s.biquadratic = bool_field(j, "biquadratic", true);
            if (s.biquadratic) {
                // The only biquadratic extension is F(sqrt u, sqrt p): over E0 = F(sqrt u)
                // it is ramified, over the two ramified E0 it is unramified.
                bool forced = !s.E0->ramified();
                if (j.contains("E_over_E0_ramified") && bool_field(j, "E_over_E0_ramified", forced) != forced)
                    throw PreconditionError(
                        "a biquadratic E is ramified over E0 exactly when E0 is unramified over F; "
                        "the given E0 and E_over_E0_ramified cannot both hold");
                s.E_over_E0_ramified = forced;
            } else {
                s.E_over_E0_ramified = bool_field(j, "E_over_E0_ramified", false);
            }
            break;
        }
        case StratumCase::II:
            check_keys(j, {"case", "q", "p", "E", "det_delta", "n"});
            s.E = ext_field(j, "E", s.F);
            s.det_delta = SquareClass::parse(string_field(j, "det_delta"));
            s.n = positive_field(j, "n");
            break;
        case StratumCase::III: {
            check_keys(j, {"case", "q", "p", "E", "E2", "det_delta", "ratio", "n1", "n2"});
            s.E = ext_field(j, "E", s.F);
            if (j.contains("E2")) s.E2 = ext_field(j, "E2", s.F);
            s.n1 = positive_field(j, "n1");
            s.n2 = positive_field(j, "n2");
            if (s.n1 < s.n2) throw SchemaError("case III needs n1 >= n2");
            bool iso = s.pieces_isomorphic();
            if (iso || j.contains("det_delta")) s.det_delta = SquareClass::parse(string_field(j, "det_delta"));
            if (iso || j.contains("ratio")) s.ratio = SquareClass::parse(string_field(j, "ratio"));
            s.n = s.n1;
            break;
        }
        case StratumCase::IV: {
            check_keys(j, {"case", "q", "p", "E", "n1", "n", "epsilon"});
            s.E = ext_field(j, "E", s.F);
            s.n1 = j.contains("n1") ? positive_field(j, "n1") : positive_field(j, "n");
            s.n = s.n1;
            long eps = int_field(j, "epsilon");
            if (eps != 0 && eps != 1) throw SchemaError("epsilon must be 0 or 1");
            s.epsilon = static_cast<int>(eps);
            break;
        }
    }
    return s;
}

json stratum_to_json(const Stratum& s) {
    json j;
    j["case"] = to_string(s.kind);
    j["q"] = s.F.q;
    if (s.F.p) j["p"] = *s.F.p;
    switch (s.kind) {
        case StratumCase::I:
            j["E0"] = ext_json(*s.E0);
            j["beta_detdelta_E0"] = s.beta_detdelta.str();
            j["n"] = s.n;
            j["biquadratic"] = s.biquadratic;
            j["E_over_E0_ramified"] = s.E_over_E0_ramified;
            break;
        case StratumCase::II:
            j["E"] = ext_json(*s.E);
            j["det_delta"] = s.det_delta.str();
            j["n"] = s.n;
            break;
        case StratumCase::III:
            j["E"] = ext_json(*s.E);
            if (s.E2) j["E2"] = ext_json(*s.E2);
            if (s.pieces_isomorphic()) {
                j["det_delta"] = s.det_delta.str();
                j["ratio"] = s.ratio.str();
            }
            j["n1"] = s.n1;
            j["n2"] = s.n2;
            break;
        case StratumCase::IV:
            j["E"] = ext_json(*s.E);
            j["n1"] = s.n1;
            j["epsilon"] = s.epsilon;
            break;
    }
    return j;
}

FlagDecision decide_flag_existence(const Stratum& s) {
    FlagDecision d;
    d.trace.push_back(step("case", to_string(s.kind)));
    switch (s.kind) {
        case StratumCase::I: {
            if (!s.E0) throw SchemaError("case I needs E0");
            d.trace.push_back(step("biquadratic", s.biquadratic));
            if (!s.biquadratic) {
                d.exists = true;
                d.rule = "E not biquadratic: the trace kernel meets every coset, so h(v, beta v) is isotropic";
                break;
            }
            const QuadExt& E0 = *s.E0;
            KernelCoset kernel = trace_kernel_coset(E0);
#ifndef NDEBUG
            if (s.F.is_concrete()) {
                Rng rng(0);
                if (trace_kernel_sampling_oracle(E0, 32, rng) != kernel)
                    throw InvariantViolation("trace kernel closed form disagrees with the sampling oracle");
            }
#endif
            bool m = e0_contains_F_times_squares(E0, s.beta_detdelta);
            bool kernel_inside = kernel == KernelCoset::inside_FE0sq;
            d.trace.push_back(step("E0_ramified", E0.ramified()));
            d.trace.push_back(step("q_mod_4", s.F.q % 4));
            d.trace.push_back(step("trace_kernel_coset", to_string(kernel)));
            d.trace.push_back(step("beta_detdelta_E0", s.beta_detdelta.str()));
            d.trace.push_back(step("beta_detdelta_in_FE0sq", m));
            d.exists = m == kernel_inside;
            d.trace.push_back(step("same_coset_as_trace_kernel", d.exists));
            d.rule = d.exists ? "beta delta(v, v) lies in the coset of the trace kernel"
                              : "beta delta(v, v) avoids the coset of the trace kernel: form anisotropic";
            break;
        }
        case StratumCase::II: {
            bool in = norm_group_contains(*s.E, s.det_delta);
            d.trace.push_back(step("E_disc", s.E->disc.str()));
            d.trace.push_back(step("det_delta", s.det_delta.str()));
            d.trace.push_back(step("det_delta_is_norm", in));
            d.exists = in;
            d.rule = in ? "det delta is a norm from E" : "det delta is not a norm from E: form anisotropic";
            break;
        }
        case StratumCase::III: {
            bool iso = s.pieces_isomorphic();
            d.trace.push_back(step("E1_disc", s.E->disc.str()));
            if (s.E2) d.trace.push_back(step("E2_disc", s.E2->disc.str()));
            d.trace.push_back(step("E1_isomorphic_E2", iso));
            if (!iso) {
                d.exists = true;
                d.rule = "E1 and E2 not isomorphic: determinant of the form is not a square";
                break;
            }
            SquareClass x = s.ratio * s.det_delta;
            bool in = norm_group_contains(*s.E, x);
            d.trace.push_back(step("ratio", s.ratio.str()));
            d.trace.push_back(step("det_delta", s.det_delta.str()));
            d.trace.push_back(step("ratio_times_det_delta", x.str()));
            d.trace.push_back(step("ratio_in_det_delta_norms", in));
            d.exists = in;
            d.rule = in ? "beta1/beta2 lies in det(delta) N(E)" : "beta1/beta2 avoids det(delta) N(E): form anisotropic";
            break;
        }
        case StratumCase::IV:
            d.exists = true;
            d.rule = "null piece: every vector of V^2 is isotropic";
            break;
    }
    d.trace.push_back(step("flag_exists", d.exists));
    return d;
}

FlagType classify_character(const Stratum& s) {
    if (!decide_flag_existence(s).exists) throw PreconditionError("no isotropic flag: psi_beta is not a character of any U");
    return (s.kind == StratumCase::I || s.kind == StratumCase::III) ? FlagType::nondegenerate : FlagType::degenerate;
}

int label_index(int k) {
    switch (k) {
        case -2:
            return 0;
        case -1:
            return 1;
        case 1:
            return 2;
        case 2:
            return 3;
        default:
            throw PreconditionError("root label must be one of -2, -1, 1, 2");
    }
}

Mat root_tk(int k) {
    Mat t(4, 4);
    t(label_index(-k), label_index(k)) = 1;
    return t;
}

std::vector<Mat> root_vectors() {
    auto E = [](int i, int j) {
        Mat m(4, 4);
        m(i, j) = 1;
        return m;
    };
    return {E(0, 1) - E(2, 3), E(1, 2), E(0, 2) + E(1, 3), E(0, 3),
            E(1, 0) - E(3, 2), E(2, 1), E(2, 0) + E(3, 1), E(3, 0)};
}

Mat symplectic_inverse(const Mat& g) {
    Mat J = symplectic_J(g.rows);
    // J^-1 = -J.
    return Q(-1) * (J * g.transpose() * J);
}

Q psi_beta_value(const Mat& beta, const Mat& x, long p) {
    if (!is_symplectic(x, symplectic_J(x.rows))) throw PreconditionError("psi_beta needs a symplectic matrix");
    return psi_F((beta * (x - Mat::identity(x.rows))).trace(), p);
}

PsiBetaThreshold root_threshold(const Mat& beta, const Mat& g, int k, long p) {
    if (!is_symplectic(g, symplectic_J(4))) throw PreconditionError("root threshold needs a symplectic g");
    PsiBetaThreshold t;
    t.k = k;
    Vec v = g.column(label_index(-k));
    t.pairing = h_form(symplectic_J(4), v, beta * v);
    if (t.pairing != 0) t.s_max = -valuation(t.pairing, p);
    return t;
}

ThresholdCheck check_root_threshold(const Mat& beta, const Mat& g, int k, long p, int samples, Rng& rng) {
    ThresholdCheck c;
    PsiBetaThreshold t = root_threshold(beta, g, k, p);
    Mat ginv = symplectic_inverse(g);
    Mat conj_t = g * root_tk(k) * ginv;
    Mat one = Mat::identity(4);
    int sign = k > 0 ? 1 : -1;
    auto psi_at = [&](const Q& x) { return psi_beta_value(beta, one + x * conj_t, p); };
    long centre = t.s_max ? *t.s_max : 0;
    for (int i = 0; i < samples; ++i) {
        Q x = random_rational(p, centre - 4, centre + 4, rng);
        if (psi_at(x) != psi_F(Q(sign) * x * t.pairing, p)) c.identity_ok = false;
    }
    if (!t.s_max) {
        for (int i = 0; i < samples; ++i)
            if (psi_at(random_rational(p, -8, 8, rng)) != 0) c.above_max_zero = false;
        return c;
    }
    c.at_max_nonzero = psi_at(pow_p(p, *t.s_max)) != 0;
    if (psi_at(pow_p(p, *t.s_max + 1)) != 0) c.above_max_zero = false;
    for (int i = 0; i < samples; ++i)
        if (psi_at(random_rational(p, *t.s_max + 1, *t.s_max + 5, rng)) != 0) c.above_max_zero = false;
    return c;
}

bool biquadratic_test(const Mat& beta, long p) {
    if (beta.rows != 4) throw PreconditionError("biquadratic test needs a 4x4 matrix");
    std::vector<Vec> powers;
    Mat x = Mat::identity(4);
    for (int i = 0; i < 4; ++i) {
        powers.push_back(x.a);
        x = x * beta;
    }
    if (rank_of(powers) != 4) throw PreconditionError("beta does not generate a field of degree 4");
    return square_class(det(beta), LocalField::concrete(p)).is_identity();
}

}  // namespace sp4gen
