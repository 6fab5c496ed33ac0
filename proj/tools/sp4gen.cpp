#include "sp4gen/errors.hpp"
#include "sp4gen/finite_reductive.hpp"
#include "sp4gen/genericity.hpp"
#include "sp4gen/lattice.hpp"
#include "sp4gen/selfcheck.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace sp4gen;

namespace {

enum Exit { kOk = 0, kSchema = 2, kPrecondition = 3, kInvariant = 4 };

struct Globals {
    std::string format = "json";
    uint64_t seed = 0;
};

bool table(const Globals& g) { return g.format == "table"; }

json read_input(const std::string& arg) {
    std::string text;
    auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw PreconditionError("cannot read input file " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

std::string value_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_verdict_table(const json& v) {
    std::cout << "verdict: " << value_text(v["verdict"]) << "\n";
    std::cout << "case:    " << value_text(v["case"]) << "\n";
    std::cout << "trace:\n";
    for (const auto& s : v["trace"]) std::cout << "  " << value_text(s["step"]) << " = " << value_text(s["value"]) << "\n";
    std::cout << "witness:\n";
    for (const auto& [k, x] : v["witness"].items()) std::cout << "  " << k << " = " << value_text(x) << "\n";
    if (v.contains("cross_check")) {
        std::cout << "cross_check:\n";
        for (const auto& [k, x] : v["cross_check"].items()) std::cout << "  " << k << " = " << value_text(x) << "\n";
    }
}

int cmd_decide(const Globals& g, const std::string& input, bool cross, int uder) {
    json j = read_input(input);
    bool batch = j.is_array();
    json items = batch ? j : json::array({j});
    Rng rng(g.seed);
    json out = json::array();
    for (const auto& item : items) {
        GenericityInput in = input_from_json(item);
        GenericityVerdict v;
        if (cross) {
            if (!in.realization) throw PreconditionError("--cross-check needs a \"beta\" matrix and \"p\" in the input");
            v = decide_with_cross_check(*in.realization, uder, rng);
        } else {
            v = decide(in);
        }
        out.push_back(v.to_json());
    }
    if (table(g)) {
        for (size_t i = 0; i < out.size(); ++i) {
            if (i) std::cout << "\n";
            print_verdict_table(out[i]);
        }
    } else {
        std::cout << (batch ? out : out[0]).dump(2) << "\n";
    }
    return kOk;
}

int cmd_qform(const Globals& g, long p, const std::string& diag, long depth) {
    if (!is_prime(p) || p == 2) throw PreconditionError("--prime must be an odd prime");
    std::vector<Q> d;
    std::stringstream ss(diag);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            d.push_back(parse_rational(tok));
        } catch (const std::exception&) {
            throw SchemaError("bad diagonal entry: " + tok);
        }
    }
    if (d.empty() || d.size() > 4) throw PreconditionError("--diag takes 1 to 4 entries");
    int n = static_cast<int>(d.size());
    Mat G(n, n);
    for (int i = 0; i < n; ++i) G(i, i) = d[i];
    QuadraticForm form{G, p};
    LocalField F = LocalField::concrete(p);
    FormInvariants inv = invariants(form);
    bool iso = is_isotropic(form);
    IsotropicCertificate cert = find_isotropic_vector(form, depth);
    if (cert.found != iso) throw InvariantViolation("isotropy closed form and search disagree");
    json diag_json = json::array();
    for (const auto& x : d) diag_json.push_back(to_string(x));
    json c = {{"found", cert.found}, {"exact", cert.exact}, {"depth", depth}, {"search_level", cert.search.level}};
    if (cert.found) c["vector"] = vec_to_json(cert.vector);
    if (!cert.found) c["proof"] = "no primitive solution modulo p^" + std::to_string(cert.search.level);
    json out = {{"prime", p},
                {"diag", diag_json},
                {"dim", inv.dim},
                {"det_class", inv.det_class.str()},
                {"hasse", inv.hasse},
                {"hilbert_minus1_minus1", hilbert_symbol(minus_one_class(F), minus_one_class(F), F)},
                {"isotropic", iso},
                {"certificate", c}};
    if (table(g)) {
        std::cout << "form:      <" << diag << "> over Q_" << p << "\n";
        std::cout << "det:       " << inv.det_class.str() << (inv.det_class.is_identity() ? " (square)" : "") << "\n";
        std::cout << "hasse:     " << inv.hasse << "   (-1,-1) = " << out["hilbert_minus1_minus1"] << "\n";
        std::cout << "isotropic: " << (iso ? "yes" : "no (anisotropic)") << "\n";
        if (cert.found) std::cout << "vector:    " << c["vector"].dump() << (cert.exact ? " exact" : " Hensel") << "\n";
        else std::cout << "proof:     " << value_text(c["proof"]) << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return kOk;
}

int cmd_finite(const Globals& g, long q, bool oracle, bool csv) {
    CuspidalCensus census = cuspidal_census(q);
    FamilyOracle o;
    bool all_agree = true;
    if (oracle) {
        o = family_orbit_oracle(q);
        for (int id = 1; id <= 14; ++id) all_agree &= o.counts.at(id) == family_count(id, q);
    }
    if (csv) {
        std::cout << "id,representative,condition,count_formula,count,W0,component_index,cuspidal";
        if (oracle) std::cout << ",oracle,agree";
        std::cout << "\n";
        for (const auto& f : family_table()) {
            long n = family_count(f.id, q);
            std::cout << f.id << ",\"" << f.representative << "\",\"" << f.condition << "\",\"" << f.count_formula
                      << "\"," << n << ",\"" << f.centralizer_weyl << "\"," << f.component_index << ","
                      << to_string(f.outcome);
            if (oracle) std::cout << "," << o.counts.at(f.id) << "," << (o.counts.at(f.id) == n ? "AGREE" : "DISAGREE");
            std::cout << "\n";
        }
        return all_agree ? kOk : kInvariant;
    }
    if (table(g)) {
        std::cout << "q = " << q << "\n";
        std::cout << std::left << std::setw(4) << "id" << std::setw(22) << "representative" << std::setw(16)
                  << "formula" << std::right << std::setw(8) << "count";
        if (oracle) std::cout << std::setw(8) << "oracle" << "  status";
        std::cout << std::setw(11) << "cuspidal" << "\n";
        for (const auto& f : family_table()) {
            long n = family_count(f.id, q);
            std::cout << std::left << std::setw(4) << f.id << std::setw(22) << f.representative << std::setw(16)
                      << f.count_formula << std::right << std::setw(8) << n;
            if (oracle) std::cout << std::setw(8) << o.counts.at(f.id) << "  " << (o.counts.at(f.id) == n ? "AGREE   " : "DISAGREE");
            long contrib = census.contributions.count(f.id) ? census.contributions.at(f.id) : (f.id == 1 ? 1 : 0);
            std::cout << std::setw(11) << contrib << "\n";
        }
        std::cout << "f13=" << census.class_counts.at(13) << " f14=" << census.class_counts.at(14)
                  << " f11=" << census.class_counts.at(11) << "(classes) theta10=" << census.theta10
                  << " regular=" << census.regular << " total=" << census.total;
        if (oracle) std::cout << (all_agree ? ", all AGREE" : ", DISAGREE present");
        std::cout << "\n";
    } else {
        json out = census.to_json();
        if (oracle) {
            json rows = json::array();
            for (int id = 1; id <= 14; ++id)
                rows.push_back({{"id", id},
                                {"formula", family_count(id, q)},
                                {"oracle", o.counts.at(id)},
                                {"status", o.counts.at(id) == family_count(id, q) ? "AGREE" : "DISAGREE"}});
            out["oracle"] = rows;
            out["all_agree"] = all_agree;
        }
        std::cout << out.dump(2) << "\n";
    }
    return all_agree ? kOk : kInvariant;
}

LatticeSequence lattice_from_json(const json& j) {
    if (!j.contains("e") || !j["e"].is_number_integer()) throw SchemaError("lattice needs an integer \"e\"");
    if (!j.contains("alpha") || !j["alpha"].is_array()) throw SchemaError("lattice needs an \"alpha\" array");
    LatticeSequence L;
    L.e = j["e"].get<int>();
    if (L.e < 1) throw SchemaError("period e must be positive");
    for (const auto& row : j["alpha"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != L.e) throw SchemaError("each alpha row needs e entries");
        std::vector<long> r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw SchemaError("alpha entries must be integers");
            r.push_back(x.get<long>());
        }
        L.alpha.push_back(r);
    }
    if (L.dim() != 2 && L.dim() != 4) throw SchemaError("lattice dimension must be 2 or 4");
    L.validate();
    return L;
}

json lattice_report(const json& j, Rng& rng) {
    if (j.contains("block")) {
        const json& b = j["block"];
        for (const char* k : {"p", "E", "L", "y", "r"})
            if (!b.contains(k)) throw SchemaError(std::string("block needs \"") + k + "\"");
        long p = b["p"].get<long>();
        if (!is_prime(p) || p == 2) throw PreconditionError("block prime must be odd");
        LocalField F = LocalField::concrete(p);
        QuadExt E(F, SquareClass::parse(b["E"].get<std::string>()));
        auto rat = [&](const char* k) { return b[k].is_string() ? parse_rational(b[k].get<std::string>()) : Q(b[k].get<long>()); };
        SkewBlock B = make_skew_block(E, rat("L"), rat("y"), rat("r"));
        NormalizedProfile P = normalize_period4(B.chain, B.type);
        BlockFiltrationReport filtration = check_block_filtration(B, P, 32, rng);
        json block_val = json::array();
        bool block_val_ok = true;
        for (int i = 0; i < 8; ++i) {
            BlockValuationReport r = check_block_valuation(B, P, random_block_vector(B, rng));
            block_val_ok &= r.ok;
            block_val.push_back({{"nu_lambda", r.lhs}, {"formula", r.rhs}});
        }
        return {{"chain_type", to_string(B.type)},
                {"epsilon", P.epsilon},
                {"block_filtration", {{"ok", filtration.ok}, {"image_ok", filtration.image_ok}, {"beta_valuation", filtration.beta_val},
                        {"expected", filtration.beta_val_expected}}},
                {"block_valuation", {{"ok", block_val_ok}, {"samples", block_val}}},
                {"ok", filtration.ok && block_val_ok}};
    }
    LatticeSequence L = lattice_from_json(j);
    auto d = duality_invariant(L);
    json out = {{"e", L.e}, {"dim", L.dim()}, {"self_dual", d.has_value()}};
    if (!d) {
        out["ok"] = false;
        out["detail"] = "no d with Lambda(t)^# = Lambda(d - t)";
        return out;
    }
    out["d"] = *d;
    BasisValuationReport basis = check_basis_valuations(L);
    out["basis_valuations"] = {{"ok", basis.ok}, {"nu_basis", basis.nu}};
    if (!basis.ok) out["basis_valuations"]["detail"] = basis.detail;
    out["ok"] = basis.ok;
    return out;
}

json lattice_random(long p, int samples, Rng& rng) {
    long basis = 0, filtration = 0, block_val = 0;
    for (int i = 0; i < samples; ++i) {
        int dim = uniform_int(0, 1, rng) ? 4 : 2;
        int e = std::vector<int>{1, 2, 4}[uniform_int(0, 2, rng)];
        basis += check_basis_valuations(random_selfdual(dim, e, uniform_int(-2, 2, rng), rng)).ok;
        SkewBlock B = random_skew_block(p, rng);
        NormalizedProfile P = normalize_period4(B.chain, B.type);
        filtration += check_block_filtration(B, P, 8, rng).ok;
        block_val += check_block_valuation(B, P, random_block_vector(B, rng)).ok;
    }
    return {{"prime", p}, {"samples", samples}, {"basis_valuations_ok", basis}, {"block_filtration_ok", filtration}, {"block_valuation_ok", block_val},
            {"ok", basis == samples && filtration == samples && block_val == samples}};
}

int cmd_lattice(const Globals& g, const std::string& input, long p, int samples) {
    Rng rng(g.seed);
    json out = input.empty() ? lattice_random(p, samples, rng) : lattice_report(read_input(input), rng);
    if (table(g)) {
        for (const auto& [k, v] : out.items()) std::cout << std::left << std::setw(12) << k << value_text(v) << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return out["ok"].get<bool>() ? kOk : kInvariant;
}

int cmd_selfcheck(const Globals& g, bool quick) {
    SuiteOptions opt;
    opt.seed = g.seed;
    if (quick) {
        opt.corpus_per_case = 8;
        opt.uder_samples = 50;
        opt.lattice_instances = 100;
        opt.certificate_instances = 4;
        opt.certificate_g_samples = 20;
    }
    std::vector<SuiteResult> results;
    for (const auto* list : {&acceptance_suites(), &extra_suites()})
        for (const Suite& s : *list) results.push_back(run_suite(s, opt));
    bool all = true;
    json out = json::array();
    for (const auto& r : results) {
        bool pass = quick ? r.ok : r.passed();
        all &= pass;
        if (table(g)) {
            std::cout << (pass ? "PASS " : "FAIL ") << std::left << std::setw(36) << r.name << std::right << std::fixed
                      << std::setprecision(2) << std::setw(8) << r.seconds << "s";
            if (!r.detail.empty()) std::cout << "  " << r.detail;
            std::cout << "\n";
        } else {
            out.push_back({{"suite", r.name}, {"pass", pass}, {"stats", r.stats}, {"detail", r.detail}});
        }
    }
    if (!table(g)) std::cout << out.dump(2) << "\n";
    return all ? kOk : kInvariant;
}

std::string dump_invariant(const std::string& what) {
    auto path = std::filesystem::temp_directory_path() / ("sp4gen-invariant-" + std::to_string(getpid()) + ".txt");
    std::ofstream(path) << what << "\n";
    return path.string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genericity of Sp4 supercuspidal strata and the cuspidal census of Sp4(F_q)"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", g.seed, "Seed for every randomized step");

    std::string input;
    bool cross = false;
    int uder = 1000;
    auto* decide_cmd = app.add_subcommand("decide", "Genericity verdict for a stratum or level-zero datum");
    decide_cmd->add_option("input", input, "JSON file or inline JSON (object or array)")->required();
    decide_cmd->add_flag("--cross-check", cross, "Also run the matrix path on the input's \"beta\"");
    decide_cmd->add_option("--uder", uder, "Sampled derived-group elements in the cross-check");

    long prime = 3, depth = 6;
    std::string diag;
    auto* qform_cmd = app.add_subcommand("qform", "Invariants and isotropy of a diagonal form over Q_p");
    qform_cmd->add_option("--prime", prime, "Odd prime p")->required();
    qform_cmd->add_option("--diag", diag, "Comma-separated diagonal entries")->required();
    qform_cmd->add_option("--depth", depth, "Hensel search depth");

    long q = 3;
    bool oracle = false, csv = false;
    auto* finite_cmd = app.add_subcommand("finite", "Cuspidal census of Sp4(F_q)");
    finite_cmd->add_option("--q", q, "Odd prime power q")->required();
    finite_cmd->add_flag("--oracle", oracle, "Compare every family count with the orbit enumeration");
    finite_cmd->add_flag("--csv", csv, "Dump the family table as CSV");

    std::string lattice_input;
    long lattice_prime = 3;
    int lattice_samples = 100;
    auto* lattice_cmd = app.add_subcommand("lattice", "Lattice-sequence identities");
    lattice_cmd->add_option("input", lattice_input, "Lattice sequence or skew block JSON; random run if omitted");
    lattice_cmd->add_option("--prime", lattice_prime, "Prime for the random run");
    lattice_cmd->add_option("--samples", lattice_samples, "Instances in the random run");

    bool quick = false;
    auto* self_cmd = app.add_subcommand("selfcheck", "Run every invariant suite");
    self_cmd->add_flag("--quick", quick, "Smaller corpora, no runtime budgets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kSchema;
    }
    try {
        if (*decide_cmd) return cmd_decide(g, input, cross, uder);
        if (*qform_cmd) return cmd_qform(g, prime, diag, depth);
        if (*finite_cmd) return cmd_finite(g, q, oracle, csv);
        if (*lattice_cmd) return cmd_lattice(g, lattice_input, lattice_prime, lattice_samples);
        if (*self_cmd) return cmd_selfcheck(g, quick);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kSchema;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        std::cerr << "dump: " << dump_invariant(e.what()) << "\n";
        return kInvariant;
    } catch (const json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kSchema;
    }
    return kOk;
}
