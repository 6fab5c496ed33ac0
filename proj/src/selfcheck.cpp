#include "sp4gen/selfcheck.hpp"

#include "sp4gen/certificates.hpp"
#include "sp4gen/errors.hpp"
#include "sp4gen/finite_reductive.hpp"
#include "sp4gen/genericity.hpp"
#include "sp4gen/hensel.hpp"

#include <chrono>
#include <set>
#include <sstream>

namespace sp4gen {

namespace {

constexpr long kCensusQ[] = {3, 5, 7, 9, 11, 13};
constexpr long kCorpusPrimes[] = {3, 5, 7};
constexpr StratumCase kCases[] = {StratumCase::I, StratumCase::II, StratumCase::III, StratumCase::IV};

// Frozen census values: {q, regular, total}.
constexpr long kCensus[][3] = {{3, 4, 5}, {5, 11, 12}, {7, 21, 22}};

// Records the first failure message; later ones only bump the count.
struct Failures {
    long count = 0;
    std::string first;
    void add(const std::string& msg) {
        if (count++ == 0) first = msg;
    }
    bool none() const { return count == 0; }
    std::string summary() const { return none() ? "" : std::to_string(count) + " failure(s); first: " + first; }
};

SuiteResult finish(SuiteResult r, const Failures& f) {
    r.ok = f.none();
    if (!f.none()) r.detail = f.summary();
    r.stats["failures"] = f.count;
    return r;
}

SuiteResult finite_census(const SuiteOptions&) {
    SuiteResult r;
    Failures f;
    json per_q = json::object();
    for (long q : kCensusQ) {
        FamilyOracle o = family_orbit_oracle(q);
        long total = 0;
        for (int id = 1; id <= 14; ++id) {
            long formula = family_count(id, q), oracle = o.counts.at(id);
            total += oracle;
            if (formula != oracle)
                f.add("q=" + std::to_string(q) + " family " + std::to_string(id) + ": formula " +
                      std::to_string(formula) + ", oracle " + std::to_string(oracle));
        }
        if (total != q * q) f.add("q=" + std::to_string(q) + ": classes do not total q^2");
        per_q[std::to_string(q)] = {{"classes", total}};
    }
    for (const auto& row : kCensus) {
        CuspidalCensus c = cuspidal_census(row[0]);
        per_q[std::to_string(row[0])]["regular"] = c.regular;
        per_q[std::to_string(row[0])]["total"] = c.total;
        if (c.regular != row[1] || c.total != row[2])
            f.add("q=" + std::to_string(row[0]) + ": census regular " + std::to_string(c.regular) + " total " +
                  std::to_string(c.total));
    }
    r.stats["q"] = per_q;
    return finish(r, f);
}

SuiteResult anisotropic_quaternary(const SuiteOptions&) {
    SuiteResult r;
    Failures f;
    for (long p : {3L, 5L}) {
        LocalField F = LocalField::concrete(p);
        int m11 = hilbert_symbol(minus_one_class(F), minus_one_class(F), F);
        std::set<std::pair<int, int>> aniso_invariants;
        long aniso = 0, exact = 0, hensel = 0;
        for (int code = 0; code < 256; ++code) {
            Vec d(4);
            for (int i = 0; i < 4; ++i) d[i] = representative(SquareClass::from_index((code >> (2 * i)) & 3), F);
            Mat G(4, 4);
            for (int i = 0; i < 4; ++i) G(i, i) = d[i];
            QuadraticForm form{G, p};
            bool iso = is_isotropic(form);
            IsotropicCertificate cert = find_isotropic_vector(form, 6);
            std::string tag = "p=" + std::to_string(p) + " code " + std::to_string(code);
            if (cert.found != iso) {
                f.add(tag + ": closed form and search disagree");
                continue;
            }
            if (!iso) {
                ++aniso;
                if (cert.search.status != HenselResult::Status::exhausted) f.add(tag + ": no exhaustion proof");
                FormInvariants inv = invariants(form);
                aniso_invariants.insert({inv.det_class.index(), inv.hasse});
                continue;
            }
            if (cert.exact) {
                ++exact;
                if (form.value(cert.vector) != 0) f.add(tag + ": exact witness is not isotropic");
                continue;
            }
            // Hensel certificate on the integral diagonal form: v(Q(x)) > 2 min v(grad Q(x)).
            ++hensel;
            const auto& x = cert.search.vector;
            Z qx = 0;
            long grad = kInfVal;
            for (int i = 0; i < 4; ++i) {
                Z di = d[i].get_num();
                qx += di * x[i] * x[i];
                Z g = 2 * di * x[i];
                if (g != 0) grad = std::min(grad, valuation(g, p));
            }
            long vq = qx == 0 ? kInfVal : valuation(qx, p);
            if (!(vq > 2 * grad)) f.add(tag + ": Hensel condition fails");
        }
        if (aniso_invariants.size() != 1 || *aniso_invariants.begin() != std::make_pair(0, -m11))
            f.add("p=" + std::to_string(p) + ": anisotropic forms do not form the single class (1, -(-1,-1))");
        r.stats[std::to_string(p)] = {{"anisotropic", aniso}, {"exact_witness", exact}, {"hensel_witness", hensel}};
    }
    return finish(r, f);
}

SuiteResult hilbert_soundness(const SuiteOptions&) {
    SuiteResult r;
    Failures f;
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        LocalField F = LocalField::concrete(p);
        std::string tp = "p=" + std::to_string(p);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                SquareClass A = SquareClass::from_index(a), B = SquareClass::from_index(b);
                int closed = hilbert_symbol(A, B, F);
                int oracle = hilbert_solubility_oracle(representative(A, F), representative(B, F), p);
                if (closed != oracle) f.add(tp + " (" + A.str() + "," + B.str() + "): closed form vs oracle");
                if (closed != hilbert_symbol(B, A, F)) f.add(tp + ": not symmetric");
                for (int c = 0; c < 4; ++c) {
                    SquareClass C = SquareClass::from_index(c);
                    if (hilbert_symbol(A * B, C, F) != hilbert_symbol(A, C, F) * hilbert_symbol(B, C, F))
                        f.add(tp + ": not bimultiplicative");
                }
            }
        for (int a = 0; a < 4; ++a) {
            Q x = representative(SquareClass::from_index(a), F);
            if (hilbert_symbol(x, -x, F) != 1) f.add(tp + ": (a, -a) != 1");
        }
    }
    return finish(r, f);
}

SuiteResult path_agreement(const SuiteOptions& opt) {
    SuiteResult r;
    Failures f;
    Rng rng(opt.seed);
    for (long p : kCorpusPrimes) {
        json per_case = json::object();
        for (StratumCase c : kCases) {
            long generic = 0, non_generic = 0, flags = 0;
            for (const MatrixStratum& ms : build_corpus(p, c, opt.corpus_per_case, rng)) {
                try {
                    GenericityVerdict v = decide_with_cross_check(ms, opt.uder_samples, rng);
                    (v.generic ? generic : non_generic)++;
                    if (v.witness.contains("flag")) ++flags;
                    if (c == StratumCase::IV && v.generic) f.add("case IV instance reported generic");
                } catch (const InvariantViolation& e) {
                    f.add(e.what());
                }
            }
            if (c != StratumCase::IV && (generic == 0 || non_generic == 0))
                f.add("p=" + std::to_string(p) + " case " + to_string(c) + ": corpus lacks one verdict");
            per_case[to_string(c)] = {{"generic", generic}, {"non_generic", non_generic}, {"flag_witnesses", flags}};
        }
        r.stats[std::to_string(p)] = per_case;
    }
    r.stats["uder_samples"] = opt.uder_samples;
    return finish(r, f);
}

SuiteResult lattice_identities(const SuiteOptions& opt) {
    SuiteResult r;
    Failures f;
    Rng rng(opt.seed + 1);
    for (int i = 0; i < opt.lattice_instances; ++i) {
        int dim = uniform_int(0, 1, rng) ? 4 : 2;
        int e = std::vector<int>{1, 2, 4}[uniform_int(0, 2, rng)];
        long d = uniform_int(-2, 2, rng);
        BasisValuationReport basis = check_basis_valuations(random_selfdual(dim, e, d, rng));
        if (!basis.ok) f.add("basis valuations: " + basis.detail);
    }
    long filtration_checks = 0, block_val_checks = 0;
    for (int i = 0; i < opt.lattice_instances; ++i) {
        long p = kCorpusPrimes[i % 3];
        SkewBlock B = random_skew_block(p, rng);
        NormalizedProfile P = normalize_period4(B.chain, B.type);
        BlockFiltrationReport filtration = check_block_filtration(B, P, 8, rng);
        ++filtration_checks;
        if (!filtration.ok)
            f.add("block filtration (" + to_string(B.type) + "): beta valuation " + std::to_string(filtration.beta_val) + " expected " +
                  std::to_string(filtration.beta_val_expected) + (filtration.image_ok ? "" : ", image residues off"));
        BlockValuationReport block_val = check_block_valuation(B, P, random_block_vector(B, rng));
        ++block_val_checks;
        if (!block_val.ok) f.add("block valuation: " + std::to_string(block_val.lhs) + " != " + std::to_string(block_val.rhs));
    }
    r.stats = {{"basis_valuations", opt.lattice_instances}, {"block_filtration", filtration_checks}, {"block_valuation", block_val_checks}};
    return finish(r, f);
}

SuiteResult valuation_certificates(const SuiteOptions& opt) {
    SuiteResult r;
    Failures f;
    Rng rng(opt.seed + 2);
    long p63 = 0, p64 = 0, thresholds = 0;
    long margin63 = kInfVal, margin63_shifted = kInfVal, margin64 = kInfVal;
    for (long p : kCorpusPrimes) {
        std::string tp = "p=" + std::to_string(p);
        for (int i = 0; i < opt.certificate_instances; ++i) {
            SimplePieceReport c = simple_piece_certificate(realize_case_I_monomial(p, rng), opt.certificate_g_samples, rng);
            ++p63;
            margin63 = std::min(margin63, c.min_margin);
            margin63_shifted = std::min(margin63_shifted, c.min_margin_shifted);
            if (!c.ok()) f.add(tp + " anisotropic case I: " + c.detail);
        }
        for (int i = 0; i < opt.certificate_instances; ++i) {
            MatrixStratum ms = i % 2 ? realize_case_III(p, true, false, rng) : realize_case_II(p, false, rng);
            TwoPieceReport c = two_piece_certificate(ms, opt.certificate_g_samples, rng);
            ++p64;
            margin64 = std::min(margin64, c.min_margin);
            if (!c.ok()) f.add(tp + " anisotropic case " + to_string(ms.stratum.kind) + ": " + c.detail);
        }
        for (StratumCase c : kCases)
            for (const MatrixStratum& ms : build_corpus(p, c, opt.corpus_per_case, rng)) {
                Mat g = random_integral_symplectic(3, rng);
                for (const Mat& h : {Mat::identity(4), g})
                    for (int k : {1, 2}) {
                        ++thresholds;
                        ThresholdCheck t = check_root_threshold(ms.beta, h, k, p, 4, rng);
                        if (!t.ok()) f.add(tp + " case " + to_string(c) + ": root threshold mismatch");
                    }
            }
    }
    r.stats = {{"simple_piece_instances", p63},
               {"two_piece_instances", p64},
               {"g_samples", opt.certificate_g_samples},
               {"threshold_checks", thresholds},
               {"simple_piece_min_margin", margin63},
               {"simple_piece_min_margin_at_n_plus_2", margin63_shifted},
               {"two_piece_min_margin", margin64}};
    return finish(r, f);
}

SuiteResult level_zero_table(const SuiteOptions&) {
    SuiteResult r;
    Failures f;
    struct Row {
        const char* input;
        bool generic;
    };
    const Row rows[] = {
        {R"({"case":"level0","kind":"special_Sp4","sigma_regular":true})", true},
        {R"({"case":"level0","kind":"product_Sp2xSp2","sigma_regular":true})", false},
        {R"({"case":"level0","kind":"special_Sp4","sigma_is_theta10":true})", false},
    };
    for (const Row& row : rows) {
        GenericityVerdict v = decide(input_from_json(json::parse(row.input)));
        if (v.generic != row.generic) f.add(std::string("row ") + row.input + " gave " + v.to_json()["verdict"].dump());
    }
    try {
        input_from_json(json::parse(R"({"case":"level0","kind":"special_Sp4","sigma_regular":true,"sigma_is_theta10":true})"));
        f.add("regular theta10 accepted");
    } catch (const SchemaError&) {
    }
    r.stats["rows"] = 3;
    return finish(r, f);
}

SuiteResult bruhat_cover(const SuiteOptions&) {
    SuiteResult r;
    Failures f;
    BruhatReport b = bruhat_decomposition_check(3, 0, 0);
    if (b.checked != 51840) f.add("enumerated " + std::to_string(b.checked) + " elements, expected 51840");
    if (!b.ok()) f.add(std::to_string(b.failures) + " elements did not factor");
    // |B w U| = |B| q^l(w), |B| = (q-1)^2 q^4, and W has 1, 2, 2, 2, 1 elements of length 0..4.
    const long mult[5] = {1, 2, 2, 2, 1};
    long cell = 4 * 81;
    for (int l = 0; l < 5; ++l, cell *= 3) {
        long got = b.cell_sizes.count(l) ? b.cell_sizes.at(l) : 0;
        if (got != mult[l] * cell) f.add("length " + std::to_string(l) + " cells hold " + std::to_string(got));
    }
    json cells = json::object();
    for (const auto& [l, n] : b.cell_sizes) cells[std::to_string(l)] = n;
    r.stats = {{"elements", b.checked}, {"cells_by_length", cells}};
    return finish(r, f);
}

SuiteResult null_threshold(const SuiteOptions& opt) {
    SuiteResult r;
    Failures f;
    Rng rng(opt.seed + 3);
    long checks = 0, agree = 0, nontrivial = 0, off_min = kInfVal, off_max = -kInfVal;
    for (long p : kCorpusPrimes)
        for (int i = 0; i < opt.certificate_instances; ++i) {
            NullThresholdReport c = check_null_threshold(realize_case_IV(p, rng), 20, rng);
            checks += c.checks;
            agree += c.agreements;
            nontrivial += c.nontrivial;
            if (c.relation_checks) {
                off_min = std::min(off_min, c.offset_min);
                off_max = std::max(off_max, c.offset_max);
            }
            if (!c.ok()) f.add("p=" + std::to_string(p) + ": " + c.detail);
        }
    r.stats = {{"checks", checks},
               {"agreements", agree},
               {"nontrivial", nontrivial},
               {"y_r_offset_min", off_min},
               {"y_r_offset_max", off_max}};
    return finish(r, f);
}

SuiteResult finite_structure(const SuiteOptions& opt) {
    SuiteResult r;
    Failures f;
    RootDatumC2 R = root_datum_C2();
    if (R.weyl.size() != 8) f.add("|W| != 8");
    if (R.long_roots.size() != 4) f.add("long roots != 4");
    // Root vectors: weight chi_i - chi_j with chi = (e1, e2, -e2, -e1); long iff on the anti-diagonal.
    const int chi[4][2] = {{1, 0}, {0, 1}, {0, -1}, {-1, 0}};
    for (const Mat& X : root_vectors())
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (X(i, j) != 0) {
                    std::array<int, 2> w{chi[i][0] - chi[j][0], chi[i][1] - chi[j][1]};
                    if (is_long(w) != (i + j == 3)) f.add("long root off the anti-diagonal");
                }
    WeylElement sa = reflection(R.alpha), sb = reflection(R.beta_long);
    WeylElement h1 = sa * sb, h2 = sb * sa;
    bool conj = false;
    for (const auto& x : R.weyl)
        if (x * h1 == h2 * x) conj = true;
    if (!conj) f.add("Coxeter elements not conjugate");
    int longest = 0, mini = 0;
    for (const auto& w : R.weyl) {
        if (weyl_length(R, w) == 4) ++longest;
        if (is_minisotropic(w)) {
            ++mini;
            if (!(w == h1 || w == h2 || weyl_length(R, w) == 4)) f.add("minisotropic element outside {h, h', w0}");
        }
    }
    if (longest != 1 || mini != 3) f.add("expected one longest element and three minisotropic types");
    for (long q : {3L, 5L, 7L})
        if (finite_character_orbit_count(q) != 2) f.add("F_q character orbits != 2 for q=" + std::to_string(q));
    // Torus types against the family cuspidality rules.
    for (long q : {3L, 5L, 7L})
        for (const OracleClass& c : family_orbit_oracle(q).classes) {
            TorusPattern t = torus_pattern(c, q);
            CuspidalOutcome o = family(c.family).outcome;
            bool ok = true;
            if (o == CuspidalOutcome::all_regular) ok = t.has_minisotropic && !t.has_other;
            else if (o == CuspidalOutcome::none && c.family >= 4 && c.family <= 9) ok = !t.has_minisotropic;
            else ok = t.has_minisotropic && t.has_other;
            if (!ok) f.add("q=" + std::to_string(q) + " family " + std::to_string(c.family) + ": torus types");
        }
    // p-adic characters: orbit = class of b, stable under the torus action (a, b) -> (a t1/t2, b t2^2).
    Rng rng(opt.seed + 4);
    for (long p : kCorpusPrimes) {
        LocalField F = LocalField::concrete(p);
        std::set<int> orbits;
        for (int i = 0; i < 200; ++i) {
            Q a = random_rational(p, -2, 2, rng), b = random_rational(p, -2, 2, rng);
            Q t1 = random_rational(p, -2, 2, rng), t2 = random_rational(p, -2, 2, rng);
            CharacterOrbit x = character_orbit_classify(a, b, F);
            CharacterOrbit y = character_orbit_classify(a * t1 / t2, b * t2 * t2, F);
            if (!x.nondegenerate || x.orbit != y.orbit) f.add("p-adic character orbit not torus-stable");
            orbits.insert(x.orbit);
        }
        if (orbits.size() != 4) f.add("expected 4 p-adic orbits for p=" + std::to_string(p));
        if (character_orbit_classify(0, 1, F).nondegenerate) f.add("(0, 1) classified nondegenerate");
    }
    return finish(r, f);
}

SuiteResult genericity_invariants(const SuiteOptions& opt) {
    SuiteResult r;
    Failures f;
    Rng rng(opt.seed + 5);
    for (long p : kCorpusPrimes)
        for (StratumCase c : kCases)
            for (const MatrixStratum& ms : build_corpus(p, c, 10, rng)) {
                GenericityInput in;
                in.data = ms.stratum;
                std::string once = decide(in).to_json().dump(), twice = decide(in).to_json().dump();
                if (once != twice) f.add("decide is not deterministic");
                // beta -> c^2 beta: same class data, same matrix verdict.
                Q s = random_rational(p, -2, 2, rng);
                MatrixStratum scaled = ms;
                scaled.beta = s * s * ms.beta;
                GenericityVerdict a = decide_with_cross_check(ms, 20, rng);
                GenericityVerdict b = decide_with_cross_check(scaled, 20, rng);
                if (a.generic != b.generic) f.add("verdict changed under square scaling");
            }
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        LocalField F = LocalField::concrete(p);
        for (int d = 1; d < 4; ++d) {
            QuadExt E0(F, SquareClass::from_index(d));
            if (trace_kernel_coset(E0) != trace_kernel_sampling_oracle(E0, 64, rng))
                f.add("trace kernel coset disagrees with sampling for p=" + std::to_string(p));
        }
    }
    return finish(r, f);
}

}  // namespace

const std::vector<Suite>& acceptance_suites() {
    static const std::vector<Suite> suites = {
        {1, "finite census reproduction", 5, finite_census},
        {2, "unique anisotropic quaternary form", 60, anisotropic_quaternary},
        {3, "Hilbert symbol soundness", 10, hilbert_soundness},
        {4, "verdict path agreement", 300, path_agreement},
        {5, "lattice identities", 30, lattice_identities},
        {6, "valuation certificates", 120, valuation_certificates},
        {7, "level-zero truth table", 0, level_zero_table},
        {8, "finite Bruhat cover", 120, bruhat_cover},
    };
    return suites;
}

const std::vector<Suite>& extra_suites() {
    static const std::vector<Suite> suites = {
        {0, "case IV threshold criterion", 0, null_threshold},
        {0, "finite root data and orbits", 0, finite_structure},
        {0, "verdict invariants", 0, genericity_invariants},
    };
    return suites;
}

SuiteResult run_suite(const Suite& s, const SuiteOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
        r = s.run(opt);
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.id = s.id;
    r.name = s.name;
    r.budget_seconds = s.budget_seconds;
    return r;
}

}  // namespace sp4gen
