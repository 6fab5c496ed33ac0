#include "sp4gen/finite_reductive.hpp"

#include "sp4gen/errors.hpp"
#include "sp4gen/strata.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace sp4gen {

// ---- C2 root datum ----

std::array<int, 2> WeylElement::apply(const std::array<int, 2>& x) const {
    return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
    WeylElement r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    return r;
}

bool is_long(const std::array<int, 2>& r) { return r[0] * r[0] + r[1] * r[1] == 4; }

WeylElement reflection(const std::array<int, 2>& r) {
    // s_r(x) = x - 2 (x.r)/(r.r) r
    int rr = r[0] * r[0] + r[1] * r[1];
    WeylElement w;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) w.m[i][j] = (i == j ? 1 : 0) - 2 * r[i] * r[j] / rr;
    return w;
}

RootDatumC2 root_datum_C2() {
    RootDatumC2 R;
    R.roots = {{1, -1}, {1, 1}, {2, 0}, {0, 2}, {-1, 1}, {-1, -1}, {-2, 0}, {0, -2}};
    for (const auto& r : R.roots)
        if (is_long(r)) R.long_roots.push_back(r);
    // Closure of the simple reflections.
    std::set<WeylElement> seen;
    std::deque<WeylElement> todo;
    WeylElement one;
    one.m = {{{1, 0}, {0, 1}}};
    todo.push_back(one);
    seen.insert(one);
    const WeylElement gens[2] = {reflection(R.alpha), reflection(R.beta_long)};
    while (!todo.empty()) {
        WeylElement w = todo.front();
        todo.pop_front();
        for (const auto& s : gens) {
            WeylElement x = w * s;
            if (seen.insert(x).second) todo.push_back(x);
        }
    }
    R.weyl.assign(seen.begin(), seen.end());
    return R;
}

namespace {

bool is_positive_root(const std::array<int, 2>& r) {
    // Positive system spanned by alpha = e1 - e2 and beta' = 2 e2.
    return r[0] > 0 || (r[0] == 0 && r[1] > 0);
}

}  // namespace

int weyl_length(const RootDatumC2& R, const WeylElement& w) {
    int n = 0;
    for (const auto& r : R.roots)
        if (is_positive_root(r) && !is_positive_root(w.apply(r))) ++n;
    return n;
}

bool is_minisotropic(const WeylElement& w) {
    // det(w - 1) != 0
    int a = w.m[0][0] - 1, b = w.m[0][1], c = w.m[1][0], d = w.m[1][1] - 1;
    return a * d - b * c != 0;
}

// ---- Characters ----

CharacterOrbit character_orbit_classify(const Q& a, const Q& b, const LocalField& F) {
    CharacterOrbit c;
    c.nondegenerate = a != 0 && b != 0;
    if (c.nondegenerate) c.orbit = square_class(b, F).index();
    return c;
}

namespace {

using ModMat = std::array<long, 16>;

long md(long x, long q) { return ((x % q) + q) % q; }

ModMat mm_mul(const ModMat& x, const ModMat& y, long q) {
    ModMat r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            long xik = x[4 * i + k];
            if (!xik) continue;
            for (int j = 0; j < 4; ++j) r[4 * i + j] += xik * y[4 * k + j];
        }
    for (auto& v : r) v = md(v, q);
    return r;
}

ModMat mm_identity() {
    ModMat r{};
    for (int i = 0; i < 4; ++i) r[5 * i] = 1;
    return r;
}

ModMat mm_from(const Mat& m, long q) {
    ModMat r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[4 * i + j] = residue_mod_p(m(i, j), q);
    return r;
}

long inv_mod(long x, long q) {
    long r = 1, e = q - 2, b = md(x, q);
    while (e) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return r;
}

// -J g^T J over F_q.
ModMat mm_sp_inverse(const ModMat& g, long q) {
    ModMat r{};
    // (J g^T J)_{ij} = J_{i,3-i} g_{3-j,3-i} J_{3-j,j}; J_{i,3-i} = +1 for i < 2, -1 otherwise.
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long si = i < 2 ? 1 : -1, sj = (3 - j) < 2 ? 1 : -1;
            r[4 * i + j] = md(-si * sj * g[4 * (3 - j) + (3 - i)], q);
        }
    return r;
}

void require_prime(long q) {
    if (!is_prime(q) || q == 2) throw PreconditionError("explicit F_q arithmetic needs an odd prime q");
}

}  // namespace

int finite_character_orbit_count(long q) {
    require_prime(q);
    auto conj_coeff = [&](long t1, long t2, int which) {
        // Entry read off t^-1 X t for X the simple root element.
        ModMat t{}, ti{};
        long d[4] = {t1, t2, inv_mod(t2, q), inv_mod(t1, q)};
        for (int i = 0; i < 4; ++i) {
            t[5 * i] = d[i];
            ti[5 * i] = inv_mod(d[i], q);
        }
        Mat X = root_vectors()[which == 0 ? 0 : 1];
        ModMat x = mm_from(X, q);
        for (int i = 0; i < 4; ++i) x[5 * i] = md(x[5 * i] + 1, q);
        ModMat c = mm_mul(mm_mul(ti, x, q), t, q);
        return which == 0 ? c[1] : c[4 + 2];
    };
    // Union-find over (a, b) in F_q^2.
    std::vector<long> parent(q * q);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<long> stab(q * q, 0);
    for (long t1 = 1; t1 < q; ++t1)
        for (long t2 = 1; t2 < q; ++t2) {
            long ca = conj_coeff(t1, t2, 0), cb = conj_coeff(t1, t2, 1);
            for (long a = 0; a < q; ++a)
                for (long b = 0; b < q; ++b) {
                    long a2 = a * ca % q, b2 = b * cb % q;
                    if (a2 == a && b2 == b) ++stab[a * q + b];
                    parent[find(a * q + b)] = find(a2 * q + b2);
                }
        }
    std::set<long> orbits;
    for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b) {
            bool nondeg = a != 0 && b != 0;
            // Stabilizer equal to the centre {+-1}; over F_3 every t2 squares to 1, so the
            // torus cannot separate b = 0 and the comparison starts at q = 5.
            if (q > 3 && nondeg != (stab[a * q + b] == 2))
                throw InvariantViolation("stabilizer rule disagrees with a, b nonzero");
            if (nondeg) orbits.insert(find(a * q + b));
        }
    return static_cast<int>(orbits.size());
}

// ---- Families ----

std::string to_string(CuspidalOutcome c) {
    switch (c) {
        case CuspidalOutcome::none:
            return "none";
        case CuspidalOutcome::all_regular:
            return "all-regular";
        case CuspidalOutcome::two_regular_per_class:
            return "two-regular-per-class";
        default:
            return "unipotent-theta10-only";
    }
}

const std::vector<ClassFamily>& family_table() {
    using O = CuspidalOutcome;
    static const std::vector<ClassFamily> table = {
        {1, "t*(1,1)", "", "1", "W", 1, O::unipotent_theta10},
        {2, "t*(-1,-1)", "", "1", "<s_a', s_a'+2b'>", 2, O::none},
        {3, "t*(-1,1)", "", "1", "<s_b'>", 2, O::none},
        {4, "t*(z^i,1)", "z^i != +-1", "(q-3)/2", "<s_b'>", 1, O::none},
        {5, "t*(z^i,-1)", "z^i != +-1", "(q-3)/2", "1", 2, O::none},
        {6, "t*(z^i,z^i)", "z^i != +-1", "(q-3)/2", "<s_a'>", 1, O::none},
        {7, "t*(z^i,z^j)", "z^i, z^j != +-1, z^i != z^(+-j)", "(q-3)(q-5)/8", "1", 1, O::none},
        {8, "t*(z2^i,z2^(qi))", "z2^i not in K_2^1, not in F_q^x", "(q-1)^2/4", "1", 1, O::none},
        {9, "t*(z^i,z21^j)", "z^i != +-1, z21^j != +-1", "(q-1)(q-3)/4", "1", 1, O::none},
        {10, "t*(1,z21^i)", "z21^i != +-1", "(q-1)/2", "<s_a'+b'>", 1, O::none},
        {11, "t*(-1,z21^i)", "z21^i != +-1", "(q-1)/2", "1", 2, O::two_regular_per_class},
        {12, "t*(z21^i,z21^-i)", "z21^i != +-1", "(q-1)/2", "<s_a'+2b'>", 1, O::none},
        {13, "t*(z21^i,z21^j)", "z21^i, z21^j != +-1, z21^i != z21^(+-j)", "(q-1)(q-3)/8", "1", 1,
         O::all_regular},
        {14, "t*(z42^(qi),z42^i)", "z42^i != +-1", "(q^2-1)/4", "1", 1, O::all_regular},
    };
    return table;
}

const ClassFamily& family(int id) {
    if (id < 1 || id > 14) throw PreconditionError("family id must be in 1..14");
    return family_table()[id - 1];
}

namespace {

void require_odd_q(long q) {
    if (q < 3 || q % 2 == 0) throw PreconditionError("q must be an odd prime power >= 3");
    long p = 2;
    while (q % p) ++p;
    long r = q;
    while (r % p == 0) r /= p;
    if (r != 1) throw PreconditionError("q must be a prime power");
}

}  // namespace

long family_count(int id, long q) {
    family(id);
    require_odd_q(q);
    switch (id) {
        case 1:
        case 2:
        case 3:
            return 1;
        case 4:
        case 5:
        case 6:
            return (q - 3) / 2;
        case 7:
            return (q - 3) * (q - 5) / 8;
        case 8:
            return (q - 1) * (q - 1) / 4;
        case 9:
            return (q - 1) * (q - 3) / 4;
        case 10:
        case 11:
        case 12:
            return (q - 1) / 2;
        case 13:
            return (q - 1) * (q - 3) / 8;
        default:
            return (q * q - 1) / 4;
    }
}

namespace {

enum class Single { one, minus_one, split, nonsplit };  // 1, -1, F_q^x \ +-1, K_2^1 \ +-1

struct SingleOrbit {
    long rep;
    Single type;
};

int pair_family(const SingleOrbit& x, const SingleOrbit& y) {
    auto key = [](Single s) { return static_cast<int>(s); };
    Single s = x.type, t = y.type;
    if (key(s) > key(t)) std::swap(s, t);
    bool same = x.rep == y.rep;
    using S = Single;
    if (s == S::one && t == S::one) return 1;
    if (s == S::minus_one && t == S::minus_one) return 2;
    if (s == S::one && t == S::minus_one) return 3;
    if (s == S::one && t == S::split) return 4;
    if (s == S::minus_one && t == S::split) return 5;
    if (s == S::split && t == S::split) return same ? 6 : 7;
    if (s == S::split && t == S::nonsplit) return 9;
    if (s == S::one && t == S::nonsplit) return 10;
    if (s == S::minus_one && t == S::nonsplit) return 11;
    return same ? 12 : 13;
}

}  // namespace

FamilyOracle family_orbit_oracle(long q) {
    require_odd_q(q);
    const long N = q * q * q * q - 1;
    auto in_mu = [&](long a, long m) { return a % (N / m) == 0; };
    std::vector<char> seen(N, 0);
    std::vector<SingleOrbit> singles;
    FamilyOracle out;
    out.q = q;
    for (int id = 1; id <= 14; ++id) out.counts[id] = 0;
    for (long a = 0; a < N; ++a) {
        if (seen[a]) continue;
        std::vector<long> orbit;
        std::deque<long> todo{a};
        seen[a] = 1;
        while (!todo.empty()) {
            long x = todo.front();
            todo.pop_front();
            orbit.push_back(x);
            for (long y : {(N - x) % N, static_cast<long>((static_cast<__int128>(x) * q) % N)})
                if (!seen[y]) {
                    seen[y] = 1;
                    todo.push_back(y);
                }
        }
        if (orbit.size() > 4) continue;
        long rep = *std::min_element(orbit.begin(), orbit.end());
        if (orbit.size() <= 2) {
            Single t;
            if (rep == 0) t = Single::one;
            else if (rep == N / 2) t = Single::minus_one;
            else if (in_mu(rep, q - 1)) t = Single::split;
            else if (in_mu(rep, q + 1)) t = Single::nonsplit;
            else throw InvariantViolation("Frobenius-stable eigenvalue pair outside F_q^x and K_2^1");
            singles.push_back({rep, t});
            continue;
        }
        // One orbit of two eigenvalue pairs {lambda, lambda^q}.
        int id;
        if (in_mu(rep, q * q - 1)) id = 8;
        else if (in_mu(rep, q * q + 1)) id = 14;
        else throw InvariantViolation("four-element Frobenius orbit outside F_{q^2}^x and K_4^2");
        long qrep = static_cast<long>((static_cast<__int128>(rep) * q) % N);
        out.classes.push_back({id, rep, qrep});
        ++out.counts[id];
    }
    for (size_t i = 0; i < singles.size(); ++i)
        for (size_t j = i; j < singles.size(); ++j) {
            int id = pair_family(singles[i], singles[j]);
            out.classes.push_back({id, singles[i].rep, singles[j].rep});
            ++out.counts[id];
        }
    return out;
}

long family_orbit_oracle(int id, long q) {
    family(id);
    return family_orbit_oracle(q).counts.at(id);
}

std::vector<WeylElement> torus_types(const OracleClass& c, long q) {
    const long N = q * q * q * q - 1;
    RootDatumC2 R = root_datum_C2();
    auto act = [&](const WeylElement& w, long a, long b) {
        long x = md(w.m[0][0] * a + w.m[0][1] * b, N);
        long y = md(w.m[1][0] * a + w.m[1][1] * b, N);
        return std::array<long, 2>{x, y};
    };
    auto frob = [&](const std::array<long, 2>& s) {
        return std::array<long, 2>{static_cast<long>((static_cast<__int128>(s[0]) * q) % N),
                                   static_cast<long>((static_cast<__int128>(s[1]) * q) % N)};
    };
    std::vector<WeylElement> types;
    for (const auto& w : R.weyl) {
        bool found = false;
        for (const auto& x : R.weyl) {
            auto s = act(x, c.a, c.b);
            auto fs = frob(s);
            if (act(w, fs[0], fs[1]) == s) {
                found = true;
                break;
            }
        }
        if (found) types.push_back(w);
    }
    return types;
}

TorusPattern torus_pattern(const OracleClass& c, long q) {
    TorusPattern t;
    for (const auto& w : torus_types(c, q)) (is_minisotropic(w) ? t.has_minisotropic : t.has_other) = true;
    return t;
}

json CuspidalCensus::to_json() const {
    json fam = json::object();
    for (const auto& [id, n] : class_counts)
        fam["f" + std::to_string(id)] = {{"classes", n}, {"regular_cuspidal", contributions.at(id)}};
    return {{"q", q}, {"families", fam}, {"theta10", theta10}, {"regular", regular}, {"total", total}};
}

CuspidalCensus cuspidal_census(long q) {
    require_odd_q(q);
    CuspidalCensus c;
    c.q = q;
    for (const auto& f : family_table()) {
        long per_class = 0;
        switch (f.outcome) {
            case CuspidalOutcome::all_regular:
                per_class = 1;
                break;
            case CuspidalOutcome::two_regular_per_class:
                per_class = 2;
                break;
            default:
                continue;
        }
        long n = family_count(f.id, q);
        c.class_counts[f.id] = n;
        c.contributions[f.id] = per_class * n;
        c.regular += per_class * n;
    }
    c.total = c.regular + c.theta10;
    if (c.regular != regular_cuspidal_closed_form(q))
        throw InvariantViolation("census regular total disagrees with the closed form");
    return c;
}

long regular_cuspidal_closed_form(long q) { return (q - 1) * (q - 3) / 8 + (q * q - 1) / 4 + (q - 1); }

// ---- Level zero ----

ParahoricType parahoric_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("parahoric type must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (k != "kind" && k != "sigma_regular" && k != "sigma_is_theta10")
            throw SchemaError("unknown key in parahoric type: " + k);
    if (!j.contains("kind") || !j["kind"].is_string()) throw SchemaError("parahoric type needs a string kind");
    ParahoricType pt;
    std::string kind = j["kind"];
    if (kind == "special_Sp4") pt.kind = ParahoricKind::special_Sp4;
    else if (kind == "product_Sp2xSp2") pt.kind = ParahoricKind::product_Sp2xSp2;
    else throw SchemaError("kind must be special_Sp4 or product_Sp2xSp2");
    auto flag = [&](const char* key) {
        if (!j.contains(key)) return false;
        if (!j[key].is_boolean()) throw SchemaError(std::string(key) + " must be a boolean");
        return j[key].get<bool>();
    };
    pt.sigma_regular = flag("sigma_regular");
    pt.sigma_is_theta10 = flag("sigma_is_theta10");
    if (pt.sigma_is_theta10 && pt.sigma_regular) throw SchemaError("theta10 is not regular");
    if (pt.kind == ParahoricKind::product_Sp2xSp2 && pt.sigma_is_theta10)
        throw SchemaError("theta10 lives on the special parahoric");
    return pt;
}

bool level_zero_decide(const ParahoricType& pt) {
    if (pt.sigma_is_theta10 && pt.sigma_regular) throw SchemaError("theta10 is not regular");
    return pt.kind == ParahoricKind::special_Sp4 && pt.sigma_regular;
}

// ---- Bruhat ----

namespace {

struct WeylRep {
    ModMat w;
    ModMat w_inv;
    int length;
    std::array<int, 4> perm;  // column j of w has its nonzero entry in row perm[j]
};

std::vector<WeylRep> weyl_reps(long q) {
    // Generated by the two simple reflections of Sp4 as signed permutation matrices.
    Mat s1(4, 4), s2(4, 4);
    s1(1, 0) = 1;
    s1(0, 1) = 1;
    s1(3, 2) = 1;
    s1(2, 3) = 1;
    s2(0, 0) = 1;
    s2(3, 3) = 1;
    s2(2, 1) = 1;
    s2(1, 2) = -1;
    const Mat J = symplectic_J(4);
    if (!is_symplectic(s1, J) || !is_symplectic(s2, J)) throw InvariantViolation("Weyl generators not symplectic");
    std::vector<Mat> found{Mat::identity(4)};
    std::set<std::array<int, 4>> patterns;
    auto pattern = [](const Mat& m) {
        std::array<int, 4> p{};
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i)
                if (m(i, j) != 0) p[j] = i;
        return p;
    };
    patterns.insert(pattern(found[0]));
    for (size_t k = 0; k < found.size(); ++k)
        for (const Mat* s : {&s1, &s2}) {
            Mat x = found[k] * *s;
            if (patterns.insert(pattern(x)).second) found.push_back(x);
        }
    if (found.size() != 8) throw InvariantViolation("expected 8 Weyl representatives");
    const std::vector<Mat> roots = root_vectors();
    std::vector<Mat> pos(roots.begin(), roots.begin() + 4);
    std::vector<WeylRep> reps;
    for (const Mat& w : found) {
        WeylRep r;
        r.w = mm_from(w, q);
        r.w_inv = mm_from(symplectic_inverse(w), q);
        r.perm = pattern(w);
        r.length = 0;
        // Positive roots made negative by w.
        for (const Mat& X : pos) {
            Mat Y = w * X * symplectic_inverse(w);
            bool upper = true;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < i; ++j)
                    if (Y(i, j) != 0) upper = false;
            if (!upper) ++r.length;
        }
        reps.push_back(r);
    }
    return reps;
}

// Upper unipotent elements of Sp4(F_q), parametrized by the four positive root coordinates.
std::vector<ModMat> upper_unipotents(long q) {
    const std::vector<Mat> roots = root_vectors();
    std::vector<Mat> pos(roots.begin(), roots.begin() + 4);
    std::vector<ModMat> out;
    std::vector<ModMat> root_el[4];
    for (int r = 0; r < 4; ++r)
        for (long x = 0; x < q; ++x) {
            ModMat m = mm_from(Q(x) * pos[r], q);
            for (int i = 0; i < 4; ++i) m[5 * i] = md(m[5 * i] + 1, q);
            root_el[r].push_back(m);
        }
    for (const auto& a : root_el[0])
        for (const auto& b : root_el[1])
            for (const auto& c : root_el[2])
                for (const auto& d : root_el[3]) out.push_back(mm_mul(mm_mul(a, b, q), mm_mul(c, d, q), q));
    return out;
}

bool upper_triangular(const ModMat& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            if (m[4 * i + j]) return false;
    return true;
}

// Row pattern from GL4 Bruhat elimination: b^-1 g = (permutation) (unipotent).
std::array<int, 4> elimination_pattern(ModMat g, long q) {
    std::array<int, 4> pivot{-1, -1, -1, -1};  // pivot column of each row
    for (int i = 3; i >= 0; --i) {
        std::vector<int> lower;
        for (int k = i + 1; k < 4; ++k) lower.push_back(k);
        std::sort(lower.begin(), lower.end(), [&](int x, int y) { return pivot[x] < pivot[y]; });
        for (int k : lower) {
            long c = g[4 * i + pivot[k]];
            if (!c) continue;
            long f = c * inv_mod(g[4 * k + pivot[k]], q) % q;
            for (int j = 0; j < 4; ++j) g[4 * i + j] = md(g[4 * i + j] - f * g[4 * k + j], q);
        }
        for (int j = 0; j < 4; ++j)
            if (g[4 * i + j]) {
                pivot[i] = j;
                break;
            }
        if (pivot[i] < 0) throw InvariantViolation("singular matrix in Bruhat elimination");
    }
    // g = b P u with row i of P u led by column pivot[i]: P has its 1 for column pivot[i] in row i.
    std::array<int, 4> perm{};
    for (int i = 0; i < 4; ++i) perm[pivot[i]] = i;
    return perm;
}

uint64_t encode(const ModMat& m, long q) {
    uint64_t c = 0;
    for (long v : m) c = c * static_cast<uint64_t>(q) + static_cast<uint64_t>(v);
    return c;
}

std::vector<ModMat> root_generators(long q) {
    std::vector<ModMat> gens;
    for (const Mat& X : root_vectors()) {
        ModMat m = mm_from(X, q);
        for (int i = 0; i < 4; ++i) m[5 * i] = md(m[5 * i] + 1, q);
        gens.push_back(m);
    }
    return gens;
}

}  // namespace

BruhatReport bruhat_decomposition_check(long q, long samples, uint64_t seed) {
    require_prime(q);
    BruhatReport rep;
    rep.q = q;
    rep.exhaustive = samples == 0;
    if (rep.exhaustive && q != 3) throw PreconditionError("exhaustive Bruhat check is limited to q = 3");
    const std::vector<WeylRep> W = weyl_reps(q);
    const std::vector<ModMat> U = upper_unipotents(q);
    const std::vector<ModMat> gens = root_generators(q);
    std::vector<ModMat> U_inv;
    for (const auto& u : U) U_inv.push_back(mm_sp_inverse(u, q));

    auto factor = [&](const ModMat& g) -> int {
        std::array<int, 4> perm = elimination_pattern(g, q);
        std::vector<const WeylRep*> order;
        for (const auto& w : W)
            if (w.perm == perm) order.push_back(&w);
        for (const auto& w : W)
            if (w.perm != perm) order.push_back(&w);
        for (const WeylRep* w : order)
            for (size_t k = 0; k < U.size(); ++k) {
                ModMat b = mm_mul(mm_mul(g, U_inv[k], q), w->w_inv, q);
                if (!upper_triangular(b)) continue;
                if (mm_mul(mm_mul(b, w->w, q), U[k], q) != g) continue;
                return w->length;
            }
        return -1;
    };
    auto record = [&](const ModMat& g) {
        ++rep.checked;
        int len = factor(g);
        if (len < 0) ++rep.failures;
        else ++rep.cell_sizes[len];
    };

    if (rep.exhaustive) {
        std::unordered_set<uint64_t> seen;
        std::deque<ModMat> todo{mm_identity()};
        seen.insert(encode(todo.front(), q));
        while (!todo.empty()) {
            ModMat g = todo.front();
            todo.pop_front();
            record(g);
            for (const auto& s : gens) {
                ModMat h = mm_mul(g, s, q);
                if (seen.insert(encode(h, q)).second) todo.push_back(h);
            }
        }
        return rep;
    }
    std::mt19937_64 rng(seed);
    for (long i = 0; i < samples; ++i) {
        ModMat g = mm_identity();
        for (int k = 0; k < 40; ++k) {
            const ModMat& s = gens[rng() % gens.size()];
            long x = static_cast<long>(rng() % q);
            // 1 + xX: scale the off-diagonal part of the generator.
            ModMat m = s;
            for (int e = 0; e < 16; ++e)
                if (e % 5 != 0) m[e] = md(m[e] * x, q);
            g = mm_mul(g, m, q);
        }
        record(g);
    }
    return rep;
}

}  // namespace sp4gen
