#include "sp4gen/certificates.hpp"

#include "sp4gen/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sp4gen {

namespace {

constexpr int kMaxRejections = 200;

// Basis indices of V^1 and V^2.
constexpr int kBlock1[2] = {1, 2};
constexpr int kBlock2[2] = {0, 3};

Vec project(const Vec& v, int block) {
    Vec w(4);
    for (int i : block == 1 ? kBlock1 : kBlock2) w[i] = v[i];
    return w;
}

long valuation_or_inf(const Q& x, long p) { return x == 0 ? kInfVal : valuation(x, p); }

Vec basis_vector(int i) {
    Vec e(4);
    e[i] = 1;
    return e;
}

// g = identity for the first sample, random in P(Lambda) afterwards.
Mat sample_group_element(const LatticeSequence& L, long p, int i, Rng& rng) {
    return i == 0 ? Mat::identity(4) : random_parahoric_element(L, p, rng);
}

}  // namespace

Mat random_parahoric_element(const LatticeSequence& L, long p, Rng& rng) {
    if (L.dim() != 4) throw PreconditionError("parahoric sampler needs a 4-dim lattice sequence");
    const std::vector<Mat> roots = root_vectors();
    Mat one = Mat::identity(4);
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        Mat g = one;
        long factors = uniform_int(1, 6, rng);
        for (long f = 0; f < factors; ++f) {
            if (uniform_int(0, 4, rng) == 0) {
                Q t1 = random_unit(p, rng), t2 = random_unit(p, rng);
                Mat t(4, 4);
                t(0, 0) = t1;
                t(1, 1) = t2;
                t(2, 2) = 1 / t2;
                t(3, 3) = 1 / t1;
                g = g * t;
                continue;
            }
            const Mat& X = roots[uniform_int(0, 7, rng)];
            long kmin = ceil_div(-valuation_endo(L, X, p), L.e);
            Q x = random_unit(p, rng) * pow_p(p, kmin + uniform_int(0, 2, rng));
            g = g * (one + x * X);
        }
        if (!is_symplectic(g, symplectic_J(4))) throw InvariantViolation("parahoric sample is not symplectic");
        if (valuation_endo(L, g, p) >= 0 && valuation_endo(L, symplectic_inverse(g), p) >= 0) return g;
    }
    throw InvariantViolation("parahoric sampler rejected every candidate");
}

long intersection_level(const LatticeSequence& L, const Mat& A, long level1, long level2, long p) {
    long e = L.e;
    long best = -kInfVal;
    for (int s = 0; s < 4; ++s) {
        Vec col = A.column(s);
        for (int block = 1; block <= 2; ++block) {
            Vec w = project(col, block);
            if (is_zero(w)) continue;
            long nu = valuation_vector(L, w, p);
            long level = block == 1 ? level1 : level2;
            for (long j = 0; j < e; ++j)
                best = std::max(best, ceil_div(j + level - nu - e * L.a(s, j), e));
        }
    }
    if (best == -kInfVal) throw PreconditionError("intersection level of the zero endomorphism");
    return best;
}

SimplePieceReport simple_piece_certificate(const MatrixStratum& ms, int samples, Rng& rng) {
    if (!ms.lambda || ms.lambda->e != 2 || !ms.lambda->d)
        throw PreconditionError("needs the period-2 lattice sequence of a monomial realization");
    const LatticeSequence& L = *ms.lambda;
    const long p = ms.p;
    const Mat J = symplectic_J(4);
    SimplePieceReport r;
    r.n = ms.stratum.n;
    r.d = *L.d;
    r.parity_ok = pos_mod(r.n + r.d, 2) == 1;
    r.min_margin = kInfVal;
    r.min_margin_shifted = kInfVal;
    std::ostringstream why;
    auto s_formula_for = [&](long n, long nu_ek) { return nu_ek + 1 + floor_div(floor_div(n, 2) - r.d + 1, 2); };
    for (int i = 0; i < samples; ++i) {
        Mat g = sample_group_element(L, p, i, rng);
        Mat ginv = symplectic_inverse(g);
        for (int k : {1, 2}) {
            ++r.checks;
            Mat A = g * root_tk(k) * ginv;
            long nu_ek = valuation_vector(L, basis_vector(label_index(k)), p);
            long s_formula = s_formula_for(r.n, nu_ek);
            long s_direct = ceil_div(floor_div(r.n, 2) + 1 - valuation_endo(L, A, p), 2);
            if (s_formula != s_direct) {
                r.level_formula_ok = false;
                why << "k=" << k << " s_formula=" << s_formula << " s_direct=" << s_direct << "; ";
            }
            PsiBetaThreshold t = root_threshold(ms.beta, g, k, p);
            if (!t.s_max) {
                r.nontrivial_ok = false;
                why << "k=" << k << " psi_beta trivial on the root group; ";
                continue;
            }
            r.min_margin = std::min(r.min_margin, *t.s_max - s_formula);
            r.min_margin_shifted = std::min(r.min_margin_shifted, *t.s_max - s_formula_for(r.n + 2, nu_ek));
            bool nonzero = psi_beta_value(ms.beta, Mat::identity(4) + pow_p(p, s_formula) * A, p) != 0;
            if (s_formula > *t.s_max || !nonzero) {
                r.nontrivial_ok = false;
                why << "k=" << k << " s=" << s_formula << " s_max=" << *t.s_max << "; ";
            }
            Vec v = g.column(label_index(-k));
            long lhs = valuation_vector(L, v, p);
            long rhs = valuation(h_form(J, v, ms.beta * v), p) + floor_div(r.n + r.d - 1, 2);
            if (lhs != rhs) {
                r.valuation_split_ok = false;
                why << "k=" << k << " nu(v)=" << lhs << " expected " << rhs << "; ";
            }
        }
    }
    r.detail = why.str();
    return r;
}

TwoPieceReport two_piece_certificate(const MatrixStratum& ms, int samples, Rng& rng) {
    if (!ms.lambda || ms.blocks.size() != 2 || ms.block_n.size() != 2)
        throw PreconditionError("needs a two-block realization with its lattice sequence");
    const LatticeSequence& L = *ms.lambda;
    const long p = ms.p;
    const Mat J = symplectic_J(4);
    TwoPieceReport r;
    r.min_margin = kInfVal;
    std::ostringstream why;
    long a[2], beta_term = -kInfVal;
    for (int b = 0; b < 2; ++b) {
        a[b] = floor_div(ms.block_n[b], 2) + 1;
        beta_term = std::max(beta_term, 2 * ms.blocks[b].nu_E_beta / ms.blocks[b].e_E);
    }
    for (int i = 0; i < samples; ++i) {
        Mat g = sample_group_element(L, p, i, rng);
        Mat ginv = symplectic_inverse(g);
        for (int k : {1, 2}) {
            ++r.checks;
            Vec v = g.column(label_index(-k));
            long max_gap = -kInfVal, min_l = kInfVal;
            for (int b = 0; b < 2; ++b) {
                Vec vb = project(v, b + 1);
                if (is_zero(vb)) continue;
                long gb = valuation_vector(L, vb, p);
                long lb = valuation_or_inf(h_form(J, vb, ms.beta * vb), p);
                max_gap = std::max(max_gap, a[b] - gb);
                min_l = std::min(min_l, lb);
            }
            long nu_ek = valuation_vector(L, basis_vector(label_index(k)), p);
            long s_formula = floor_div(nu_ek + max_gap + 3, 4);
            Mat A = g * root_tk(k) * ginv;
            long s_direct = intersection_level(L, A, a[0], a[1], p);
            if (s_formula != s_direct) {
                r.level_formula_ok = false;
                why << "k=" << k << " s_formula=" << s_formula << " s_direct=" << s_direct << "; ";
            }
            PsiBetaThreshold t = root_threshold(ms.beta, g, k, p);
            if (!t.s_max) {
                r.nontrivial_ok = false;
                why << "k=" << k << " psi_beta trivial on the root group; ";
                continue;
            }
            long l = -*t.s_max;
            r.min_margin = std::min(r.min_margin, *t.s_max - s_formula);
            bool nonzero = psi_beta_value(ms.beta, Mat::identity(4) + pow_p(p, s_formula) * A, p) != 0;
            if (s_formula > *t.s_max || !nonzero) {
                r.nontrivial_ok = false;
                why << "k=" << k << " s=" << s_formula << " s_max=" << *t.s_max << "; ";
            }
            if (l != min_l) {
                r.min_valuation_ok = false;
                why << "k=" << k << " nu h=" << l << " min piece=" << min_l << "; ";
            }
            if (valuation_vector(L, v, p) < 2 * l - beta_term) {
                r.lower_bound_ok = false;
                why << "k=" << k << " nu(v) below 2 nu h - " << beta_term << "; ";
            }
            long eps = max_gap + 2 * min_l;
            if (eps != 0 && eps != 1) {
                r.epsilon_identity_ok = false;
                why << "k=" << k << " max(a_i-g_i)+2min l_i=" << eps << "; ";
            }
        }
    }
    r.detail = why.str();
    return r;
}

NullThresholdReport check_null_threshold(const MatrixStratum& ms, int samples, Rng& rng) {
    if (!ms.lambda || ms.blocks.size() != 1 || ms.profiles.size() != 1 || ms.block_n.size() != 1)
        throw PreconditionError("needs a case IV realization with its lattice sequence");
    const LatticeSequence& L = *ms.lambda;
    const long p = ms.p;
    const Mat J = symplectic_J(4);
    const long n = ms.block_n[0];
    const long eps = ms.profiles[0].epsilon;
    const long a_r = floor_div(n, 2) + 1;
    NullThresholdReport r;
    std::ostringstream why;
    for (int i = 0; i < samples; ++i) {
        Mat y = sample_group_element(L, p, i, rng);
        Mat yinv = symplectic_inverse(y);
        for (int k : {1, 2}) {
            ++r.checks;
            Mat A = y * root_tk(k) * yinv;
            long s_direct = intersection_level(L, A, a_r, 1, p);
            PsiBetaThreshold t = root_threshold(ms.beta, y, k, p);
            bool direct = t.s_max && s_direct <= *t.s_max;
            Vec v = y.column(label_index(-k));
            Vec vr = project(v, 1), vs = project(v, 2);
            bool predicted = false;
            if (!is_zero(vr)) {
                long yr = valuation_vector(L, vr, p);
                long ys = is_zero(vs) ? kInfVal : valuation_vector(L, vs, p);
                long lr = valuation(h_form(J, vr, ms.beta * vr), p);
                long nu_mk = valuation_vector(L, basis_vector(label_index(-k)), p);
                predicted = yr <= nu_mk + floor_div(n, 2) + 1 - 2 * eps && ys >= -nu_mk + 4 * lr + 1;
                ++r.relation_checks;
                long offset = yr - 2 * lr - floor_div(n, 2) - 1;
                if (offset == -eps) ++r.relation_holds;
                r.offset_min = r.relation_checks == 1 ? offset : std::min(r.offset_min, offset);
                r.offset_max = r.relation_checks == 1 ? offset : std::max(r.offset_max, offset);
            }
            if (direct) ++r.nontrivial;
            if (direct == predicted) {
                ++r.agreements;
            } else if (why.tellp() < 400) {
                why << "k=" << k << " direct=" << direct << " predicted=" << predicted << "; ";
            }
        }
    }
    r.detail = why.str();
    return r;
}

}  // namespace sp4gen
