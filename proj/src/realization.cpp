#include "sp4gen/realization.hpp"

#include "sp4gen/errors.hpp"

namespace sp4gen {

namespace {

constexpr int kMaxAttempts = 2000;

// x + y a with a^2 = d.
struct E0Num {
    Q x, y;
};

struct E0Arith {
    Q d;
    E0Num mul(const E0Num& u, const E0Num& v) const { return {u.x * v.x + d * u.y * v.y, u.x * v.y + u.y * v.x}; }
    E0Num add(const E0Num& u, const E0Num& v) const { return {u.x + v.x, u.y + v.y}; }
    E0Num neg(const E0Num& u) const { return {-u.x, -u.y}; }
    E0Num scale(const Q& s, const E0Num& u) const { return {s * u.x, s * u.y}; }
    Q norm(const E0Num& u) const { return u.x * u.x - d * u.y * u.y; }
    E0Num inv(const E0Num& u) const {
        Q n = norm(u);
        return {u.x / n, -u.y / n};
    }
};

// A + B b with b^2 = gamma in E0; conjugation fixes E0 and negates b.
struct ENum {
    E0Num A, B;
};

struct EArith {
    E0Arith K;
    E0Num gamma;
    ENum mul(const ENum& u, const ENum& v) const {
        return {K.add(K.mul(u.A, v.A), K.mul(K.mul(u.B, v.B), gamma)), K.add(K.mul(u.A, v.B), K.mul(u.B, v.A))};
    }
    ENum conj(const ENum& u) const { return {u.A, K.neg(u.B)}; }
    E0Num norm_to_E0(const ENum& u) const { return K.add(K.mul(u.A, u.A), K.neg(K.mul(K.mul(u.B, u.B), gamma))); }
    Q trace_to_F(const ENum& u) const { return 4 * u.A.x; }
};

// F-coordinates in the basis (1, a, b, ab).
Vec coords(const ENum& u) { return {u.A.x, u.A.y, u.B.x, u.B.y}; }

ENum basis_element(int i) {
    ENum e{{0, 0}, {0, 0}};
    switch (i) {
        case 0:
            e.A.x = 1;
            break;
        case 1:
            e.A.y = 1;
            break;
        case 2:
            e.B.x = 1;
            break;
        default:
            e.B.y = 1;
    }
    return e;
}

Q maybe_zero(long p, long vmin, long vmax, Rng& rng) {
    return uniform_int(0, 3, rng) == 0 ? Q(0) : random_rational(p, vmin, vmax, rng);
}

E0Num random_e0(long p, long vmin, long vmax, Rng& rng) {
    E0Num z{maybe_zero(p, vmin, vmax, rng), maybe_zero(p, vmin, vmax, rng)};
    if (z.x == 0 && z.y == 0) z.x = random_rational(p, vmin, vmax, rng);
    return z;
}

ENum random_e(long p, Rng& rng) {
    ENum z{random_e0(p, -2, 2, rng), random_e0(p, -2, 2, rng)};
    if (uniform_int(0, 3, rng) == 0) z.B = {0, 0};
    return z;
}

long nu_E0(const QuadExt& E0, const E0Num& z, long p) {
    long vx = valuation(z.x, p), vy = valuation(z.y, p);
    if (!E0.ramified()) return std::min(vx, vy);
    return std::min(vx == kInfVal ? kInfVal : 2 * vx, vy == kInfVal ? kInfVal : 2 * vy + 1);
}

Mat gram_of(const EArith& A, const ENum& c) {
    Mat G(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            G(i, j) = A.trace_to_F(A.mul(A.mul(c, basis_element(i)), A.conj(basis_element(j))));
    return G;
}

Mat mult_matrix(const EArith& A, const ENum& x) {
    std::vector<Vec> cols;
    for (int j = 0; j < 4; ++j) cols.push_back(coords(A.mul(x, basis_element(j))));
    return Mat::from_columns(cols);
}

Mat embed_blocks(const Mat& b1, const Mat& b2) {
    Mat m(4, 4);
    const int i1[2] = {1, 2}, i2[2] = {0, 3};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            m(i1[r], i1[c]) = b1(r, c);
            m(i2[r], i2[c]) = b2(r, c);
        }
    return m;
}

Vec embed_vec(const Vec& v1, const Vec& v2) { return {v2[0], v1[0], v1[1], v2[1]}; }

struct BlockElement {
    Q a, b;  // a + b m
};

BlockElement random_block_element(long p, Rng& rng) {
    BlockElement x{maybe_zero(p, -2, 2, rng), maybe_zero(p, -2, 2, rng)};
    if (x.a == 0 && x.b == 0) x.a = random_rational(p, -2, 2, rng);
    return x;
}

Q block_norm(const SkewBlock& B, const BlockElement& x) { return x.a * x.a - x.b * x.b * B.L; }

Q random_L(const QuadExt& E, Rng& rng) {
    long p = E.base.prime();
    Q w = random_rational(p, -1, 1, rng);
    return representative(E.disc, E.base) * w * w;
}

SquareClass random_nontrivial_class(Rng& rng) { return SquareClass::from_index(static_cast<int>(uniform_int(1, 3, rng))); }

void attach_lattice(MatrixStratum& ms, const LatticeSequence& null_block) {
    long p = ms.p;
    for (const SkewBlock& B : ms.blocks) {
        NormalizedProfile P = normalize_period4(B.chain, B.type);
        ms.block_n.push_back(-valuation_endo(P.lambda, B.beta, p));
        ms.profiles.push_back(P);
    }
    const LatticeSequence& L2 = ms.blocks.size() == 2 ? ms.profiles[1].lambda : null_block;
    ms.lambda = direct_sum(ms.profiles[0].lambda, L2);
}

bool levels_positive(const MatrixStratum& ms) {
    for (long n : ms.block_n)
        if (n < 1) return false;
    return true;
}

}  // namespace

Mat symplectic_basis(const Mat& gram) {
    int n = gram.rows;
    auto hg = [&](const Vec& v, const Vec& w) { return dot(v, gram * w); };
    std::vector<Vec> pool;
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        pool.push_back(e);
    }
    std::vector<Vec> cols(n);
    for (int t = 0; t < n / 2; ++t) {
        Vec v = pool.front();
        pool.erase(pool.begin());
        size_t wi = 0;
        while (wi < pool.size() && hg(v, pool[wi]) == 0) ++wi;
        if (wi == pool.size()) throw PreconditionError("alternating form is degenerate");
        Vec w = (Q(1) / hg(v, pool[wi])) * pool[wi];
        pool.erase(pool.begin() + static_cast<long>(wi));
        for (Vec& x : pool) x = x - hg(x, w) * v + hg(x, v) * w;
        cols[t] = v;
        cols[n - 1 - t] = w;
    }
    Mat P = Mat::from_columns(cols);
    if (P.transpose() * gram * P != symplectic_J(n)) throw InvariantViolation("symplectic Gram-Schmidt failed");
    return P;
}

Mat random_integral_symplectic(int factors, Rng& rng) {
    Mat J = symplectic_J(4);
    Mat g = Mat::identity(4);
    for (int i = 0; i < factors; ++i) {
        Vec w(4);
        while (is_zero(w))
            for (auto& c : w) c = uniform_int(-2, 2, rng);
        Vec jw = J * w;
        Mat T = Mat::identity(4);
        Q c = uniform_int(0, 1, rng) ? 1 : -1;
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) T(r, s) += c * w[r] * jw[s];
        g = g * T;
    }
    if (!is_symplectic(g, J)) throw InvariantViolation("transvection product is not symplectic");
    return g;
}

MatrixStratum conjugate(const MatrixStratum& ms, const Mat& g) {
    MatrixStratum out = ms;
    out.beta = g * ms.beta * symplectic_inverse(g);
    if (ms.isotropic) out.isotropic = g * *ms.isotropic;
    out.lambda.reset();
    return out;
}

MatrixStratum realize_case_I(long p, bool biquadratic, bool want_exists, Rng& rng) {
    if (!biquadratic && !want_exists) throw PreconditionError("a non-biquadratic E always carries isotropic vectors");
    LocalField F = LocalField::concrete(p);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        SquareClass d0c = random_nontrivial_class(rng);
        QuadExt E0(F, d0c);
        E0Arith K{representative(d0c, F)};
        E0Num gamma;
        if (biquadratic) {
            SquareClass e = random_nontrivial_class(rng);
            if (e == d0c) continue;
            E0Num w{maybe_zero(p, -1, 1, rng), random_rational(p, -1, 1, rng)};
            gamma = K.scale(representative(e, F), K.mul(w, w));
        } else {
            gamma = {maybe_zero(p, -1, 1, rng), random_rational(p, -1, 1, rng)};
            if (square_class(K.norm(gamma), F).is_identity()) continue;
        }
        EArith A{K, gamma};
        E0Num yb = random_e0(p, -3, 0, rng);
        E0Num beta2 = K.mul(K.mul(yb, yb), gamma);
        if (beta2.y == 0) continue;  // F[beta] would have degree 2
        ENum beta{{0, 0}, yb};
        E0Num cprime;
        std::optional<ENum> x0;
        if (want_exists) {
            ENum x = random_e(p, rng);
            E0Num nx = A.norm_to_E0(x);
            // tr_{E0/F}(c' beta^2 N(x0)) = 0.
            cprime = K.mul(E0Num{0, random_rational(p, -2, 2, rng)}, K.inv(K.mul(beta2, nx)));
            x0 = x;
        } else {
            cprime = random_e0(p, -2, 2, rng);
        }
        E0Num bd = K.mul(cprime, beta2);
        E0SquareClass gamma_class = e0_square_class(E0, E0Element{gamma.x, gamma.y});
        long e_rel = gamma_class.val_parity ? 2 : 1;
        long nu_beta = e_rel * nu_E0(E0, yb, p) + e_rel * nu_E0(E0, gamma, p) / 2;

        Stratum s;
        s.kind = StratumCase::I;
        s.F = F;
        s.E0 = E0;
        s.biquadratic = square_class(K.norm(gamma), F).is_identity();
        s.E_over_E0_ramified = e_rel == 2;
        s.beta_detdelta = e0_square_class(E0, E0Element{bd.x, bd.y});
        s.n = -nu_beta;
        if (s.n < 1) continue;
        if (s.biquadratic != biquadratic) throw InvariantViolation("biquadratic construction has the wrong norm class");
        if (s.biquadratic && s.E_over_E0_ramified == E0.ramified())
            throw InvariantViolation("biquadratic E has unexpected ramification over E0");
        if (decide_flag_existence(s).exists != want_exists) continue;

        ENum c{{0, 0}, K.mul(cprime, yb)};
        Mat G = gram_of(A, c);
        Mat P = symplectic_basis(G);
        Mat Pinv = inverse(P);
        MatrixStratum ms;
        ms.stratum = s;
        ms.p = p;
        ms.beta = Pinv * mult_matrix(A, beta) * P;
        if (!is_skew(ms.beta, symplectic_J(4))) throw InvariantViolation("case I beta is not skew");
        if (x0) {
            ms.isotropic = Pinv * coords(*x0);
            if (gram_from_beta(symplectic_J(4), ms.beta, p).value(*ms.isotropic) != 0)
                throw InvariantViolation("planted case I vector is not isotropic");
        }
        return ms;
    }
    throw PreconditionError("case I builder exhausted its attempts");
}

MatrixStratum realize_case_I_monomial(long p, Rng& rng) {
    LocalField F = LocalField::concrete(p);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        SquareClass d0c = random_nontrivial_class(rng);
        SquareClass ec = random_nontrivial_class(rng);
        if (ec == d0c) continue;
        QuadExt E0(F, d0c);
        Q Aval = representative(d0c, F), Bval = representative(ec, F);
        E0Arith K{Aval};
        EArith A{K, E0Num{Bval, 0}};
        E0Num yb{random_rational(p, -3, 0, rng), random_rational(p, -3, 0, rng)};
        ENum beta{{0, 0}, yb};
        bool mc_is_b = uniform_int(0, 1, rng) == 0;
        Q r = random_rational(p, -2, 2, rng);
        ENum c{{0, 0}, mc_is_b ? E0Num{r, 0} : E0Num{0, r}};
        ENum bc = A.mul(beta, c);

        Stratum s;
        s.kind = StratumCase::I;
        s.F = F;
        s.E0 = E0;
        s.biquadratic = true;
        s.E_over_E0_ramified = !E0.ramified();
        s.beta_detdelta = e0_square_class(E0, E0Element{bc.A.x, bc.A.y});
        if (decide_flag_existence(s).exists) continue;

        // Monomials 1, a, b, ab pair off as m <-> m_c m.
        const long nu_mono[4] = {0, valuation(Aval, p), valuation(Bval, p), valuation(Aval, p) + valuation(Bval, p)};
        int partner[4];
        if (mc_is_b) {
            partner[0] = 2, partner[1] = 3;
        } else {
            partner[0] = 3, partner[1] = 2;
        }
        Mat G = gram_of(A, c);
        std::vector<Vec> cols(4);
        LatticeSequence L;
        L.e = 2;
        L.alpha.assign(4, std::vector<long>(2));
        for (int t = 0; t < 2; ++t) {
            int lo = t == 0 ? 0 : 1;  // slot of e_{-}
            int hi = 3 - lo;          // slot of e_{+}
            int m = t, mp = partner[t];
            Q kappa = G(m, mp);
            Vec em(4), emp(4);
            em[m] = 1;
            emp[mp] = Q(1) / kappa;
            cols[lo] = em;
            cols[hi] = emp;
            for (long j = 0; j < 2; ++j) {
                L.alpha[lo][j] = ceil_div(j - nu_mono[m], 2);
                L.alpha[hi][j] = ceil_div(j - nu_mono[mp], 2) + valuation(kappa, p);
            }
        }
        Mat P = Mat::from_columns(cols);
        if (P.transpose() * G * P != symplectic_J(4)) throw InvariantViolation("monomial basis is not symplectic");
        auto d = duality_invariant(L);
        if (!d) throw InvariantViolation("o_E chain in the monomial basis is not self-dual");
        L = translate(L, floor_div(*d, 2));
        L.d = duality_invariant(L);

        MatrixStratum ms;
        ms.p = p;
        ms.beta = inverse(P) * mult_matrix(A, beta) * P;
        if (!is_skew(ms.beta, symplectic_J(4))) throw InvariantViolation("monomial beta is not skew");
        s.n = -valuation_endo(L, ms.beta, p);
        if (s.n < 1) continue;
        ms.stratum = s;
        ms.lambda = L;
        return ms;
    }
    throw PreconditionError("monomial case I builder exhausted its attempts");
}

SkewBlock random_skew_block(long p, Rng& rng) {
    QuadExt E(LocalField::concrete(p), random_nontrivial_class(rng));
    return make_skew_block(E, random_L(E, rng), random_rational(p, -3, -1, rng), random_rational(p, -2, 2, rng));
}

Vec random_block_vector(const SkewBlock& B, Rng& rng) {
    BlockElement x = random_block_element(B.E.base.prime(), rng);
    return B.coords(x.a, x.b);
}

MatrixStratum realize_case_II(long p, bool want_exists, Rng& rng) {
    LocalField F = LocalField::concrete(p);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        QuadExt E(F, random_nontrivial_class(rng));
        Q L = random_L(E, rng);
        Q y = random_rational(p, -3, -1, rng);
        Q r1 = random_rational(p, -2, 2, rng);
        SkewBlock B1 = make_skew_block(E, L, y, r1);
        Q r2;
        std::optional<std::pair<BlockElement, BlockElement>> planted;
        if (want_exists) {
            BlockElement x1 = random_block_element(p, rng), x2 = random_block_element(p, rng);
            r2 = -r1 * block_norm(B1, x1) / block_norm(B1, x2);
            planted = {x1, x2};
        } else {
            r2 = random_rational(p, -2, 2, rng);
        }
        SkewBlock B2 = make_skew_block(E, L, y, r2);

        MatrixStratum ms;
        ms.p = p;
        ms.beta = embed_blocks(B1.beta, B2.beta);
        ms.blocks = {B1, B2};
        attach_lattice(ms, {});
        if (!levels_positive(ms)) continue;
        Stratum& s = ms.stratum;
        s.kind = StratumCase::II;
        s.F = F;
        s.E = E;
        s.det_delta = square_class(r1 * r2 * L, F);
        s.n = -valuation_endo(*ms.lambda, ms.beta, p);
        if (decide_flag_existence(s).exists != want_exists) continue;
        if (planted) {
            ms.isotropic = embed_vec(B1.coords(planted->first.a, planted->first.b),
                                     B2.coords(planted->second.a, planted->second.b));
            if (gram_from_beta(symplectic_J(4), ms.beta, p).value(*ms.isotropic) != 0)
                throw InvariantViolation("planted case II vector is not isotropic");
        }
        return ms;
    }
    throw PreconditionError("case II builder exhausted its attempts");
}

MatrixStratum realize_case_III(long p, bool isomorphic, bool want_exists, Rng& rng) {
    if (!isomorphic && !want_exists) throw PreconditionError("non-isomorphic pieces always carry isotropic vectors");
    LocalField F = LocalField::concrete(p);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        QuadExt E1(F, random_nontrivial_class(rng));
        QuadExt E2 = E1;
        Q L1 = random_L(E1, rng), L2, s_iso;
        if (isomorphic) {
            s_iso = random_rational(p, -1, 1, rng);
            L2 = s_iso * s_iso * L1;
        } else {
            SquareClass d2 = random_nontrivial_class(rng);
            if (d2 == E1.disc) continue;
            E2 = QuadExt(F, d2);
            L2 = random_L(E2, rng);
        }
        Q y1 = random_rational(p, -3, -1, rng), y2 = random_rational(p, -3, -1, rng);
        if (y1 * y1 * L1 == y2 * y2 * L2) continue;  // same minimal polynomial: case II
        Q r1 = random_rational(p, -2, 2, rng);
        SkewBlock B1 = make_skew_block(E1, L1, y1, r1);
        Q r2;
        std::optional<std::pair<BlockElement, BlockElement>> planted;
        if (want_exists) {
            BlockElement x1 = random_block_element(p, rng), x2 = random_block_element(p, rng);
            Q n2 = x2.a * x2.a - x2.b * x2.b * L2;
            r2 = -r1 * y1 * L1 * block_norm(B1, x1) / (y2 * L2 * n2);
            planted = {x1, x2};
        } else {
            r2 = random_rational(p, -2, 2, rng);
        }
        SkewBlock B2 = make_skew_block(E2, L2, y2, r2);

        MatrixStratum ms;
        ms.p = p;
        ms.beta = embed_blocks(B1.beta, B2.beta);
        ms.blocks = {B1, B2};
        attach_lattice(ms, {});
        if (!levels_positive(ms)) continue;
        Stratum& s = ms.stratum;
        s.kind = StratumCase::III;
        s.F = F;
        s.E = E1;
        if (isomorphic) {
            // Identify E2 with E1 through m2 = s m1.
            s.ratio = square_class(y1 / (y2 * s_iso), F);
            s.det_delta = square_class(r1 * r2 * s_iso * L1, F);
        } else {
            s.E2 = E2;
        }
        s.n1 = std::max(ms.block_n[0], ms.block_n[1]);
        s.n2 = std::min(ms.block_n[0], ms.block_n[1]);
        s.n = s.n1;
        if (decide_flag_existence(s).exists != want_exists) continue;
        if (planted) {
            ms.isotropic = embed_vec(B1.coords(planted->first.a, planted->first.b),
                                     B2.coords(planted->second.a, planted->second.b));
            if (gram_from_beta(symplectic_J(4), ms.beta, p).value(*ms.isotropic) != 0)
                throw InvariantViolation("planted case III vector is not isotropic");
        }
        return ms;
    }
    throw PreconditionError("case III builder exhausted its attempts");
}

MatrixStratum realize_case_IV(long p, Rng& rng) {
    LocalField F = LocalField::concrete(p);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        QuadExt E(F, random_nontrivial_class(rng));
        SkewBlock B1 = make_skew_block(E, random_L(E, rng), random_rational(p, -3, -1, rng),
                                       random_rational(p, -2, 2, rng));
        MatrixStratum ms;
        ms.p = p;
        ms.beta = embed_blocks(B1.beta, Mat(2, 2));
        ms.blocks = {B1};
        attach_lattice(ms, random_selfdual(2, 4, 1, rng));
        if (!levels_positive(ms)) continue;
        Stratum& s = ms.stratum;
        s.kind = StratumCase::IV;
        s.F = F;
        s.E = E;
        s.n1 = ms.block_n[0];
        s.n = s.n1;
        s.epsilon = ms.profiles[0].epsilon;
        BlockElement x = random_block_element(p, rng);
        ms.isotropic = embed_vec({0, 0}, {x.a, x.b});
        return ms;
    }
    throw PreconditionError("case IV builder exhausted its attempts");
}

std::vector<MatrixStratum> build_corpus(long p, StratumCase c, int count, Rng& rng) {
    std::vector<MatrixStratum> out;
    for (int i = 0; i < count; ++i) {
        MatrixStratum ms;
        switch (c) {
            case StratumCase::I: {
                int k = i % 4;
                ms = realize_case_I(p, k != 2, k % 2 == 0, rng);
                break;
            }
            case StratumCase::II:
                ms = realize_case_II(p, i % 2 == 0, rng);
                break;
            case StratumCase::III: {
                int k = i % 3;
                ms = realize_case_III(p, k != 2, k != 1, rng);
                break;
            }
            case StratumCase::IV:
                ms = realize_case_IV(p, rng);
                break;
        }
        out.push_back(conjugate(ms, random_integral_symplectic(4, rng)));
    }
    return out;
}

bool CrossCheckReport::ok() const {
    if (class_exists != isotropic || !hensel_decided || hensel_found != isotropic) return false;
    if (!class_exists) return true;
    return flag && flag_type && expected_type && *flag_type == *expected_type && psi_vanishes_on_uder &&
           psi_character_on_u;
}

namespace {

Mat random_upper_unipotent(long p, Rng& rng) {
    static const std::vector<Mat> roots = root_vectors();
    Mat u = Mat::identity(4);
    for (int i = 0; i < 4; ++i) u = u * (Mat::identity(4) + random_rational(p, -3, 3, rng) * roots[i]);
    return u;
}

Q frac_sum(const Q& a, const Q& b) {
    Q s = a + b;
    if (s >= 1) s -= 1;
    return s;
}

}  // namespace

CrossCheckReport cross_check_matrix(const MatrixStratum& ms, int uder_samples, Rng& rng) {
    CrossCheckReport r;
    long p = ms.p;
    Mat J = symplectic_J(4);
    r.class_exists = decide_flag_existence(ms.stratum).exists;
    QuadraticForm form = gram_from_beta(J, ms.beta, p);
    r.isotropic = is_isotropic(form);
    IsotropicCertificate cert;
    try {
        cert = find_isotropic_vector(form);
        r.hensel_found = cert.found;
    } catch (const PrecisionError& e) {
        r.hensel_decided = false;
        r.detail = e.what();
    }
    if (!(r.class_exists && r.isotropic)) return r;

    Vec v;
    if (ms.isotropic) v = *ms.isotropic;
    else if (cert.found && cert.exact) v = cert.vector;
    else throw PreconditionError("no exact isotropic vector available for the flag");
    IsotropicFlag flag = build_flag(J, ms.beta, v);
    r.flag = flag;
    r.flag_type = classify_flag_degeneracy(ms.beta, flag);
    r.expected_type = classify_character(ms.stratum);
    Mat P = adapted_symplectic_basis(J, flag);
    Mat beta_f = symplectic_inverse(P) * ms.beta * P;
    for (int i = 0; i < uder_samples; ++i) {
        Mat u1 = random_upper_unipotent(p, rng), u2 = random_upper_unipotent(p, rng);
        Mat comm = u1 * u2 * symplectic_inverse(u1) * symplectic_inverse(u2);
        if (psi_beta_value(beta_f, comm, p) != 0) r.psi_vanishes_on_uder = false;
        Q lhs = psi_beta_value(beta_f, u1 * u2, p);
        Q rhs = frac_sum(psi_beta_value(beta_f, u1, p), psi_beta_value(beta_f, u2, p));
        if (lhs != rhs) r.psi_character_on_u = false;
        ++r.uder_samples;
    }
    return r;
}

}  // namespace sp4gen
