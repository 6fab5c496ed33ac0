#include "sp4gen/lattice.hpp"

#include "sp4gen/errors.hpp"
#include "sp4gen/quadratic_form.hpp"

#include <algorithm>

namespace sp4gen {

long LatticeSequence::a(int s, long t) const {
    long q = floor_div(t, e);
    return alpha[s][t - q * e] + q;
}

void LatticeSequence::validate() const {
    if (e < 1) throw SchemaError("lattice period must be positive");
    for (const auto& row : alpha) {
        if (static_cast<int>(row.size()) != e) throw SchemaError("alpha row length differs from period");
        for (int j = 0; j + 1 < e; ++j)
            if (row[j] > row[j + 1]) throw SchemaError("alpha is not non-decreasing");
        if (row[e - 1] > row[0] + 1) throw SchemaError("alpha jumps across the period boundary");
    }
}

bool operator==(const LatticeSequence& x, const LatticeSequence& y) {
    return x.e == y.e && x.alpha == y.alpha;
}

LatticeSequence standard_lattice(int dim) {
    LatticeSequence L;
    L.e = 1;
    L.alpha.assign(dim, std::vector<long>{0});
    L.d = 1;
    return L;
}

LatticeSequence dual_sequence(const LatticeSequence& L) {
    LatticeSequence D;
    D.e = L.e;
    int n = L.dim();
    D.alpha.assign(n, std::vector<long>(L.e));
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < L.e; ++j) D.alpha[s][j] = 1 - L.a(n - 1 - s, -j);
    D.d = duality_invariant(D);
    return D;
}

std::optional<long> duality_invariant(const LatticeSequence& L) {
    int n = L.dim();
    long span = 0;
    for (const auto& row : L.alpha)
        for (long x : row) span = std::max(span, std::labs(x));
    long bound = L.e * (2 * span + 4) + 4;
    for (long d = -bound; d <= bound; ++d) {
        bool ok = true;
        for (int s = 0; s < n && ok; ++s)
            for (long t = 0; t < L.e && ok; ++t)
                if (L.a(s, d - t) != 1 - L.a(n - 1 - s, t)) ok = false;
        if (ok) return d;
    }
    return std::nullopt;
}

long max_index_below(const LatticeSequence& L, int s, long k) {
    long best = std::numeric_limits<long>::min();
    for (long j = 0; j < L.e; ++j) best = std::max(best, j + L.e * (k - L.alpha[s][j]));
    return best;
}

long valuation_vector(const LatticeSequence& L, const Vec& v, long p) {
    long nu = kInfVal;
    for (int s = 0; s < L.dim(); ++s) {
        if (v[s] == 0) continue;
        nu = std::min(nu, max_index_below(L, s, valuation(v[s], p)));
    }
    return nu;
}

long valuation_endo(const LatticeSequence& L, const Mat& a, long p) {
    long nu = kInfVal;
    int n = L.dim();
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (a(s, t) == 0) continue;
            long va = valuation(a(s, t), p);
            for (long j = 0; j < L.e; ++j) nu = std::min(nu, max_index_below(L, s, va + L.a(t, j)) - j);
        }
    return nu;
}

long valuation_basis_scan(const LatticeSequence& L, int k) {
    // alpha_k(i) <= 0 holds for all small i and fails for large i.
    long i = 0;
    while (L.a(k, i) <= 0) ++i;
    while (L.a(k, i) > 0) --i;
    return i;
}

LatticeSequence translate(const LatticeSequence& L, long k) {
    LatticeSequence T;
    T.e = L.e;
    T.alpha.assign(L.dim(), std::vector<long>(L.e));
    for (int s = 0; s < L.dim(); ++s)
        for (long j = 0; j < L.e; ++j) T.alpha[s][j] = L.a(s, j + k);
    if (L.d) T.d = *L.d - 2 * k;
    return T;
}

LatticeSequence reindex_half(const LatticeSequence& L) {
    LatticeSequence T;
    T.e = 2 * L.e;
    T.alpha.assign(L.dim(), std::vector<long>(T.e));
    for (int s = 0; s < L.dim(); ++s)
        for (long j = 0; j < T.e; ++j) T.alpha[s][j] = L.a(s, floor_div(j, 2));
    T.d = duality_invariant(T);
    return T;
}

LatticeSequence scale_period(const LatticeSequence& L, int m) {
    LatticeSequence T;
    T.e = m * L.e;
    T.alpha.assign(L.dim(), std::vector<long>(T.e));
    for (int s = 0; s < L.dim(); ++s)
        for (long j = 0; j < T.e; ++j) T.alpha[s][j] = L.a(s, ceil_div(j, m));
    T.d = duality_invariant(T);
    return T;
}

LatticeSequence direct_sum(const LatticeSequence& L1, const LatticeSequence& L2) {
    if (L1.e != L2.e || L1.dim() != 2 || L2.dim() != 2)
        throw PreconditionError("direct sum needs two 2-dim sequences of equal period");
    LatticeSequence S;
    S.e = L1.e;
    S.alpha = {L2.alpha[0], L1.alpha[0], L1.alpha[1], L2.alpha[1]};
    S.d = duality_invariant(S);
    return S;
}

LatticeSequence block_of(const LatticeSequence& L, int block) {
    LatticeSequence B;
    B.e = L.e;
    if (block == 1) B.alpha = {L.alpha[1], L.alpha[2]};
    else B.alpha = {L.alpha[0], L.alpha[3]};
    B.d = duality_invariant(B);
    return B;
}

LatticeSequence random_selfdual(int dim, int e, long d, Rng& rng) {
    LatticeSequence L;
    L.e = e;
    L.alpha.assign(dim, std::vector<long>(e));
    for (int s = 0; s < dim / 2; ++s) {
        long b = uniform_int(0, e - 1, rng);
        long c = uniform_int(-2, 2, rng);
        for (long j = 0; j < e; ++j) L.alpha[s][j] = ceil_div(j - b, e) + c;
    }
    for (int s = dim / 2; s < dim; ++s) {
        int partner = dim - 1 - s;
        for (long j = 0; j < e; ++j) L.alpha[s][j] = 1 - L.a(partner, d - j);
    }
    L.d = d;
    return L;
}

BasisValuationReport check_basis_valuations(const LatticeSequence& L) {
    BasisValuationReport rep;
    auto d = duality_invariant(L);
    if (!d) throw PreconditionError("basis valuation check needs a self-dual sequence");
    int n = L.dim();
    for (int k = 0; k < n; ++k) {
        long scan = valuation_basis_scan(L, k);
        long formula = max_index_below(L, k, 0);
        long dual = -valuation_basis_scan(L, n - 1 - k) + *d - 1;
        rep.nu.push_back(scan);
        if (scan != formula || scan != dual) {
            rep.ok = false;
            rep.detail = "basis index " + std::to_string(k) + ": scan " + std::to_string(scan) + ", max formula " +
                         std::to_string(formula) + ", duality formula " + std::to_string(dual);
        }
    }
    return rep;
}

std::string to_string(ChainType t) {
    switch (t) {
        case ChainType::ramified:
            return "ramified";
        case ChainType::unramified_selfdual:
            return "unramified_selfdual";
        default:
            return "unramified_no_selfdual";
    }
}

Q SkewBlock::q_value(const Vec& v) const { return h_form(J, v, beta * v); }

SkewBlock make_skew_block(const QuadExt& E, const Q& L, const Q& y, const Q& r) {
    long p = E.base.prime();
    if (!(square_class(L, E.base) == E.disc)) throw PreconditionError("m^2 must lie in the discriminant class");
    if (y == 0 || r == 0) throw PreconditionError("skew block needs nonzero y and r");
    SkewBlock B{E, L, y, r, -2 * r * L, Mat(2, 2), symplectic_J(2), 1, 0, 0, LatticeSequence{}, ChainType::ramified};
    B.e_E = E.ramified() ? 2 : 1;
    B.nu_E_m = B.e_E * valuation(L, p) / 2;
    B.nu_E_beta = B.e_E * valuation(y, p) + B.nu_E_m;
    // beta (a + b m) = y L b + y a m; in coordinates (a, b H).
    B.beta(0, 1) = y * L / B.H;
    B.beta(1, 0) = y * B.H;
    if (!is_skew(B.beta, B.J)) throw InvariantViolation("skew block beta is not skew");
    LatticeSequence C;
    C.e = static_cast<int>(B.e_E);
    C.alpha.assign(2, std::vector<long>(C.e));
    long vH = valuation(B.H, p);
    for (long t = 0; t < C.e; ++t) {
        C.alpha[0][t] = ceil_div(t, B.e_E);
        C.alpha[1][t] = ceil_div(t - B.nu_E_m, B.e_E) + vH;
    }
    C.d = duality_invariant(C);
    if (!C.d) throw InvariantViolation("o_E chain is not self-dual");
    B.chain = C;
    if (E.ramified()) B.type = ChainType::ramified;
    else B.type = pos_mod(*C.d, 2) == 0 ? ChainType::unramified_selfdual : ChainType::unramified_no_selfdual;
    return B;
}

NormalizedProfile normalize_period4(const LatticeSequence& chain, ChainType type) {
    auto d = duality_invariant(chain);
    if (!d) throw PreconditionError("normalization needs a self-dual chain");
    int expected_e = type == ChainType::ramified ? 2 : 1;
    if (chain.e != expected_e) throw PreconditionError("chain period does not match the extension type");
    bool even = pos_mod(*d, 2) == 0;
    if ((type == ChainType::unramified_no_selfdual) == even)
        throw PreconditionError("chain duality parity does not match the chain type");
    NormalizedProfile P;
    P.type = type;
    if (type == ChainType::unramified_no_selfdual) {
        LatticeSequence L = translate(chain, (*d - 1) / 2);
        P.lambda = scale_period(L, 4);
        P.epsilon = 1;
    } else {
        LatticeSequence L = reindex_half(translate(chain, *d / 2));
        P.lambda = type == ChainType::ramified ? L : scale_period(L, 2);
        P.epsilon = 0;
    }
    P.lambda.d = duality_invariant(P.lambda);
    if (P.lambda.e != 4 || P.lambda.d != 1) throw InvariantViolation("normalization did not reach period 4, d = 1");
    return P;
}

long expected_image_residue(ChainType t) {
    return t == ChainType::ramified ? 1 : (t == ChainType::unramified_selfdual ? 2 : 0);
}

long expected_image_modulus(ChainType t) { return t == ChainType::ramified ? 2 : 4; }

long expected_beta_valuation(ChainType t, long nu_E_beta) {
    // Elements of E scale an o_E-sequence of F-period 4 by 4 / e(E/F) per E-valuation step.
    return t == ChainType::ramified ? 2 * nu_E_beta : 4 * nu_E_beta;
}

BlockFiltrationReport check_block_filtration(const SkewBlock& B, const NormalizedProfile& P, int samples, Rng& rng) {
    BlockFiltrationReport rep;
    long p = B.E.base.prime();
    long mod = expected_image_modulus(P.type), res = expected_image_residue(P.type);
    for (int i = 0; i < samples; ++i) {
        Q a = uniform_int(0, 3, rng) == 0 ? Q(0) : random_rational(p, -3, 3, rng);
        Q b = (a == 0 || uniform_int(0, 3, rng) != 0) ? random_rational(p, -3, 3, rng) : Q(0);
        long nu = valuation_vector(P.lambda, B.coords(a, b), p);
        if (pos_mod(nu, mod) != res) rep.image_ok = false;
    }
    rep.beta_val = valuation_endo(P.lambda, B.beta, p);
    rep.beta_val_expected = expected_beta_valuation(P.type, B.nu_E_beta);
    rep.ok = rep.image_ok && rep.beta_val == rep.beta_val_expected;
    return rep;
}

BlockValuationReport check_block_valuation(const SkewBlock& B, const NormalizedProfile& P, const Vec& v) {
    long p = B.E.base.prime();
    if (is_zero(v)) throw PreconditionError("block valuation check needs a nonzero vector");
    BlockValuationReport rep;
    rep.lhs = valuation_vector(P.lambda, v, p);
    Q hv = B.q_value(v);
    if (hv == 0) throw InvariantViolation("anisotropic block has an isotropic vector");
    long twice = 2 * B.nu_E_beta;
    if (twice % B.e_E != 0) throw InvariantViolation("2 nu_E(beta) / e is not an integer");
    rep.rhs = 2 * valuation(hv, p) - twice / B.e_E;
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace sp4gen
