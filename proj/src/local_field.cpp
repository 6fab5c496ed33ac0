#include "sp4gen/local_field.hpp"

#include "sp4gen/errors.hpp"
#include "sp4gen/hensel.hpp"

#include <cstdlib>

namespace sp4gen {

LocalField LocalField::concrete(long p) {
    if (p % 2 == 0 || !is_prime(p)) throw PreconditionError("p must be an odd prime");
    LocalField F;
    F.q = p;
    F.p = p;
    return F;
}

LocalField LocalField::abstract(long q) {
    if (q < 3 || q % 2 == 0) throw PreconditionError("q must be odd and at least 3");
    long r = q, base = 0;
    for (long d = 2; d <= r; ++d)
        if (r % d == 0) {
            base = d;
            break;
        }
    while (r % base == 0) r /= base;
    if (r != 1) throw PreconditionError("q must be a prime power");
    LocalField F;
    F.q = q;
    return F;
}

long LocalField::prime() const {
    if (!p) throw PreconditionError("operation needs a concrete prime (abstract mode)");
    return *p;
}

long LocalField::u() const { return least_nonresidue(prime()); }

SquareClass SquareClass::parse(const std::string& s) {
    if (s == "1") return one();
    if (s == "u") return u();
    if (s == "p") return pi();
    if (s == "up") return upi();
    throw SchemaError("unknown square class label: " + s);
}

std::string SquareClass::str() const {
    static const char* names[] = {"1", "u", "p", "up"};
    return names[index()];
}

SquareClass square_class(const Q& x, const LocalField& F) {
    if (x == 0) throw PreconditionError("square class of zero");
    long p = F.prime();
    long v = valuation(x, p);
    long r = residue_mod_p(unit_part(x, p), p);
    return {pos_mod(v, 2) == 1, legendre(r, p) == -1};
}

SquareClass minus_one_class(const LocalField& F) { return {false, !F.minus_one_is_square()}; }

Q representative(SquareClass c, const LocalField& F) {
    Q r = 1;
    if (c.unit_nonsquare) r *= F.u();
    if (c.val_parity) r *= F.prime();
    return r;
}

int hilbert_symbol(SquareClass a, SquareClass b, const LocalField& F) {
    int alpha = a.val_parity, beta = b.val_parity;
    int s = 1;
    // (-1)^{alpha beta (q-1)/2}
    if (alpha && beta && !F.minus_one_is_square()) s = -s;
    // leg(u_b)^alpha leg(u_a)^beta
    if (alpha && b.unit_nonsquare) s = -s;
    if (beta && a.unit_nonsquare) s = -s;
    return s;
}

long default_oracle_depth(const Q& a, const Q& b, long p) {
    return 2 * std::max(std::labs(valuation(a, p)), std::labs(valuation(b, p))) + 4;
}

int hilbert_solubility_oracle(const Q& a, const Q& b, long p, long depth) {
    if (a == 0 || b == 0) throw PreconditionError("hilbert oracle needs nonzero arguments");
    if (depth < default_oracle_depth(a, b, p)) throw PrecisionError("oracle depth below the certified bound");
    // Clear denominators with squares so the form stays in its class.
    Z da = a.get_den(), db = b.get_den();
    Z ia = Z(a.get_num()) * da;
    Z ib = Z(b.get_num()) * db;
    std::vector<std::vector<Z>> g = {{ia, 0, 0}, {0, ib, 0}, {0, 0, Z(-1)}};
    HenselResult r = hensel_search(g, p, depth);
    switch (r.status) {
        case HenselResult::Status::found:
            return 1;
        case HenselResult::Status::exhausted:
            return -1;
        default:
            throw PrecisionError("hilbert oracle undecided at depth " + std::to_string(depth));
    }
}

QuadExt::QuadExt(LocalField F, SquareClass d) : base(F), disc(d) {
    if (d.is_identity()) throw PreconditionError("quadratic extension needs a non-square discriminant");
}

bool norm_group_contains(const QuadExt& E, SquareClass x) {
    return hilbert_symbol(x, E.disc, E.base) == 1;
}

E0SquareClass E0SquareClass::parse(const std::string& s) {
    if (s == "1") return {false, false};
    if (s == "v") return {false, true};
    if (s == "t") return {true, false};
    if (s == "vt") return {true, true};
    throw SchemaError("unknown E0 square class label: " + s);
}

std::string E0SquareClass::str() const {
    static const char* names[] = {"1", "v", "t", "vt"};
    return names[index()];
}

bool e0_contains_F_times_squares(const QuadExt& E0, E0SquareClass x) {
    // Unramified: pi_F reaches odd valuation and units of F are squares in E0.
    // Ramified: F^x and squares both have even E0-valuation, and every unit
    // class of the residue field k_F is hit by F^x.
    if (!E0.ramified()) return !x.unit_nonsquare;
    return !x.val_parity;
}

E0SquareClass e0_square_class(const QuadExt& E0, const E0Element& x) {
    long p = E0.base.prime();
    if (x.a == 0 && x.b == 0) throw PreconditionError("E0 square class of zero");
    if (!E0.ramified()) {
        // d = u (or u times a square); uniformizer p, residue field F_{p^2}.
        Q d = representative(E0.disc, E0.base);
        long v = std::min(valuation(x.a, p), valuation(x.b, p));
        Q s = pow_p(p, -v);
        long ar = x.a == 0 ? 0 : residue_mod_p(x.a * s, p);
        long br = x.b == 0 ? 0 : residue_mod_p(x.b * s, p);
        long dr = residue_mod_p(d, p);
        // An element of F_{p^2}^x is a square iff its norm is a square in F_p.
        long norm = pos_mod(ar * ar - dr * ((br * br) % p), p);
        return {pos_mod(v, 2) == 1, legendre(norm, p) == -1};
    }
    Q d = representative(E0.disc, E0.base);
    Q w = d / p;
    long va = x.a == 0 ? kInfVal : 2 * valuation(x.a, p);
    long vb = x.b == 0 ? kInfVal : 2 * valuation(x.b, p) + 1;
    long k = std::min(va, vb);
    // x / t^k has residue lead / w^m with lead the dominant coefficient.
    long m = floor_div(k, 2);
    Q lead = (va < vb) ? x.a : x.b;
    Q unit = lead * pow_p(p, -m);
    for (long i = 0; i < std::labs(m); ++i) {
        if (m > 0) unit /= w;
        else unit *= w;
    }
    long r = residue_mod_p(unit, p);
    return {pos_mod(k, 2) == 1, legendre(r, p) == -1};
}

std::string to_string(KernelCoset c) {
    return c == KernelCoset::inside_FE0sq ? "inside_FE0sq" : "outside_FE0sq";
}

KernelCoset trace_kernel_coset(const QuadExt& E0) {
    // Kernel elements are F^x sqrt(d). For d = u, sqrt(u) reduces to an element of
    // F_{q^2} whose (q^2-1)/2 power is (-1)^{(q+1)/2}; for ramified d it is a uniformizer.
    if (!E0.ramified() && E0.base.q % 4 == 3) return KernelCoset::inside_FE0sq;
    return KernelCoset::outside_FE0sq;
}

KernelCoset trace_kernel_sampling_oracle(const QuadExt& E0, int samples, Rng& rng) {
    long p = E0.base.prime();
    std::optional<bool> first;
    for (int i = 0; i < samples; ++i) {
        Q f = random_rational(p, -3, 3, rng);
        E0SquareClass c = e0_square_class(E0, E0Element{0, f});
        bool in = e0_contains_F_times_squares(E0, c);
        if (!first) first = in;
        else if (*first != in)
            throw InvariantViolation("trace-zero elements straddle two cosets of F^x E0^x2");
    }
    if (!first) throw PreconditionError("sampling oracle needs at least one sample");
    return *first ? KernelCoset::inside_FE0sq : KernelCoset::outside_FE0sq;
}

Q psi_F(const Q& x, long p) {
    if (x == 0) return 0;
    Q y = x / p;
    long v = valuation(y, p);
    if (v >= 0) return 0;
    Z pk = Q(pow_p(p, -v)).get_num();
    Z a = residue(y * Q(pk), pk);
    Q r(a, pk);
    r.canonicalize();
    return r;
}

long uniform_int(long lo, long hi, Rng& rng) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

Q random_unit(long p, Rng& rng) {
    long n, d;
    do n = uniform_int(1, 60, rng);
    while (n % p == 0);
    do d = uniform_int(1, 12, rng);
    while (d % p == 0);
    Q r(n, d);
    r.canonicalize();
    if (uniform_int(0, 1, rng)) r = -r;
    return r;
}

Q random_rational(long p, long vmin, long vmax, Rng& rng) {
    return random_unit(p, rng) * pow_p(p, uniform_int(vmin, vmax, rng));
}

}  // namespace sp4gen
