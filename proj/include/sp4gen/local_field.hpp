#pragma once

#include "sp4gen/rational.hpp"

#include <optional>
#include <random>
#include <string>

namespace sp4gen {

using Rng = std::mt19937_64;

// F = Q_p (concrete) or a residue-field profile known only through q mod 4 (abstract).
struct LocalField {
    long q = 3;
    std::optional<long> p;

    static LocalField concrete(long p);
    static LocalField abstract(long q);

    bool is_concrete() const { return p.has_value(); }
    long prime() const;
    // Canonical non-square unit: least positive quadratic non-residue mod p.
    long u() const;
    bool minus_one_is_square() const { return q % 4 == 1; }
};

// Element of F^x / (F^x)^2.
struct SquareClass {
    bool val_parity = false;
    bool unit_nonsquare = false;

    static SquareClass one() { return {}; }
    static SquareClass u() { return {false, true}; }
    static SquareClass pi() { return {true, false}; }
    static SquareClass upi() { return {true, true}; }
    static SquareClass parse(const std::string& s);
    static SquareClass from_index(int i) { return {(i & 2) != 0, (i & 1) != 0}; }

    int index() const { return (val_parity ? 2 : 0) | (unit_nonsquare ? 1 : 0); }
    bool is_identity() const { return !val_parity && !unit_nonsquare; }
    std::string str() const;
};

inline SquareClass operator*(SquareClass a, SquareClass b) {
    return {a.val_parity != b.val_parity, a.unit_nonsquare != b.unit_nonsquare};
}
inline bool operator==(SquareClass a, SquareClass b) {
    return a.val_parity == b.val_parity && a.unit_nonsquare == b.unit_nonsquare;
}

SquareClass square_class(const Q& x, const LocalField& F);
SquareClass minus_one_class(const LocalField& F);
// Rational representative 1, u, p or up.
Q representative(SquareClass c, const LocalField& F);

int hilbert_symbol(SquareClass a, SquareClass b, const LocalField& F);
inline int hilbert_symbol(const Q& a, const Q& b, const LocalField& F) {
    return hilbert_symbol(square_class(a, F), square_class(b, F), F);
}

long default_oracle_depth(const Q& a, const Q& b, long p);
// Decides whether z^2 = a x^2 + b y^2 has a nonzero p-adic solution by a
// Hensel-certified search; depth below the default bound raises PrecisionError.
int hilbert_solubility_oracle(const Q& a, const Q& b, long p, long depth);
inline int hilbert_solubility_oracle(const Q& a, const Q& b, long p) {
    return hilbert_solubility_oracle(a, b, p, default_oracle_depth(a, b, p));
}

// E = F(sqrt(d)) for a non-identity class d.
struct QuadExt {
    LocalField base;
    SquareClass disc;

    QuadExt(LocalField F, SquareClass d);
    bool ramified() const { return disc.val_parity; }
};

bool norm_group_contains(const QuadExt& E, SquareClass x);

// Element of E0^x / (E0^x)^2 in the coordinates (E0-valuation parity, residue non-square bit).
struct E0SquareClass {
    bool val_parity = false;
    bool unit_nonsquare = false;

    static E0SquareClass parse(const std::string& s);
    static E0SquareClass from_index(int i) { return {(i & 2) != 0, (i & 1) != 0}; }
    int index() const { return (val_parity ? 2 : 0) | (unit_nonsquare ? 1 : 0); }
    std::string str() const;
};

inline E0SquareClass operator*(E0SquareClass a, E0SquareClass b) {
    return {a.val_parity != b.val_parity, a.unit_nonsquare != b.unit_nonsquare};
}
inline bool operator==(E0SquareClass a, E0SquareClass b) {
    return a.val_parity == b.val_parity && a.unit_nonsquare == b.unit_nonsquare;
}

// Membership in F^x (E0^x)^2.
bool e0_contains_F_times_squares(const QuadExt& E0, E0SquareClass x);

// Explicit model E0 = F[t]/(t^2 - d) with d the canonical representative of disc.
// Elements are a + b t.
struct E0Element {
    Q a, b;
};
E0SquareClass e0_square_class(const QuadExt& E0, const E0Element& x);

enum class KernelCoset { inside_FE0sq, outside_FE0sq };
std::string to_string(KernelCoset c);

// Coset of F^x (E0^x)^2 containing the nonzero trace-zero elements of E0.
KernelCoset trace_kernel_coset(const QuadExt& E0);
KernelCoset trace_kernel_sampling_oracle(const QuadExt& E0, int samples, Rng& rng);

// psi_F(x): p-adic fractional part of x/p, as a rational in [0, 1).
Q psi_F(const Q& x, long p);

// Random rational with valuation in [vmin, vmax] and small unit part.
Q random_rational(long p, long vmin, long vmax, Rng& rng);
Q random_unit(long p, Rng& rng);
long uniform_int(long lo, long hi, Rng& rng);

}  // namespace sp4gen
