#pragma once

#include "sp4gen/local_field.hpp"
#include "sp4gen/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sp4gen {

// Lattice sequence adapted to a symplectic basis: Lambda(t) = sum_s p^{alpha_s(t)} e_s,
// alpha_s non-decreasing with alpha_s(t + e) = alpha_s(t) + 1. Basis index s pairs with dim-1-s.
struct LatticeSequence {
    int e = 1;
    std::vector<std::vector<long>> alpha;  // alpha[s][j], j in [0, e)
    std::optional<long> d;

    int dim() const { return static_cast<int>(alpha.size()); }
    long a(int s, long t) const;
    // Throws SchemaError unless every alpha_s is non-decreasing and periodic.
    void validate() const;
};

bool operator==(const LatticeSequence& x, const LatticeSequence& y);

LatticeSequence standard_lattice(int dim);
// t -> Lambda(-t)^#, i.e. alpha*_s(t) = 1 - alpha_{-s}(-t).
LatticeSequence dual_sequence(const LatticeSequence& L);
// d with Lambda(t)^# = Lambda(d - t), if any.
std::optional<long> duality_invariant(const LatticeSequence& L);

// max { i : alpha_s(i) <= k }
long max_index_below(const LatticeSequence& L, int s, long k);
// nu_Lambda(v) = max { i : v in Lambda(i) }; kInfVal for v = 0.
long valuation_vector(const LatticeSequence& L, const Vec& v, long p);
// nu_Lambda(a) = max { i : a Lambda(j) in Lambda(j + i) for all j }.
long valuation_endo(const LatticeSequence& L, const Mat& a, long p);
// Definitional scan: max { i : alpha_k(i) <= 0 }.
long valuation_basis_scan(const LatticeSequence& L, int k);

LatticeSequence translate(const LatticeSequence& L, long k);     // t -> Lambda(t + k)
LatticeSequence reindex_half(const LatticeSequence& L);          // t -> Lambda(floor(t / 2))
LatticeSequence scale_period(const LatticeSequence& L, int m);   // t -> Lambda(ceil(t / m))
// Orthogonal sum of a sequence on (e_{-1}, e_1) and one on (e_{-2}, e_2), same period.
LatticeSequence direct_sum(const LatticeSequence& L1, const LatticeSequence& L2);
// Restriction of a 4-dim sequence to (e_{-1}, e_1) (block 1) or (e_{-2}, e_2) (block 2).
LatticeSequence block_of(const LatticeSequence& L, int block);

// Self-dual by construction: alpha chosen on the negative labels, reflected on the positive ones.
LatticeSequence random_selfdual(int dim, int e, long d, Rng& rng);

struct BasisValuationReport {
    std::vector<long> nu;  // nu_Lambda(e_k) per basis index
    bool ok = true;
    std::string detail;
};
BasisValuationReport check_basis_valuations(const LatticeSequence& L);

enum class ChainType { ramified, unramified_selfdual, unramified_no_selfdual };
std::string to_string(ChainType t);

// Two-dimensional skew block V = E with E-basis 1, beta = y m, h(x, z) = tr(c x conj(z)),
// c = r m, m^2 = L. Symplectic basis e_{-} = 1, e_{+} = m / h(1, m).
struct SkewBlock {
    QuadExt E;
    Q L, y, r, H;
    Mat beta;
    Mat J;
    long e_E = 1;     // ramification index of E/F
    long nu_E_m = 0;  // E-valuation of m
    long nu_E_beta = 0;
    // o_E-lattice chain t -> p_E^t in the symplectic basis; F-period e_E.
    LatticeSequence chain;
    ChainType type = ChainType::ramified;

    // Coordinates of a + b m.
    Vec coords(const Q& a, const Q& b) const { return {a, b * H}; }
    Q q_value(const Vec& v) const;  // h(v, beta v)
};

SkewBlock make_skew_block(const QuadExt& E, const Q& L, const Q& y, const Q& r);

struct NormalizedProfile {
    LatticeSequence lambda;  // period 4, d = 1
    ChainType type;
    int epsilon = 0;  // 0 iff the sequence contains a self-dual lattice
};
NormalizedProfile normalize_period4(const LatticeSequence& chain, ChainType type);

struct BlockFiltrationReport {
    bool image_ok = true;
    long beta_val = 0;           // nu_Lambda(beta), computed
    long beta_val_expected = 0;  // from nu_E(beta) and the chain type
    bool ok = true;
};
long expected_image_residue(ChainType t);  // 1 (mod 2), 2 (mod 4) or 0 (mod 4)
long expected_image_modulus(ChainType t);
long expected_beta_valuation(ChainType t, long nu_E_beta);
BlockFiltrationReport check_block_filtration(const SkewBlock& B, const NormalizedProfile& P, int samples, Rng& rng);

struct BlockValuationReport {
    long lhs = 0, rhs = 0;
    bool ok = true;
};
// nu_Lambda(v) = 2 nu_F h(v, beta v) - 2 nu_E(beta) / e_E
BlockValuationReport check_block_valuation(const SkewBlock& B, const NormalizedProfile& P, const Vec& v);

}  // namespace sp4gen
