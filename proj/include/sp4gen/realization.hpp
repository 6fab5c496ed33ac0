#pragma once

#include "sp4gen/lattice.hpp"
#include "sp4gen/quadratic_form.hpp"
#include "sp4gen/strata.hpp"

#include <optional>
#include <vector>

namespace sp4gen {

// Explicit skew beta on the standard 4-dim symplectic space together with the
// class data read off its construction parameters.
struct MatrixStratum {
    Stratum stratum;
    long p = 3;
    Mat beta;
    // Exact vector with h(v, beta v) = 0 planted by the builder.
    std::optional<Vec> isotropic;
    // Lattice sequence adapted to the standard basis and normalized by beta.
    // Dropped by conjugate().
    std::optional<LatticeSequence> lambda;
    // Cases II-IV: the pieces on V^1 = <e_{-1}, e_1> and V^2 = <e_{-2}, e_2>
    // (case IV keeps only V^1) with their period-4 normalizations.
    std::vector<SkewBlock> blocks;
    std::vector<NormalizedProfile> profiles;
    std::vector<long> block_n;  // n_i = -nu_{Lambda^i}(beta_i)
};

// Basis P with P^T G P = J for an alternating nondegenerate Gram matrix G.
Mat symplectic_basis(const Mat& gram);
// Random element of Sp_4(Z): a product of integral transvections.
Mat random_integral_symplectic(int factors, Rng& rng);
MatrixStratum conjugate(const MatrixStratum& ms, const Mat& g);

// Case I over E = E0(sqrt(gamma)), E0 = F(sqrt d0): V = E with h(x, z) = tr(c x conj(z)),
// c = c' beta, c' in E0. want_exists plants an isotropic vector; otherwise c' is
// resampled until the class data say anisotropic (biquadratic only).
MatrixStratum realize_case_I(long p, bool biquadratic, bool want_exists, Rng& rng);
// Case I inside F(sqrt u, sqrt p) with monomial basis and the strict o_E-chain
// (period 2, d in {0, 1}); always anisotropic.
MatrixStratum realize_case_I_monomial(long p, Rng& rng);
MatrixStratum realize_case_II(long p, bool want_exists, Rng& rng);
MatrixStratum realize_case_III(long p, bool isomorphic, bool want_exists, Rng& rng);
MatrixStratum realize_case_IV(long p, Rng& rng);

// Anisotropic 2-dim block over a random ramified or unramified E, with y of valuation
// in [-3, -1] and r in [-2, 2], and a random nonzero vector of it.
SkewBlock random_skew_block(long p, Rng& rng);
Vec random_block_vector(const SkewBlock& B, Rng& rng);

// Mixed corpus of one case: both verdicts where possible, conjugated by Sp_4(Z).
std::vector<MatrixStratum> build_corpus(long p, StratumCase c, int count, Rng& rng);

struct CrossCheckReport {
    bool class_exists = false;
    bool isotropic = false;
    bool hensel_decided = true;
    bool hensel_found = false;
    std::optional<IsotropicFlag> flag;
    std::optional<FlagType> flag_type;
    std::optional<FlagType> expected_type;
    int uder_samples = 0;
    bool psi_vanishes_on_uder = true;
    bool psi_character_on_u = true;
    std::string detail;

    bool ok() const;
};

// Class-data verdict against isotropy of v -> h(v, beta v), the Hensel search,
// and, on "exists", the flag with psi_beta checked on sampled elements of U and [U, U].
CrossCheckReport cross_check_matrix(const MatrixStratum& ms, int uder_samples, Rng& rng);

}  // namespace sp4gen
