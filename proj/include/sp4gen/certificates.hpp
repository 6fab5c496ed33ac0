#pragma once

#include "sp4gen/realization.hpp"

#include <string>

namespace sp4gen {

// Product of up to six root elements 1 + x X (x valued so that x X lies in a_0(Lambda))
// and a unit torus element; rejection-checked to stabilize every Lambda(t).
Mat random_parahoric_element(const LatticeSequence& L, long p, Rng& rng);

// Least s such that 1 + x A lies in the group
//   { X : X Lambda(j) in Lambda^1(j + level1) + Lambda^2(j + level2) for all j }
// for every x of valuation >= s. Blocks are V^1 = <e_{-1}, e_1>, V^2 = <e_{-2}, e_2>.
long intersection_level(const LatticeSequence& L, const Mat& A, long level1, long level2, long p);

// Maximal simple stratum, anisotropic form, strict lattice of period 2 with d in {0, 1}:
// psi_beta is nontrivial on gU_k meet P_{[n/2]+1}(Lambda) for g in P(Lambda).
struct SimplePieceReport {
    long n = 0;
    long d = 0;
    bool parity_ok = true;          // n + d odd
    bool level_formula_ok = true;   // closed-form s equals the direct lattice computation
    bool nontrivial_ok = true;      // s <= s_max and psi_beta(1 + p^s gt_kg^-1) != 0
    bool valuation_split_ok = true; // nu_Lambda(v) = nu_F h(v, beta v) + (n + d - 1) / 2
    long checks = 0;
    long min_margin = 0;            // min of s_max - s
    long min_margin_shifted = 0;    // same with n replaced by n + 2 in the subgroup
    std::string detail;
    bool ok() const { return parity_ok && level_formula_ok && nontrivial_ok && valuation_split_ok; }
};
SimplePieceReport simple_piece_certificate(const MatrixStratum& ms, int samples, Rng& rng);

// Cases II/III on an anisotropic form with period-4, d = 1 pieces: psi_beta is nontrivial on
// gU_k meet L, L built from a_i = [n_i/2] + 1.
struct TwoPieceReport {
    bool level_formula_ok = true;
    bool nontrivial_ok = true;
    bool epsilon_identity_ok = true;  // max(a_i - g_i) + 2 min l_i in {0, 1}
    bool min_valuation_ok = true;     // nu_F h(v, beta v) = min_i nu_F h(v_i, beta_i v_i)
    bool lower_bound_ok = true;       // nu_Lambda(v) >= 2 nu_F h(v, beta v) - max 2 nu_E(beta_i) / e
    long checks = 0;
    long min_margin = 0;
    std::string detail;
    bool ok() const {
        return level_formula_ok && nontrivial_ok && epsilon_identity_ok && min_valuation_ok && lower_bound_ok;
    }
};
TwoPieceReport two_piece_certificate(const MatrixStratum& ms, int samples, Rng& rng);

// Case IV: the threshold criterion for psi_beta on yU_ky^-1 meet L against direct evaluation.
struct NullThresholdReport {
    long checks = 0;
    long agreements = 0;
    long nontrivial = 0;
    long relation_holds = 0;  // y_r = 2 l_r + [n/2] + 1 - epsilon
    long relation_checks = 0;
    // Range of y_r - 2 l_r - [n/2] - 1 over the samples.
    long offset_min = 0, offset_max = 0;
    std::string detail;
    bool ok() const { return agreements == checks; }
};
NullThresholdReport check_null_threshold(const MatrixStratum& ms, int samples, Rng& rng);

}  // namespace sp4gen
