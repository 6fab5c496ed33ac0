#pragma once

#include "sp4gen/local_field.hpp"
#include "sp4gen/quadratic_form.hpp"
#include "sp4gen/rational.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace sp4gen {

using json = nlohmann::json;

// I: F[beta] is a field of degree 4. II: degree 2, V two-dimensional over it.
// III: sum of two degree-2 pieces on V^1 + V^2. IV: degree-2 piece plus a null piece.
enum class StratumCase { I, II, III, IV };
std::string to_string(StratumCase c);
StratumCase parse_case(const std::string& s);

struct Stratum {
    StratumCase kind = StratumCase::I;
    LocalField F;

    // Case I.
    std::optional<QuadExt> E0;
    bool E_over_E0_ramified = false;
    bool biquadratic = true;
    E0SquareClass beta_detdelta;

    // Cases II, III (E1 when the pieces differ) and IV (the non-null piece).
    std::optional<QuadExt> E;
    // Case III only: set when E2 is not isomorphic to E.
    std::optional<QuadExt> E2;
    SquareClass det_delta;
    SquareClass ratio;

    long n = 1;
    long n1 = 1;
    long n2 = 1;
    int epsilon = 0;

    bool pieces_isomorphic() const { return !E2 || E2->disc == E->disc; }
};

// Throws SchemaError on malformed input and PreconditionError when the case I
// ramification data cannot come from a biquadratic extension.
Stratum stratum_from_json(const json& j);
json stratum_to_json(const Stratum& s);

struct FlagDecision {
    bool exists = false;
    std::string rule;
    json trace = json::array();
};

// Existence of an isotropic flag for beta, i.e. of a maximal unipotent subgroup
// on which psi_beta is a character, read off the class data.
FlagDecision decide_flag_existence(const Stratum& s);
// Throws PreconditionError when no flag exists.
FlagType classify_character(const Stratum& s);

// Basis index of e_k, k in {-2, -1, 1, 2}.
int label_index(int k);
// t_k: e_k -> e_{-k}, zero on the other basis vectors.
Mat root_tk(int k);
// The eight root vectors of sp_4 in the basis (e_{-2}, e_{-1}, e_1, e_2),
// positive ones first: short simple, long simple, short, long highest.
std::vector<Mat> root_vectors();

// psi_F(tr(beta (x - 1))). Throws PreconditionError unless x is symplectic.
Q psi_beta_value(const Mat& beta, const Mat& x, long p);

struct PsiBetaThreshold {
    int k = 1;
    Q pairing;                  // h(g e_{-k}, beta g e_{-k})
    std::optional<long> s_max;  // empty means psi_beta is trivial on every g U_k(s)
};
PsiBetaThreshold root_threshold(const Mat& beta, const Mat& g, int k, long p);

struct ThresholdCheck {
    bool identity_ok = true;  // psi_beta(1 + x g t_k g^-1) = psi(eps(k) x pairing)
    bool at_max_nonzero = true;
    bool above_max_zero = true;
    bool ok() const { return identity_ok && at_max_nonzero && above_max_zero; }
};
ThresholdCheck check_root_threshold(const Mat& beta, const Mat& g, int k, long p, int samples, Rng& rng);

// N_{E/F}(beta) = det(beta) is a square iff F[beta] is biquadratic.
// Throws PreconditionError unless 1, beta, beta^2, beta^3 are independent.
bool biquadratic_test(const Mat& beta, long p);

// Symplectic inverse J^-1 g^T J.
Mat symplectic_inverse(const Mat& g);

}  // namespace sp4gen
